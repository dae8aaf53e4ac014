#include <algorithm>
#include <deque>
#include <stdexcept>

#include "kplus/engine.hpp"
#include "rules.hpp"

namespace kplus {

namespace {

enum class Status : std::uint8_t { New, Proved, Refuted };

struct Option {
    Rule rule;
    Formula principal;
    std::vector<std::uint32_t> premises;
};

struct GNode {
    FocusedSequent fs;
    std::vector<Option> options;
    Status status = Status::New;
    bool expanded = false;
    // Nodes proved together in one greatest-fixpoint batch share a stamp;
    // otherwise every premise of the chosen option has a smaller stamp.
    std::uint32_t stamp = 0;
    int chosen = -1;
};

}  // namespace

struct Prover::Impl {
    std::size_t budget;
    std::vector<GNode> nodes;
    std::unordered_map<FocusedSequent, std::uint32_t> index;
    std::uint32_t next_stamp = 1;

    std::uint32_t intern(const FocusedSequent& fs, std::vector<std::uint32_t>& fresh) {
        auto it = index.find(fs);
        if (it != index.end()) return it->second;
        if (nodes.size() >= budget) throw BudgetExceeded();
        auto id = static_cast<std::uint32_t>(nodes.size());
        nodes.push_back(GNode{fs, {}, Status::New, false, 0, -1});
        index.emplace(fs, id);
        fresh.push_back(id);
        return id;
    }

    void expand(std::uint32_t id, std::vector<std::uint32_t>& fresh) {
        // nodes may reallocate while interning premises; copy what we need.
        FocusedSequent fs = nodes[id].fs;
        std::vector<Option> opts;
        if (fs.seq.is_axiom()) {
            opts.push_back({detail::axiom_rule(fs.seq), {}, {}});
        } else if (Formula imp = detail::first_implication(fs.seq); imp.valid()) {
            if (contains(fs.seq.ante, imp)) {
                auto [l, r] = detail::imp_left_premises(fs, imp);
                std::uint32_t a = intern(l, fresh);
                std::uint32_t b = intern(r, fresh);
                opts.push_back({Rule::ImpLeft, imp, {a, b}});
            } else {
                opts.push_back({Rule::ImpRight, imp, {intern(detail::imp_right_premise(fs, imp), fresh)}});
            }
        } else {
            for (Formula f : fs.seq.succ) {
                if (f.is_box()) {
                    opts.push_back({Rule::Box, f, {intern(detail::box_premise(fs, f), fresh)}});
                } else if (f.is_boxplus()) {
                    auto [l, r] = detail::boxplus_premises(fs, f);
                    std::uint32_t a = intern(l, fresh);
                    std::uint32_t b = intern(r, fresh);
                    opts.push_back({Rule::BoxPlus, f, {a, b}});
                }
            }
        }
        nodes[id].options = std::move(opts);
        nodes[id].expanded = true;
    }

    void explore(const FocusedSequent& root) {
        std::vector<std::uint32_t> fresh;
        std::uint32_t r = intern(root, fresh);
        if (fresh.empty()) return;
        (void)r;
        std::size_t done = 0;
        while (done < fresh.size()) {
            std::uint32_t id = fresh[done++];
            expand(id, fresh);
        }
        solve(fresh);
    }

    void solve(const std::vector<std::uint32_t>& fresh) {
        std::unordered_map<std::uint32_t, std::size_t> local;
        for (std::size_t i = 0; i < fresh.size(); ++i) local.emplace(fresh[i], i);

        // missing[i][k]: premises of option k of fresh[i] not yet proved.
        std::vector<std::vector<std::uint32_t>> missing(fresh.size());
        std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> rev(fresh.size());
        std::deque<std::pair<std::uint32_t, std::uint32_t>> ready;
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            const GNode& n = nodes[fresh[i]];
            missing[i].resize(n.options.size());
            for (std::size_t k = 0; k < n.options.size(); ++k) {
                std::uint32_t cnt = 0;
                for (std::uint32_t p : n.options[k].premises) {
                    if (nodes[p].status == Status::Proved) continue;
                    ++cnt;
                    if (auto it = local.find(p); it != local.end())
                        rev[it->second].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k));
                }
                missing[i][k] = cnt;
                if (cnt == 0) ready.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k));
            }
        }

        auto mark = [&](std::uint32_t i, int opt, std::uint32_t stamp) {
            GNode& n = nodes[fresh[i]];
            n.status = Status::Proved;
            n.chosen = opt;
            n.stamp = stamp;
            for (auto [pi, pk] : rev[i])
                if (--missing[pi][pk] == 0) ready.emplace_back(pi, pk);
        };

        auto drain = [&] {
            bool any = false;
            while (!ready.empty()) {
                auto [i, k] = ready.front();
                ready.pop_front();
                if (nodes[fresh[i]].status != Status::New) continue;
                mark(i, static_cast<int>(k), next_stamp++);
                any = true;
            }
            return any;
        };

        drain();
        for (;;) {
            bool progress = false;
            std::map<Formula, std::vector<std::uint32_t>> by_focus;
            for (std::size_t i = 0; i < fresh.size(); ++i) {
                const GNode& n = nodes[fresh[i]];
                if (n.status == Status::New && !n.fs.star())
                    by_focus[n.fs.focus].push_back(static_cast<std::uint32_t>(i));
            }
            for (auto& [focus, members] : by_focus) {
                std::vector<char> in_z(fresh.size(), 0);
                std::vector<std::uint32_t> z;
                for (std::uint32_t i : members)
                    if (nodes[fresh[i]].status == Status::New) {
                        in_z[i] = 1;
                        z.push_back(i);
                    }
                auto good_option = [&](std::uint32_t i) -> int {
                    const GNode& n = nodes[fresh[i]];
                    for (std::size_t k = 0; k < n.options.size(); ++k) {
                        bool ok = true;
                        for (std::uint32_t p : n.options[k].premises) {
                            if (nodes[p].status == Status::Proved) continue;
                            auto it = local.find(p);
                            if (it == local.end() || !in_z[it->second]) {
                                ok = false;
                                break;
                            }
                        }
                        if (ok) return static_cast<int>(k);
                    }
                    return -1;
                };
                bool shrunk = true;
                while (shrunk && !z.empty()) {
                    shrunk = false;
                    std::vector<std::uint32_t> keep;
                    for (std::uint32_t i : z) {
                        if (good_option(i) >= 0) {
                            keep.push_back(i);
                        } else {
                            in_z[i] = 0;
                            shrunk = true;
                        }
                    }
                    z.swap(keep);
                }
                if (z.empty()) continue;
                std::uint32_t stamp = next_stamp++;
                std::vector<int> chosen;
                for (std::uint32_t i : z) chosen.push_back(good_option(i));
                for (std::size_t t = 0; t < z.size(); ++t) mark(z[t], chosen[t], stamp);
                progress = true;
                drain();
            }
            if (!progress) break;
        }
        for (std::uint32_t id : fresh)
            if (nodes[id].status == Status::New) nodes[id].status = Status::Refuted;
    }

    void build(std::uint32_t id, CyclicProof& out, std::unordered_map<std::uint32_t, std::size_t>& on_path,
               std::size_t& slot) {
        if (out.nodes.size() >= budget) throw BudgetExceeded();
        const GNode& g = nodes[id];
        std::size_t here = out.nodes.size();
        out.nodes.push_back(ProofNode{g.fs, Rule::Backlink, {}, {}, -1});
        slot = here;
        if (auto it = on_path.find(id); it != on_path.end()) {
            out.backlinks[here] = it->second;
            return;
        }
        const Option& opt = g.options.at(static_cast<std::size_t>(g.chosen));
        out.nodes[here].rule = opt.rule;
        out.nodes[here].principal = opt.principal;
        on_path.emplace(id, here);
        for (std::uint32_t p : opt.premises) {
            std::size_t child = 0;
            build(p, out, on_path, child);
            out.nodes[here].children.push_back(child);
        }
        on_path.erase(id);
    }
};

Prover::Prover(std::size_t budget) : impl_(std::make_unique<Impl>()) { impl_->budget = budget; }
Prover::~Prover() = default;

bool Prover::provable(const FocusedSequent& s) {
    impl_->explore(s);
    return impl_->nodes[impl_->index.at(s)].status == Status::Proved;
}

CyclicProof Prover::proof(const FocusedSequent& s) {
    if (!provable(s)) throw std::logic_error("proof requested for an unprovable sequent");
    CyclicProof out;
    std::unordered_map<std::uint32_t, std::size_t> on_path;
    std::size_t root = 0;
    impl_->build(impl_->index.at(s), out, on_path, root);
    return out;
}

std::size_t Prover::states() const { return impl_->nodes.size(); }

}  // namespace kplus
