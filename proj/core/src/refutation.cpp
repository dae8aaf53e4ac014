#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "kplus/engine.hpp"
#include "kplus/syntax.hpp"
#include "rules.hpp"

namespace kplus {

namespace {

using ProofFn = std::function<std::optional<CyclicProof>(const Sequent&)>;

// Expands one unprovable node by the saturation rules or, when saturated and
// `crossbox` is set, by the uniquely determined crossbox application.
// Returns the premise sequents to attach as children.
std::vector<Sequent> expand_refutation(RefNode& node, const ProvabilityOracle& provable,
                                       const ProofFn& certify, bool crossbox) {
    const Sequent& s = node.seq;
    FocusedSequent fs{s, {}};
    auto omit = [&](const Sequent& q) {
        node.omitted.push_back(q);
        if (auto c = certify(q)) node.certificates.push_back(std::move(*c));
    };
    if (Formula imp = detail::first_implication(s); imp.valid()) {
        node.principal = imp;
        if (contains(s.succ, imp)) {
            node.rule = Rule::ImpRight;
            return {detail::imp_right_premise(fs, imp).seq};
        }
        auto [l, r] = detail::imp_left_premises(fs, imp);
        bool pl = provable(l.seq), pr = provable(r.seq);
        if (pl && pr) throw std::logic_error("imp-left with two provable premises below an unprovable sequent");
        if (!pl && !pr) {
            node.rule = Rule::ImpLeft;
            return {l.seq, r.seq};
        }
        if (!pl) {
            node.rule = Rule::ImpLeft1;
            omit(r.seq);
            return {l.seq};
        }
        node.rule = Rule::ImpLeft2;
        omit(l.seq);
        return {r.seq};
    }
    if (!crossbox) {
        node.rule = Rule::Open;
        return {};
    }
    node.rule = Rule::CrossBox;
    std::vector<Formula> ctx = modal_context(s.ante);
    std::vector<Sequent> out;
    for (Formula f : s.succ)
        if (f.is_box()) out.emplace_back(ctx, std::vector<Formula>{f.body()});
    for (Formula f : s.succ) {
        if (!f.is_boxplus()) continue;
        for (Formula c : {f.body(), f}) {
            Sequent q(ctx, {c});
            if (provable(q))
                omit(q);
            else
                out.push_back(std::move(q));
        }
    }
    return out;
}

RefutationTree saturate_impl(const Sequent& s, const ProvabilityOracle& provable, const ProofFn& certify) {
    if (provable(s)) throw std::invalid_argument("saturate called on a provable sequent");
    RefutationTree t;
    t.nodes.push_back(RefNode{s, Rule::Open, {}, {}, {}, {}});
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        std::vector<Sequent> premises = expand_refutation(t.nodes[i], provable, certify, false);
        for (Sequent& q : premises) {
            std::size_t c = t.nodes.size();
            t.nodes.push_back(RefNode{std::move(q), Rule::Open, {}, {}, {}, {}});
            t.nodes[i].children.push_back(c);
            stack.push_back(c);
        }
    }
    return t;
}

}  // namespace

RefutationTree saturate(const Sequent& s, const ProvabilityOracle& oracle) {
    return saturate_impl(s, oracle, [](const Sequent&) { return std::optional<CyclicProof>{}; });
}

RefutationTree saturate(const Sequent& s, Prover& prover) {
    return saturate_impl(
        s, [&](const Sequent& q) { return prover.provable(q); },
        [&](const Sequent& q) { return std::optional<CyclicProof>(prover.proof(q)); });
}

RefutationTree refute(const Sequent& s, Prover& prover) {
    if (prover.provable(s)) throw std::invalid_argument("refute called on a provable sequent");
    ProvabilityOracle provable = [&](const Sequent& q) { return prover.provable(q); };
    ProofFn certify = [&](const Sequent& q) { return std::optional<CyclicProof>(prover.proof(q)); };
    RefutationTree t;
    std::unordered_map<Sequent, std::size_t> index;
    std::deque<std::size_t> queue;
    auto node = [&](const Sequent& q) {
        auto it = index.find(q);
        if (it != index.end()) return it->second;
        std::size_t id = t.nodes.size();
        t.nodes.push_back(RefNode{q, Rule::Open, {}, {}, {}, {}});
        index.emplace(q, id);
        queue.push_back(id);
        return id;
    };
    node(s);
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        RefNode work = t.nodes[i];
        std::vector<Sequent> premises = expand_refutation(work, provable, certify, true);
        for (const Sequent& q : premises) work.children.push_back(node(q));
        t.nodes[i] = std::move(work);
    }
    return t;
}

CheckResult check_refutation(const RefutationTree& t, Prover& prover) {
    return check_refutation(t, [&](const Sequent& q) { return prover.provable(q); });
}

CheckResult check_refutation(const RefutationTree& t, const ProvabilityOracle& provable) {
    CheckResult res;
    auto err = [&](std::size_t i, const std::string& msg) {
        res.errors.push_back("node " + std::to_string(i) + ": " + msg);
    };
    const auto& N = t.nodes;
    if (N.empty()) {
        res.errors.push_back("empty refutation");
        return res;
    }
    for (std::size_t i = 0; i < N.size(); ++i)
        for (std::size_t c : N[i].children)
            if (c >= N.size()) {
                err(i, "bad child index");
                return res;
            }

    auto check_certificates = [&](std::size_t i) {
        const RefNode& n = N[i];
        if (n.certificates.size() != n.omitted.size()) {
            err(i, "omitted premises without certificates");
            return;
        }
        for (std::size_t k = 0; k < n.omitted.size(); ++k) {
            const CyclicProof& c = n.certificates[k];
            CheckResult r = check_cyclic(c);
            if (!r) err(i, "certificate " + std::to_string(k) + " rejected: " + r.errors.front());
            else if (!(c.nodes[0].seq.seq == n.omitted[k]) || !c.nodes[0].seq.star())
                err(i, "certificate " + std::to_string(k) + " proves a different sequent");
            if (!provable(n.omitted[k])) err(i, "omitted premise is not provable");
        }
    };

    for (std::size_t i = 0; i < N.size(); ++i) {
        const RefNode& n = N[i];
        const Sequent& s = n.seq;
        FocusedSequent fs{s, {}};
        if (provable(s)) err(i, "sequent is provable");
        std::vector<Sequent> kids;
        for (std::size_t c : n.children) kids.push_back(N[c].seq);
        Formula P = n.principal;
        switch (n.rule) {
        case Rule::ImpRight:
            if (!P.valid() || !P.is_imp() || !contains(s.succ, P)) err(i, "bad imp-right principal");
            else if (kids != std::vector<Sequent>{detail::imp_right_premise(fs, P).seq}) err(i, "imp-right premise mismatch");
            if (!n.omitted.empty()) err(i, "unexpected omitted premises");
            break;
        case Rule::ImpLeft:
        case Rule::ImpLeft1:
        case Rule::ImpLeft2: {
            if (!P.valid() || !P.is_imp() || !contains(s.ante, P)) {
                err(i, "bad imp-left principal");
                break;
            }
            auto [l, r] = detail::imp_left_premises(fs, P);
            std::vector<Sequent> want, omit;
            if (n.rule == Rule::ImpLeft) want = {l.seq, r.seq};
            if (n.rule == Rule::ImpLeft1) want = {l.seq}, omit = {r.seq};
            if (n.rule == Rule::ImpLeft2) want = {r.seq}, omit = {l.seq};
            if (kids != want) err(i, std::string(rule_name(n.rule)) + " premise mismatch");
            if (n.omitted != omit) err(i, "omitted premise mismatch");
            check_certificates(i);
            break;
        }
        case Rule::CrossBox: {
            if (!s.is_saturated()) {
                err(i, "crossbox conclusion is not saturated");
                break;
            }
            if (s.is_axiom()) err(i, "crossbox conclusion is an axiom");
            std::vector<Formula> ctx = modal_context(s.ante);
            std::set<Sequent> present(kids.begin(), kids.end()), omitted(n.omitted.begin(), n.omitted.end());
            std::set<Sequent> allowed;
            for (Formula f : s.succ) {
                if (f.is_box()) {
                    Sequent q(ctx, {f.body()});
                    allowed.insert(q);
                    if (!present.count(q)) err(i, "missing Prem1 premise for " + render(f));
                } else if (f.is_boxplus()) {
                    Sequent a(ctx, {f.body()}), b(ctx, {f});
                    allowed.insert(a);
                    allowed.insert(b);
                    if (!present.count(a) && !present.count(b)) err(i, "empty Prem2 group for " + render(f));
                    for (const Sequent& q : {a, b})
                        if (!present.count(q) && !omitted.count(q))
                            err(i, "Prem2 candidate neither present nor certified");
                }
            }
            for (const Sequent& q : present)
                if (!allowed.count(q)) err(i, "unexpected crossbox premise " + render(q));
            for (const Sequent& q : omitted)
                if (!allowed.count(q) || present.count(q)) err(i, "unexpected omitted premise " + render(q));
            check_certificates(i);
            break;
        }
        default: err(i, std::string("rule ") + rule_name(n.rule) + " is not allowed in a refutation");
        }
    }
    if (!res.ok()) return res;

    // Boxplus falsification: every node whose succedent holds []+C reaches a
    // crossbox application with a premise whose succedent is exactly C.
    std::vector<std::set<Formula>> hits(N.size());
    for (std::size_t i = 0; i < N.size(); ++i) {
        if (N[i].rule != Rule::CrossBox) continue;
        for (std::size_t c : N[i].children)
            if (N[c].seq.succ.size() == 1) hits[i].insert(N[c].seq.succ[0]);
    }
    for (std::size_t i = 0; i < N.size(); ++i) {
        std::vector<Formula> need;
        for (Formula f : N[i].seq.succ)
            if (f.is_boxplus()) need.push_back(f.body());
        if (need.empty()) continue;
        std::set<Formula> found;
        std::vector<char> seen(N.size(), 0);
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            std::size_t k = stack.back();
            stack.pop_back();
            if (seen[k]) continue;
            seen[k] = 1;
            found.insert(hits[k].begin(), hits[k].end());
            for (std::size_t c : N[k].children) stack.push_back(c);
        }
        for (Formula c : need)
            if (!found.count(c)) err(i, "no crossbox premise of the form Theta => " + render(c));
    }
    return res;
}

Countermodel model_from_refutation(const RefutationTree& t) {
    const auto& N = t.nodes;
    if (N.empty()) throw std::invalid_argument("empty refutation");
    for (const RefNode& n : N)
        for (std::size_t c : n.children)
            if (c >= N.size()) throw std::invalid_argument("bad child index in refutation");

    // sat(c): crossbox nodes reachable from c without passing through one,
    // in left-first depth-first order.
    auto sat = [&](std::size_t start) {
        std::vector<std::size_t> out;
        std::vector<char> seen(N.size(), 0);
        std::vector<std::size_t> stack{start};
        while (!stack.empty()) {
            std::size_t k = stack.back();
            stack.pop_back();
            if (seen[k]) continue;
            seen[k] = 1;
            if (N[k].rule == Rule::CrossBox) {
                out.push_back(k);
                continue;
            }
            if (N[k].children.empty()) throw std::invalid_argument("refutation node without a rule application");
            for (auto it = N[k].children.rbegin(); it != N[k].children.rend(); ++it) stack.push_back(*it);
        }
        return out;
    };

    std::map<std::size_t, unsigned> world_of;
    for (std::size_t i = 0; i < N.size(); ++i)
        if (N[i].rule == Rule::CrossBox) world_of.emplace(i, static_cast<unsigned>(world_of.size()));
    std::set<unsigned> worlds;
    Relation r;
    std::map<unsigned, std::set<unsigned>> val;
    for (auto [node, w] : world_of) {
        worlds.insert(w);
        for (Formula f : N[node].seq.ante)
            if (f.is_var()) val[w].insert(f.var_index());
        for (std::size_t c : N[node].children)
            for (std::size_t b : sat(c)) r.insert({w, world_of.at(b)});
    }
    std::vector<std::size_t> root = sat(0);
    if (root.empty()) throw std::invalid_argument("root has no saturated descendant");
    return Countermodel{KripkeModel::make(std::move(worlds), std::move(r), std::move(val)), world_of.at(root.front())};
}

Decision decide(const Sequent& s, const EngineOptions& opts) { return decide(FocusedSequent{s, {}}, opts); }

Decision decide(const FocusedSequent& s, const EngineOptions& opts) {
    Decision d;
    Prover prover(opts.budget);
    try {
        bool ok = prover.provable(s);
        d.verdict = ok ? Verdict::Provable : Verdict::Refutable;
        if (!opts.verdict_only) {
            if (ok)
                d.proof = prover.proof(s);
            else
                d.refutation = refute(s.seq, prover);
        }
    } catch (const BudgetExceeded&) {
        d = Decision{};
        d.verdict = Verdict::BudgetExceeded;
    }
    d.states = prover.states();
    return d;
}

}  // namespace kplus
