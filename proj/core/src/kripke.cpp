#include "kplus/kripke.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace kplus {

Relation transitive_closure(const Relation& rel) {
    Relation out = rel;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<unsigned, unsigned>> add;
        for (auto [a, b] : out)
            for (auto it = out.lower_bound({b, 0}); it != out.end() && it->first == b; ++it)
                if (!out.count({a, it->second})) add.emplace_back(a, it->second);
        for (auto e : add) changed |= out.insert(e).second;
    }
    return out;
}

KripkeModel KripkeModel::make(std::set<unsigned> worlds, Relation r,
                              std::map<unsigned, std::set<unsigned>> valuation) {
    KripkeModel m;
    m.worlds = std::move(worlds);
    m.rplus = transitive_closure(r);
    m.r = std::move(r);
    m.valuation = std::move(valuation);
    return m;
}

bool KripkeModel::valid(std::string* why) const {
    auto bad = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (worlds.empty()) return bad("model has no worlds");
    for (auto [a, b] : r)
        if (!worlds.count(a) || !worlds.count(b)) return bad("edge endpoint is not a world");
    for (const auto& [w, vars] : valuation)
        if (!worlds.count(w)) return bad("valuation mentions an unknown world");
    if (rplus != transitive_closure(r)) return bad("rplus is not the transitive closure of r");
    return true;
}

namespace {

bool eval_rec(const KripkeModel& m, unsigned w, Formula f) {
    switch (f.kind()) {
    case FormulaKind::Var: {
        auto it = m.valuation.find(w);
        return it != m.valuation.end() && it->second.count(f.var_index());
    }
    case FormulaKind::Bot: return false;
    case FormulaKind::Imp: return !eval_rec(m, w, f.lhs()) || eval_rec(m, w, f.rhs());
    case FormulaKind::Box:
    case FormulaKind::BoxPlus: {
        const Relation& rel = f.is_box() ? m.r : m.rplus;
        for (auto it = rel.lower_bound({w, 0}); it != rel.end() && it->first == w; ++it)
            if (!eval_rec(m, it->second, f.body())) return false;
        return true;
    }
    }
    return false;
}

// Truth of one subformula at one world, as a bitset over all valuations.
using Bits = std::vector<std::uint64_t>;

}  // namespace

bool eval(const KripkeModel& m, unsigned w, Formula f) {
    if (!m.worlds.count(w)) throw std::out_of_range("unknown world " + std::to_string(w));
    return eval_rec(m, w, f);
}

std::optional<Countermodel> search_countermodel(Formula f, unsigned max_worlds) {
    std::vector<unsigned> vars = variables(f);
    // Subformulas in an order where children precede parents.
    std::vector<Formula> subs = subformulas(f);
    std::stable_sort(subs.begin(), subs.end(), [](Formula a, Formula b) { return a.size() < b.size(); });
    std::unordered_map<Formula, std::size_t> index;
    for (std::size_t i = 0; i < subs.size(); ++i) index.emplace(subs[i], i);

    for (unsigned n = 1; n <= max_worlds; ++n) {
        const std::size_t bits = vars.size() * n;
        if (bits > 24) throw std::invalid_argument("search space too large for search_countermodel");
        const std::uint64_t nvals = std::uint64_t{1} << bits;
        const std::size_t words = static_cast<std::size_t>((nvals + 63) / 64);
        const std::uint64_t tail_mask = (nvals % 64) ? ((std::uint64_t{1} << (nvals % 64)) - 1) : ~std::uint64_t{0};
        Bits ones(words, ~std::uint64_t{0});
        ones.back() &= tail_mask;

        // Valuation v makes variable k true at world w iff bit k*n + w of v is set.
        std::vector<Bits> atom(bits, Bits(words, 0));
        for (std::size_t b = 0; b < bits; ++b)
            for (std::uint64_t v = 0; v < nvals; ++v)
                if ((v >> b) & 1) atom[b][v / 64] |= std::uint64_t{1} << (v % 64);

        const unsigned edges = n * n;
        std::vector<std::vector<Bits>> truth(subs.size(), std::vector<Bits>(n));
        for (std::uint64_t rel = 0; rel < (std::uint64_t{1} << edges); ++rel) {
            // Reachability matrices for R and its closure.
            std::vector<std::vector<bool>> R(n, std::vector<bool>(n)), P;
            for (unsigned u = 0; u < n; ++u)
                for (unsigned v = 0; v < n; ++v) R[u][v] = (rel >> (u * n + v)) & 1;
            P = R;
            for (unsigned k = 0; k < n; ++k)
                for (unsigned u = 0; u < n; ++u)
                    if (P[u][k])
                        for (unsigned v = 0; v < n; ++v)
                            if (P[k][v]) P[u][v] = true;

            for (std::size_t i = 0; i < subs.size(); ++i) {
                Formula g = subs[i];
                for (unsigned w = 0; w < n; ++w) {
                    Bits& out = truth[i][w];
                    switch (g.kind()) {
                    case FormulaKind::Var: {
                        auto k = static_cast<std::size_t>(
                            std::lower_bound(vars.begin(), vars.end(), g.var_index()) - vars.begin());
                        out = atom[k * n + w];
                        break;
                    }
                    case FormulaKind::Bot: out.assign(words, 0); break;
                    case FormulaKind::Imp: {
                        const Bits& a = truth[index.at(g.lhs())][w];
                        const Bits& b = truth[index.at(g.rhs())][w];
                        out.resize(words);
                        for (std::size_t j = 0; j < words; ++j) out[j] = (~a[j] | b[j]);
                        out.back() &= tail_mask;
                        break;
                    }
                    case FormulaKind::Box:
                    case FormulaKind::BoxPlus: {
                        const auto& rel2 = g.is_box() ? R : P;
                        std::size_t body = index.at(g.body());
                        out = ones;
                        for (unsigned v = 0; v < n; ++v)
                            if (rel2[w][v])
                                for (std::size_t j = 0; j < words; ++j) out[j] &= truth[body][v][j];
                        break;
                    }
                    }
                }
            }

            // First valuation (lowest index), then first world, falsifying f.
            const std::size_t top = subs.size() - 1;
            std::uint64_t best = nvals;
            unsigned best_world = 0;
            for (unsigned w = 0; w < n; ++w) {
                for (std::size_t j = 0; j < words; ++j) {
                    std::uint64_t miss = ~truth[top][w][j] & (j + 1 == words ? tail_mask : ~std::uint64_t{0});
                    if (miss) {
                        std::uint64_t v = j * 64 + static_cast<std::uint64_t>(__builtin_ctzll(miss));
                        if (v < best) {
                            best = v;
                            best_world = w;
                        }
                        break;
                    }
                }
            }
            if (best == nvals) continue;

            std::set<unsigned> worlds;
            Relation r;
            std::map<unsigned, std::set<unsigned>> val;
            for (unsigned u = 0; u < n; ++u) {
                worlds.insert(u);
                for (unsigned v = 0; v < n; ++v)
                    if (R[u][v]) r.insert({u, v});
            }
            for (std::size_t k = 0; k < vars.size(); ++k)
                for (unsigned w = 0; w < n; ++w)
                    if ((best >> (k * n + w)) & 1) val[w].insert(vars[k]);
            return Countermodel{KripkeModel::make(std::move(worlds), std::move(r), std::move(val)), best_world};
        }
    }
    return std::nullopt;
}

}  // namespace kplus
