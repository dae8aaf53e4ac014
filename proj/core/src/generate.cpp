#include "kplus/generate.hpp"

#include <algorithm>
#include <unordered_set>

namespace kplus {

Formula random_formula_of_size(std::mt19937_64& rng, unsigned size, unsigned vars) {
    auto pick = [&](unsigned n) { return static_cast<unsigned>(std::uniform_int_distribution<unsigned>(0, n - 1)(rng)); };
    if (size <= 1) {
        unsigned k = pick(vars + 1);
        return k == vars ? Formula::bot() : Formula::var(k);
    }
    if (size == 2) {
        Formula b = random_formula_of_size(rng, 1, vars);
        return pick(2) ? Formula::box(b) : Formula::boxplus(b);
    }
    unsigned choice = pick(4);
    if (choice < 2) {
        unsigned left = 1 + pick(size - 2);
        return Formula::imp(random_formula_of_size(rng, left, vars),
                            random_formula_of_size(rng, size - 1 - left, vars));
    }
    Formula b = random_formula_of_size(rng, size - 1, vars);
    return choice == 2 ? Formula::box(b) : Formula::boxplus(b);
}

Formula random_formula(std::mt19937_64& rng, unsigned max_size, unsigned vars) {
    unsigned size = std::uniform_int_distribution<unsigned>(1, std::max(1u, max_size))(rng);
    return random_formula_of_size(rng, size, vars);
}

std::vector<Formula> kplus_axioms(Formula a, Formula b, Formula c) {
    using F = Formula;
    return {
        F::imp(a, F::imp(b, a)),
        F::imp(F::imp(a, F::imp(b, c)), F::imp(F::imp(a, b), F::imp(a, c))),
        F::imp(F::neg(F::neg(a)), a),
        F::imp(F::box(F::imp(a, b)), F::imp(F::box(a), F::box(b))),
        F::imp(F::boxplus(F::imp(a, b)), F::imp(F::boxplus(a), F::boxplus(b))),
        F::imp(F::boxplus(a), F::box(a)),
        F::imp(F::boxplus(a), F::box(F::boxplus(a))),
        F::imp(F::conj(F::box(a), F::boxplus(F::imp(a, F::box(a)))), F::boxplus(a)),
    };
}

std::vector<CorpusEntry> axiom_corpus(unsigned depth, unsigned vars, std::uint64_t seed,
                                      std::size_t limit) {
    std::vector<Formula> pool;
    for (unsigned i = 0; i < std::max(1u, vars); ++i) pool.push_back(Formula::var(i));

    std::vector<CorpusEntry> out;
    std::unordered_set<Formula> seen;
    auto add = [&](Formula f, std::string origin) {
        if (seen.insert(f).second)
            out.push_back({f, CorpusEntry::Expected::Provable, std::move(origin)});
    };

    // Schema instances; a schema only uses the metavariables it mentions, so
    // redundant instantiations collapse through `seen`.
    for (unsigned schema = 0; schema < 8; ++schema)
        for (Formula a : pool)
            for (Formula b : pool)
                for (Formula c : pool)
                    add(kplus_axioms(a, b, c)[schema], "axiom" + std::to_string(schema + 1));

    std::size_t begin = 0;
    for (unsigned round = 0; round < depth; ++round) {
        std::size_t end = out.size();
        std::unordered_set<Formula> current;
        for (std::size_t i = 0; i < end; ++i) current.insert(out[i].formula);
        for (std::size_t i = begin; i < end; ++i) {
            Formula f = out[i].formula;
            std::string id = std::to_string(i);
            add(Formula::boxplus(f), "nec(" + id + ")");
            if (f.is_imp()) {
                // mp with the schema-5 instance at f and the necessitation of f.
                add(Formula::imp(Formula::boxplus(f.lhs()), Formula::boxplus(f.rhs())),
                    "mp(nec(" + id + "),axiom5)");
                if (current.count(f.lhs())) add(f.rhs(), "mp(" + id + ")");
            }
        }
        begin = end;
    }

    if (out.size() > limit) {
        std::size_t axioms = 0;
        while (axioms < out.size() && out[axioms].origin.rfind("axiom", 0) == 0) ++axioms;
        std::vector<std::size_t> rest;
        for (std::size_t i = axioms; i < out.size(); ++i) rest.push_back(i);
        std::mt19937_64 rng(seed);
        std::shuffle(rest.begin(), rest.end(), rng);
        std::size_t keep = limit > axioms ? limit - axioms : 0;
        rest.resize(std::min(rest.size(), keep));
        std::sort(rest.begin(), rest.end());
        std::vector<CorpusEntry> trimmed(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(std::min(axioms, limit)));
        for (std::size_t i : rest) trimmed.push_back(out[i]);
        out = std::move(trimmed);
    }
    return out;
}

}  // namespace kplus
