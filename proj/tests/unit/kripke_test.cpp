#include "doctest.h"

#include <random>

#include "kplus/kripke.hpp"
#include "kplus/syntax.hpp"
#include "support/random.hpp"

using namespace kplus;

namespace {

// Reference evaluator written against matrices rather than edge sets.
bool reference_eval(const std::vector<std::vector<bool>>& R, const std::vector<std::vector<bool>>& P,
                    const std::vector<std::set<unsigned>>& V, unsigned w, Formula f) {
    switch (f.kind()) {
    case FormulaKind::Var: return V[w].count(f.var_index()) > 0;
    case FormulaKind::Bot: return false;
    case FormulaKind::Imp: return !reference_eval(R, P, V, w, f.lhs()) || reference_eval(R, P, V, w, f.rhs());
    default: {
        const auto& rel = f.is_box() ? R : P;
        for (unsigned v = 0; v < rel.size(); ++v)
            if (rel[w][v] && !reference_eval(R, P, V, v, f.body())) return false;
        return true;
    }
    }
}

}  // namespace

TEST_CASE("transitive closure") {
    CHECK(transitive_closure({}).empty());
    CHECK(transitive_closure({{0, 1}, {1, 2}}) == Relation{{0, 1}, {1, 2}, {0, 2}});
    CHECK(transitive_closure({{0, 0}}) == Relation{{0, 0}});
    Relation r{{0, 1}, {1, 0}, {2, 3}};
    CHECK(transitive_closure(transitive_closure(r)) == transitive_closure(r));
}

TEST_CASE("eval on the three-world chain") {
    KripkeModel m = KripkeModel::make({0, 1, 2}, {{0, 1}, {1, 2}}, {{1, {0}}});
    CHECK(m.valid());
    CHECK(eval(m, 0, parse_formula("[]p")));
    CHECK_FALSE(eval(m, 0, parse_formula("[+]p")));
    CHECK_FALSE(eval(m, 2, Formula::bot()));
    CHECK_THROWS_AS(eval(m, 7, Formula::bot()), std::out_of_range);
    KripkeModel broken = m;
    broken.rplus = broken.r;
    CHECK_FALSE(broken.valid());
}

TEST_CASE("search_countermodel") {
    auto cm = search_countermodel(parse_formula("[]p -> [+]p"), 3);
    REQUIRE(cm);
    CHECK(cm->model.valid());
    CHECK_FALSE(eval(cm->model, cm->world, parse_formula("[]p -> [+]p")));
    // Frozen: the first countermodel in enumeration order has two worlds.
    CHECK(cm->model.worlds.size() == 2);
    CHECK_FALSE(search_countermodel(parse_formula("p -> p"), 3));
    CHECK_FALSE(search_countermodel(parse_formula("[+]p -> []p"), 4));
}

TEST_CASE("eval agrees with a matrix-based reference on random models") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 300; ++round) {
        unsigned n = 1 + static_cast<unsigned>(rng() % 5);
        std::set<unsigned> worlds;
        Relation r;
        std::map<unsigned, std::set<unsigned>> val;
        std::vector<std::set<unsigned>> V(n);
        std::vector<std::vector<bool>> R(n, std::vector<bool>(n)), P(n, std::vector<bool>(n));
        for (unsigned u = 0; u < n; ++u) {
            worlds.insert(u);
            for (unsigned v = 0; v < n; ++v)
                if (rng() % 3 == 0) r.insert({u, v}), R[u][v] = true;
            for (unsigned k = 0; k < 2; ++k)
                if (rng() % 2) val[u].insert(k), V[u].insert(k);
        }
        P = R;
        for (unsigned k = 0; k < n; ++k)
            for (unsigned u = 0; u < n; ++u)
                for (unsigned v = 0; v < n; ++v)
                    if (P[u][k] && P[k][v]) P[u][v] = true;
        KripkeModel m = KripkeModel::make(worlds, r, val);
        Formula f = random_formula(rng, 8, 2);
        for (unsigned w = 0; w < n; ++w) CHECK(eval(m, w, f) == reference_eval(R, P, V, w, f));
    }
}
