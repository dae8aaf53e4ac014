#include "doctest.h"

#include <random>

#include "kplus/engine.hpp"
#include "kplus/generate.hpp"
#include "kplus/syntax.hpp"

using namespace kplus;

namespace {

Sequent theorem(const char* text) { return Sequent({}, {parse_formula(text)}); }

bool falsifies(const Countermodel& cm, const Sequent& s) {
    return !eval(cm.model, cm.world, sequent_formula(s));
}

}  // namespace

TEST_CASE("paper example is provable through an imp-left / boxplus cycle") {
    FocusedSequent s = parse_sequent("p, []p, [+](p -> []p) |- [+]p");
    Decision d = decide(s);
    REQUIRE(d.verdict == Verdict::Provable);
    REQUIRE(d.proof);
    CHECK(check_cyclic(*d.proof).ok());
    REQUIRE(!d.proof->backlinks.empty());
    auto par = d.proof->parents();
    for (auto [leaf, target] : d.proof->backlinks) {
        for (std::size_t cur = par[leaf]; ; cur = par[cur]) {
            Rule r = d.proof->nodes[cur].rule;
            CHECK((r == Rule::ImpLeft || r == Rule::BoxPlus));
            if (cur == target) break;
        }
    }
}

TEST_CASE("axiom schemas are provable") {
    Formula p = Formula::var(0), q = Formula::var(1), r = Formula::var(2);
    for (Formula a : kplus_axioms(p, q, r)) {
        Decision d = decide(Sequent({}, {a}));
        CHECK_MESSAGE(d.verdict == Verdict::Provable, render(a));
        if (d.proof) CHECK(check_cyclic(*d.proof).ok());
    }
}

TEST_CASE("non-theorems are refuted with verified countermodels") {
    for (const char* text : {"[]p -> [+]p", "[+]p -> p", "[]p -> p", "p", "[+]p", "[+]([]p -> p)"}) {
        Sequent s = theorem(text);
        Prover prover;
        REQUIRE(!prover.provable(s));
        RefutationTree t = refute(s, prover);
        CheckResult ok = check_refutation(t, prover);
        CHECK_MESSAGE(ok.ok(), text << ": " << (ok.ok() ? "" : ok.errors.front()));
        Countermodel cm = model_from_refutation(t);
        CHECK(cm.model.valid());
        CHECK_MESSAGE(falsifies(cm, s), text);
    }
}

TEST_CASE("refutation of => p is a one-world model") {
    Prover prover;
    RefutationTree t = refute(theorem("p"), prover);
    Countermodel cm = model_from_refutation(t);
    CHECK(cm.model.worlds.size() == 1);
    CHECK(cm.model.r.empty());
}

TEST_CASE("check_cyclic rejects a back-link without a boxplus crossing") {
    Decision d = decide(parse_sequent("p, []p, [+](p -> []p) |- [+]p"));
    REQUIRE(d.proof);
    CyclicProof bad = *d.proof;
    auto [leaf, target] = *bad.backlinks.begin();
    // Retarget to the leaf's parent: same sequent fails and no crossing remains.
    bad.backlinks[leaf] = bad.parents()[leaf];
    CHECK(!check_cyclic(bad).ok());
    CyclicProof axiom;
    axiom.nodes.push_back(ProofNode{parse_sequent("p |- p"), Rule::AxiomVar, {}, {}, -1});
    CHECK(check_cyclic(axiom).ok());
}

TEST_CASE("check_refutation rejects a provable node and a missing boxplus witness") {
    Prover prover;
    RefutationTree t = refute(theorem("[]p -> [+]p"), prover);
    RefutationTree bad = t;
    bad.nodes[0].seq = theorem("p -> p");
    CHECK(!check_refutation(bad, prover).ok());

    // => []+p with the crossbox premise Theta => p dropped.
    RefutationTree u = refute(theorem("[+]p"), prover);
    for (auto& n : u.nodes)
        if (n.rule == Rule::CrossBox) {
            std::erase_if(n.children, [&](std::size_t c) { return u.nodes[c].seq.succ == std::vector<Formula>{Formula::var(0)}; });
        }
    CHECK(!check_refutation(u, prover).ok());
}

TEST_CASE("saturation trees") {
    Prover prover;
    RefutationTree single = saturate(parse_sequent("p |- q").seq, prover);
    CHECK(single.nodes.size() == 1);
    RefutationTree t = saturate(parse_sequent("p -> q |- q").seq, prover);
    CHECK(t.nodes[0].rule == Rule::ImpLeft2);
    for (const RefNode& n : t.nodes)
        if (n.children.empty()) CHECK(n.seq.is_saturated());
    CHECK_THROWS_AS(saturate(theorem("p -> p"), prover), std::invalid_argument);
}

TEST_CASE("weakening preserves provability on the corpus") {
    std::vector<CorpusEntry> corpus = axiom_corpus(1, 2);
    Formula extra = parse_formula("[]q -> p");
    for (std::size_t i = 0; i < corpus.size(); i += 5) {
        Sequent s({}, {corpus[i].formula});
        REQUIRE(decide(s, {1'000'000, true}).verdict == Verdict::Provable);
        CHECK(decide(Sequent({extra}, {corpus[i].formula}), {1'000'000, true}).verdict == Verdict::Provable);
        CHECK(decide(Sequent({}, {corpus[i].formula, extra}), {1'000'000, true}).verdict == Verdict::Provable);
    }
}

TEST_CASE("decide agrees with brute force on small random formulas") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 150; ++i) {
        Formula f = random_formula(rng, 7, 2);
        Sequent s({}, {f});
        Decision d = decide(s);
        REQUIRE(d.verdict != Verdict::BudgetExceeded);
        auto cm = search_countermodel(f, 3);
        if (d.verdict == Verdict::Provable) {
            CHECK_MESSAGE(!cm, render(f));
            CHECK(check_cyclic(*d.proof).ok());
        } else {
            Countermodel m = model_from_refutation(*d.refutation);
            CHECK_MESSAGE(falsifies(m, s), render(f));
        }
    }
}

TEST_CASE("budget is reported distinctly") {
    Decision d = decide(theorem("[]p & [+](p -> []p) -> [+]p"), {3, false});
    CHECK(d.verdict == Verdict::BudgetExceeded);
}
