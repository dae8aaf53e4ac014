#include "doctest.h"

#include <random>

#include "kplus/syntax.hpp"
#include "kplus/translate.hpp"
#include "support/random.hpp"

using namespace kplus;

TEST_CASE("size follows the defining clauses") {
    CHECK(Formula::bot().size() == 1);
    CHECK(parse_formula("p -> false").size() == 3);
    CHECK(parse_formula("[+]p -> []p").size() == 5);
}

TEST_CASE("parse builds the expected trees") {
    Formula p = Formula::var(0);
    CHECK(parse_formula("[+]p -> []p") == Formula::imp(Formula::boxplus(p), Formula::box(p)));
    CHECK(parse_formula("p -> q -> r") ==
          Formula::imp(p, Formula::imp(Formula::var(1), Formula::var(2))));
    CHECK(parse_formula("p7") == Formula::var(7));
    CHECK(parse_formula("[]_3 p") == Formula::box(p, 3));
    CHECK(parse_formula("p & q") == Formula::conj(p, Formula::var(1)));
    CHECK(parse_jformula("[y0]tc p") == JFormula::just_tc(Term::y(0), JFormula::var(0)));
    CHECK(parse_term("ind(head(y1_2),(c0 . y3))") ==
          Term::ind(Term::head(Term::y_prov(1, 2)), Term::app(Term::constant(0), Term::y(3))));
}

TEST_CASE("malformed input reports a position") {
    try {
        parse_formula("p ->");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse_formula("[x0]p"), ParseError);
    CHECK_THROWS_AS(parse_jformula("[y0]p"), ParseError);
    CHECK_THROWS_AS(parse_jformula("[x0]tc p"), ParseError);
    CHECK_THROWS_AS(parse_sequent("p |- q @ []q"), ParseError);
}

TEST_CASE("render inserts spaces only between alphanumerics") {
    CHECK(render(parse_formula("[+] p -> [] p")) == "[+]p -> []p");
    CHECK(render(parse_formula("[]_3 p")) == "[]_3 p");
    CHECK(render(parse_jformula("[y0]tc p")) == "[y0]tc p");
    CHECK(render(parse_jformula("[x0](p -> q)")) == "[x0](p -> q)");
    CHECK(render(parse_sequent("p, []p, [+](p -> []p) |- [+]p")) ==
          "p, []p, [+](p -> []p) |- [+]p @ *");
}

TEST_CASE("sequent focus suffix") {
    auto s = parse_sequent("[+]_2 p |- [+]_1 p @ [+]_1 p");
    CHECK(s.focus == Formula::boxplus(Formula::var(0), 1));
    CHECK(s.well_formed());
    auto t = parse_sequent("|-");
    CHECK(t.seq.ante.empty());
    CHECK(t.seq.succ.empty());
}

TEST_CASE("dedup removes repetitions") {
    Formula p = Formula::var(0), q = Formula::var(1);
    Formula b = parse_formula("[+](p -> q)");
    Multiset m({p, p, p, q, b, b});
    Multiset d = dedup(m);
    CHECK(d.total() == 3);
    CHECK(d.count(p) == 1);
    CHECK(d.count(b) == 1);
    CHECK(dedup(Multiset{}).total() == 0);
}

TEST_CASE("forgetful and erase") {
    CHECK(forgetful(parse_jformula("p")) == parse_formula("p"));
    CHECK(forgetful(parse_jformula("[x0]p")) == parse_formula("[]p"));
    CHECK(forgetful(parse_jformula("[y0]tc p -> [head(y0)]p")) == parse_formula("[+]p -> []p"));
    CHECK(erase(parse_formula("[+]_0 p")) == parse_formula("[+]p"));
    CHECK(erase(parse_formula("[]_1(p -> []_2 q)")) == parse_formula("[](p -> []q)"));
}

TEST_CASE("proper_annotate uses smallest fresh labels by parity") {
    LabelAllocator a;
    CHECK(render(proper_annotate(parse_formula("[+]p -> []p"), true, a)) == "[+]_0 p -> []_1 p");
    LabelAllocator b;
    Formula f = proper_annotate(parse_formula("[]p -> []p"), true, b);
    CHECK(render(f) == "[]_0 p -> []_1 p");
    LabelAllocator c;
    CHECK(proper_annotate(Formula::var(0), true, c) == Formula::var(0));
}

TEST_CASE("g translation clauses") {
    BoundingFunction g;
    CHECK(render(g_translate(parse_formula("[]_0 p"), g)) == "[x0]p");
    g.set(0, 2);
    CHECK(render(g_translate(parse_formula("[]_1 p"), g)) == "[(x1_0 + x1_1)]p");
    CHECK(render(g_translate(parse_formula("[+]_1 p"), g)) == "[y1]tc p");
}

TEST_CASE("round trip and structural properties on random trees") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Formula f = testing::random_formula(rng, 8, 3, true);
        CHECK(parse_formula(render(f)) == f);
        LabelAllocator alloc;
        Formula a = proper_annotate(f, true, alloc);
        CHECK(erase(a) == f);
        CHECK(parity_consistent(a, true));
        CHECK(properly_annotated({a}));
        BoundingFunction g;
        g.set(0, 1);
        g.set(1, 2);
        g.set(4, 3);
        CHECK(forgetful(g_translate(a, g)) == erase(a));
        for (Formula s : subformulas(f))
            if (s != f) CHECK(s.size() < f.size());
        JFormula j = testing::random_jformula(rng, 8);
        CHECK(parse_jformula(render(j)) == j);
        CHECK(parse_formula(render(a)) == a);
    }
}
