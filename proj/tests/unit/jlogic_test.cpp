#include "doctest.h"

#include <random>
#include <unordered_map>

#include "kplus/engine.hpp"
#include "kplus/jlemmas.hpp"
#include "kplus/syntax.hpp"
#include "support/random.hpp"

using namespace kplus;

namespace {

using J = JFormula;

J jf(const char* s) { return parse_jformula(s); }

// Reference truth-table evaluator; bracketed formulas are atoms.
bool tt_eval(J f, std::unordered_map<J, bool>& atoms, std::vector<J>& order, unsigned long long v) {
    if (f.is_bot()) return false;
    if (f.is_imp()) return !tt_eval(f.lhs(), atoms, order, v) || tt_eval(f.rhs(), atoms, order, v);
    auto it = std::find(order.begin(), order.end(), f);
    std::size_t i = it - order.begin();
    if (it == order.end()) order.push_back(f);
    return (v >> i) & 1;
}

bool tautology(J f) {
    std::vector<J> order;
    std::unordered_map<J, bool> atoms;
    tt_eval(f, atoms, order, 0);  // collects atoms
    for (unsigned long long v = 0; v < (1ULL << order.size()); ++v)
        if (!tt_eval(f, atoms, order, v)) return false;
    return true;
}

void require_ok(const JProof& p, J expected) {
    JProofVerdict v = check_proof(p);
    CHECK_MESSAGE(v.ok, (v.errors.empty() ? "" : v.errors.front()));
    CHECK(p.conclusion() == expected);
}

unsigned count_apps(Term t) {
    if (!t.valid()) return 0;
    return (t.kind() == TermKind::App ? 1 : 0) + count_apps(t.left()) + count_apps(t.right());
}

}  // namespace

TEST_CASE("match_axiom recognizes schemas") {
    auto iv = match_axiom(jf("[x0](p -> q) -> [x1]p -> [(x0.x1)]q"));
    REQUIRE(iv);
    CHECK(iv->schema == Schema::IV);
    auto vii = match_axiom(jf("[y0]tc p -> [head(y0)]p"));
    REQUIRE(vii);
    CHECK(vii->schema == Schema::VII);
    CHECK(!match_axiom(jf("p -> p")));
    auto cs = match_axiom(J::just_tc(Term::constant(3), jf("~~q -> q")));
    REQUIRE(cs);
    CHECK(cs->schema == Schema::Cs);
    CHECK(cs->constant == 3);
    CHECK(cs->inner->schema == Schema::III);
}

TEST_CASE("every schema instance is matched back to an instance with the same formula") {
    std::mt19937_64 rng(7);
    using testing::random_jformula;
    using testing::random_term;
    for (int k = 0; k < 200; ++k) {
        J a = random_jformula(rng, 2), b = random_jformula(rng, 2), c = random_jformula(rng, 2);
        Term w1 = random_term(rng, Sort::First, 2), w2 = random_term(rng, Sort::First, 2);
        Term s1 = random_term(rng, Sort::Second, 2), s2 = random_term(rng, Sort::Second, 2);
        std::vector<AxiomInstance> all{AxiomInstance::i(a, b),        AxiomInstance::ii(a, b, c),
                                       AxiomInstance::iii(a),         AxiomInstance::iv(w1, w2, a, b),
                                       AxiomInstance::v(w1, w2, a),   AxiomInstance::vi(s1, s2, a, b),
                                       AxiomInstance::vii(s1, a),     AxiomInstance::viii(s1, a),
                                       AxiomInstance::ix(w1, s1, a),  AxiomInstance::x(s1, s2, a)};
        for (const AxiomInstance& inst : all) {
            auto m = match_axiom(inst.formula());
            REQUIRE(m);
            CHECK(m->formula() == inst.formula());
            CHECK(m->schema <= inst.schema);
        }
    }
}

TEST_CASE("check_proof on small proofs") {
    J p = jf("p");
    ProofBuilder b;
    std::size_t s1 = b.axiom(AxiomInstance::ii(p, J::imp(p, p), p));
    std::size_t s2 = b.axiom(AxiomInstance::i(p, J::imp(p, p)));
    std::size_t s3 = b.mp(s2, s1);
    std::size_t s4 = b.axiom(AxiomInstance::i(p, p));
    JProof id = b.extract(b.mp(s4, s3));
    CHECK(id.steps.size() == 5);
    JProofVerdict v = check_proof(id);
    CHECK(v.ok);
    CHECK(v.injective);
    CHECK(v.cs.size() == 0);

    JProof two;
    for (J body : {jf("p -> q -> p"), jf("~~p -> p")}) {
        JStep st;
        st.axiom = AxiomInstance::cs(0, *match_axiom(body));
        st.formula = st.axiom.formula();
        two.steps.push_back(st);
    }
    v = check_proof(two);
    CHECK(v.ok);
    CHECK(!v.injective);
    ConstantSpecification only_first;
    only_first.insert(0, jf("p -> q -> p"));
    CHECK(!check_proof(two, &only_first).ok);

    JProof bad = id;
    bad.steps[2].major = 1;  // cites axiom (i), whose antecedent is not step 1
    bad.steps[2].minor = 0;
    CHECK(!check_proof(bad).ok);
    JProof nonimp;
    nonimp.steps.push_back(two.steps[0]);
    JStep m;
    m.kind = JStep::Kind::MP;
    m.minor = 0;
    m.major = 0;
    m.formula = jf("q");
    nonimp.steps.push_back(m);
    CHECK(!check_proof(nonimp).ok);
}

TEST_CASE("prop_proof examples") {
    require_ok(prop_proof(jf("p -> p")), jf("p -> p"));
    JProof dn = prop_proof(jf("~~p -> p"));
    CHECK(dn.steps.size() == 1);
    CHECK(dn.steps[0].axiom.schema == Schema::III);
    J conj = J::imp(J::conj(jf("[x0]p"), jf("[y1]tc q")), jf("[x0]p"));
    require_ok(prop_proof(conj), conj);
    require_ok(prop_proof(jf("q"), {jf("p"), jf("p -> q")}), jf("p -> (p -> q) -> q"));
    CHECK_THROWS_AS(prop_proof(jf("p -> q")), std::invalid_argument);
    CHECK_THROWS_AS(prop_proof(jf("[x0]p"), {jf("[x1]p")}), std::invalid_argument);
}

TEST_CASE("prop_proof agrees with truth tables over three atoms") {
    std::mt19937_64 rng(11);
    int proved = 0;
    for (int k = 0; k < 1500; ++k) {
        J f = testing::random_jformula(rng, 4);
        if (k % 3 == 0) f = J::imp(f, J::disj(J::var(0), f));
        if (tautology(f)) {
            JProof p = prop_proof(f);
            JProofVerdict v = check_proof(p);
            CHECK(v.ok);
            CHECK(v.cs.size() == 0);
            CHECK(p.conclusion() == f);
            ++proved;
        } else {
            CHECK_THROWS_AS(prop_proof(f), std::invalid_argument);
        }
    }
    CHECK(proved > 20);
}

TEST_CASE("prop_proof handles many atoms beyond the truth-table limit") {
    std::vector<J> hyps;
    for (unsigned i = 0; i < 20; ++i) hyps.push_back(J::imp(J::var(i), J::var(i + 1)));
    hyps.push_back(J::var(0));
    JProof p = prop_proof(J::var(20), hyps);
    require_ok(p, implication_chain(hyps, J::var(20)));
    hyps.pop_back();
    CHECK_THROWS_AS(prop_proof(J::var(20), hyps), std::invalid_argument);
}

TEST_CASE("substitute_proof") {
    J f = jf("[x0]p -> [x0]p");
    JProof p = prop_proof(f);
    JSubstitution id;
    CHECK(substitute_proof(p, id).steps.size() == p.steps.size());
    CHECK(substitute_proof(p, id).conclusion() == f);
    JSubstitution s;
    s.set(Term::x(0), Term::head(Term::y(0)));
    require_ok(substitute_proof(p, s), jf("[head(y0)]p -> [head(y0)]p"));
    CHECK_THROWS_AS(s.set(Term::x(1), Term::y(0)), std::invalid_argument);
}

TEST_CASE("internalize_axiom cases") {
    ConstantAllocator alloc;
    AxiomInstance ax = AxiomInstance::i(jf("p"), jf("q"));
    Internalized r = internalize_axiom({}, ax, alloc);
    CHECK(r.s == Term::constant(0));
    CHECK(r.cs.size() == 1);
    CHECK(r.cs.contains(0, ax.formula()));
    require_ok(r.proof, J::just_tc(r.s, ax.formula()));

    ConstantAllocator alloc2;
    AxiomInstance spec = AxiomInstance::cs(0, AxiomInstance::iii(jf("q")));
    ConstantSpecification cs0;
    cs0.insert(0, spec.inner->formula());
    Internalized r2 = internalize_axiom(cs0, spec, alloc2);
    CHECK(r2.s == Term::ind(Term::tail(Term::constant(0)), Term::constant(1)));
    require_ok(r2.proof, J::just_tc(r2.s, spec.formula()));
    CHECK(r2.cs.injective());
    JProofVerdict v = check_proof(r2.proof, &r2.cs);
    CHECK(v.ok);
    CHECK(v.injective);
}

TEST_CASE("internalize folds mp through axiom (vi)") {
    J goal = jf("p -> p");
    ProofBuilder b;
    std::size_t s1 = b.axiom(AxiomInstance::ii(jf("p"), goal, jf("p")));
    std::size_t s2 = b.axiom(AxiomInstance::i(jf("p"), goal));
    std::size_t s3 = b.mp(s2, s1);
    std::size_t s4 = b.axiom(AxiomInstance::i(jf("p"), jf("p")));
    JProof p = b.extract(b.mp(s4, s3));
    ConstantAllocator alloc;
    Internalized r = internalize(p, alloc);
    CHECK(r.s.ground());
    CHECK(count_apps(r.s) == 2);
    require_ok(r.proof, J::just_tc(r.s, goal));
    CHECK(check_proof(r.proof).injective);

    JProof single = b.extract(s4);
    ConstantAllocator alloc2;
    CHECK(internalize(single, alloc2).s == Term::constant(0));
}

TEST_CASE("lift produces the documented term shapes") {
    ConstantAllocator alloc;
    Lifted l0 = lift(prop_proof(jf("p -> p")), {}, 0, alloc);
    REQUIRE(l0.h.kind() == TermKind::Head);
    require_ok(l0.proof, J::just(l0.h, jf("p -> p")));

    Lifted l1 = lift(prop_proof(jf("p -> q -> p")), {Term::x(4)}, 0, alloc);
    REQUIRE(l1.h.kind() == TermKind::App);
    CHECK(l1.h.left().kind() == TermKind::Head);
    CHECK(l1.h.right() == Term::x(4));
    require_ok(l1.proof, J::imp(jf("[x4]p"), J::just(l1.h, jf("q -> p"))));

    J b1 = jf("q"), s1b1 = J::just_tc(Term::y(2), b1);
    Lifted l2 = lift(prop_proof(J::imp(J::conj(b1, s1b1), b1)), {}, 1, alloc);
    Term head_t = l2.h.left().left();
    CHECK(head_t.kind() == TermKind::Head);
    CHECK(l2.h.left().right() == Term::head(Term::y(2)));
    CHECK(l2.h.right() == Term::tail(Term::y(2)));
    require_ok(l2.proof, J::imp(s1b1, J::just(l2.h, b1)));
    CHECK(check_proof(l2.proof).injective);

    CHECK_THROWS_AS(lift(prop_proof(jf("p -> p")), {Term::x(0), Term::x(1)}, 0, alloc), std::invalid_argument);
}

TEST_CASE("induction_term yields B -> [s1.ind(w,s0)]tc A") {
    // B := [x0]p, A := p; B -> [x0](p & B) is not valid, so use a hypothesis-free
    // instance: A := ~bot, B := bot.
    J a = J::top(), bform = J::bot();
    Term w = Term::x(0);
    J goal = J::imp(bform, J::just(w, J::conj(a, bform)));
    JProof p = prop_proof(goal);
    ConstantAllocator alloc;
    InductionTerm t = induction_term(p, alloc);
    CHECK(t.s0.ground());
    CHECK(t.s1.ground());
    require_ok(t.proof, J::imp(bform, J::just_tc(Term::app(t.s1, Term::ind(w, t.s0)), a)));
    CHECK(check_proof(t.proof).injective);
    CHECK(t.at(Term::x(5)) == Term::app(t.s1, Term::ind(Term::x(5), t.s0)));
}

TEST_CASE("rename_constants") {
    ConstantAllocator alloc;
    AxiomInstance ax = AxiomInstance::iii(jf("p"));
    Internalized r = internalize_axiom({}, ax, alloc);
    CHECK(rename_constants(r.proof, {}).conclusion() == r.proof.conclusion());
    JProof moved = rename_constants(r.proof, {{0, 5}});
    require_ok(moved, J::just_tc(Term::constant(5), ax.formula()));
    CHECK(constant_specification(moved).contains(5, ax.formula()));

    ConstantAllocator other;
    Internalized r2 = internalize_axiom({}, AxiomInstance::i(jf("p"), jf("q")), other);
    ConstantSpecification u = constant_specification(r.proof);
    u.merge(constant_specification(r2.proof));
    CHECK(!u.injective());
    u = constant_specification(moved);
    u.merge(constant_specification(r2.proof));
    CHECK(u.injective());
    JProof both;
    both.steps = {moved.steps[0], r2.proof.steps[0]};
    CHECK_THROWS_AS(rename_constants(both, {{5, 0}}), std::invalid_argument);
}

TEST_CASE("forgetful images of proof steps are K+ theorems") {
    ConstantAllocator alloc;
    AxiomInstance spec = AxiomInstance::cs(0, AxiomInstance::iii(jf("q")));
    JProof p = internalize_axiom({}, spec, alloc).proof;
    Lifted l = lift(prop_proof(jf("p -> q -> p")), {Term::x(0)}, 0, alloc);
    p.steps.insert(p.steps.end(), l.proof.steps.begin(), l.proof.steps.end());
    Prover prover;
    std::set<J> seen;
    for (const JStep& s : p.steps) {
        if (!seen.insert(s.formula).second || s.formula.size() > 40) continue;
        CHECK_MESSAGE(prover.provable(Sequent({}, {forgetful(s.formula)})), render(s.formula));
    }
    CHECK(seen.size() > 10);
}
