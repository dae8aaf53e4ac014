// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// Countermodels are verified with an evaluator written here, independent of
// kplus::eval and kplus::transitive_closure, and provable formulas are also
// cross-checked against a small exhaustive model search of our own.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kplus/annotate.hpp"
#include "kplus/engine.hpp"
#include "kplus/generate.hpp"
#include "kplus/jlemmas.hpp"
#include "kplus/kripke.hpp"
#include "kplus/realize.hpp"
#include "kplus/syntax.hpp"
#include "kplus/translate.hpp"

using namespace kplus;
using J = JFormula;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << " (" << detail << ")" << std::endl;
    failures += !ok;
}

std::string fmt_time(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

// ---------------------------------------------------------------------------
// Independent Kripke semantics.

struct Frame {
    std::vector<unsigned> worlds;
    std::map<unsigned, std::set<unsigned>> next, reach;
    std::map<unsigned, std::set<unsigned>> val;
};

Frame frame_of(const std::set<unsigned>& worlds, const Relation& r, const std::map<unsigned, std::set<unsigned>>& val) {
    Frame fr;
    fr.worlds.assign(worlds.begin(), worlds.end());
    fr.val = val;
    for (auto [a, b] : r) fr.next[a].insert(b);
    for (unsigned w : fr.worlds) {
        std::set<unsigned>& seen = fr.reach[w];
        std::vector<unsigned> todo(fr.next[w].begin(), fr.next[w].end());
        while (!todo.empty()) {
            unsigned v = todo.back();
            todo.pop_back();
            if (!seen.insert(v).second) continue;
            for (unsigned u : fr.next[v]) todo.push_back(u);
        }
    }
    return fr;
}

bool holds(const Frame& fr, unsigned w, Formula f) {
    switch (f.kind()) {
    case FormulaKind::Bot: return false;
    case FormulaKind::Var: {
        auto it = fr.val.find(w);
        return it != fr.val.end() && it->second.count(f.var_index());
    }
    case FormulaKind::Imp: return !holds(fr, w, f.lhs()) || holds(fr, w, f.rhs());
    case FormulaKind::Box:
    case FormulaKind::BoxPlus: {
        const auto& m = f.is_box() ? fr.next : fr.reach;
        auto it = m.find(w);
        if (it == m.end()) return true;
        for (unsigned v : it->second)
            if (!holds(fr, v, f.body())) return false;
        return true;
    }
    }
    return false;
}

// The model is well formed and f fails at its designated world.
bool falsifies(const Countermodel& c, Formula f) {
    const KripkeModel& m = c.model;
    if (!m.worlds.count(c.world)) return false;
    for (auto [a, b] : m.r)
        if (!m.worlds.count(a) || !m.worlds.count(b)) return false;
    Frame fr = frame_of(m.worlds, m.r, m.valuation);
    Relation plus;
    for (const auto& [a, vs] : fr.reach)
        for (unsigned b : vs) plus.emplace(a, b);
    if (plus != m.rplus) return false;
    return !holds(fr, c.world, f);
}

void collect_vars(Formula f, std::set<unsigned>& out) {
    if (f.is_var()) out.insert(f.var_index());
    if (f.is_imp()) collect_vars(f.rhs(), out);
    if (f.is_imp() || f.is_modal()) collect_vars(f.lhs(), out);
}

// Exhaustive search over every frame with at most max_worlds worlds.
bool brute_force_countermodel(Formula f, unsigned max_worlds) {
    std::set<unsigned> vars_set;
    collect_vars(f, vars_set);
    std::vector<unsigned> vars(vars_set.begin(), vars_set.end());
    for (unsigned n = 1; n <= max_worlds; ++n) {
        std::set<unsigned> worlds;
        for (unsigned w = 0; w < n; ++w) worlds.insert(w);
        for (unsigned long rel = 0; rel < (1UL << (n * n)); ++rel) {
            Relation r;
            for (unsigned a = 0; a < n; ++a)
                for (unsigned b = 0; b < n; ++b)
                    if (rel >> (a * n + b) & 1) r.emplace(a, b);
            Frame fr = frame_of(worlds, r, {});
            unsigned bits = n * static_cast<unsigned>(vars.size());
            for (unsigned long v = 0; v < (1UL << bits); ++v) {
                fr.val.clear();
                for (unsigned w = 0; w < n; ++w)
                    for (std::size_t k = 0; k < vars.size(); ++k)
                        if (v >> (w * vars.size() + k) & 1) fr.val[w].insert(vars[k]);
                for (unsigned w = 0; w < n; ++w)
                    if (!holds(fr, w, f)) return true;
            }
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Boxplus falsification: a node whose succedent holds []+C reaches a crossbox
// application with a premise of the form Theta => C. Checked from every node,
// since every node is the root of the refutation unravelled from it.

bool lemma8_holds(const RefutationTree& t, std::string* why) {
    const auto& N = t.nodes;
    for (std::size_t i = 0; i < N.size(); ++i) {
        for (Formula g : N[i].seq.succ) {
            if (!g.is_boxplus()) continue;
            Formula c = g.body();
            bool found = false;
            std::vector<char> seen(N.size(), 0);
            std::vector<std::size_t> stack{i};
            while (!stack.empty() && !found) {
                std::size_t k = stack.back();
                stack.pop_back();
                if (seen[k]) continue;
                seen[k] = 1;
                if (N[k].rule == Rule::CrossBox)
                    for (std::size_t ch : N[k].children)
                        if (N[ch].seq.succ.size() == 1 && N[ch].seq.succ[0] == c) found = true;
                for (std::size_t ch : N[k].children) stack.push_back(ch);
            }
            if (!found) {
                if (why) *why = "node " + std::to_string(i) + " lacks a premise => " + render(c);
                return false;
            }
        }
    }
    return true;
}

struct RefutationRecord {
    Formula formula;
    RefutationTree tree;
};
std::vector<RefutationRecord> refutations;

// ---------------------------------------------------------------------------
// Criterion 1.

void criterion1() {
    auto start = Clock::now();
    FocusedSequent goal = parse_sequent("p, []p, [+](p -> []p) |- [+]p");
    Decision d = decide(goal);
    double elapsed = seconds_since(start);
    std::string detail;
    bool ok = d.verdict == Verdict::Provable && d.proof && check_cyclic(*d.proof).ok();
    Formula h = parse_formula("p -> []p");
    bool cycle_found = false;
    if (ok) {
        const CyclicProof& p = *d.proof;
        std::vector<std::size_t> parent = p.parents();
        for (auto [leaf, target] : p.backlinks) {
            Formula focus = p.nodes[target].seq.focus;
            if (!focus.valid()) continue;
            bool shape = true, through_h = false, progress = false;
            for (std::size_t k = parent[leaf];; k = parent[k]) {
                const ProofNode& n = p.nodes[k];
                shape &= (n.rule == Rule::ImpLeft || n.rule == Rule::BoxPlus) && n.seq.focus == focus;
                through_h |= n.rule == Rule::ImpLeft && erase(n.principal) == h;
                progress |= n.rule == Rule::BoxPlus;
                if (k == target) break;
            }
            shape &= p.nodes[leaf].seq.focus == focus;
            if (shape && through_h && progress) cycle_found = true;
        }
        detail = std::to_string(p.nodes.size()) + " nodes, " + std::to_string(p.backlinks.size()) + " backlinks";
    }
    ok = ok && cycle_found && elapsed < 1.0;
    report(1, ok, "paper example decided with an imp-left/boxplus cycle",
           detail + (cycle_found ? ", cycle through H = p -> []p" : ", no matching cycle") + ", " + fmt_time(elapsed));
}

// ---------------------------------------------------------------------------
// Criterion 2.

void criterion2() {
    auto start = Clock::now();
    const char* axioms[] = {
        "p -> q -> p",
        "(p -> q -> r) -> (p -> q) -> p -> r",
        "~~p -> p",
        "[](p -> q) -> []p -> []q",
        "[+](p -> q) -> [+]p -> [+]q",
        "[+]p -> []p",
        "[+]p -> [][+]p",
        "[]p & [+](p -> []p) -> [+]p",
    };
    const char* non_theorems[] = {"[]p -> [+]p", "[+]p -> p", "[]p -> p"};
    std::vector<std::string> bad;

    std::set<Formula> literal, generated;
    for (const char* a : axioms) literal.insert(parse_formula(a));
    for (Formula f : kplus_axioms(parse_formula("p"), parse_formula("q"), parse_formula("r"))) generated.insert(f);
    if (literal != generated) bad.push_back("kplus_axioms differs from the listed schemas");

    for (const char* a : axioms) {
        Decision d = decide(Sequent({}, {parse_formula(a)}));
        if (d.verdict != Verdict::Provable || !check_cyclic(*d.proof).ok()) bad.push_back(a);
    }
    for (const char* a : non_theorems) {
        Formula f = parse_formula(a);
        Decision d = decide(Sequent({}, {f}));
        if (d.verdict != Verdict::Refutable) {
            bad.push_back(a);
            continue;
        }
        Prover prover;
        if (!check_refutation(*d.refutation, prover).ok()) bad.push_back(std::string(a) + " (refutation)");
        if (!falsifies(model_from_refutation(*d.refutation), f)) bad.push_back(std::string(a) + " (model)");
        if (!brute_force_countermodel(f, 2)) bad.push_back(std::string(a) + " (no small countermodel)");
        refutations.push_back({f, *d.refutation});
    }
    double elapsed = seconds_since(start);
    std::string detail = "8 axioms, 3 non-theorems, " + fmt_time(elapsed);
    if (!bad.empty()) detail = "failed: " + bad.front() + "; " + detail;
    report(2, bad.empty() && elapsed < 10.0, "axiom schemas provable, non-theorems refuted with verified models", detail);
}

// ---------------------------------------------------------------------------
// Criterion 3.

void criterion3() {
    auto start = Clock::now();
    std::mt19937_64 rng(2024);
    std::vector<Formula> formulas;
    std::set<Formula> seen;
    for (int attempts = 0; formulas.size() < 600 && attempts < 100000; ++attempts) {
        Formula f = random_formula(rng, 8, 2);
        if (seen.insert(f).second) formulas.push_back(f);
    }
    std::size_t provable = 0, refutable = 0, disagreements = 0;
    std::string first_bad;
    auto disagree = [&](Formula f, const char* why) {
        if (disagreements++ == 0) first_bad = render(f) + ": " + why;
    };
    for (Formula f : formulas) {
        Decision d = decide(Sequent({}, {f}));
        if (d.verdict == Verdict::Provable) {
            ++provable;
            if (!check_cyclic(*d.proof).ok()) disagree(f, "proof rejected");
            if (search_countermodel(f, 4)) disagree(f, "provable but a countermodel exists");
            if (brute_force_countermodel(f, 3)) disagree(f, "provable but the reference search finds a model");
        } else if (d.verdict == Verdict::Refutable) {
            ++refutable;
            Prover prover;
            if (!check_refutation(*d.refutation, prover).ok()) disagree(f, "refutation rejected");
            if (!falsifies(model_from_refutation(*d.refutation), f)) disagree(f, "extracted model does not falsify");
            if (auto m = search_countermodel(f, 4); m && !falsifies(*m, f)) disagree(f, "searched model does not falsify");
            refutations.push_back({f, *d.refutation});
        } else {
            disagree(f, "budget exceeded");
        }
    }
    double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << formulas.size() << " formulas, " << provable << " provable, " << refutable << " refutable, "
           << disagreements << " disagreements, " << fmt_time(elapsed);
    if (!first_bad.empty()) detail << "; first: " << first_bad;
    report(3, formulas.size() >= 500 && disagreements == 0 && elapsed < 600.0, "decide agrees with the model oracle",
           detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 4.

// Distinct plain variables of the matching sort at negative occurrences.
bool normal(Formula f, J j, bool positive, std::set<Term>& used) {
    if (f.is_var()) return j.is_var() && j.var_index() == f.var_index();
    if (f.is_bot()) return j.is_bot();
    if (f.is_imp()) return j.is_imp() && normal(f.lhs(), j.lhs(), !positive, used) && normal(f.rhs(), j.rhs(), positive, used);
    bool box = f.is_box();
    if (box ? !j.is_just() : !j.is_just_tc()) return false;
    if (!positive) {
        Term t = j.term();
        if (t.kind() != (box ? TermKind::X : TermKind::Y)) return false;
        if (!used.insert(t).second) return false;
    }
    return normal(f.body(), j.body(), positive, used);
}

std::vector<JFormula> step_formulas;

void criterion4() {
    auto start = Clock::now();
    std::vector<CorpusEntry> corpus = axiom_corpus(2, 2, 1, 200);
    std::set<JFormula> distinct;
    std::size_t passed = 0, steps = 0;
    double worst = 0;
    std::string first_bad;
    for (const CorpusEntry& e : corpus) {
        auto t0 = Clock::now();
        std::string why;
        try {
            RealizationResult r = realize_theorem(e.formula);
            std::set<Term> used;
            JProofVerdict v = check_proof(r.proof);
            bool prov_free = r.realized.provisional_free();
            for (const JStep& s : r.proof.steps) prov_free &= s.formula.provisional_free();
            if (forgetful(r.realized) != e.formula) why = "forgetful image differs";
            else if (!normal(e.formula, r.realized, true, used)) why = "not normal";
            else if (!v.ok) why = "proof rejected: " + (v.errors.empty() ? std::string() : v.errors.front());
            else if (!v.injective) why = "not injective";
            else if (r.proof.conclusion() != r.realized) why = "proof concludes something else";
            else if (!prov_free) why = "provisional variables remain";
            steps += r.proof.steps.size();
            for (const JStep& s : r.proof.steps)
                if (distinct.insert(s.formula).second) step_formulas.push_back(s.formula);
        } catch (const std::exception& ex) {
            why = ex.what();
        }
        worst = std::max(worst, seconds_since(t0));
        if (why.empty()) ++passed;
        else if (first_bad.empty()) first_bad = render(e.formula) + ": " + why;
    }
    double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << passed << "/" << corpus.size() << " realized, " << steps << " proof steps, slowest " << fmt_time(worst)
           << ", " << fmt_time(elapsed);
    if (!first_bad.empty()) detail << "; first: " << first_bad;
    report(4, corpus.size() >= 50 && passed == corpus.size() && elapsed < 1800.0,
           "realization round trip on the depth-2 axiom-closure corpus", detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 5.

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng); }

    Term term(Sort sort, unsigned depth) {
        if (depth == 0 || pick(3) == 0) {
            if (sort == Sort::First) return Term::x(pick(3));
            return pick(3) == 0 ? Term::constant(20 + pick(3)) : Term::y(pick(3));
        }
        switch (pick(3)) {
        case 0: return Term::app(term(sort, depth - 1), term(sort, depth - 1));
        case 1: return Term::sum(term(sort, depth - 1), term(sort, depth - 1));
        default:
            if (sort == Sort::First) return pick(2) ? Term::head(term(Sort::Second, depth - 1)) : Term::tail(term(Sort::Second, depth - 1));
            return Term::ind(term(Sort::First, depth - 1), term(Sort::Second, depth - 1));
        }
    }

    J formula(unsigned depth) {
        if (depth == 0 || pick(4) == 0) return pick(5) == 0 ? J::bot() : J::var(pick(3));
        switch (pick(4)) {
        case 0:
        case 1: return J::imp(formula(depth - 1), formula(depth - 1));
        case 2: return J::just(term(Sort::First, 1), formula(depth - 1));
        default: return J::just_tc(term(Sort::Second, 1), formula(depth - 1));
        }
    }

    AxiomInstance axiom() {
        J a = formula(2), b = formula(2), c = formula(1);
        auto t1 = [&] { return term(Sort::First, 1); };
        auto t2 = [&] { return term(Sort::Second, 1); };
        switch (pick(10)) {
        case 0: return AxiomInstance::i(a, b);
        case 1: return AxiomInstance::ii(a, b, c);
        case 2: return AxiomInstance::iii(a);
        case 3: return AxiomInstance::iv(t1(), t1(), a, b);
        case 4: return AxiomInstance::v(t1(), t1(), a);
        case 5: return AxiomInstance::vi(t2(), t2(), a, b);
        case 6: return AxiomInstance::vii(t2(), a);
        case 7: return AxiomInstance::viii(t2(), a);
        case 8: return AxiomInstance::ix(t1(), t2(), a);
        default: return AxiomInstance::x(t2(), t2(), a);
        }
    }

    J tautology() {
        J a = formula(2), b = formula(2), c = formula(1);
        switch (pick(5)) {
        case 0: return J::imp(a, J::imp(b, a));
        case 1: return J::imp(J::imp(a, b), J::imp(J::imp(b, c), J::imp(a, c)));
        case 2: return J::imp(J::conj(a, b), J::conj(b, a));
        case 3: return J::imp(J::neg(J::neg(a)), a);
        default: return J::imp(a, J::disj(a, b));
        }
    }

    // A checked proof mixing propositional reasoning, J+_0 axioms and
    // constant specifications; constants repeat now and then, so some inputs
    // are not injective.
    JProof proof() {
        ProofBuilder b;
        std::size_t last = b.append(prop_proof(tautology()));
        for (unsigned k = pick(5); k > 0; --k) {
            AxiomInstance ax = axiom();
            std::size_t s = pick(3) ? b.axiom(AxiomInstance::cs(pick(3), ax)) : b.axiom(ax);
            last = prop_derive(b, J::conj(b.formula(last), b.formula(s)), {last, s});
        }
        return b.extract(last);
    }
};

// Unfolds h = head(t).z1...zn.head(s1)...head(sm).tail(s1)...tail(sm).
bool lift_term_shape(Term h, const std::vector<Term>& z, const std::vector<Term>& s) {
    std::vector<Term> factors;
    std::size_t n = 1 + z.size() + 2 * s.size();
    while (factors.size() + 1 < n) {
        if (h.kind() != TermKind::App) return false;
        factors.push_back(h.right());
        h = h.left();
    }
    factors.push_back(h);
    std::reverse(factors.begin(), factors.end());
    if (factors[0].kind() != TermKind::Head || !factors[0].left().ground()) return false;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (factors[1 + i] != z[i]) return false;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (factors[1 + z.size() + j] != Term::head(s[j])) return false;
        if (factors[1 + z.size() + s.size() + j] != Term::tail(s[j])) return false;
    }
    return true;
}

void criterion5() {
    auto start = Clock::now();
    const int count = 120;
    std::string first_bad;
    auto fail = [&](const char* suite, int i, const std::string& why) {
        if (first_bad.empty()) first_bad = std::string(suite) + " #" + std::to_string(i) + ": " + why;
    };
    int internalized = 0, lifted = 0, inducted = 0, noninjective_inputs = 0;

    Gen gen(5);
    for (int i = 0; i < count; ++i) {
        JProof p = gen.proof();
        JProofVerdict in = check_proof(p);
        if (!in.ok) {
            fail("internalize", i, "generator produced an invalid proof");
            continue;
        }
        noninjective_inputs += !in.injective;
        try {
            ConstantAllocator alloc;
            Internalized r = internalize(p, alloc);
            JProofVerdict out = check_proof(r.proof);
            if (!out.ok) fail("internalize", i, "proof rejected");
            else if (r.proof.conclusion() != J::just_tc(r.s, p.conclusion())) fail("internalize", i, "wrong conclusion");
            else if (!r.s.ground()) fail("internalize", i, "term not ground");
            else if (in.injective && !out.injective) fail("internalize", i, "injectivity lost");
            else ++internalized;
        } catch (const std::exception& e) {
            fail("internalize", i, e.what());
        }
    }

    for (int i = 0; i < count; ++i) {
        std::size_t n = gen.pick(3), m = gen.pick(3);
        if (i % 10 == 0) n = m = 0;
        std::vector<J> as, bs, hyps;
        std::vector<Term> z, s;
        for (std::size_t k = 0; k < n; ++k) {
            as.push_back(gen.formula(2));
            z.push_back(Term::x(10 + k));
        }
        for (std::size_t k = 0; k < m; ++k) {
            bs.push_back(gen.formula(2));
            s.push_back(gen.term(Sort::Second, 1));
        }
        hyps = as;
        hyps.insert(hyps.end(), bs.begin(), bs.end());
        for (std::size_t k = 0; k < m; ++k) hyps.push_back(J::just_tc(s[k], bs[k]));
        J c;
        if (hyps.empty()) c = gen.tautology();
        else if (gen.pick(2)) c = hyps[gen.pick(hyps.size())];
        else c = J::conj(hyps[gen.pick(hyps.size())], gen.tautology());
        JProof p = prop_proof(hyps.empty() ? c : J::imp(J::conj_all(hyps), c));
        try {
            ConstantAllocator alloc;
            Lifted l = lift(p, z, m, alloc);
            std::vector<J> lhs;
            for (std::size_t k = 0; k < n; ++k) lhs.push_back(J::just(z[k], as[k]));
            for (std::size_t k = 0; k < m; ++k) lhs.push_back(J::just_tc(s[k], bs[k]));
            J expected = lhs.empty() ? J::just(l.h, c) : J::imp(J::conj_all(lhs), J::just(l.h, c));
            JProofVerdict out = check_proof(l.proof);
            if (!out.ok) fail("lift", i, "proof rejected");
            else if (l.proof.conclusion() != expected) fail("lift", i, "wrong conclusion");
            else if (!lift_term_shape(l.h, z, s)) fail("lift", i, "term shape " + render(l.h));
            else if (!out.injective) fail("lift", i, "injectivity lost");
            else ++lifted;
        } catch (const std::exception& e) {
            fail("lift", i, e.what());
        }
    }

    for (int i = 0; i < count; ++i) {
        ConstantAllocator alloc;
        J a, b;
        Term w;
        JProof p;
        switch (i % 3) {
        case 0: {  // B = false
            a = gen.formula(2);
            b = J::bot();
            w = gen.term(Sort::First, 2);
            p = prop_proof(J::imp(b, J::just(w, J::conj(a, b))));
            break;
        }
        case 1: {  // B = [s]tc X, A = X, w from lifting X & [s]tc X
            a = gen.formula(2);
            Term s = gen.term(Sort::Second, 1);
            b = J::just_tc(s, a);
            J both = J::conj(a, b);
            Lifted l = lift(prop_proof(J::imp(both, both)), {}, 1, alloc);
            w = l.h;
            p = l.proof;
            break;
        }
        default: {  // tautologies A, B with w justifying A & B
            a = gen.tautology();
            b = gen.tautology();
            Lifted l = lift(prop_proof(J::conj(a, b)), {}, 0, alloc);
            w = l.h;
            ProofBuilder pb;
            std::size_t k = pb.append(l.proof);
            std::size_t weak = pb.axiom(AxiomInstance::i(pb.formula(k), b));
            p = pb.extract(pb.mp(k, weak));
        }
        }
        JProofVerdict in = check_proof(p);
        if (!in.ok || p.conclusion() != J::imp(b, J::just(w, J::conj(a, b)))) {
            fail("induction_term", i, "generator produced a bad input");
            continue;
        }
        try {
            InductionTerm t = induction_term(p, alloc);
            JProofVerdict out = check_proof(t.proof);
            J expected = J::imp(b, J::just_tc(Term::app(t.s1, Term::ind(w, t.s0)), a));
            if (!out.ok) fail("induction_term", i, "proof rejected");
            else if (t.proof.conclusion() != expected) fail("induction_term", i, "wrong conclusion");
            else if (!t.s0.ground() || !t.s1.ground()) fail("induction_term", i, "terms not ground");
            else if (in.injective && !out.injective) fail("induction_term", i, "injectivity lost");
            else ++inducted;
        } catch (const std::exception& e) {
            fail("induction_term", i, e.what());
        }
    }
    double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "internalize " << internalized << "/" << count << " (" << noninjective_inputs
           << " non-injective inputs), lift " << lifted << "/" << count << ", induction_term " << inducted << "/"
           << count << ", " << fmt_time(elapsed);
    if (!first_bad.empty()) detail << "; first: " << first_bad;
    report(5, internalized == count && lifted == count && inducted == count, "constructive lemma suites", detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 6.

void criterion6() {
    std::size_t with_boxplus = 0, bad = 0;
    std::string first_bad;
    for (const RefutationRecord& r : refutations) {
        const Sequent& root = r.tree.nodes.at(0).seq;
        with_boxplus += std::any_of(root.succ.begin(), root.succ.end(), [](Formula f) { return f.is_boxplus(); });
        std::string why;
        if (!lemma8_holds(r.tree, &why)) {
            if (bad++ == 0) first_bad = render(r.formula) + ": " + why;
        }
    }
    std::ostringstream detail;
    detail << refutations.size() << " refutations, " << with_boxplus << " with a boxplus in the root succedent, " << bad
           << " exceptions";
    if (!first_bad.empty()) detail << "; first: " << first_bad;
    report(6, bad == 0 && !refutations.empty(), "every boxplus succedent meets a crossbox premise => C", detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 7.

void criterion7() {
    auto start = Clock::now();
    std::vector<JFormula> sample = step_formulas;
    std::mt19937_64 rng(7);
    std::shuffle(sample.begin(), sample.end(), rng);
    if (sample.size() > 200) sample.resize(200);
    std::size_t provable = 0;
    std::string first_bad;
    for (JFormula f : sample) {
        Decision d = decide(Sequent({}, {forgetful(f)}), {1'000'000, true});
        if (d.verdict == Verdict::Provable) ++provable;
        else if (first_bad.empty()) first_bad = render(forgetful(f));
    }
    std::ostringstream detail;
    detail << provable << "/" << sample.size() << " sampled of " << step_formulas.size() << " distinct step formulas, "
           << fmt_time(seconds_since(start));
    if (!first_bad.empty()) detail << "; first: " << first_bad;
    report(7, !sample.empty() && provable == sample.size(), "forgetful images of J+ proof steps are K+ theorems",
           detail.str());
}

}  // namespace

// With arguments, runs only the listed criteria (6 and 7 reuse data of 2-3 and 4).
int main(int argc, char** argv) {
    auto start = Clock::now();
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    auto want = [&](int n) { return only.empty() || only.count(n); };
    void (*const run[])() = {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7};
    for (int n = 1; n <= 7; ++n)
        if (want(n)) run[n - 1]();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
              << fmt_time(seconds_since(start)) << std::endl;
    return failures == 0 ? 0 : 1;
}
