#include "kplus/jlemmas.hpp"

#include <stdexcept>

namespace kplus {

namespace {

using J = JFormula;
using A = AxiomInstance;

Term rename(Term t, const std::map<unsigned, unsigned>& map) {
    switch (t.kind()) {
    case TermKind::Const: {
        auto it = map.find(t.index());
        return it == map.end() ? t : Term::constant(it->second);
    }
    case TermKind::App: return Term::app(rename(t.left(), map), rename(t.right(), map));
    case TermKind::Sum: return Term::sum(rename(t.left(), map), rename(t.right(), map));
    case TermKind::Head: return Term::head(rename(t.left(), map));
    case TermKind::Tail: return Term::tail(rename(t.left(), map));
    case TermKind::Ind: return Term::ind(rename(t.left(), map), rename(t.right(), map));
    default: return t;
    }
}

J rename(J f, const std::map<unsigned, unsigned>& map) {
    switch (f.kind()) {
    case JKind::Var:
    case JKind::Bot: return f;
    case JKind::Imp: return J::imp(rename(f.lhs(), map), rename(f.rhs(), map));
    case JKind::Just: return J::just(rename(f.term(), map), rename(f.body(), map));
    case JKind::JustTc: return J::just_tc(rename(f.term(), map), rename(f.body(), map));
    }
    return f;
}

A rename(const A& a, const std::map<unsigned, unsigned>& map) {
    A r = a;
    auto rf = [&](J f) { return f.valid() ? rename(f, map) : f; };
    auto rt = [&](Term t) { return t.valid() ? rename(t, map) : t; };
    r.a = rf(a.a);
    r.b = rf(a.b);
    r.c = rf(a.c);
    r.h = rt(a.h);
    r.w = rt(a.w);
    r.t = rt(a.t);
    r.s = rt(a.s);
    if (a.schema == Schema::Cs) {
        if (auto it = map.find(a.constant); it != map.end()) r.constant = it->second;
        r.inner = std::make_shared<const A>(rename(*a.inner, map));
    }
    return r;
}

// Splits a right-nested conjunction into exactly k parts.
std::optional<std::vector<J>> split_conj(J f, std::size_t k) {
    std::vector<J> parts;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (!f.is_neg() || !f.lhs().is_imp() || !f.lhs().rhs().is_neg()) return std::nullopt;
        parts.push_back(f.lhs().lhs());
        f = f.lhs().rhs().lhs();
    }
    parts.push_back(f);
    return parts;
}

}  // namespace

unsigned ConstantAllocator::fresh() {
    while (used_.count(low_)) ++low_;
    used_.insert(low_);
    return low_++;
}

void ConstantAllocator::reserve(const ConstantSpecification& cs) {
    for (unsigned c : cs.constants()) used_.insert(c);
}

JProof substitute_proof(const JProof& p, const JSubstitution& sigma) {
    JProof out = p;
    for (JStep& s : out.steps) {
        if (s.kind == JStep::Kind::Axiom) s.axiom = sigma.apply(s.axiom);
        s.formula = sigma.apply(s.formula);
    }
    return out;
}

JProof rename_constants(const JProof& p, const std::map<unsigned, unsigned>& map) {
    std::set<unsigned> images;
    for (unsigned c : constant_specification(p).constants()) {
        auto it = map.find(c);
        if (!images.insert(it == map.end() ? c : it->second).second)
            throw std::invalid_argument("rename_constants: map is not injective on the used constants");
    }
    JProof out = p;
    for (JStep& s : out.steps) {
        if (s.kind == JStep::Kind::Axiom) s.axiom = rename(s.axiom, map);
        s.formula = rename(s.formula, map);
    }
    return out;
}

namespace {

// From step `given` proving [t]tc X (t ground): [ind(tail(t), c')]tc [t]tc X with
// c' a fresh constant for the (viii) instance.
Term internalize_tc(ProofBuilder& b, ConstantSpecification& cs, std::size_t given, ConstantAllocator& alloc) {
    J boxed = b.formula(given);
    Term t = boxed.term();
    A tail_ax = A::viii(t, boxed.body());
    unsigned ci = alloc.fresh();
    cs.insert(ci, tail_ax.formula());
    std::size_t tail = b.mp(given, b.axiom(tail_ax));
    std::size_t spec = b.axiom(A::cs(ci, tail_ax));
    std::size_t ind = b.axiom(A::ix(Term::tail(t), Term::constant(ci), boxed));
    conj_mp(b, tail, spec, ind);
    return Term::ind(Term::tail(t), Term::constant(ci));
}

bool tc_shortcut(J f) { return f.is_just_tc() && f.term().ground(); }

}  // namespace

Internalized internalize_axiom(const ConstantSpecification& cs0, const AxiomInstance& a, ConstantAllocator& alloc) {
    if (a.schema == Schema::Cs && (!a.inner || a.inner->schema == Schema::Cs))
        throw std::invalid_argument("internalize_axiom: not an axiom");
    alloc.reserve(cs0);
    Internalized r;
    r.cs = cs0;
    ProofBuilder b;
    std::size_t given = b.axiom(a);
    if (a.schema != Schema::Cs) {
        unsigned c = alloc.fresh();
        r.cs.insert(c, a.formula());
        r.s = Term::constant(c);
        r.proof = b.extract(b.axiom(A::cs(c, a)));
        return r;
    }
    r.cs.insert(a.constant, a.inner->formula());
    r.s = internalize_tc(b, r.cs, given, alloc);
    r.proof = b.extract(b.size() - 1);
    return r;
}

// Works back from the conclusion. Steps proving [t]tc X with t ground are
// internalized directly from their own proof, so their derivations are not
// internalized again.
Internalized internalize(const JProof& p, ConstantAllocator& alloc) {
    if (p.steps.empty()) throw std::invalid_argument("internalize: empty proof");
    ConstantSpecification cs = constant_specification(p);
    alloc.reserve(cs);
    ProofBuilder b;
    b.append(p);
    const std::size_t n = p.steps.size();
    std::vector<Term> term(n);
    std::vector<std::size_t> at(n);
    std::vector<char> state(n, 0);
    std::vector<std::size_t> stack{n - 1};
    while (!stack.empty()) {
        std::size_t i = stack.back();
        const JStep& s = p.steps[i];
        if (state[i] == 2) {
            stack.pop_back();
            continue;
        }
        if (tc_shortcut(s.formula)) {
            term[i] = internalize_tc(b, cs, *b.find(s.formula), alloc);
            at[i] = b.size() - 1;
        } else if (s.kind == JStep::Kind::Axiom) {
            unsigned c = alloc.fresh();
            cs.insert(c, s.formula);
            term[i] = Term::constant(c);
            at[i] = b.axiom(A::cs(c, s.axiom));
        } else if (state[i] == 0) {
            state[i] = 1;
            if (state[s.major] != 2) stack.push_back(s.major);
            if (state[s.minor] != 2) stack.push_back(s.minor);
            continue;
        } else {
            J ab = p.steps[s.major].formula;
            Term t = term[s.major], u = term[s.minor];
            std::size_t vi = b.axiom(A::vi(t, u, ab.lhs(), ab.rhs()));
            term[i] = Term::app(t, u);
            at[i] = b.mp(at[s.minor], b.mp(at[s.major], vi));
        }
        state[i] = 2;
        stack.pop_back();
    }
    Internalized r;
    r.s = term[n - 1];
    r.proof = b.extract(at[n - 1]);
    r.cs = std::move(cs);
    return r;
}

Lifted lift(const JProof& p, const std::vector<Term>& z, std::size_t m, ConstantAllocator& alloc) {
    const std::size_t n = z.size(), k = n + 2 * m;
    for (Term t : z)
        if (!t.valid() || t.sort() != Sort::First) throw std::invalid_argument("lift: z must be first-sort terms");
    J concl = p.conclusion();
    std::vector<J> parts;
    J c = concl;
    if (k > 0) {
        if (!concl.is_imp()) throw std::invalid_argument("lift: conclusion is not an implication");
        auto split = split_conj(concl.lhs(), k);
        if (!split) throw std::invalid_argument("lift: antecedent is not a conjunction of the stated length");
        parts = *split;
        c = concl.rhs();
        for (std::size_t j = 0; j < m; ++j) {
            J boxed = parts[n + m + j];
            if (!boxed.is_just_tc() || boxed.body() != parts[n + j])
                throw std::invalid_argument("lift: [s]tc B part does not match its B part");
        }
    }

    ProofBuilder b;
    std::size_t given = b.append(p);
    J curried = implication_chain(parts, c);
    std::size_t cur = k == 0 ? given : prop_derive(b, curried, {given});
    Internalized in = internalize(b.extract(cur), alloc);
    Term t = in.s;
    std::size_t boxed = b.append(in.proof);
    Term h = Term::head(t);
    std::size_t top = b.mp(boxed, b.axiom(A::vii(t, curried)));
    if (k == 0) return {h, b.extract(top)};

    std::vector<Term> u(z);
    for (std::size_t j = 0; j < m; ++j) u.push_back(Term::head(parts[n + m + j].term()));
    for (std::size_t j = 0; j < m; ++j) u.push_back(Term::tail(parts[n + m + j].term()));

    std::vector<std::size_t> premises{top};
    J rest = curried;
    for (std::size_t i = 0; i < k; ++i) {
        premises.push_back(b.axiom(A::iv(h, u[i], parts[i], rest.rhs())));
        h = Term::app(h, u[i]);
        rest = rest.rhs();
    }
    std::vector<J> hyps;
    for (std::size_t i = 0; i < n; ++i) hyps.push_back(J::just(z[i], parts[i]));
    for (std::size_t j = 0; j < m; ++j) {
        Term s = parts[n + m + j].term();
        J bj = parts[n + j];
        hyps.push_back(parts[n + m + j]);
        premises.push_back(b.axiom(A::vii(s, bj)));
        premises.push_back(b.axiom(A::viii(s, bj)));
    }
    J goal = J::imp(J::conj_all(hyps), J::just(h, c));
    return {h, b.extract(prop_derive(b, goal, premises))};
}

InductionTerm induction_term(const JProof& p, ConstantAllocator& alloc) {
    J concl = p.conclusion();
    if (!concl.is_imp() || !concl.rhs().is_just()) throw std::invalid_argument("induction_term: expected B -> [w](A & B)");
    J bform = concl.lhs(), ab = concl.rhs().body();
    auto split = split_conj(ab, 2);
    if (!split || (*split)[1] != bform) throw std::invalid_argument("induction_term: expected B -> [w](A & B)");
    J a = (*split)[0];
    Term w = concl.rhs().term();

    ProofBuilder b;
    std::size_t given = b.append(p);
    std::size_t step = prop_derive(b, J::imp(ab, concl.rhs()), {given});
    Internalized in0 = internalize(b.extract(step), alloc);
    std::size_t boxed0 = b.append(in0.proof);
    std::size_t ix = b.axiom(A::ix(w, in0.s, ab));
    Term ind = Term::ind(w, in0.s);
    std::size_t to_ind = prop_derive(b, J::imp(bform, J::just_tc(ind, ab)), {given, boxed0, ix});

    Internalized in1 = internalize(prop_proof(J::imp(ab, a)), alloc);
    std::size_t boxed1 = b.append(in1.proof);
    std::size_t vi = b.axiom(A::vi(in1.s, ind, ab, a));
    InductionTerm r;
    r.s0 = in0.s;
    r.s1 = in1.s;
    std::size_t done = prop_derive(b, J::imp(bform, J::just_tc(r.at(w), a)), {to_ind, boxed1, vi});
    r.proof = b.extract(done);
    return r;
}

}  // namespace kplus
