// Constructive proof transformers for J+: propositional glue, substitution,
// internalization, lifting, the induction term and constant renaming.

#pragma once

#include <set>
#include <vector>

#include "kplus/jproof.hpp"

namespace kplus {

/// H1 -> (H2 -> ... (Hn -> goal)).
JFormula implication_chain(const std::vector<JFormula>& hyps, JFormula goal);

/// Proof of implication_chain(hyps, goal), using axioms (i)-(iii) only.
/// Bracketed formulas count as atoms. Throws std::invalid_argument when goal
/// is not a classical consequence of hyps.
JProof prop_proof(JFormula goal, const std::vector<JFormula>& hyps = {});

/// Adds a proof of `goal` to b from already proved steps `premises`, glued
/// by prop_proof. Returns the index of goal.
std::size_t prop_derive(ProofBuilder& b, JFormula goal, const std::vector<std::size_t>& premises);

/// From steps proving X, Y and X & Y -> Z, proves Z in a fixed number of steps.
std::size_t conj_mp(ProofBuilder& b, std::size_t x, std::size_t y, std::size_t xyz);

/// Hands out the smallest constant index not yet used.
class ConstantAllocator {
public:
    unsigned fresh();
    void reserve(unsigned c) { used_.insert(c); }
    void reserve(const ConstantSpecification& cs);
    bool used(unsigned c) const { return used_.count(c) != 0; }

private:
    std::set<unsigned> used_;
    unsigned low_ = 0;
};

JProof substitute_proof(const JProof& p, const JSubstitution& sigma);

/// Applies an injective map on constants (identity outside the map).
/// Throws std::invalid_argument when the map is not injective on Con(cs(p)).
JProof rename_constants(const JProof& p, const std::map<unsigned, unsigned>& map);

struct Internalized {
    ConstantSpecification cs;  // cs1, a superset of the input specification
    Term s;                    // ground, second sort
    JProof proof;              // proves [s]tc A
};

/// [c]tc A for a J+_0 axiom A with c fresh; ind(tail(c), c') for A = [c]tc B.
/// Constants of cs0 are reserved in alloc first.
Internalized internalize_axiom(const ConstantSpecification& cs0, const AxiomInstance& a, ConstantAllocator& alloc);

/// Internalizes a checked proof leaf by leaf, folding mp through axiom (vi).
Internalized internalize(const JProof& p, ConstantAllocator& alloc);

struct Lifted {
    Term h;
    JProof proof;
};

/// p proves A1 & ... & An & B1 & ... & Bm & [s1]tc B1 & ... & [sm]tc Bm -> C
/// (right-nested conjunction, n = z.size()). When n + m = 0, p proves C itself.
/// Result proves [z1]A1 & ... & [zn]An & [s1]tc B1 & ... & [sm]tc Bm -> [h]C with
/// h = head(t).z1...zn.head(s1)...head(sm).tail(s1)...tail(sm).
/// Throws std::invalid_argument on a shape mismatch.
Lifted lift(const JProof& p, const std::vector<Term>& z, std::size_t m, ConstantAllocator& alloc);

struct InductionTerm {
    Term s0, s1;  // ground; t(w) = s1 . ind(w, s0)
    JProof proof; // proves B -> [s1 . ind(w, s0)]tc A
    Term at(Term w) const { return Term::app(s1, Term::ind(w, s0)); }
};

/// p proves B -> [w](A & B). Throws std::invalid_argument on a shape mismatch.
InductionTerm induction_term(const JProof& p, ConstantAllocator& alloc);

}  // namespace kplus
