// Realization: from prepared cyclic annotated proofs of K+ to injective J+
// proofs of realizing justification formulas.

#pragma once

#include <map>
#include <vector>

#include "kplus/annotate.hpp"
#include "kplus/jlemmas.hpp"

namespace kplus {

/// Nodes reachable from root while the focus stays `focus`, in index order.
struct FocusRegion {
    std::size_t root = 0;
    Formula focus;
    std::vector<std::size_t> nodes;
    bool contains(std::size_t n) const;
};

FocusRegion focus_region(const CyclicProof& p, std::size_t root, Formula focus);

/// 0 at modal-rule conclusions and axiom leaves, +1 through imp-right,
/// max + 1 through imp-left, rank(target) + 1 at a back-linked leaf.
/// Throws std::out_of_range for nodes outside the region.
unsigned rank(const CyclicProof& p, const FocusRegion& region, std::size_t node);
std::map<std::size_t, unsigned> ranks(const CyclicProof& p, const FocusRegion& region);

/// Audit record of one focus-region step.
struct CaseFiveState {
    FocusRegion region;
    std::vector<std::size_t> rank_zero;
    std::map<std::size_t, JFormula> g;  // G_b
    JFormula h;                         // H, before the final substitution
    std::map<std::size_t, Term> o;      // o_a for a in rank_zero
    std::map<std::size_t, Term> v;      // v_b
    Term sum;                           // v
    Term t;                             // induction term
    Term replaced;                      // the provisional variable set to t
};

struct RealizationResult {
    JSubstitution theta;  // finalizing, adequate for the prepared proof
    JProof proof;         // proves `realized`
    JFormula realized;    // theta(F^g) of the root
    std::vector<CaseFiveState> regions;
    PreparedProof prepared;  // the input of the realization
};

/// F = conj(ante) -> disj(succ), translated by g.
JFormula sequent_translation(const Sequent& s, const BoundingFunction& g);

/// Provisional variables x_{m,i}, y_{n,j} named by the modal rules of p.
std::set<Term> induced_variables(const CyclicProof& p);

/// Throws std::invalid_argument when pp fails check_prepared.
RealizationResult realize_proof(const PreparedProof& pp, ConstantAllocator& alloc);

/// decide -> annotate -> prepare -> realize_proof, then realized := theta(B^g)
/// for the annotated theorem B. Throws std::invalid_argument when a is not a
/// theorem and BudgetExceeded when the search gives up.
RealizationResult realize_theorem(Formula a, const EngineOptions& options = {});

/// Post-conditions of realize_theorem for the modal theorem a.
CheckResult check_realization(Formula a, const RealizationResult& r);

}  // namespace kplus
