// Annotation of cyclic proofs and preparation for realization.

#pragma once

#include <utility>

#include "kplus/engine.hpp"
#include "kplus/translate.hpp"

namespace kplus {

/// Annotates the root properly (smallest fresh labels, antecedent negative),
/// propagates labels to premises and refolds the unravelled proof, placing a
/// back-link at the first repetition of an annotated sequent that satisfies
/// the back-link conditions. Throws std::invalid_argument when p fails
/// check_cyclic.
CyclicProof annotate(const CyclicProof& p);

/// Same, but starting from a given properly annotated root sequent whose
/// erasure contains the root sequent of p.
CyclicProof annotate(const CyclicProof& p, const FocusedSequent& annotated_root);

/// Annotates a sequent with fresh labels (antecedent first, left to right).
FocusedSequent annotate_sequent(const FocusedSequent& s, LabelAllocator& alloc);

struct PreparedProof {
    CyclicProof proof;  // ProofNode::occ set on every modal rule
    BoundingFunction g;
};

/// Enumerates box applications per label and boxplus equivalence classes per
/// label; g(L-1) counts box occurrences of label L, g(L) boxplus classes.
PreparedProof prepare(const CyclicProof& annotated);

/// For a node of a proof tree: the topmost ancestor reachable through nodes
/// with the same (non-*) focus. Returns the node itself for focus *.
std::size_t region_top(const CyclicProof& p, const std::vector<std::size_t>& parents, std::size_t node);

/// Checks the prepared-proof conditions and that g bounds the occurrences.
CheckResult check_prepared(const PreparedProof& pp);

}  // namespace kplus
