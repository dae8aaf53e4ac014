// Premise construction shared by the prover, the checkers and annotation.
#pragma once

#include <utility>

#include "kplus/engine.hpp"

namespace kplus::detail {

inline FocusedSequent imp_right_premise(const FocusedSequent& s, Formula p) {
    Sequent q(with(s.seq.ante, p.lhs()), with(without(s.seq.succ, p), p.rhs()));
    return {std::move(q), s.focus};
}

/// {Gamma, B => Delta ; Gamma => A, Delta}
inline std::pair<FocusedSequent, FocusedSequent> imp_left_premises(const FocusedSequent& s, Formula p) {
    std::vector<Formula> rest = without(s.seq.ante, p);
    FocusedSequent left{Sequent(with(rest, p.rhs()), s.seq.succ), s.focus};
    FocusedSequent right{Sequent(rest, with(s.seq.succ, p.lhs())), s.focus};
    return {std::move(left), std::move(right)};
}

inline FocusedSequent box_premise(const FocusedSequent& s, Formula p) {
    return {Sequent(modal_context(s.seq.ante), {p.body()}), {}};
}

/// {ctx => A (focus *) ; ctx => []+A (focus []+A)}
inline std::pair<FocusedSequent, FocusedSequent> boxplus_premises(const FocusedSequent& s, Formula p) {
    std::vector<Formula> ctx = modal_context(s.seq.ante);
    return {FocusedSequent{Sequent(ctx, {p.body()}), {}}, FocusedSequent{Sequent(ctx, {p}), p}};
}

/// Leftmost implication of the antecedent, else of the succedent.
inline Formula first_implication(const Sequent& s) {
    for (Formula f : s.ante)
        if (f.is_imp()) return f;
    for (Formula f : s.succ)
        if (f.is_imp()) return f;
    return {};
}

inline Rule axiom_rule(const Sequent& s) {
    for (Formula f : s.ante)
        if (f.is_bot()) return Rule::AxiomBot;
    return Rule::AxiomVar;
}

}  // namespace kplus::detail
