// Sequents over (annotated) modal formulas.
//
// A Multiset keeps multiplicities; a Sequent is always stored in canonical
// form: both sides sorted under the structural order with repetitions removed.

#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "kplus/formula.hpp"

namespace kplus {

/// Sorted (formula, multiplicity) pairs.
class Multiset {
public:
    Multiset() = default;
    explicit Multiset(const std::vector<Formula>& items);

    void insert(Formula f, unsigned count = 1);
    unsigned count(Formula f) const;
    std::size_t total() const;
    const std::vector<std::pair<Formula, unsigned>>& entries() const { return entries_; }
    /// Each element once, sorted.
    std::vector<Formula> elements() const;

    friend bool operator==(const Multiset&, const Multiset&) = default;

private:
    std::vector<std::pair<Formula, unsigned>> entries_;
};

/// Gamma^s: removes all repetitions.
Multiset dedup(const Multiset& m);

/// Sorts and removes duplicates in place.
void canonicalize(std::vector<Formula>& side);
bool contains(const std::vector<Formula>& side, Formula f);
/// Copy of `side` with `f` removed (if present).
std::vector<Formula> without(const std::vector<Formula>& side, Formula f);
/// Copy of `side` with `f` added, kept canonical.
std::vector<Formula> with(const std::vector<Formula>& side, Formula f);

struct Sequent {
    std::vector<Formula> ante;
    std::vector<Formula> succ;

    Sequent() = default;
    Sequent(std::vector<Formula> a, std::vector<Formula> s);

    bool is_saturated() const;
    /// Gamma, p => p, Delta  or  Gamma, false => Delta.
    bool is_axiom() const;

    friend bool operator==(const Sequent&, const Sequent&) = default;
    friend auto operator<=>(const Sequent&, const Sequent&) = default;
};

/// Focus is either * (invalid formula) or a boxplus formula occurring in succ.
struct FocusedSequent {
    Sequent seq;
    Formula focus;

    bool star() const { return !focus.valid(); }
    bool well_formed() const;

    friend bool operator==(const FocusedSequent&, const FocusedSequent&) = default;
    friend auto operator<=>(const FocusedSequent& a, const FocusedSequent& b) {
        if (auto c = a.seq <=> b.seq; c != 0) return c;
        if (a.focus == b.focus) return std::strong_ordering::equal;
        if (!a.focus.valid()) return std::strong_ordering::less;
        if (!b.focus.valid()) return std::strong_ordering::greater;
        return a.focus <=> b.focus;
    }
};

/// Conjunction of the antecedent implies disjunction of the succedent.
/// Empty conjunction is top, empty disjunction is bot; both right-nested.
Formula sequent_formula(const Sequent& s);
Formula conj_all(const std::vector<Formula>& parts);
Formula disj_all(const std::vector<Formula>& parts);

std::size_t hash_value(const Sequent& s);
std::size_t hash_value(const FocusedSequent& s);

/// Premise antecedent of a modal rule: bodies of every box and boxplus in
/// `ante`, plus the boxplus formulas themselves.
std::vector<Formula> modal_context(const std::vector<Formula>& ante);

/// Polarity check for a whole annotated sequent (antecedent negative).
bool parity_consistent(const Sequent& s);

}  // namespace kplus

template <>
struct std::hash<kplus::Sequent> {
    std::size_t operator()(const kplus::Sequent& s) const noexcept { return kplus::hash_value(s); }
};
template <>
struct std::hash<kplus::FocusedSequent> {
    std::size_t operator()(const kplus::FocusedSequent& s) const noexcept {
        return kplus::hash_value(s);
    }
};
