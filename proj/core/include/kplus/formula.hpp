// Modal formulas of K+ (optionally annotated with labels on modal connectives).
//
// Formulas are hash-consed: structurally equal formulas share one node, so
// equality is a pointer comparison and hashing is O(1). Nodes live for the
// lifetime of the process.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kplus {

enum class FormulaKind : std::uint8_t { Var, Bot, Imp, Box, BoxPlus };

struct FormulaNode;

/// Handle to an interned modal formula. A label of -1 means "unannotated".
class Formula {
public:
    Formula() = default;

    static Formula var(unsigned index);
    static Formula bot();
    static Formula imp(Formula lhs, Formula rhs);
    static Formula box(Formula body, int label = -1);
    static Formula boxplus(Formula body, int label = -1);

    // Abbreviations: not A := A -> false, true := not false,
    // A and B := not (A -> not B), A or B := not A -> B.
    static Formula neg(Formula a);
    static Formula top();
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);

    FormulaKind kind() const;
    unsigned var_index() const;
    int label() const;
    Formula lhs() const;
    Formula rhs() const;
    /// Body of a box / boxplus.
    Formula body() const { return lhs(); }

    bool is_var() const { return kind() == FormulaKind::Var; }
    bool is_bot() const { return kind() == FormulaKind::Bot; }
    bool is_imp() const { return kind() == FormulaKind::Imp; }
    bool is_box() const { return kind() == FormulaKind::Box; }
    bool is_boxplus() const { return kind() == FormulaKind::BoxPlus; }
    bool is_modal() const { return is_box() || is_boxplus(); }

    /// sz: 1 for atoms, sum + 1 for implications, body + 1 for modalities.
    unsigned size() const;
    std::size_t hash() const;
    bool valid() const { return node_ != nullptr; }
    const FormulaNode* node() const { return node_; }

    friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
    friend std::strong_ordering operator<=>(Formula a, Formula b);

private:
    friend struct FormulaFactory;
    explicit Formula(const FormulaNode* n) : node_(n) {}
    const FormulaNode* node_ = nullptr;
};

struct FormulaNode {
    FormulaKind kind;
    int label;
    unsigned var;
    Formula lhs;
    Formula rhs;
    unsigned size;
    std::size_t hash;
};

inline FormulaKind Formula::kind() const { return node_->kind; }
inline unsigned Formula::var_index() const { return node_->var; }
inline int Formula::label() const { return node_->label; }
inline Formula Formula::lhs() const { return node_->lhs; }
inline Formula Formula::rhs() const { return node_->rhs; }
inline unsigned Formula::size() const { return node_->size; }
inline std::size_t Formula::hash() const { return node_->hash; }

/// Drops every label.
Formula erase(Formula f);

/// True when f carries no labels at all.
bool is_unannotated(Formula f);

/// All subformulas (including f itself), each listed once, in preorder.
std::vector<Formula> subformulas(Formula f);

/// Propositional variable indices occurring in f, ascending.
std::vector<unsigned> variables(Formula f);

/// Parity rule: negative modal occurrences carry even labels, positive ones odd.
/// `positive` is the polarity of f itself.
bool parity_consistent(Formula f, bool positive);

/// Distinct box occurrences have distinct labels, and likewise for boxplus.
/// Every modal occurrence must be labelled.
bool properly_annotated(const std::vector<Formula>& occurrences);

/// Hands out the smallest unused even or odd natural.
class LabelAllocator {
public:
    LabelAllocator() = default;
    /// Marks every label already occurring in f as used.
    void reserve(Formula f);
    int fresh(bool odd);

private:
    std::vector<bool> used_;
};

/// Labels every modal occurrence with a fresh label of the right parity,
/// left to right in preorder. Labels already present in f are replaced.
Formula proper_annotate(Formula f, bool positive, LabelAllocator& alloc);

}  // namespace kplus

template <>
struct std::hash<kplus::Formula> {
    std::size_t operator()(kplus::Formula f) const noexcept { return f.hash(); }
};
