// Two-sorted justification terms and justification formulas of J+.
//
// First sort (justifies box facts):      x_i | x_{m,i} | w.w | head(s) | tail(s) | w+w
// Second sort (justifies boxplus facts): y_i | y_{n,j} | c_i | s.s | ind(w,s) | s+s
//
// Both are hash-consed like Formula.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "kplus/formula.hpp"

namespace kplus {

enum class TermKind : std::uint8_t { X, XProv, Y, YProv, Const, App, Sum, Head, Tail, Ind };
enum class Sort : std::uint8_t { First = 1, Second = 2 };

struct TermNode;

class Term {
public:
    Term() = default;

    static Term x(unsigned i);
    static Term x_prov(unsigned m, unsigned i);
    static Term y(unsigned i);
    static Term y_prov(unsigned n, unsigned j);
    static Term constant(unsigned i);
    /// Both operands must share a sort; throws std::invalid_argument otherwise.
    static Term app(Term a, Term b);
    static Term sum(Term a, Term b);
    static Term head(Term s);
    static Term tail(Term s);
    static Term ind(Term w, Term s);

    TermKind kind() const;
    Sort sort() const;
    /// Index for X, Y, Const; first index for provisional variables.
    unsigned index() const;
    /// Second index of a provisional variable.
    unsigned sub_index() const;
    Term left() const;
    Term right() const;

    bool is_variable() const;
    bool is_provisional() const { return kind() == TermKind::XProv || kind() == TermKind::YProv; }
    bool valid() const { return node_ != nullptr; }
    std::size_t hash() const;
    const TermNode* node() const { return node_; }

    /// Contains no variables of either kind.
    bool ground() const;
    bool provisional_free() const;

    friend bool operator==(Term a, Term b) { return a.node_ == b.node_; }
    friend std::strong_ordering operator<=>(Term a, Term b);

private:
    friend struct TermFactory;
    explicit Term(const TermNode* n) : node_(n) {}
    const TermNode* node_ = nullptr;
};

struct TermNode {
    TermKind kind;
    Sort sort;
    unsigned a;
    unsigned b;
    Term left;
    Term right;
    bool ground;
    bool provisional_free;
    std::size_t hash;
};

inline TermKind Term::kind() const { return node_->kind; }
inline Sort Term::sort() const { return node_->sort; }
inline unsigned Term::index() const { return node_->a; }
inline unsigned Term::sub_index() const { return node_->b; }
inline Term Term::left() const { return node_->left; }
inline Term Term::right() const { return node_->right; }
inline std::size_t Term::hash() const { return node_->hash; }
inline bool Term::ground() const { return node_->ground; }
inline bool Term::provisional_free() const { return node_->provisional_free; }
inline bool Term::is_variable() const {
    auto k = kind();
    return k == TermKind::X || k == TermKind::XProv || k == TermKind::Y || k == TermKind::YProv;
}

enum class JKind : std::uint8_t { Var, Bot, Imp, Just, JustTc };

struct JNode;

class JFormula {
public:
    JFormula() = default;

    static JFormula var(unsigned index);
    static JFormula bot();
    static JFormula imp(JFormula lhs, JFormula rhs);
    /// [w]A; w must be of the first sort.
    static JFormula just(Term w, JFormula body);
    /// [s]tc A; s must be of the second sort.
    static JFormula just_tc(Term s, JFormula body);

    static JFormula neg(JFormula a);
    static JFormula top();
    static JFormula conj(JFormula a, JFormula b);
    static JFormula disj(JFormula a, JFormula b);
    /// Right-nested conjunction; empty list gives top.
    static JFormula conj_all(const std::vector<JFormula>& parts);
    /// Right-nested disjunction; empty list gives bot.
    static JFormula disj_all(const std::vector<JFormula>& parts);

    JKind kind() const;
    unsigned var_index() const;
    JFormula lhs() const;
    JFormula rhs() const;
    JFormula body() const { return lhs(); }
    Term term() const;

    bool is_var() const { return kind() == JKind::Var; }
    bool is_bot() const { return kind() == JKind::Bot; }
    bool is_imp() const { return kind() == JKind::Imp; }
    bool is_just() const { return kind() == JKind::Just; }
    bool is_just_tc() const { return kind() == JKind::JustTc; }
    /// A -> false
    bool is_neg() const { return is_imp() && rhs().is_bot(); }

    bool provisional_free() const;
    bool valid() const { return node_ != nullptr; }
    std::size_t hash() const;
    unsigned size() const;
    const JNode* node() const { return node_; }

    friend bool operator==(JFormula a, JFormula b) { return a.node_ == b.node_; }
    friend std::strong_ordering operator<=>(JFormula a, JFormula b);

private:
    friend struct JFactory;
    explicit JFormula(const JNode* n) : node_(n) {}
    const JNode* node_ = nullptr;
};

struct JNode {
    JKind kind;
    unsigned var;
    JFormula lhs;
    JFormula rhs;
    Term term;
    bool provisional_free;
    unsigned size;
    std::size_t hash;
};

inline JKind JFormula::kind() const { return node_->kind; }
inline unsigned JFormula::var_index() const { return node_->var; }
inline JFormula JFormula::lhs() const { return node_->lhs; }
inline JFormula JFormula::rhs() const { return node_->rhs; }
inline Term JFormula::term() const { return node_->term; }
inline bool JFormula::provisional_free() const { return node_->provisional_free; }
inline std::size_t JFormula::hash() const { return node_->hash; }
inline unsigned JFormula::size() const { return node_->size; }

/// Forgetful translation: [w]A becomes box A, [s]tc A becomes boxplus A.
Formula forgetful(JFormula f);

/// Constant indices occurring in t / f.
void collect_constants(Term t, std::vector<unsigned>& out);
void collect_constants(JFormula f, std::vector<unsigned>& out);

}  // namespace kplus

template <>
struct std::hash<kplus::Term> {
    std::size_t operator()(kplus::Term t) const noexcept { return t.hash(); }
};
template <>
struct std::hash<kplus::JFormula> {
    std::size_t operator()(kplus::JFormula f) const noexcept { return f.hash(); }
};
