#include "kplus/jformula.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace kplus {

namespace {

inline std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct TermKey {
    TermKind kind;
    unsigned a, b;
    const TermNode* left;
    const TermNode* right;
    bool operator==(const TermKey&) const = default;
};

struct TermKeyHash {
    std::size_t operator()(const TermKey& k) const noexcept {
        std::size_t h = static_cast<std::size_t>(k.kind) + 17;
        h = mix(h, k.a);
        h = mix(h, k.b);
        h = mix(h, k.left ? k.left->hash : 0);
        h = mix(h, k.right ? k.right->hash : 0);
        return h;
    }
};

struct JKey {
    JKind kind;
    unsigned var;
    const JNode* lhs;
    const JNode* rhs;
    const TermNode* term;
    bool operator==(const JKey&) const = default;
};

struct JKeyHash {
    std::size_t operator()(const JKey& k) const noexcept {
        std::size_t h = static_cast<std::size_t>(k.kind) + 91;
        h = mix(h, k.var);
        h = mix(h, k.lhs ? k.lhs->hash : 0);
        h = mix(h, k.rhs ? k.rhs->hash : 0);
        h = mix(h, k.term ? k.term->hash : 0);
        return h;
    }
};

std::mutex& term_mutex() {
    static std::mutex m;
    return m;
}
std::unordered_map<TermKey, std::unique_ptr<TermNode>, TermKeyHash>& term_table() {
    static std::unordered_map<TermKey, std::unique_ptr<TermNode>, TermKeyHash> t;
    return t;
}
std::mutex& j_mutex() {
    static std::mutex m;
    return m;
}
std::unordered_map<JKey, std::unique_ptr<JNode>, JKeyHash>& j_table() {
    static std::unordered_map<JKey, std::unique_ptr<JNode>, JKeyHash> t;
    return t;
}

}  // namespace

struct TermFactory {
    static Term make(TermKind kind, Sort sort, unsigned a, unsigned b, Term l, Term r) {
        TermKey key{kind, a, b, l.node(), r.node()};
        std::lock_guard lock(term_mutex());
        auto& table = term_table();
        if (auto it = table.find(key); it != table.end()) return Term(it->second.get());
        auto node = std::make_unique<TermNode>();
        node->kind = kind;
        node->sort = sort;
        node->a = a;
        node->b = b;
        node->left = l;
        node->right = r;
        bool is_var = kind == TermKind::X || kind == TermKind::XProv || kind == TermKind::Y ||
                      kind == TermKind::YProv;
        bool is_prov = kind == TermKind::XProv || kind == TermKind::YProv;
        node->ground = !is_var && (!l.valid() || l.ground()) && (!r.valid() || r.ground());
        node->provisional_free = !is_prov && (!l.valid() || l.provisional_free()) &&
                                 (!r.valid() || r.provisional_free());
        node->hash = TermKeyHash{}(key);
        const TermNode* raw = node.get();
        table.emplace(key, std::move(node));
        return Term(raw);
    }
};

Term Term::x(unsigned i) { return TermFactory::make(TermKind::X, Sort::First, i, 0, {}, {}); }
Term Term::x_prov(unsigned m, unsigned i) {
    return TermFactory::make(TermKind::XProv, Sort::First, m, i, {}, {});
}
Term Term::y(unsigned i) { return TermFactory::make(TermKind::Y, Sort::Second, i, 0, {}, {}); }
Term Term::y_prov(unsigned n, unsigned j) {
    return TermFactory::make(TermKind::YProv, Sort::Second, n, j, {}, {});
}
Term Term::constant(unsigned i) {
    return TermFactory::make(TermKind::Const, Sort::Second, i, 0, {}, {});
}
Term Term::app(Term a, Term b) {
    if (a.sort() != b.sort()) throw std::invalid_argument("application of terms of different sorts");
    return TermFactory::make(TermKind::App, a.sort(), 0, 0, a, b);
}
Term Term::sum(Term a, Term b) {
    if (a.sort() != b.sort()) throw std::invalid_argument("sum of terms of different sorts");
    return TermFactory::make(TermKind::Sum, a.sort(), 0, 0, a, b);
}
Term Term::head(Term s) {
    if (s.sort() != Sort::Second) throw std::invalid_argument("head expects a second-sort term");
    return TermFactory::make(TermKind::Head, Sort::First, 0, 0, s, {});
}
Term Term::tail(Term s) {
    if (s.sort() != Sort::Second) throw std::invalid_argument("tail expects a second-sort term");
    return TermFactory::make(TermKind::Tail, Sort::First, 0, 0, s, {});
}
Term Term::ind(Term w, Term s) {
    if (w.sort() != Sort::First || s.sort() != Sort::Second)
        throw std::invalid_argument("ind expects (first-sort, second-sort)");
    return TermFactory::make(TermKind::Ind, Sort::Second, 0, 0, w, s);
}

std::strong_ordering operator<=>(Term a, Term b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    if (auto c = a.index() <=> b.index(); c != 0) return c;
    if (auto c = a.sub_index() <=> b.sub_index(); c != 0) return c;
    if (a.left().valid()) {
        if (auto c = a.left() <=> b.left(); c != 0) return c;
    }
    if (a.right().valid()) return a.right() <=> b.right();
    return std::strong_ordering::equal;
}

struct JFactory {
    static JFormula make(JKind kind, unsigned var, JFormula l, JFormula r, Term t) {
        JKey key{kind, var, l.node(), r.node(), t.node()};
        std::lock_guard lock(j_mutex());
        auto& table = j_table();
        if (auto it = table.find(key); it != table.end()) return JFormula(it->second.get());
        auto node = std::make_unique<JNode>();
        node->kind = kind;
        node->var = var;
        node->lhs = l;
        node->rhs = r;
        node->term = t;
        node->provisional_free = (!l.valid() || l.provisional_free()) &&
                                 (!r.valid() || r.provisional_free()) &&
                                 (!t.valid() || t.provisional_free());
        node->size = 1 + (l.valid() ? l.size() : 0) + (r.valid() ? r.size() : 0);
        node->hash = JKeyHash{}(key);
        const JNode* raw = node.get();
        table.emplace(key, std::move(node));
        return JFormula(raw);
    }
};

JFormula JFormula::var(unsigned index) { return JFactory::make(JKind::Var, index, {}, {}, {}); }
JFormula JFormula::bot() { return JFactory::make(JKind::Bot, 0, {}, {}, {}); }
JFormula JFormula::imp(JFormula lhs, JFormula rhs) {
    return JFactory::make(JKind::Imp, 0, lhs, rhs, {});
}
JFormula JFormula::just(Term w, JFormula body) {
    if (w.sort() != Sort::First) throw std::invalid_argument("[w]A needs a first-sort term");
    return JFactory::make(JKind::Just, 0, body, {}, w);
}
JFormula JFormula::just_tc(Term s, JFormula body) {
    if (s.sort() != Sort::Second) throw std::invalid_argument("[s]tc A needs a second-sort term");
    return JFactory::make(JKind::JustTc, 0, body, {}, s);
}
JFormula JFormula::neg(JFormula a) { return imp(a, bot()); }
JFormula JFormula::top() { return neg(bot()); }
JFormula JFormula::conj(JFormula a, JFormula b) { return neg(imp(a, neg(b))); }
JFormula JFormula::disj(JFormula a, JFormula b) { return imp(neg(a), b); }

JFormula JFormula::conj_all(const std::vector<JFormula>& parts) {
    if (parts.empty()) return top();
    JFormula acc = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = conj(*it, acc);
    return acc;
}

JFormula JFormula::disj_all(const std::vector<JFormula>& parts) {
    if (parts.empty()) return bot();
    JFormula acc = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = disj(*it, acc);
    return acc;
}

std::strong_ordering operator<=>(JFormula a, JFormula b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    switch (a.kind()) {
    case JKind::Var: return a.var_index() <=> b.var_index();
    case JKind::Bot: return std::strong_ordering::equal;
    case JKind::Imp:
        if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
        return a.rhs() <=> b.rhs();
    case JKind::Just:
    case JKind::JustTc:
        if (auto c = a.term() <=> b.term(); c != 0) return c;
        return a.body() <=> b.body();
    }
    return std::strong_ordering::equal;
}

Formula forgetful(JFormula f) {
    switch (f.kind()) {
    case JKind::Var: return Formula::var(f.var_index());
    case JKind::Bot: return Formula::bot();
    case JKind::Imp: return Formula::imp(forgetful(f.lhs()), forgetful(f.rhs()));
    case JKind::Just: return Formula::box(forgetful(f.body()));
    case JKind::JustTc: return Formula::boxplus(forgetful(f.body()));
    }
    return Formula::bot();
}

void collect_constants(Term t, std::vector<unsigned>& out) {
    if (t.ground() && t.kind() == TermKind::Const) {
        out.push_back(t.index());
        return;
    }
    if (t.left().valid()) collect_constants(t.left(), out);
    if (t.right().valid()) collect_constants(t.right(), out);
}

void collect_constants(JFormula f, std::vector<unsigned>& out) {
    switch (f.kind()) {
    case JKind::Var:
    case JKind::Bot: return;
    case JKind::Imp:
        collect_constants(f.lhs(), out);
        collect_constants(f.rhs(), out);
        return;
    default:
        collect_constants(f.term(), out);
        collect_constants(f.body(), out);
    }
}

}  // namespace kplus
