#include "kplus/formula.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>

namespace kplus {

namespace {

struct Key {
    FormulaKind kind;
    int label;
    unsigned var;
    const FormulaNode* lhs;
    const FormulaNode* rhs;
    bool operator==(const Key&) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::size_t h = static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ULL;
        h ^= std::hash<int>{}(k.label) + 0x9e3779b9 + (h << 6) + (h >> 2);
        h ^= std::hash<unsigned>{}(k.var) + 0x9e3779b9 + (h << 6) + (h >> 2);
        h ^= (k.lhs ? k.lhs->hash : 0) + 0x9e3779b9 + (h << 6) + (h >> 2);
        h ^= (k.rhs ? k.rhs->hash : 0) + 0x9e3779b9 + (h << 6) + (h >> 2);
        return h;
    }
};

class Table {
public:
    const FormulaNode* intern(const Key& key, Formula lhs, Formula rhs) {
        std::lock_guard lock(mutex_);
        auto it = nodes_.find(key);
        if (it != nodes_.end()) return it->second.get();
        auto node = std::make_unique<FormulaNode>();
        node->kind = key.kind;
        node->label = key.label;
        node->var = key.var;
        node->lhs = lhs;
        node->rhs = rhs;
        node->hash = KeyHash{}(key);
        node->size = 1 + (lhs.valid() ? lhs.size() : 0) + (rhs.valid() ? rhs.size() : 0);
        const FormulaNode* raw = node.get();
        nodes_.emplace(key, std::move(node));
        return raw;
    }

private:
    std::mutex mutex_;
    std::unordered_map<Key, std::unique_ptr<FormulaNode>, KeyHash> nodes_;
};

Table& table() {
    static Table t;
    return t;
}

}  // namespace

struct FormulaFactory {
    static Formula make(FormulaKind kind, int label, unsigned var, Formula lhs, Formula rhs) {
        Key key{kind, label, var, lhs.node(), rhs.node()};
        return Formula(table().intern(key, lhs, rhs));
    }
};

Formula Formula::var(unsigned index) {
    return FormulaFactory::make(FormulaKind::Var, -1, index, {}, {});
}
Formula Formula::bot() { return FormulaFactory::make(FormulaKind::Bot, -1, 0, {}, {}); }
Formula Formula::imp(Formula lhs, Formula rhs) {
    return FormulaFactory::make(FormulaKind::Imp, -1, 0, lhs, rhs);
}
Formula Formula::box(Formula body, int label) {
    return FormulaFactory::make(FormulaKind::Box, label, 0, body, {});
}
Formula Formula::boxplus(Formula body, int label) {
    return FormulaFactory::make(FormulaKind::BoxPlus, label, 0, body, {});
}
Formula Formula::neg(Formula a) { return imp(a, bot()); }
Formula Formula::top() { return neg(bot()); }
Formula Formula::conj(Formula a, Formula b) { return neg(imp(a, neg(b))); }
Formula Formula::disj(Formula a, Formula b) { return imp(neg(a), b); }

std::strong_ordering operator<=>(Formula a, Formula b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    switch (a.kind()) {
    case FormulaKind::Var: return a.var_index() <=> b.var_index();
    case FormulaKind::Bot: return std::strong_ordering::equal;
    case FormulaKind::Imp:
        if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
        return a.rhs() <=> b.rhs();
    case FormulaKind::Box:
    case FormulaKind::BoxPlus:
        if (auto c = a.label() <=> b.label(); c != 0) return c;
        return a.body() <=> b.body();
    }
    return std::strong_ordering::equal;
}

Formula erase(Formula f) {
    switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Bot: return f;
    case FormulaKind::Imp: return Formula::imp(erase(f.lhs()), erase(f.rhs()));
    case FormulaKind::Box: return Formula::box(erase(f.body()));
    case FormulaKind::BoxPlus: return Formula::boxplus(erase(f.body()));
    }
    return f;
}

bool is_unannotated(Formula f) {
    switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Bot: return true;
    case FormulaKind::Imp: return is_unannotated(f.lhs()) && is_unannotated(f.rhs());
    default: return f.label() < 0 && is_unannotated(f.body());
    }
}

std::vector<Formula> subformulas(Formula f) {
    std::vector<Formula> out;
    std::set<const FormulaNode*> seen;
    std::vector<Formula> stack{f};
    while (!stack.empty()) {
        Formula g = stack.back();
        stack.pop_back();
        if (!seen.insert(g.node()).second) continue;
        out.push_back(g);
        if (g.is_imp()) {
            stack.push_back(g.rhs());
            stack.push_back(g.lhs());
        } else if (g.is_modal()) {
            stack.push_back(g.body());
        }
    }
    return out;
}

std::vector<unsigned> variables(Formula f) {
    std::vector<unsigned> out;
    for (Formula g : subformulas(f))
        if (g.is_var()) out.push_back(g.var_index());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool parity_consistent(Formula f, bool positive) {
    switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Bot: return true;
    case FormulaKind::Imp:
        return parity_consistent(f.lhs(), !positive) && parity_consistent(f.rhs(), positive);
    default:
        if (f.label() < 0 || (f.label() % 2 == 1) != positive) return false;
        return parity_consistent(f.body(), positive);
    }
}

namespace {
void collect_labels(Formula f, std::vector<int>& boxes, std::vector<int>& pluses, bool& unlabelled) {
    switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Bot: return;
    case FormulaKind::Imp:
        collect_labels(f.lhs(), boxes, pluses, unlabelled);
        collect_labels(f.rhs(), boxes, pluses, unlabelled);
        return;
    default:
        if (f.label() < 0) unlabelled = true;
        (f.is_box() ? boxes : pluses).push_back(f.label());
        collect_labels(f.body(), boxes, pluses, unlabelled);
    }
}
}  // namespace

bool properly_annotated(const std::vector<Formula>& occurrences) {
    std::vector<int> boxes, pluses;
    bool unlabelled = false;
    for (Formula f : occurrences) collect_labels(f, boxes, pluses, unlabelled);
    if (unlabelled) return false;
    auto distinct = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    return distinct(boxes) && distinct(pluses);
}

void LabelAllocator::reserve(Formula f) {
    for (Formula g : subformulas(f)) {
        if (g.is_modal() && g.label() >= 0) {
            auto l = static_cast<std::size_t>(g.label());
            if (used_.size() <= l) used_.resize(l + 1, false);
            used_[l] = true;
        }
    }
}

int LabelAllocator::fresh(bool odd) {
    std::size_t l = odd ? 1 : 0;
    while (l < used_.size() && used_[l]) l += 2;
    if (used_.size() <= l) used_.resize(l + 1, false);
    used_[l] = true;
    return static_cast<int>(l);
}

Formula proper_annotate(Formula f, bool positive, LabelAllocator& alloc) {
    switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Bot: return f;
    case FormulaKind::Imp: {
        Formula l = proper_annotate(f.lhs(), !positive, alloc);
        Formula r = proper_annotate(f.rhs(), positive, alloc);
        return Formula::imp(l, r);
    }
    case FormulaKind::Box: {
        int label = alloc.fresh(positive);
        return Formula::box(proper_annotate(f.body(), positive, alloc), label);
    }
    case FormulaKind::BoxPlus: {
        int label = alloc.fresh(positive);
        return Formula::boxplus(proper_annotate(f.body(), positive, alloc), label);
    }
    }
    return f;
}

}  // namespace kplus
