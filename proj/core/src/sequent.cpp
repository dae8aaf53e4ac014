#include "kplus/sequent.hpp"

#include <algorithm>

namespace kplus {

Multiset::Multiset(const std::vector<Formula>& items) {
    for (Formula f : items) insert(f);
}

void Multiset::insert(Formula f, unsigned count) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), f,
                               [](const auto& e, Formula g) { return e.first < g; });
    if (it != entries_.end() && it->first == f)
        it->second += count;
    else
        entries_.insert(it, {f, count});
}

unsigned Multiset::count(Formula f) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), f,
                               [](const auto& e, Formula g) { return e.first < g; });
    return (it != entries_.end() && it->first == f) ? it->second : 0;
}

std::size_t Multiset::total() const {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.second;
    return n;
}

std::vector<Formula> Multiset::elements() const {
    std::vector<Formula> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
}

Multiset dedup(const Multiset& m) { return Multiset(m.elements()); }

void canonicalize(std::vector<Formula>& side) {
    std::sort(side.begin(), side.end());
    side.erase(std::unique(side.begin(), side.end()), side.end());
}

bool contains(const std::vector<Formula>& side, Formula f) {
    return std::find(side.begin(), side.end(), f) != side.end();
}

std::vector<Formula> without(const std::vector<Formula>& side, Formula f) {
    std::vector<Formula> out;
    out.reserve(side.size());
    for (Formula g : side)
        if (g != f) out.push_back(g);
    return out;
}

std::vector<Formula> with(const std::vector<Formula>& side, Formula f) {
    auto it = std::lower_bound(side.begin(), side.end(), f);
    if (it != side.end() && *it == f) return side;
    std::vector<Formula> out(side.begin(), it);
    out.push_back(f);
    out.insert(out.end(), it, side.end());
    return out;
}

Sequent::Sequent(std::vector<Formula> a, std::vector<Formula> s) : ante(std::move(a)), succ(std::move(s)) {
    canonicalize(ante);
    canonicalize(succ);
}

bool Sequent::is_saturated() const {
    for (Formula f : ante)
        if (f.is_imp()) return false;
    for (Formula f : succ)
        if (f.is_imp()) return false;
    return true;
}

bool Sequent::is_axiom() const {
    for (Formula f : ante) {
        if (f.is_bot()) return true;
        if (f.is_var() && contains(succ, f)) return true;
    }
    return false;
}

bool FocusedSequent::well_formed() const {
    if (star()) return true;
    return focus.is_boxplus() && contains(seq.succ, focus);
}

Formula conj_all(const std::vector<Formula>& parts) {
    if (parts.empty()) return Formula::top();
    Formula acc = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = Formula::conj(*it, acc);
    return acc;
}

Formula disj_all(const std::vector<Formula>& parts) {
    if (parts.empty()) return Formula::bot();
    Formula acc = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = Formula::disj(*it, acc);
    return acc;
}

Formula sequent_formula(const Sequent& s) {
    return Formula::imp(conj_all(s.ante), disj_all(s.succ));
}

std::size_t hash_value(const Sequent& s) {
    std::size_t h = 0x51ed27;
    for (Formula f : s.ante) h = h * 1000003 ^ f.hash();
    h = h * 1000003 ^ 0xabcdef;
    for (Formula f : s.succ) h = h * 1000003 ^ f.hash();
    return h;
}

std::size_t hash_value(const FocusedSequent& s) {
    return hash_value(s.seq) * 31 + (s.focus.valid() ? s.focus.hash() : 7);
}

std::vector<Formula> modal_context(const std::vector<Formula>& ante) {
    std::vector<Formula> out;
    for (Formula f : ante) {
        if (f.is_box()) {
            out.push_back(f.body());
        } else if (f.is_boxplus()) {
            out.push_back(f.body());
            out.push_back(f);
        }
    }
    canonicalize(out);
    return out;
}

bool parity_consistent(const Sequent& s) {
    for (Formula f : s.ante)
        if (!parity_consistent(f, false)) return false;
    for (Formula f : s.succ)
        if (!parity_consistent(f, true)) return false;
    return true;
}

}  // namespace kplus
