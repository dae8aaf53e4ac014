#include "kplus/jproof.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace kplus {

namespace {

const char* const kSchemaNames[] = {"", "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "cs"};

using J = JFormula;

J imp(J a, J b) { return J::imp(a, b); }

void need(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("axiom instance: ") + what);
}

bool first(Term t) { return t.valid() && t.sort() == Sort::First; }
bool second(Term t) { return t.valid() && t.sort() == Sort::Second; }

// Inverse of J::disj; invalid handles when f has another shape.
std::pair<J, J> split_disj(J f) {
    if (!f.is_imp() || !f.lhs().is_neg()) return {};
    return {f.lhs().lhs(), f.rhs()};
}

std::optional<AxiomInstance> try_build(const AxiomInstance& a, J f) {
    try {
        if (a.formula() == f) return a;
    } catch (const std::invalid_argument&) {
    }
    return std::nullopt;
}

std::optional<AxiomInstance> match_j0(J f) {
    if (!f.is_imp()) return std::nullopt;
    J l = f.lhs(), r = f.rhs();
    if (r.is_imp())
        if (auto m = try_build(AxiomInstance::i(l, r.lhs()), f)) return m;
    if (l.is_imp() && l.rhs().is_imp() && r.is_imp())
        if (auto m = try_build(AxiomInstance::ii(l.lhs(), l.rhs().lhs(), l.rhs().rhs()), f)) return m;
    if (l.is_neg() && l.lhs().is_neg())
        if (auto m = try_build(AxiomInstance::iii(r), f)) return m;
    if (l.is_just() && l.body().is_imp() && r.is_imp() && r.lhs().is_just())
        if (auto m = try_build(AxiomInstance::iv(l.term(), r.lhs().term(), l.body().lhs(), l.body().rhs()), f))
            return m;
    if (r.is_just() && r.term().kind() == TermKind::Sum) {
        J x = split_disj(l).first;
        if (x.valid() && x.is_just())
            if (auto m = try_build(AxiomInstance::v(r.term().left(), r.term().right(), r.body()), f)) return m;
    }
    if (l.is_just_tc() && l.body().is_imp() && r.is_imp() && r.lhs().is_just_tc())
        if (auto m = try_build(AxiomInstance::vi(l.term(), r.lhs().term(), l.body().lhs(), l.body().rhs()), f))
            return m;
    if (l.is_just_tc()) {
        if (auto m = try_build(AxiomInstance::vii(l.term(), l.body()), f)) return m;
        if (auto m = try_build(AxiomInstance::viii(l.term(), l.body()), f)) return m;
    }
    if (r.is_just_tc() && r.term().kind() == TermKind::Ind)
        if (auto m = try_build(AxiomInstance::ix(r.term().left(), r.term().right(), r.body()), f)) return m;
    if (r.is_just_tc() && r.term().kind() == TermKind::Sum)
        if (auto m = try_build(AxiomInstance::x(r.term().left(), r.term().right(), r.body()), f)) return m;
    return std::nullopt;
}

}  // namespace

std::string schema_name(Schema s) { return kSchemaNames[static_cast<int>(s)]; }

std::optional<Schema> schema_from_name(const std::string& name) {
    for (int i = 1; i <= static_cast<int>(Schema::Cs); ++i)
        if (name == kSchemaNames[i]) return static_cast<Schema>(i);
    return std::nullopt;
}

AxiomInstance AxiomInstance::i(J a, J b) {
    AxiomInstance r;
    r.schema = Schema::I;
    r.a = a;
    r.b = b;
    return r;
}
AxiomInstance AxiomInstance::ii(J a, J b, J c) {
    AxiomInstance r;
    r.schema = Schema::II;
    r.a = a;
    r.b = b;
    r.c = c;
    return r;
}
AxiomInstance AxiomInstance::iii(J a) {
    AxiomInstance r;
    r.schema = Schema::III;
    r.a = a;
    return r;
}
AxiomInstance AxiomInstance::iv(Term h, Term w, J a, J b) {
    AxiomInstance r;
    r.schema = Schema::IV;
    r.h = h;
    r.w = w;
    r.a = a;
    r.b = b;
    return r;
}
AxiomInstance AxiomInstance::v(Term h, Term w, J a) {
    AxiomInstance r;
    r.schema = Schema::V;
    r.h = h;
    r.w = w;
    r.a = a;
    return r;
}
AxiomInstance AxiomInstance::vi(Term t, Term s, J a, J b) {
    AxiomInstance r;
    r.schema = Schema::VI;
    r.t = t;
    r.s = s;
    r.a = a;
    r.b = b;
    return r;
}
AxiomInstance AxiomInstance::vii(Term s, J a) {
    AxiomInstance r;
    r.schema = Schema::VII;
    r.s = s;
    r.a = a;
    return r;
}
AxiomInstance AxiomInstance::viii(Term s, J a) {
    AxiomInstance r;
    r.schema = Schema::VIII;
    r.s = s;
    r.a = a;
    return r;
}
AxiomInstance AxiomInstance::ix(Term w, Term s, J a) {
    AxiomInstance r;
    r.schema = Schema::IX;
    r.w = w;
    r.s = s;
    r.a = a;
    return r;
}
AxiomInstance AxiomInstance::x(Term t, Term s, J a) {
    AxiomInstance r;
    r.schema = Schema::X;
    r.t = t;
    r.s = s;
    r.a = a;
    return r;
}
AxiomInstance AxiomInstance::cs(unsigned constant, AxiomInstance inner) {
    need(inner.schema != Schema::Cs, "cs instance must wrap a J+_0 axiom");
    AxiomInstance r;
    r.schema = Schema::Cs;
    r.constant = constant;
    r.inner = std::make_shared<const AxiomInstance>(std::move(inner));
    return r;
}

JFormula AxiomInstance::formula() const {
    auto fa = [&] {
        need(a.valid(), "missing A");
        return a;
    };
    auto fb = [&] {
        need(b.valid(), "missing B");
        return b;
    };
    switch (schema) {
    case Schema::I: return imp(fa(), imp(fb(), a));
    case Schema::II:
        need(c.valid(), "missing C");
        return imp(imp(fa(), imp(fb(), c)), imp(imp(a, b), imp(a, c)));
    case Schema::III: return imp(J::neg(J::neg(fa())), a);
    case Schema::IV:
        need(first(h) && first(w), "h, w must be first-sort terms");
        return imp(J::just(h, imp(fa(), fb())), imp(J::just(w, a), J::just(Term::app(h, w), b)));
    case Schema::V:
        need(first(h) && first(w), "h, w must be first-sort terms");
        return imp(J::disj(J::just(h, fa()), J::just(w, a)), J::just(Term::sum(h, w), a));
    case Schema::VI:
        need(second(t) && second(s), "t, s must be second-sort terms");
        return imp(J::just_tc(t, imp(fa(), fb())), imp(J::just_tc(s, a), J::just_tc(Term::app(t, s), b)));
    case Schema::VII:
        need(second(s), "s must be a second-sort term");
        return imp(J::just_tc(s, fa()), J::just(Term::head(s), a));
    case Schema::VIII:
        need(second(s), "s must be a second-sort term");
        return imp(J::just_tc(s, fa()), J::just(Term::tail(s), J::just_tc(s, a)));
    case Schema::IX:
        need(first(w) && second(s), "w must be first-sort, s second-sort");
        return imp(J::conj(J::just(w, fa()), J::just_tc(s, imp(a, J::just(w, a)))),
                   J::just_tc(Term::ind(w, s), a));
    case Schema::X:
        need(second(t) && second(s), "t, s must be second-sort terms");
        return imp(J::disj(J::just_tc(t, fa()), J::just_tc(s, a)), J::just_tc(Term::sum(t, s), a));
    case Schema::Cs:
        need(inner != nullptr && inner->schema != Schema::Cs, "cs instance must wrap a J+_0 axiom");
        return J::just_tc(Term::constant(constant), inner->formula());
    }
    throw std::invalid_argument("axiom instance: unknown schema");
}

std::optional<AxiomInstance> match_axiom(JFormula f) {
    if (!f.valid()) return std::nullopt;
    if (auto m = match_j0(f)) return m;
    if (f.is_just_tc() && f.term().kind() == TermKind::Const)
        if (auto inner = match_j0(f.body())) return AxiomInstance::cs(f.term().index(), *inner);
    return std::nullopt;
}

bool ConstantSpecification::injective() const {
    const std::pair<unsigned, JFormula>* prev = nullptr;
    for (const auto& e : entries_) {
        if (prev && prev->first == e.first) return false;
        prev = &e;
    }
    return true;
}

std::set<unsigned> ConstantSpecification::constants() const {
    std::set<unsigned> out;
    for (const auto& e : entries_) out.insert(e.first);
    return out;
}

void ConstantSpecification::merge(const ConstantSpecification& other) {
    entries_.insert(other.entries_.begin(), other.entries_.end());
}

ConstantSpecification constant_specification(const JProof& p) {
    ConstantSpecification cs;
    for (const JStep& s : p.steps)
        if (s.kind == JStep::Kind::Axiom && s.axiom.schema == Schema::Cs && s.axiom.inner)
            cs.insert(s.axiom.constant, s.axiom.inner->formula());
    return cs;
}

JProofVerdict check_proof(const JProof& p, const ConstantSpecification* allowed) {
    JProofVerdict v;
    auto err = [&](std::size_t i, const std::string& m) {
        v.errors.push_back("step " + std::to_string(i) + ": " + m);
    };
    if (p.steps.empty()) v.errors.push_back("empty proof");
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const JStep& s = p.steps[i];
        if (!s.formula.valid()) {
            err(i, "missing formula");
            continue;
        }
        if (s.kind == JStep::Kind::Axiom) {
            JFormula f;
            try {
                f = s.axiom.formula();
            } catch (const std::invalid_argument& e) {
                err(i, e.what());
                continue;
            }
            if (f != s.formula) err(i, "formula does not match its axiom instance");
            if (s.axiom.schema == Schema::Cs) {
                JFormula body = s.axiom.inner->formula();
                v.cs.insert(s.axiom.constant, body);
                if (allowed && !allowed->contains(s.axiom.constant, body))
                    err(i, "cs axiom outside the allowed constant specification");
            }
        } else {
            if (s.minor >= i || s.major >= i) {
                err(i, "mp cites a later step");
                continue;
            }
            JFormula a = p.steps[s.minor].formula, ab = p.steps[s.major].formula;
            if (!ab.valid() || !ab.is_imp() || ab.lhs() != a) {
                err(i, "mp major premise is not an implication from the minor premise");
                continue;
            }
            if (ab.rhs() != s.formula) err(i, "mp conclusion does not match");
        }
    }
    v.ok = v.errors.empty();
    v.injective = v.cs.injective();
    return v;
}

std::size_t ProofBuilder::push(JStep s) {
    auto it = index_.find(s.formula.node());
    if (it != index_.end()) return it->second;
    steps_.push_back(std::move(s));
    index_.emplace(steps_.back().formula.node(), steps_.size() - 1);
    return steps_.size() - 1;
}

std::size_t ProofBuilder::axiom(const AxiomInstance& a) {
    JStep s;
    s.kind = JStep::Kind::Axiom;
    s.axiom = a;
    s.formula = a.formula();
    return push(std::move(s));
}

std::size_t ProofBuilder::mp(std::size_t minor, std::size_t major) {
    JFormula a = steps_.at(minor).formula, ab = steps_.at(major).formula;
    if (!ab.is_imp() || ab.lhs() != a) throw std::logic_error("mp: premises do not fit");
    JStep s;
    s.kind = JStep::Kind::MP;
    s.minor = minor;
    s.major = major;
    s.formula = ab.rhs();
    return push(std::move(s));
}

std::size_t ProofBuilder::append(const JProof& p) {
    if (p.steps.empty()) throw std::invalid_argument("append: empty proof");
    std::vector<std::size_t> map(p.steps.size());
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const JStep& s = p.steps[i];
        if (auto f = find(s.formula)) {
            map[i] = *f;
            continue;
        }
        map[i] = s.kind == JStep::Kind::Axiom ? axiom(s.axiom) : mp(map.at(s.minor), map.at(s.major));
    }
    return map.back();
}

std::optional<std::size_t> ProofBuilder::find(JFormula f) const {
    auto it = index_.find(f.node());
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

JProof ProofBuilder::extract(std::size_t root) const {
    std::vector<char> need(root + 1, 0);
    need[root] = 1;
    for (std::size_t i = root + 1; i-- > 0;) {
        if (!need[i] || steps_[i].kind != JStep::Kind::MP) continue;
        need[steps_[i].minor] = 1;
        need[steps_[i].major] = 1;
    }
    JProof out;
    std::vector<std::size_t> map(root + 1);
    for (std::size_t i = 0; i <= root; ++i) {
        if (!need[i]) continue;
        JStep s = steps_[i];
        if (s.kind == JStep::Kind::MP) {
            s.minor = map[s.minor];
            s.major = map[s.major];
        }
        map[i] = out.steps.size();
        out.steps.push_back(std::move(s));
    }
    return out;
}

void JSubstitution::set(Term v, Term t) {
    if (!v.valid() || !t.valid() || !v.is_variable())
        throw std::invalid_argument("substitution: domain must consist of variables");
    if (v.sort() != t.sort()) throw std::invalid_argument("substitution: sort mismatch");
    if (v == t)
        map_.erase(v);
    else
        map_[v] = t;
    cache_.reset();
    provisional_domain_ = std::all_of(map_.begin(), map_.end(), [](const auto& e) { return e.first.is_provisional(); });
}

struct JSubstitution::Cache {
    std::unordered_map<const TermNode*, Term> terms;
    std::unordered_map<const JNode*, JFormula> formulas;
};

JSubstitution::Cache& JSubstitution::cache() const {
    if (!cache_) cache_ = std::make_shared<Cache>();
    return *cache_;
}

std::optional<Term> JSubstitution::get(Term v) const {
    auto it = map_.find(v);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

Term JSubstitution::apply(Term t) const {
    if (!t.valid() || map_.empty() || t.ground()) return t;
    if (provisional_domain_ && t.provisional_free()) return t;
    auto& memo = cache().terms;
    if (auto it = memo.find(t.node()); it != memo.end()) return it->second;
    Term r = t;
    switch (t.kind()) {
    case TermKind::X:
    case TermKind::XProv:
    case TermKind::Y:
    case TermKind::YProv: {
        auto it = map_.find(t);
        return it == map_.end() ? t : it->second;
    }
    case TermKind::Const: return t;
    case TermKind::App: r = Term::app(apply(t.left()), apply(t.right())); break;
    case TermKind::Sum: r = Term::sum(apply(t.left()), apply(t.right())); break;
    case TermKind::Head: r = Term::head(apply(t.left())); break;
    case TermKind::Tail: r = Term::tail(apply(t.left())); break;
    case TermKind::Ind: r = Term::ind(apply(t.left()), apply(t.right())); break;
    }
    memo.emplace(t.node(), r);
    return r;
}

JFormula JSubstitution::apply(JFormula f) const {
    if (!f.valid() || map_.empty() || f.is_var() || f.is_bot()) return f;
    if (provisional_domain_ && f.provisional_free()) return f;
    auto& memo = cache().formulas;
    if (auto it = memo.find(f.node()); it != memo.end()) return it->second;
    JFormula r;
    switch (f.kind()) {
    case JKind::Imp: r = J::imp(apply(f.lhs()), apply(f.rhs())); break;
    case JKind::Just: r = J::just(apply(f.term()), apply(f.body())); break;
    case JKind::JustTc: r = J::just_tc(apply(f.term()), apply(f.body())); break;
    default: r = f;
    }
    memo.emplace(f.node(), r);
    return r;
}

AxiomInstance JSubstitution::apply(const AxiomInstance& a) const {
    AxiomInstance r = a;
    r.a = apply(a.a);
    r.b = apply(a.b);
    r.c = apply(a.c);
    r.h = apply(a.h);
    r.w = apply(a.w);
    r.t = apply(a.t);
    r.s = apply(a.s);
    if (a.inner) r.inner = std::make_shared<const AxiomInstance>(apply(*a.inner));
    return r;
}

bool JSubstitution::finalizing() const {
    for (auto [v, t] : map_)
        if (!v.is_provisional() || !t.provisional_free()) return false;
    return true;
}

JSubstitution JSubstitution::compose(const JSubstitution& other) const {
    JSubstitution r;
    for (auto [v, t] : other.map_) r.set(v, apply(t));
    for (auto [v, t] : map_)
        if (!other.map_.count(v)) r.set(v, t);
    return r;
}

}  // namespace kplus
