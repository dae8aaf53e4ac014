#include "kplus/realize.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "kplus/syntax.hpp"

namespace kplus {

bool FocusRegion::contains(std::size_t n) const {
    return std::binary_search(nodes.begin(), nodes.end(), n);
}

FocusRegion focus_region(const CyclicProof& p, std::size_t root, Formula focus) {
    FocusRegion r{root, focus, {}};
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
        std::size_t b = stack.back();
        stack.pop_back();
        r.nodes.push_back(b);
        const ProofNode& n = p.nodes[b];
        std::vector<std::size_t> next;
        if (n.rule == Rule::ImpRight || n.rule == Rule::ImpLeft)
            next = n.children;
        else if (n.rule == Rule::BoxPlus && n.principal == focus)
            next = {n.children.at(1)};
        for (std::size_t c : next) {
            if (p.nodes[c].seq.focus != focus)
                throw std::invalid_argument("focus changes inside a focus region");
            stack.push_back(c);
        }
    }
    std::sort(r.nodes.begin(), r.nodes.end());
    return r;
}

std::map<std::size_t, unsigned> ranks(const CyclicProof& p, const FocusRegion& region) {
    std::map<std::size_t, unsigned> out;
    std::set<std::size_t> active;
    std::function<unsigned(std::size_t)> rk = [&](std::size_t b) -> unsigned {
        if (auto it = out.find(b); it != out.end()) return it->second;
        if (!region.contains(b)) throw std::out_of_range("node outside the focus region");
        if (!active.insert(b).second) throw std::logic_error("ill-founded rank");
        const ProofNode& n = p.nodes[b];
        unsigned r = 0;
        switch (n.rule) {
        case Rule::ImpRight: r = rk(n.children.at(0)) + 1; break;
        case Rule::ImpLeft: r = std::max(rk(n.children.at(0)), rk(n.children.at(1))) + 1; break;
        case Rule::Backlink: r = rk(p.backlinks.at(b)) + 1; break;
        default: r = 0;
        }
        active.erase(b);
        out[b] = r;
        return r;
    };
    for (std::size_t b : region.nodes) rk(b);
    return out;
}

unsigned rank(const CyclicProof& p, const FocusRegion& region, std::size_t node) {
    if (!region.contains(node)) throw std::out_of_range("node outside the focus region");
    return ranks(p, region).at(node);
}

JFormula sequent_translation(const Sequent& s, const BoundingFunction& g) {
    std::vector<JFormula> a, b;
    for (Formula f : s.ante) a.push_back(g_translate(f, g));
    for (Formula f : s.succ) b.push_back(g_translate(f, g));
    return JFormula::imp(JFormula::conj_all(a), JFormula::disj_all(b));
}

std::set<Term> induced_variables(const CyclicProof& p) {
    std::set<Term> out;
    for (const ProofNode& n : p.nodes) {
        if (n.rule == Rule::Box)
            out.insert(Term::x_prov(static_cast<unsigned>(n.principal.label()),
                                    static_cast<unsigned>(n.occ)));
        else if (n.rule == Rule::BoxPlus)
            out.insert(Term::y_prov(static_cast<unsigned>(n.principal.label()),
                                    static_cast<unsigned>(n.occ)));
    }
    return out;
}

namespace {

struct Partial {
    JSubstitution theta;
    JProof proof;
};

JSubstitution merge(const JSubstitution& a, const JSubstitution& b) {
    JSubstitution out = a;
    for (const auto& [v, t] : b.entries()) {
        if (out.get(v)) throw std::logic_error("realizing substitutions overlap");
        out.set(v, t);
    }
    return out;
}

Term left_sum(const std::vector<Term>& terms) {
    Term s = terms.at(0);
    for (std::size_t k = 1; k < terms.size(); ++k) s = Term::sum(s, terms[k]);
    return s;
}

JFormula bracket(Term t, JFormula body) {
    return t.sort() == Sort::First ? JFormula::just(t, body) : JFormula::just_tc(t, body);
}

// [terms[pos]]body -> [terms[0] + ... + terms[k-1]]body through (v) or (x).
std::size_t sum_weaken(ProofBuilder& b, const std::vector<Term>& terms, std::size_t pos,
                       JFormula body) {
    bool first = terms.at(0).sort() == Sort::First;
    std::vector<std::size_t> prem;
    Term s = terms[0];
    for (std::size_t k = 1; k < terms.size(); ++k) {
        prem.push_back(b.axiom(first ? AxiomInstance::v(s, terms[k], body)
                                     : AxiomInstance::x(s, terms[k], body)));
        s = Term::sum(s, terms[k]);
    }
    return prop_derive(b, JFormula::imp(bracket(terms.at(pos), body), bracket(s, body)), prem);
}

class Realizer {
public:
    Realizer(const PreparedProof& pp, ConstantAllocator& alloc)
        : p_(pp.proof), g_(pp.g), alloc_(alloc), incoming_(p_.nodes.size()) {
        for (const auto& [leaf, target] : p_.backlinks) incoming_[target].push_back(leaf);
    }

    std::vector<CaseFiveState> trace;

    Partial run(std::size_t r, const FocusedSequent& seq, bool allow_loop) {
        const ProofNode& n = p_.nodes[r];
        if (allow_loop && !incoming_[r].empty()) {
            if (seq.star()) throw std::logic_error("back-link into a node without focus");
            return region(r, seq);
        }
        switch (n.rule) {
        case Rule::AxiomVar:
        case Rule::AxiomBot: return {{}, prop_proof(F(seq.seq))};
        case Rule::ImpRight: return imp_right(n, seq);
        case Rule::ImpLeft: return imp_left(n, seq);
        case Rule::Box: return box(n, seq);
        case Rule::BoxPlus: {
            FocusedSequent s = seq;
            s.focus = n.principal;
            return region(r, s);
        }
        default: throw std::logic_error("unexpected rule at the root of a subproof");
        }
    }

private:
    const CyclicProof& p_;
    const BoundingFunction& g_;
    ConstantAllocator& alloc_;
    std::vector<std::vector<std::size_t>> incoming_;

    JFormula tr(Formula f) const { return g_translate(f, g_); }
    JFormula F(const Sequent& s) const { return sequent_translation(s, g_); }
    const FocusedSequent& seq_of(std::size_t b) const { return p_.nodes[b].seq; }

    Partial imp_right(const ProofNode& n, const FocusedSequent& seq) {
        std::size_t c = n.children.at(0);
        Partial sub = run(c, seq_of(c), true);
        ProofBuilder b;
        std::size_t i = b.append(sub.proof);
        std::size_t goal = prop_derive(b, sub.theta.apply(F(seq.seq)), {i});
        return {sub.theta, b.extract(goal)};
    }

    Partial imp_left(const ProofNode& n, const FocusedSequent& seq) {
        std::size_t c1 = n.children.at(0), c2 = n.children.at(1);
        Partial s1 = run(c1, seq_of(c1), true);
        Partial s2 = run(c2, seq_of(c2), true);
        JSubstitution theta = merge(s1.theta, s2.theta);
        ProofBuilder b;
        std::size_t i1 = b.append(substitute_proof(s1.proof, s2.theta));
        std::size_t i2 = b.append(substitute_proof(s2.proof, s1.theta));
        std::size_t goal = prop_derive(b, theta.apply(F(seq.seq)), {i1, i2});
        return {theta, b.extract(goal)};
    }

    struct LiftShape {
        std::vector<Formula> a;   // bodies of boxes, with their terms in z
        std::vector<Term> z;
        std::vector<Formula> bs;  // bodies of boxplus formulas
        std::vector<Term> ys;
    };

    // Splits the modal antecedent of a modal rule into the parts lift expects.
    LiftShape lift_shape(const Sequent& concl, const Sequent& prem) const {
        LiftShape s;
        for (Formula f : concl.ante) {
            if (f.is_box() && contains(prem.ante, f.body())) {
                s.a.push_back(f.body());
                s.z.push_back(box_term(f.label(), g_));
            } else if (f.is_boxplus() && contains(prem.ante, f.body()) && contains(prem.ante, f)) {
                s.bs.push_back(f.body());
                s.ys.push_back(boxplus_term(f.label(), g_));
            }
        }
        return s;
    }

    // Proves the lift input conj(parts) -> c from the step `from` in b.
    JProof lift_input(ProofBuilder& b, std::size_t from, const LiftShape& s,
                      const JSubstitution& theta, JFormula c) const {
        std::vector<JFormula> parts;
        for (Formula f : s.a) parts.push_back(theta.apply(tr(f)));
        for (Formula f : s.bs) parts.push_back(theta.apply(tr(f)));
        for (std::size_t k = 0; k < s.bs.size(); ++k)
            parts.push_back(JFormula::just_tc(s.ys[k], theta.apply(tr(s.bs[k]))));
        JFormula goal = parts.empty() ? c : JFormula::imp(JFormula::conj_all(parts), c);
        return b.extract(prop_derive(b, goal, {from}));
    }

    Partial box(const ProofNode& n, const FocusedSequent& seq) {
        std::size_t c = n.children.at(0);
        auto m = static_cast<unsigned>(n.principal.label());
        auto i = static_cast<unsigned>(n.occ);
        Partial sub = run(c, seq_of(c), true);
        LiftShape shape = lift_shape(seq.seq, seq_of(c).seq);
        ProofBuilder b0;
        std::size_t from = b0.append(sub.proof);
        JFormula d = tr(n.principal.body());
        JProof input = lift_input(b0, from, shape, sub.theta, sub.theta.apply(d));
        Lifted l = lift(input, shape.z, shape.bs.size(), alloc_);

        JSubstitution step;
        step.set(Term::x_prov(m, i), l.h);
        JSubstitution theta = merge(sub.theta, step);

        ProofBuilder b;
        std::size_t lifted = b.append(substitute_proof(l.proof, step));
        std::vector<Term> terms;
        for (unsigned k = 0; k < g_(m - 1); ++k) terms.push_back(theta.apply(Term::x_prov(m, k)));
        std::size_t weak = sum_weaken(b, terms, i, theta.apply(d));
        std::size_t goal = prop_derive(b, theta.apply(F(seq.seq)), {lifted, weak});
        return {theta, b.extract(goal)};
    }

    Partial region(std::size_t r, const FocusedSequent& seq);
};

Partial Realizer::region(std::size_t r, const FocusedSequent& seq) {
    Formula focus = seq.focus;
    auto n = static_cast<unsigned>(focus.label());
    CaseFiveState st;
    st.region = focus_region(p_, r, focus);
    auto rk = ranks(p_, st.region);
    auto sequent = [&](std::size_t b) -> const Sequent& { return b == r ? seq.seq : seq_of(b).seq; };

    std::vector<JFormula> hs;
    for (std::size_t b : st.region.nodes) {
        const Sequent& s = sequent(b);
        std::vector<JFormula> a, d;
        for (Formula f : s.ante) a.push_back(tr(f));
        for (Formula f : s.succ)
            if (f != focus) d.push_back(tr(f));
        JFormula gb = JFormula::conj(JFormula::conj_all(a), JFormula::neg(JFormula::disj_all(d)));
        st.g[b] = gb;
        if (std::find(hs.begin(), hs.end(), gb) == hs.end()) hs.push_back(gb);
    }
    st.h = JFormula::disj_all(hs);
    JFormula dg = tr(focus.body());
    JFormula x = JFormula::conj(dg, st.h);

    // Rank-zero nodes: sigma_a and a proof of sigma_a(G_a) -> [o_a]sigma_a(D & H).
    std::map<std::size_t, Partial> zero;
    int j = -1;
    for (std::size_t b : st.region.nodes) {
        const ProofNode& nd = p_.nodes[b];
        if (nd.rule == Rule::BoxPlus && nd.principal == focus) {
            if (j >= 0 && j != nd.occ) throw std::logic_error("focus region spans two classes");
            j = nd.occ;
        }
        if (rk.at(b) != 0) continue;
        st.rank_zero.push_back(b);
        Partial z;
        Term o = Term::x(0);
        ProofBuilder bb;
        std::vector<std::size_t> from;
        if (nd.rule == Rule::BoxPlus && nd.principal == focus) {
            std::size_t left = nd.children.at(0);
            Partial sub = run(left, seq_of(left), true);
            LiftShape shape = lift_shape(sequent(b), seq_of(left).seq);
            ProofBuilder b0;
            std::size_t i = b0.append(sub.proof);
            JProof input = lift_input(b0, i, shape, sub.theta, sub.theta.apply(x));
            Lifted l = lift(input, shape.z, shape.bs.size(), alloc_);
            o = l.h;
            z.theta = sub.theta;
            from.push_back(bb.append(l.proof));
        } else if (nd.rule == Rule::Box || nd.rule == Rule::BoxPlus) {
            FocusedSequent s{Sequent(sequent(b).ante, without(sequent(b).succ, focus)), {}};
            Partial sub = run(b, s, false);
            z.theta = sub.theta;
            from.push_back(bb.append(sub.proof));
        } else if (nd.rule != Rule::AxiomVar && nd.rule != Rule::AxiomBot) {
            throw std::logic_error("unexpected rank-zero rule");
        }
        JFormula goal = JFormula::imp(z.theta.apply(st.g[b]), JFormula::just(o, z.theta.apply(x)));
        z.proof = bb.extract(prop_derive(bb, goal, from));
        st.o[b] = o;
        zero.emplace(b, std::move(z));
    }
    if (j < 0) throw std::logic_error("focus region without a boxplus rule on its focus");

    JSubstitution sigma;
    for (const auto& [b, z] : zero) sigma = merge(sigma, z.theta);
    JFormula sx = sigma.apply(x);
    ProofBuilder bb;
    auto goal_of = [&](std::size_t b, Term t) {
        return JFormula::imp(sigma.apply(st.g[b]), JFormula::just(t, sx));
    };

    // v_b by the rank subinduction; each step proves sigma(G_b) -> [v_b]sigma(D & H).
    std::map<std::size_t, std::pair<Term, std::size_t>> vb;
    for (const auto& [b, z] : zero) vb[b] = {st.o[b], bb.append(substitute_proof(z.proof, sigma))};
    std::function<std::pair<Term, std::size_t>(std::size_t)> v = [&](std::size_t b) {
        if (auto it = vb.find(b); it != vb.end()) return it->second;
        const ProofNode& nd = p_.nodes[b];
        std::pair<Term, std::size_t> out;
        if (nd.rule == Rule::Backlink) {
            auto c = v(p_.backlinks.at(b));
            out = {c.first, prop_derive(bb, goal_of(b, c.first), {c.second})};
        } else if (nd.rule == Rule::ImpRight) {
            auto c = v(nd.children.at(0));
            out = {c.first, prop_derive(bb, goal_of(b, c.first), {c.second})};
        } else {
            auto c1 = v(nd.children.at(0));
            auto c2 = v(nd.children.at(1));
            Term t = Term::sum(c1.first, c2.first);
            std::size_t ax = bb.axiom(AxiomInstance::v(c1.first, c2.first, sx));
            out = {t, prop_derive(bb, goal_of(b, t), {c1.second, c2.second, ax})};
        }
        vb[b] = out;
        return out;
    };
    std::vector<Term> terms;
    for (std::size_t b : st.region.nodes) {
        terms.push_back(v(b).first);
        st.v[b] = terms.back();
    }
    st.sum = left_sum(terms);
    std::vector<std::size_t> cover;
    std::set<JFormula> covered;
    for (std::size_t k = 0; k < st.region.nodes.size(); ++k) {
        std::size_t b = st.region.nodes[k];
        if (!covered.insert(st.g[b]).second) continue;
        std::size_t weak = sum_weaken(bb, terms, k, sx);
        cover.push_back(prop_derive(bb, goal_of(b, st.sum), {vb[b].second, weak}));
    }
    JFormula sh = sigma.apply(st.h);
    JProof hv = bb.extract(prop_derive(bb, JFormula::imp(sh, JFormula::just(st.sum, sx)), cover));
    if (!check_proof(hv).ok) throw std::logic_error("focus region: H -> [v](D & H) fails to check");

    InductionTerm it = induction_term(hv, alloc_);
    if (!check_proof(it.proof).ok) throw std::logic_error("focus region: H -> [t]tc D fails to check");
    st.t = it.at(st.sum);
    st.replaced = Term::y_prov(n, static_cast<unsigned>(j));
    JSubstitution step;
    step.set(st.replaced, st.t);
    JSubstitution theta = merge(sigma, step);

    ProofBuilder fb;
    std::size_t hi = fb.append(substitute_proof(it.proof, step));
    std::vector<Term> ys;
    for (unsigned k = 0; k < g_(n); ++k) ys.push_back(theta.apply(Term::y_prov(n, k)));
    std::size_t weak = sum_weaken(fb, ys, static_cast<std::size_t>(j), theta.apply(dg));
    std::size_t goal = prop_derive(fb, theta.apply(F(seq.seq)), {hi, weak});
    trace.push_back(std::move(st));
    return {theta, fb.extract(goal)};
}

}  // namespace

RealizationResult realize_proof(const PreparedProof& pp, ConstantAllocator& alloc) {
    if (CheckResult c = check_prepared(pp); !c)
        throw std::invalid_argument("not a prepared proof: " + c.errors.front());
    Realizer rz(pp, alloc);
    const FocusedSequent& root = pp.proof.nodes.at(0).seq;
    Partial top = rz.run(0, root, true);

    std::set<Term> dom;
    for (const auto& [v, t] : top.theta.entries()) dom.insert(v);
    if (dom != induced_variables(pp.proof))
        throw std::logic_error("realizing substitution is not adequate");
    if (!top.theta.finalizing()) throw std::logic_error("realizing substitution is not finalizing");
    JFormula goal = top.theta.apply(sequent_translation(root.seq, pp.g));
    if (top.proof.conclusion() != goal) throw std::logic_error("realization proves the wrong formula");
    return {top.theta, std::move(top.proof), goal, std::move(rz.trace), pp};
}

RealizationResult realize_theorem(Formula a, const EngineOptions& options) {
    if (!is_unannotated(a)) throw std::invalid_argument("realize expects an unannotated formula");
    EngineOptions opts = options;
    opts.verdict_only = false;
    Decision d = decide(Sequent({}, {a}), opts);
    if (d.verdict == Verdict::BudgetExceeded) throw BudgetExceeded();
    if (d.verdict != Verdict::Provable) throw std::invalid_argument("not a theorem of K+");
    PreparedProof pp = prepare(annotate(*d.proof));
    ConstantAllocator alloc;
    RealizationResult r = realize_proof(pp, alloc);

    const Sequent& root = pp.proof.nodes.at(0).seq.seq;
    if (!root.ante.empty() || root.succ.size() != 1)
        throw std::logic_error("unexpected root sequent");
    ProofBuilder b;
    std::size_t i = b.append(r.proof);
    r.realized = r.theta.apply(g_translate(root.succ[0], pp.g));
    r.proof = b.extract(prop_derive(b, r.realized, {i}));
    return r;
}

namespace {

void normal_walk(Formula a, JFormula f, bool positive, std::set<Term>& seen, CheckResult& out) {
    if (a.is_imp() && f.is_imp()) {
        normal_walk(a.lhs(), f.lhs(), !positive, seen, out);
        normal_walk(a.rhs(), f.rhs(), positive, seen, out);
    } else if ((a.is_box() && f.is_just()) || (a.is_boxplus() && f.is_just_tc())) {
        if (!positive) {
            Term t = f.term();
            TermKind want = a.is_box() ? TermKind::X : TermKind::Y;
            if (t.kind() != want)
                out.errors.push_back("negative occurrence not realized by a plain variable");
            else if (!seen.insert(t).second)
                out.errors.push_back("variable shared by two negative occurrences");
        }
        normal_walk(a.body(), f.body(), positive, seen, out);
    }
}

}  // namespace

CheckResult check_realization(Formula a, const RealizationResult& r) {
    CheckResult out;
    if (forgetful(r.realized) != a) out.errors.push_back("forgetful projection differs from the theorem");
    if (!r.realized.provisional_free()) out.errors.push_back("realization has provisional variables");
    std::set<Term> seen;
    normal_walk(a, r.realized, true, seen, out);
    if (!r.theta.finalizing()) out.errors.push_back("substitution is not finalizing");
    JProofVerdict v = check_proof(r.proof);
    if (!v.ok) out.errors.push_back("proof fails to check: " + v.errors.front());
    else if (!v.injective) out.errors.push_back("constant specification is not injective");
    if (r.proof.steps.empty() || r.proof.conclusion() != r.realized)
        out.errors.push_back("proof does not conclude the realization");
    for (const JStep& s : r.proof.steps)
        if (!s.formula.provisional_free()) {
            out.errors.push_back("proof step with provisional variables");
            break;
        }
    return out;
}

}  // namespace kplus
