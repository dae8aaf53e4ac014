#include <algorithm>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "kplus/jlemmas.hpp"

namespace kplus {

namespace {

using J = JFormula;
using A = AxiomInstance;

J imp(J a, J b) { return J::imp(a, b); }
J neg(J a) { return J::neg(a); }

// Chains C(ctx, X) = H1 -> (H2 -> ... -> X) and the lemmas that act on them.
class Glue {
public:
    explicit Glue(ProofBuilder& b) : b_(b) {}

    J f(std::size_t i) const { return b_.formula(i); }
    std::size_t ax(const A& a) { return b_.axiom(a); }
    std::size_t mp(std::size_t x, std::size_t xy) { return b_.mp(x, xy); }

    std::size_t identity(J a) {
        if (auto hit = b_.find(imp(a, a))) return *hit;
        std::size_t s1 = ax(A::ii(a, imp(a, a), a));
        std::size_t s2 = ax(A::i(a, imp(a, a)));
        std::size_t s3 = mp(s2, s1);
        return mp(ax(A::i(a, a)), s3);
    }

    // X -> Y, Y -> Z  gives  X -> Z
    std::size_t syllogism(std::size_t xy, std::size_t yz) {
        J x = f(xy).lhs(), y = f(xy).rhs(), z = f(yz).rhs();
        std::size_t a = mp(yz, ax(A::i(f(yz), x)));
        std::size_t c = mp(a, ax(A::ii(x, y, z)));
        return mp(xy, c);
    }

    // C(ctx[k:], a -> b) -> (C(ctx[k:], a) -> C(ctx[k:], b))
    std::size_t k_lemma(const std::vector<J>& ctx, std::size_t k, J a, J b) {
        std::size_t cur = identity(imp(a, b));
        for (std::size_t j = ctx.size(); j-- > k;) {
            J h = ctx[j], x = f(cur).lhs(), yz = f(cur).rhs();
            std::size_t hk = mp(cur, ax(A::i(f(cur), h)));
            std::size_t p1 = mp(hk, ax(A::ii(h, x, yz)));
            std::size_t p2 = ax(A::ii(h, yz.lhs(), yz.rhs()));
            cur = syllogism(p1, p2);
        }
        return cur;
    }

    std::size_t lifted_mp(const std::vector<J>& ctx, std::size_t ca, std::size_t cab, J a, J b) {
        if (ctx.empty()) return mp(ca, cab);
        return mp(ca, mp(cab, k_lemma(ctx, 0, a, b)));
    }

    // C(ctx, a) -> C(ctx, b) from a proved a -> b.
    std::size_t map_chain(const std::vector<J>& ctx, std::size_t thm) {
        std::size_t cur = thm;
        for (std::size_t j = ctx.size(); j-- > 0;) {
            J h = ctx[j], a = f(cur).lhs(), b = f(cur).rhs();
            cur = mp(mp(cur, ax(A::i(f(cur), h))), ax(A::ii(h, a, b)));
        }
        return cur;
    }

    ProofBuilder& builder() { return b_; }

private:
    ProofBuilder& b_;
};

// Hypothetical derivations, turned into theorems by the deduction theorem.
class Derivation {
public:
    Derivation(Glue& g, std::vector<J> hyps) : g_(g), hyps_(std::move(hyps)) {}

    std::size_t hyp(unsigned k) { return push({hyps_.at(k), 1u << k, Kind::Hyp, k, 0}); }
    std::size_t thm(std::size_t b) { return push({g_.f(b), 0, Kind::Thm, b, 0}); }
    std::size_t mp(std::size_t x, std::size_t xy) {
        const Step &sx = steps_[x], &sxy = steps_[xy];
        if (!sxy.f.is_imp() || sxy.f.lhs() != sx.f) throw std::logic_error("derivation: mp premises do not fit");
        if ((sx.deps | sxy.deps) == 0) return thm(g_.mp(sx.a, sxy.a));
        return push({sxy.f.rhs(), sx.deps | sxy.deps, Kind::MP, x, xy});
    }

    // Rewrites every step depending on hypothesis k into H -> step; returns
    // the index of H -> (formula of target).
    std::size_t discharge(unsigned k, std::size_t target) {
        J h = hyps_.at(k);
        unsigned bit = 1u << k;
        std::vector<Step> old = std::move(steps_);
        steps_.clear();
        std::vector<std::size_t> same(old.size()), lifted(old.size());
        auto lift_plain = [&](std::size_t i) { return mp(same[i], thm(g_.ax(A::i(old[i].f, h)))); };
        for (std::size_t i = 0; i < old.size(); ++i) {
            const Step& s = old[i];
            if (!(s.deps & bit)) {
                Step c = s;
                if (c.kind == Kind::MP) {
                    c.a = same[c.a];
                    c.b = same[c.b];
                }
                same[i] = push(c);
            } else if (s.kind == Kind::Hyp) {
                lifted[i] = thm(g_.identity(h));
            } else {
                std::size_t hx = (old[s.a].deps & bit) ? lifted[s.a] : lift_plain(s.a);
                std::size_t hxy = (old[s.b].deps & bit) ? lifted[s.b] : lift_plain(s.b);
                J x = old[s.a].f, y = old[s.b].f.rhs();
                std::size_t dist = thm(g_.ax(A::ii(h, x, y)));
                lifted[i] = mp(hx, mp(hxy, dist));
            }
        }
        return (old[target].deps & bit) ? lifted[target] : lift_plain(target);
    }

    std::size_t theorem(std::size_t i) const {
        if (steps_[i].deps != 0 || steps_[i].kind != Kind::Thm) throw std::logic_error("derivation: open hypotheses");
        return steps_[i].a;
    }

private:
    enum class Kind : std::uint8_t { Hyp, Thm, MP };
    struct Step {
        J f;
        unsigned deps;
        Kind kind;
        std::size_t a, b;
    };
    std::size_t push(Step s) {
        steps_.push_back(s);
        return steps_.size() - 1;
    }
    Glue& g_;
    std::vector<J> hyps_;
    std::vector<Step> steps_;
};

bool is_literal(J f) {
    if (!f.is_imp()) return true;
    return f.rhs().is_bot() && !f.lhs().is_imp();  // ~atom or ~bot
}

// ~(a -> b) -> a
std::size_t split_left(Glue& g, J a, J b) {
    J goal = imp(neg(imp(a, b)), a);
    if (auto hit = g.builder().find(goal)) return *hit;
    Derivation d(g, {neg(imp(a, b)), neg(a), a});
    std::size_t bot_b = g.syllogism(g.ax(A::i(J::bot(), neg(b))), g.ax(A::iii(b)));
    std::size_t x = d.mp(d.mp(d.hyp(2), d.hyp(1)), d.thm(bot_b));
    x = d.discharge(2, x);
    x = d.mp(x, d.hyp(0));
    x = d.discharge(1, x);
    x = d.mp(x, d.thm(g.ax(A::iii(a))));
    return d.theorem(d.discharge(0, x));
}

// ~(a -> b) -> ~b
std::size_t split_right(Glue& g, J a, J b) {
    J goal = imp(neg(imp(a, b)), neg(b));
    if (auto hit = g.builder().find(goal)) return *hit;
    Derivation d(g, {neg(imp(a, b)), b});
    std::size_t x = d.mp(d.mp(d.hyp(1), d.thm(g.ax(A::i(b, a)))), d.hyp(0));
    x = d.discharge(1, x);
    return d.theorem(d.discharge(0, x));
}

// ~c -> (c -> d)
std::size_t ex_falso(Glue& g, J c, J d) {
    J goal = imp(neg(c), imp(c, d));
    if (auto hit = g.builder().find(goal)) return *hit;
    Derivation dv(g, {neg(c), c});
    std::size_t x = dv.mp(dv.hyp(1), dv.hyp(0));
    if (!d.is_bot()) x = dv.mp(x, dv.thm(g.syllogism(g.ax(A::i(J::bot(), neg(d))), g.ax(A::iii(d)))));
    x = dv.discharge(1, x);
    return dv.theorem(dv.discharge(0, x));
}

// x -> (~x -> d)
std::size_t ex_falso_flip(Glue& g, J x, J d) {
    J goal = imp(x, imp(neg(x), d));
    if (auto hit = g.builder().find(goal)) return *hit;
    Derivation dv(g, {x, neg(x)});
    std::size_t y = dv.mp(dv.hyp(0), dv.hyp(1));
    if (!d.is_bot()) y = dv.mp(y, dv.thm(g.syllogism(g.ax(A::i(J::bot(), neg(d))), g.ax(A::iii(d)))));
    y = dv.discharge(1, y);
    return dv.theorem(dv.discharge(0, y));
}

// c -> (d -> ~(c -> ~d))
std::size_t conj_intro(Glue& g, J c, J d) {
    J goal = imp(c, imp(d, neg(imp(c, neg(d)))));
    if (auto hit = g.builder().find(goal)) return *hit;
    Derivation dv(g, {c, d, imp(c, neg(d))});
    std::size_t x = dv.mp(dv.hyp(1), dv.mp(dv.hyp(0), dv.hyp(2)));
    x = dv.discharge(2, x);
    x = dv.discharge(1, x);
    return dv.theorem(dv.discharge(0, x));
}

// (a -> b) -> (~b -> ~a)
std::size_t tollens(Glue& g, J a, J b) {
    J goal = imp(imp(a, b), imp(neg(b), neg(a)));
    if (auto hit = g.builder().find(goal)) return *hit;
    Derivation dv(g, {imp(a, b), neg(b), a});
    std::size_t x = dv.mp(dv.mp(dv.hyp(2), dv.hyp(0)), dv.hyp(1));
    x = dv.discharge(2, x);
    x = dv.discharge(1, x);
    return dv.theorem(dv.discharge(0, x));
}

// A proved C(hyps(deps), phi), deps ascending positions of hypotheses in the
// tableau context.
struct Fact {
    std::vector<std::size_t> deps;
    J phi;
    std::size_t step;
};

// Refutation tableau over a growing context. Context entries are either
// hypotheses or facts derived from them; each fact records the hypotheses it
// uses, so chain lemmas only range over those.
class Tableau {
public:
    // The first proved.size() context entries are theorems, proved by those steps.
    Tableau(Glue& g, const std::vector<J>& ctx, const std::vector<std::size_t>& proved = {}) : g_(g) {
        for (std::size_t i = 0; i < ctx.size(); ++i) {
            if (i < proved.size()) {
                add(ctx[i], Fact{{}, ctx[i], proved[i]});
            } else {
                add(ctx[i], std::nullopt);
                hyps_.push_back(i);
            }
        }
    }

    // C(non-theorem ctx, bot)
    std::size_t refute() { return expand(prove(0), hyps_); }

private:
    struct Entry {
        J phi;
        std::optional<Fact> fact;  // empty for hypotheses
    };

    void add(J phi, std::optional<Fact> fact) {
        pos_.emplace(phi, ctx_.size());
        ctx_.push_back({phi, std::move(fact)});
    }

    std::vector<J> hyps(const std::vector<std::size_t>& deps) const {
        std::vector<J> out;
        for (std::size_t d : deps) out.push_back(ctx_[d].phi);
        return out;
    }

    Fact access(std::size_t i) {
        if (ctx_[i].fact) return *ctx_[i].fact;
        return {{i}, ctx_[i].phi, g_.identity(ctx_[i].phi)};
    }

    // C(D, phi) -> C(T, phi) for D a subset of T.
    std::size_t expand(const Fact& f, const std::vector<std::size_t>& t) {
        if (f.deps == t) return f.step;
        std::optional<std::size_t> lemma;
        std::size_t j = f.deps.size();
        J inner = f.phi;  // C(T[i+1:], phi)
        J from = f.phi;   // C(D[j:], phi)
        for (std::size_t i = t.size(); i-- > 0;) {
            J h = ctx_[t[i]].phi;
            if (j > 0 && f.deps[j - 1] == t[i]) {
                --j;
                if (lemma) {
                    std::size_t w = g_.mp(*lemma, g_.ax(A::i(g_.f(*lemma), h)));
                    lemma = g_.mp(w, g_.ax(A::ii(h, from, inner)));
                }
                from = imp(h, from);
            } else {
                std::size_t k = g_.ax(A::i(inner, h));
                lemma = lemma ? g_.syllogism(*lemma, k) : k;
            }
            inner = imp(h, inner);
        }
        if (j != 0) throw std::logic_error("tableau: dependencies are not a subset");
        return lemma ? g_.mp(f.step, *lemma) : f.step;
    }

    static std::vector<std::size_t> join(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::vector<std::size_t> out;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    Fact mp(const Fact& a, const Fact& ab) {
        std::vector<std::size_t> d = join(a.deps, ab.deps);
        J b = ab.phi.rhs();
        if (d.empty()) return {d, b, g_.mp(a.step, ab.step)};
        std::size_t sa = expand(a, d), sab = expand(ab, d);
        return {d, b, g_.lifted_mp(hyps(d), sa, sab, a.phi, b)};
    }

    Fact mp_thm(const Fact& a, std::size_t thm) {
        return {a.deps, g_.f(thm).rhs(), g_.mp(a.step, g_.map_chain(hyps(a.deps), thm))};
    }

    // C(D, bot) with the pushed hypotheses last in D, read as C(D', chain).
    Fact discharge(const Fact& f, std::size_t base, const std::vector<std::size_t>& pushed) {
        std::vector<std::size_t> want;
        for (std::size_t d : f.deps)
            if (d < base) want.push_back(d);
        std::vector<std::size_t> full = want;
        full.insert(full.end(), pushed.begin(), pushed.end());
        std::size_t step = expand(f, full);
        J phi = f.phi;
        for (auto it = pushed.rbegin(); it != pushed.rend(); ++it) phi = imp(ctx_[*it].phi, phi);
        return {want, phi, step};
    }

    static bool uses(const Fact& f, std::size_t base) { return !f.deps.empty() && f.deps.back() >= base; }

    Fact prove(std::size_t fresh_from) {
        for (std::size_t i = fresh_from; i < ctx_.size(); ++i) {
            if (auto c = closes(i)) return *c;
        }
        const std::size_t n = ctx_.size();
        for (std::size_t i = 0; i < n; ++i) {
            J f = ctx_[i].phi;
            if (!f.is_imp() || f.rhs().is_bot() || pos_.count(f.rhs())) continue;
            auto a = pos_.find(f.lhs());
            if (a == pos_.end()) continue;
            return derive({mp(access(a->second), access(i))});
        }
        for (std::size_t i = 0; i < n; ++i) {
            J f = ctx_[i].phi;
            if (!f.is_imp() || f.rhs().is_bot() || pos_.count(neg(f.lhs()))) continue;
            auto nb = pos_.find(neg(f.rhs()));
            if (nb == pos_.end()) continue;
            J na = neg(f.lhs());
            auto unlocks = [&](const Entry& e) { return e.phi.is_imp() && e.phi.lhs() == na && !pos_.count(e.phi.rhs()); };
            if (std::none_of(ctx_.begin(), ctx_.end(), unlocks)) continue;
            return derive({mp(access(nb->second), mp_thm(access(i), tollens(g_, f.lhs(), f.rhs())))});
        }
        for (std::size_t i = 0; i < n; ++i) {
            J f = ctx_[i].phi;
            if (done_.count(f) || !f.is_neg() || !f.lhs().is_imp()) continue;
            J a = f.lhs().lhs(), b = f.lhs().rhs();
            Mark m(*this, f);
            Fact fi = access(i);
            if (b.is_bot()) return derive({mp_thm(fi, g_.ax(A::iii(a)))});
            std::vector<Fact> parts{mp_thm(fi, split_left(g_, a, b))};
            Fact nb = mp_thm(fi, split_right(g_, a, b));
            parts.push_back(b.is_neg() ? mp_thm(nb, g_.ax(A::iii(b.lhs()))) : nb);
            return derive(parts);
        }
        for (std::size_t i = 0; i < n; ++i) {
            J f = ctx_[i].phi;
            if (!f.is_imp() || f.rhs().is_bot() || pos_.count(f.rhs())) continue;
            if (auto a = immediate(f.lhs(), 3)) return derive({mp(*a, access(i))});
        }
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i) {
            J f = ctx_[i].phi;
            if (done_.count(f) || is_literal(f) || f.rhs().is_bot()) continue;
            if (pos_.count(f.rhs()) || pos_.count(neg(f.lhs()))) continue;  // redundant
            if (f.lhs().is_neg() && pos_.count(f.lhs().lhs())) continue;
            if (pick == n) pick = i;
            if (pos_.count(neg(f.rhs()))) {
                pick = i;
                break;
            }
        }
        if (pick == n) throw std::invalid_argument("prop_proof: goal is not a classical consequence of the hypotheses");
        J f = ctx_[pick].phi, a = f.lhs();
        Mark m(*this, f);
        Fact ca;
        if (a.is_neg()) {
            auto [left, pushed] = with({a.lhs()});
            if (!uses(left, n)) return left;
            ca = discharge(left, n, pushed);  // C(D, ~x) = C(D, a)
        } else {
            auto [left, pushed] = with({neg(a)});
            if (!uses(left, n)) return left;
            ca = mp_thm(discharge(left, n, pushed), g_.ax(A::iii(a)));
        }
        return derive({mp(ca, access(pick))});
    }

    // A fact for a when it is known or follows from known formulas by a few
    // introduction steps.
    std::optional<Fact> immediate(J a, int depth) {
        if (auto it = pos_.find(a); it != pos_.end()) return access(it->second);
        if (depth == 0 || !a.is_imp()) return std::nullopt;
        J c = a.lhs(), d = a.rhs();
        if (!d.is_bot())
            if (auto fd = immediate(d, depth - 1)) return mp_thm(*fd, g_.ax(A::i(d, c)));
        if (auto it = pos_.find(neg(c)); it != pos_.end()) return mp_thm(access(it->second), ex_falso(g_, c, d));
        if (c.is_neg())
            if (auto fx = immediate(c.lhs(), depth - 1)) return mp_thm(*fx, ex_falso_flip(g_, c.lhs(), d));
        if (d.is_bot() && c.is_imp() && c.rhs().is_neg()) {
            J l = c.lhs(), r = c.rhs().lhs();
            auto fl = immediate(l, depth - 1);
            if (!fl) return std::nullopt;
            auto fr = immediate(r, depth - 1);
            if (!fr) return std::nullopt;
            return mp(*fr, mp_thm(*fl, conj_intro(g_, l, r)));
        }
        return std::nullopt;
    }

    struct Mark {
        Mark(Tableau& t, J f) : t(t), f(f) { t.done_.insert(f); }
        ~Mark() { t.done_.erase(f); }
        Tableau& t;
        J f;
    };

    std::optional<Fact> closes(std::size_t i) {
        J f = ctx_[i].phi;
        if (f.is_bot()) return access(i);
        if (f.is_neg()) {
            if (auto it = pos_.find(f.lhs()); it != pos_.end()) return mp(access(it->second), access(i));
        }
        if (auto it = pos_.find(neg(f)); it != pos_.end()) return mp(access(i), access(it->second));
        return std::nullopt;
    }

    void pop(std::size_t base) {
        for (std::size_t k = base; k < ctx_.size(); ++k) {
            auto it = pos_.find(ctx_[k].phi);
            if (it != pos_.end() && it->second == k) pos_.erase(it);
        }
        ctx_.resize(base);
    }

    // Adds derived facts (new formulas only) and continues the branch.
    Fact derive(const std::vector<Fact>& facts) {
        std::size_t base = ctx_.size();
        for (const Fact& f : facts)
            if (!pos_.count(f.phi)) add(f.phi, f);
        Fact r = prove(base);
        pop(base);
        return r;
    }

    // Proves the extended context inconsistent; also returns the pushed positions.
    // An entry already present is pushed again but stays indexed at its old place.
    std::pair<Fact, std::vector<std::size_t>> with(const std::vector<J>& extra) {
        std::size_t base = ctx_.size();
        std::vector<std::size_t> pushed;
        for (J e : extra) {
            pushed.push_back(ctx_.size());
            add(e, std::nullopt);
        }
        Fact r = prove(base);
        pop(base);
        return {r, pushed};
    }

    Glue& g_;
    std::vector<Entry> ctx_;
    std::vector<std::size_t> hyps_;
    std::unordered_map<J, std::size_t> pos_;
    std::unordered_set<J> done_;
};

void collect_atoms(J f, std::vector<J>& out, std::unordered_set<J>& seen) {
    if (f.is_bot()) return;
    if (f.is_imp()) {
        collect_atoms(f.lhs(), out, seen);
        collect_atoms(f.rhs(), out, seen);
        return;
    }
    if (seen.insert(f).second) out.push_back(f);
}

bool eval(J f, const std::unordered_map<J, std::size_t>& atom, unsigned long long v) {
    if (f.is_bot()) return false;
    if (f.is_imp()) return !eval(f.lhs(), atom, v) || eval(f.rhs(), atom, v);
    return (v >> atom.at(f)) & 1;
}

constexpr std::size_t kTruthTableAtoms = 8;

// Proves C(hyps, goal), or goal itself when the hypotheses are the proved steps `proved`.
std::size_t prop_into(ProofBuilder& b, J goal, const std::vector<J>& hyps, const std::vector<std::size_t>& proved = {}) {
    J target = implication_chain(hyps, goal);
    if (auto hit = b.find(proved.empty() ? target : goal)) return *hit;
    if (hyps.empty() || !proved.empty())
        if (auto m = match_axiom(goal); m && m->schema != Schema::Cs) return b.axiom(*m);

    std::vector<J> atoms;
    std::unordered_set<J> seen;
    collect_atoms(target, atoms, seen);
    if (atoms.size() <= kTruthTableAtoms) {
        std::unordered_map<J, std::size_t> index;
        for (std::size_t i = 0; i < atoms.size(); ++i) index.emplace(atoms[i], i);
        for (unsigned long long v = 0; v < (1ULL << atoms.size()); ++v)
            if (!eval(target, index, v))
                throw std::invalid_argument("prop_proof: goal is not a classical consequence of the hypotheses");
    }

    // C(hyps, A1 -> ... -> X) is C(hyps A1 ..., X).
    Glue g(b);
    std::vector<J> ctx = hyps;
    J x = goal;
    while (x.is_imp() && !x.rhs().is_bot()) {
        ctx.push_back(x.lhs());
        x = x.rhs();
    }
    if (x.is_imp()) {
        ctx.push_back(x.lhs());
        x = J::bot();
    }
    if (x.is_bot()) return Tableau(g, ctx, proved).refute();
    std::vector<J> inner(ctx.begin() + static_cast<std::ptrdiff_t>(proved.size()), ctx.end());
    ctx.push_back(neg(x));
    std::size_t refuted = Tableau(g, ctx, proved).refute();  // C(inner, ~~x)
    return g.mp(refuted, g.map_chain(inner, g.ax(A::iii(x))));
}

}  // namespace

JFormula implication_chain(const std::vector<JFormula>& hyps, JFormula goal) {
    JFormula acc = goal;
    for (auto it = hyps.rbegin(); it != hyps.rend(); ++it) acc = J::imp(*it, acc);
    return acc;
}

JProof prop_proof(JFormula goal, const std::vector<JFormula>& hyps) {
    ProofBuilder b;
    return b.extract(prop_into(b, goal, hyps));
}

std::size_t conj_mp(ProofBuilder& b, std::size_t x, std::size_t y, std::size_t xyz) {
    Glue g(b);
    J fx = b.formula(x), fy = b.formula(y);
    J n = imp(fx, neg(fy));
    if (b.formula(xyz) != imp(neg(n), b.formula(xyz).rhs()))
        throw std::logic_error("conj_mp: premises do not fit");
    std::size_t nx = g.mp(x, g.ax(A::i(fx, n)));
    std::size_t nyb = g.mp(nx, g.mp(g.identity(n), g.ax(A::ii(n, fx, neg(fy)))));
    std::size_t ny = g.mp(y, g.ax(A::i(fy, n)));
    std::size_t nb = g.mp(ny, g.mp(nyb, g.ax(A::ii(n, fy, J::bot()))));
    return g.mp(nb, xyz);
}

std::size_t prop_derive(ProofBuilder& b, JFormula goal, const std::vector<std::size_t>& premises) {
    if (auto done = b.find(goal)) return *done;
    std::vector<J> hyps;
    for (std::size_t p : premises) hyps.push_back(b.formula(p));
    return prop_into(b, goal, hyps, premises);
}

}  // namespace kplus
