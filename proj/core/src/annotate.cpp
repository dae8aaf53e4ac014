#include "kplus/annotate.hpp"

#include <map>
#include <stdexcept>

#include "rules.hpp"

namespace kplus {

namespace {

// Annotated copy of `target` among `side` (first in order); invalid if none.
Formula find_annotated(const std::vector<Formula>& side, Formula target) {
    for (Formula f : side)
        if (erase(f) == target) return f;
    return {};
}

struct Unraveller {
    const CyclicProof& src;
    CyclicProof out;
    std::vector<std::size_t> path;
    std::vector<char> right_edge;  // right_edge[i]: edge into path[i] is a boxplus right premise
    static constexpr std::size_t kMaxNodes = 4'000'000;

    std::size_t build(std::size_t n, const FocusedSequent& a, bool via_right) {
        while (src.nodes[n].rule == Rule::Backlink) n = src.backlinks.at(n);
        if (out.nodes.size() >= kMaxNodes) throw BudgetExceeded();
        std::size_t here = out.nodes.size();
        out.nodes.push_back(ProofNode{a, Rule::Backlink, {}, {}, -1});

        if (!a.star()) {
            bool crossed = via_right;
            for (std::size_t k = path.size(); k-- > 0;) {
                const FocusedSequent& anc = out.nodes[path[k]].seq;
                if (anc.focus != a.focus) break;
                if (crossed && anc == a) {
                    out.backlinks[here] = path[k];
                    return here;
                }
                crossed = crossed || right_edge[k];
            }
        }

        const ProofNode& s = src.nodes[n];
        ProofNode& node = out.nodes[here];
        node.rule = s.rule;
        std::vector<std::pair<FocusedSequent, std::size_t>> next;
        switch (s.rule) {
        case Rule::AxiomVar:
        case Rule::AxiomBot: break;
        case Rule::ImpRight: {
            Formula p = find_annotated(a.seq.succ, s.principal);
            node.principal = p;
            next.emplace_back(detail::imp_right_premise(a, p), s.children[0]);
            break;
        }
        case Rule::ImpLeft: {
            Formula p = find_annotated(a.seq.ante, s.principal);
            node.principal = p;
            auto [l, r] = detail::imp_left_premises(a, p);
            next.emplace_back(std::move(l), s.children[0]);
            next.emplace_back(std::move(r), s.children[1]);
            break;
        }
        case Rule::Box: {
            Formula p = find_annotated(a.seq.succ, s.principal);
            node.principal = p;
            next.emplace_back(detail::box_premise(a, p), s.children[0]);
            break;
        }
        case Rule::BoxPlus: {
            Formula p = (!a.star() && erase(a.focus) == s.principal) ? a.focus
                                                                      : find_annotated(a.seq.succ, s.principal);
            node.principal = p;
            auto [l, r] = detail::boxplus_premises(a, p);
            next.emplace_back(std::move(l), s.children[0]);
            next.emplace_back(std::move(r), s.children[1]);
            break;
        }
        default: throw std::invalid_argument("unexpected rule while annotating");
        }
        if (next.size() && !out.nodes[here].principal.valid())
            throw std::logic_error("annotated sequent lost the principal formula");

        path.push_back(here);
        right_edge.push_back(via_right);
        for (std::size_t k = 0; k < next.size(); ++k) {
            bool right = s.rule == Rule::BoxPlus && k == 1;
            std::size_t c = build(next[k].second, next[k].first, right);
            out.nodes[here].children.push_back(c);
        }
        path.pop_back();
        right_edge.pop_back();
        return here;
    }
};

}  // namespace

FocusedSequent annotate_sequent(const FocusedSequent& s, LabelAllocator& alloc) {
    std::vector<Formula> ante, succ;
    for (Formula f : s.seq.ante) ante.push_back(proper_annotate(f, false, alloc));
    Formula focus;
    for (Formula f : s.seq.succ) {
        Formula g = proper_annotate(f, true, alloc);
        if (!s.star() && f == s.focus) focus = g;
        succ.push_back(g);
    }
    return {Sequent(std::move(ante), std::move(succ)), focus};
}

CyclicProof annotate(const CyclicProof& p) {
    if (p.nodes.empty()) throw std::invalid_argument("empty proof");
    LabelAllocator alloc;
    return annotate(p, annotate_sequent(p.nodes[0].seq, alloc));
}

CyclicProof annotate(const CyclicProof& p, const FocusedSequent& root) {
    CheckResult ok = check_cyclic(p);
    if (!ok) throw std::invalid_argument("annotate needs a valid cyclic proof: " + ok.errors.front());
    Unraveller u{p, {}, {}, {}};
    u.build(0, root, false);
    return std::move(u.out);
}

std::size_t region_top(const CyclicProof& p, const std::vector<std::size_t>& parents, std::size_t node) {
    Formula focus = p.nodes[node].seq.focus;
    if (!focus.valid()) return node;
    while (parents[node] != SIZE_MAX && p.nodes[parents[node]].seq.focus == focus) node = parents[node];
    return node;
}

PreparedProof prepare(const CyclicProof& annotated) {
    PreparedProof pp{annotated, {}};
    CyclicProof& p = pp.proof;
    std::vector<std::size_t> par = p.parents();
    std::map<int, unsigned> box_count;
    std::map<int, std::map<std::size_t, unsigned>> classes;  // label -> region top -> class
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        ProofNode& n = p.nodes[i];
        if (n.rule == Rule::Box) {
            n.occ = static_cast<int>(box_count[n.principal.label()]++);
        } else if (n.rule == Rule::BoxPlus) {
            std::size_t top = region_top(p, par, n.children[1]);
            auto& cls = classes[n.principal.label()];
            auto it = cls.find(top);
            if (it == cls.end()) it = cls.emplace(top, static_cast<unsigned>(cls.size())).first;
            n.occ = static_cast<int>(it->second);
        }
    }
    for (auto [label, k] : box_count) pp.g.set(static_cast<unsigned>(label - 1), k);
    for (auto& [label, cls] : classes) pp.g.set(static_cast<unsigned>(label), static_cast<unsigned>(cls.size()));
    return pp;
}

CheckResult check_prepared(const PreparedProof& pp) {
    CheckResult res = check_cyclic(pp.proof, true);
    if (!res) return res;
    const CyclicProof& p = pp.proof;
    std::vector<std::size_t> par = p.parents();
    std::map<std::pair<int, int>, std::size_t> box_seen;
    std::map<std::pair<int, int>, std::size_t> class_top;
    std::map<std::size_t, std::pair<int, int>> top_class;
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        const ProofNode& n = p.nodes[i];
        auto err = [&](const std::string& m) { res.errors.push_back("node " + std::to_string(i) + ": " + m); };
        if (n.rule != Rule::Box && n.rule != Rule::BoxPlus) {
            if (n.occ != -1) err("occurrence label on a non-modal rule");
            continue;
        }
        int L = n.principal.label();
        if (n.occ < 0 || L < 1 || L % 2 == 0) {
            err("modal rule without an occurrence label or with an even principal label");
            continue;
        }
        if (n.rule == Rule::Box) {
            if (!box_seen.emplace(std::make_pair(L, n.occ), i).second) err("box occurrence label reused");
            if (static_cast<unsigned>(n.occ) >= pp.g(static_cast<unsigned>(L - 1))) err("g does not bound a box occurrence");
        } else {
            std::size_t top = region_top(p, par, n.children[1]);
            auto key = std::make_pair(L, n.occ);
            auto [it, fresh] = class_top.emplace(key, top);
            if (!fresh && it->second != top) err("boxplus class label shared across regions");
            auto [jt, fresh2] = top_class.emplace(top, key);
            if (!fresh2 && jt->second != key) err("one region carries two boxplus class labels");
            if (static_cast<unsigned>(n.occ) >= pp.g(static_cast<unsigned>(L))) err("g does not bound a boxplus occurrence");
        }
    }
    return res;
}

}  // namespace kplus
