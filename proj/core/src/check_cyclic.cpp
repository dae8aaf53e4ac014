#include <algorithm>
#include <string>

#include "kplus/engine.hpp"
#include "kplus/syntax.hpp"
#include "rules.hpp"

namespace kplus {

const char* rule_name(Rule r) {
    switch (r) {
    case Rule::AxiomVar: return "axiom-var";
    case Rule::AxiomBot: return "axiom-bot";
    case Rule::ImpLeft: return "imp-left";
    case Rule::ImpRight: return "imp-right";
    case Rule::Box: return "box";
    case Rule::BoxPlus: return "boxplus";
    case Rule::ImpLeft1: return "imp-left-1";
    case Rule::ImpLeft2: return "imp-left-2";
    case Rule::CrossBox: return "crossbox";
    case Rule::Backlink: return "backlink";
    case Rule::Open: return "open";
    }
    return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
    for (int i = 0; i <= static_cast<int>(Rule::Open); ++i)
        if (name == rule_name(static_cast<Rule>(i))) return static_cast<Rule>(i);
    return std::nullopt;
}

std::vector<std::size_t> CyclicProof::parents() const {
    std::vector<std::size_t> par(nodes.size(), SIZE_MAX);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t c : nodes[i].children)
            if (c < nodes.size()) par[c] = i;
    return par;
}

namespace {

bool canonical(const std::vector<Formula>& side) {
    for (std::size_t i = 1; i < side.size(); ++i)
        if (!(side[i - 1] < side[i])) return false;
    return true;
}

bool fully_labelled(Formula f) {
    for (Formula g : subformulas(f))
        if (g.is_modal() && g.label() < 0) return false;
    return true;
}

// A modal premise antecedent is acceptable when it is the modal context of
// some subset of the boxed antecedent formulas of the conclusion.
bool modal_context_of_subset(const std::vector<Formula>& ante, const std::vector<Formula>& premise) {
    std::vector<Formula> chosen;
    for (Formula f : ante) {
        if (!f.is_modal() || !contains(premise, f.body())) continue;
        if (f.is_box() || contains(premise, f)) chosen.push_back(f);
    }
    return modal_context(chosen) == premise;
}

}  // namespace

CheckResult check_cyclic(const CyclicProof& p, bool annotated) {
    CheckResult res;
    auto err = [&](std::size_t i, const std::string& msg) {
        res.errors.push_back("node " + std::to_string(i) + ": " + msg);
    };
    const auto& N = p.nodes;
    if (N.empty()) {
        res.errors.push_back("empty proof");
        return res;
    }

    // Tree shape: every non-root node has exactly one parent; all reachable.
    std::vector<int> indeg(N.size(), 0);
    for (std::size_t i = 0; i < N.size(); ++i)
        for (std::size_t c : N[i].children) {
            if (c >= N.size() || c == 0) {
                err(i, "bad child index");
                return res;
            }
            ++indeg[c];
        }
    for (std::size_t i = 1; i < N.size(); ++i)
        if (indeg[i] != 1) {
            err(i, "node does not have exactly one parent");
            return res;
        }
    std::vector<std::size_t> par = p.parents();
    {
        std::vector<char> seen(N.size(), 0);
        std::vector<std::size_t> stack{0};
        std::size_t count = 0;
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            if (seen[i]) {
                err(i, "cycle through child edges");
                return res;
            }
            seen[i] = 1;
            ++count;
            for (std::size_t c : N[i].children) stack.push_back(c);
        }
        if (count != N.size()) {
            res.errors.push_back("some nodes are unreachable from the root");
            return res;
        }
    }

    for (std::size_t i = 0; i < N.size(); ++i) {
        const ProofNode& n = N[i];
        const Sequent& s = n.seq.seq;
        if (!canonical(s.ante) || !canonical(s.succ)) err(i, "sequent sides are not canonical sets");
        if (!n.seq.well_formed()) err(i, "focus is not a boxplus formula of the succedent");
        if (annotated) {
            bool labelled = true;
            for (Formula f : s.ante) labelled &= fully_labelled(f);
            for (Formula f : s.succ) labelled &= fully_labelled(f);
            if (!labelled) err(i, "unlabelled modal connective");
            else if (!parity_consistent(s)) err(i, "parity rule violated");
        }
        auto kids = [&](std::size_t k) {
            if (n.children.size() != k) {
                err(i, std::string(rule_name(n.rule)) + " with wrong number of premises");
                return false;
            }
            return true;
        };
        auto child = [&](std::size_t k) -> const FocusedSequent& { return N[n.children[k]].seq; };
        Formula P = n.principal;
        switch (n.rule) {
        case Rule::AxiomVar: {
            bool ok = false;
            for (Formula f : s.ante) ok |= f.is_var() && contains(s.succ, f);
            if (!ok) err(i, "axiom-var without a shared variable");
            kids(0);
            break;
        }
        case Rule::AxiomBot:
            if (!contains(s.ante, Formula::bot())) err(i, "axiom-bot without false in the antecedent");
            kids(0);
            break;
        case Rule::ImpRight:
            if (!P.valid() || !P.is_imp() || !contains(s.succ, P)) {
                err(i, "imp-right principal is not a succedent implication");
                break;
            }
            if (kids(1) && !(child(0) == detail::imp_right_premise(n.seq, P))) err(i, "imp-right premise mismatch");
            break;
        case Rule::ImpLeft:
            if (!P.valid() || !P.is_imp() || !contains(s.ante, P)) {
                err(i, "imp-left principal is not an antecedent implication");
                break;
            }
            if (kids(2)) {
                auto [l, r] = detail::imp_left_premises(n.seq, P);
                if (!(child(0) == l) || !(child(1) == r)) err(i, "imp-left premise mismatch");
            }
            break;
        case Rule::Box:
            if (!P.valid() || !P.is_box() || !contains(s.succ, P)) {
                err(i, "box principal is not a succedent box formula");
                break;
            }
            if (kids(1)) {
                const FocusedSequent& c = child(0);
                if (!c.star() || c.seq.succ != std::vector<Formula>{P.body()} ||
                    !modal_context_of_subset(s.ante, c.seq.ante))
                    err(i, "box premise mismatch");
            }
            break;
        case Rule::BoxPlus:
            if (!P.valid() || !P.is_boxplus() || !contains(s.succ, P)) {
                err(i, "boxplus principal is not a succedent boxplus formula");
                break;
            }
            if (kids(2)) {
                const FocusedSequent& l = child(0);
                const FocusedSequent& r = child(1);
                if (!l.star() || l.seq.succ != std::vector<Formula>{P.body()})
                    err(i, "boxplus left premise mismatch");
                if (r.focus != P || r.seq.succ != std::vector<Formula>{P})
                    err(i, "boxplus right premise mismatch");
                if (l.seq.ante != r.seq.ante || !modal_context_of_subset(s.ante, l.seq.ante))
                    err(i, "boxplus premise antecedent mismatch");
            }
            break;
        case Rule::Backlink: {
            kids(0);
            auto it = p.backlinks.find(i);
            if (it == p.backlinks.end()) {
                err(i, "leaf is neither an axiom nor back-linked");
                break;
            }
            std::size_t target = it->second;
            if (target >= N.size() || target == i) {
                err(i, "back-link target out of range");
                break;
            }
            if (!(N[target].seq == n.seq)) err(i, "back-link target carries a different sequent");
            if (n.seq.star()) err(i, "back-link path has focus *");
            // Walk up from the leaf to the target.
            bool crossed = false, reached = false, constant = true;
            std::size_t cur = i;
            while (cur != SIZE_MAX) {
                if (!(N[cur].seq.focus == n.seq.focus)) constant = false;
                if (cur == target) {
                    reached = true;
                    break;
                }
                std::size_t up = par[cur];
                if (up != SIZE_MAX && N[up].rule == Rule::BoxPlus && N[up].children.size() == 2 &&
                    N[up].children[1] == cur)
                    crossed = true;
                cur = up;
            }
            if (!reached) err(i, "back-link target is not an ancestor");
            else {
                if (!constant) err(i, "focus changes along the back-link path");
                if (!crossed) err(i, "back-link path crosses no boxplus right premise");
            }
            break;
        }
        default: err(i, std::string("rule ") + rule_name(n.rule) + " is not allowed in a cyclic proof");
        }
        if (n.rule != Rule::Backlink && p.backlinks.count(i)) err(i, "back-link from a non-leaf");
    }
    return res;
}

}  // namespace kplus
