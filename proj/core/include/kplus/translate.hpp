// The (.)^g translation of annotated formulas into justification formulas.

#pragma once

#include <map>

#include "kplus/formula.hpp"
#include "kplus/jformula.hpp"

namespace kplus {

/// Finitely supported g : N -> N; absent arguments map to 0.
class BoundingFunction {
public:
    unsigned operator()(unsigned n) const {
        auto it = values_.find(n);
        return it == values_.end() ? 0 : it->second;
    }
    void set(unsigned n, unsigned v) {
        if (v == 0)
            values_.erase(n);
        else
            values_[n] = v;
    }
    const std::map<unsigned, unsigned>& support() const { return values_; }

    friend bool operator==(const BoundingFunction&, const BoundingFunction&) = default;

private:
    std::map<unsigned, unsigned> values_;
};

/// Term replacing an annotated box with label `label`: x_L for even labels,
/// x_{L,0} + ... + x_{L,k-1} (left-associated) with k = g(L-1) for odd ones,
/// or plain x_L when k = 0.
Term box_term(int label, const BoundingFunction& g);
/// Same for boxplus, with y variables and k = g(L).
Term boxplus_term(int label, const BoundingFunction& g);

/// Throws std::invalid_argument on unlabelled modal occurrences.
JFormula g_translate(Formula a, const BoundingFunction& g);

}  // namespace kplus
