#include "kplus/translate.hpp"

#include <stdexcept>

namespace kplus {

namespace {

Term family_sum(bool first, unsigned label, unsigned count) {
    if (count == 0) return first ? Term::x(label) : Term::y(label);
    Term acc = first ? Term::x_prov(label, 0) : Term::y_prov(label, 0);
    for (unsigned i = 1; i < count; ++i)
        acc = Term::sum(acc, first ? Term::x_prov(label, i) : Term::y_prov(label, i));
    return acc;
}

}  // namespace

Term box_term(int label, const BoundingFunction& g) {
    if (label < 0) throw std::invalid_argument("unlabelled box");
    auto l = static_cast<unsigned>(label);
    if (l % 2 == 0) return Term::x(l);
    return family_sum(true, l, g(l - 1));
}

Term boxplus_term(int label, const BoundingFunction& g) {
    if (label < 0) throw std::invalid_argument("unlabelled boxplus");
    auto l = static_cast<unsigned>(label);
    if (l % 2 == 0) return Term::y(l);
    return family_sum(false, l, g(l));
}

JFormula g_translate(Formula a, const BoundingFunction& g) {
    switch (a.kind()) {
    case FormulaKind::Var: return JFormula::var(a.var_index());
    case FormulaKind::Bot: return JFormula::bot();
    case FormulaKind::Imp: return JFormula::imp(g_translate(a.lhs(), g), g_translate(a.rhs(), g));
    case FormulaKind::Box: return JFormula::just(box_term(a.label(), g), g_translate(a.body(), g));
    case FormulaKind::BoxPlus:
        return JFormula::just_tc(boxplus_term(a.label(), g), g_translate(a.body(), g));
    }
    return JFormula::bot();
}

}  // namespace kplus
