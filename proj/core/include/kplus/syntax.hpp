// Text syntax for formulas, terms, justification formulas and sequents.
//
//   formula  ::= unary [ "->" formula ]            (right-associative)
//   unary    ::= "[]" ["_" N] unary | "[+]" ["_" N] unary | atom
//              | "[" term1 "]" unary | "[" term2 "]" "tc" unary   (J formulas)
//   atom     ::= "false" | "p" | "q" | "r" | "p" N | "(" formula ")"
//   term     ::= "x" N ["_" N] | "y" N ["_" N] | "c" N | "head(" term ")"
//              | "tail(" term ")" | "ind(" term "," term ")"
//              | "(" term "." term ")" | "(" term "+" term ")"
//   sequent  ::= [formula {"," formula}] "|-" [formula {"," formula}] ["@" ("*" | formula)]
//
// As input sugar, formulas also accept "true", "~A", "A & B" and "A | B"
// (tighter than "->", & tighter than |); they expand to the usual
// abbreviations and are never produced by render.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kplus/formula.hpp"
#include "kplus/jformula.hpp"
#include "kplus/sequent.hpp"

namespace kplus {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

Formula parse_formula(std::string_view text);
JFormula parse_jformula(std::string_view text);
Term parse_term(std::string_view text);
/// Parses a sequent; the focus is * when the suffix is absent.
FocusedSequent parse_sequent(std::string_view text);

std::string render(Formula f);
std::string render(JFormula f);
std::string render(Term t);
std::string render(const Sequent& s);
std::string render(const FocusedSequent& s);

}  // namespace kplus
