// Hilbert-style proofs in J+: axiom instances, proofs, constant
// specifications, substitutions and the proof checker.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kplus/jformula.hpp"

namespace kplus {

enum class Schema : std::uint8_t { I = 1, II, III, IV, V, VI, VII, VIII, IX, X, Cs };

std::string schema_name(Schema s);  // "i" .. "x", "cs"
std::optional<Schema> schema_from_name(const std::string& name);

/// An instance of one of the schemas (i)-(x), or [c]tc A with A an instance
/// of (i)-(x). Parameters not used by the schema stay invalid.
struct AxiomInstance {
    Schema schema = Schema::I;
    JFormula a, b, c;
    Term h, w, t, s;
    unsigned constant = 0;                        // cs only
    std::shared_ptr<const AxiomInstance> inner;  // cs only

    static AxiomInstance i(JFormula a, JFormula b);
    static AxiomInstance ii(JFormula a, JFormula b, JFormula c);
    static AxiomInstance iii(JFormula a);
    static AxiomInstance iv(Term h, Term w, JFormula a, JFormula b);
    static AxiomInstance v(Term h, Term w, JFormula a);
    static AxiomInstance vi(Term t, Term s, JFormula a, JFormula b);
    static AxiomInstance vii(Term s, JFormula a);
    static AxiomInstance viii(Term s, JFormula a);
    static AxiomInstance ix(Term w, Term s, JFormula a);
    static AxiomInstance x(Term t, Term s, JFormula a);
    /// Throws std::invalid_argument if inner is itself a cs instance.
    static AxiomInstance cs(unsigned constant, AxiomInstance inner);

    /// The formula this instance denotes. Throws std::invalid_argument when
    /// parameters are missing or of the wrong sort.
    JFormula formula() const;
};

/// First schema in order (i) .. (x), then cs, whose shape f has.
std::optional<AxiomInstance> match_axiom(JFormula f);

struct JStep {
    enum class Kind : std::uint8_t { Axiom, MP } kind = Kind::Axiom;
    AxiomInstance axiom;        // Axiom
    std::size_t minor = 0;      // MP: index of the step proving A
    std::size_t major = 0;      // MP: index of the step proving A -> B
    JFormula formula;           // the proved formula
};

struct JProof {
    std::vector<JStep> steps;
    JFormula conclusion() const { return steps.empty() ? JFormula() : steps.back().formula; }
};

/// Pairs (constant, J+_0 axiom formula).
class ConstantSpecification {
public:
    void insert(unsigned c, JFormula a) { entries_.emplace(c, a); }
    bool contains(unsigned c, JFormula a) const { return entries_.count({c, a}) != 0; }
    bool injective() const;
    std::set<unsigned> constants() const;
    const std::set<std::pair<unsigned, JFormula>>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    /// Union; Con sets need not be disjoint.
    void merge(const ConstantSpecification& other);

    friend bool operator==(const ConstantSpecification&, const ConstantSpecification&) = default;

private:
    std::set<std::pair<unsigned, JFormula>> entries_;
};

struct JProofVerdict {
    bool ok = false;
    ConstantSpecification cs;
    bool injective = false;
    std::vector<std::string> errors;
};

/// Validates every step. With `allowed`, also requires cs(p) to be a subset.
JProofVerdict check_proof(const JProof& p, const ConstantSpecification* allowed = nullptr);

/// cs(p) without validating.
ConstantSpecification constant_specification(const JProof& p);

/// Collects steps with formula-level sharing. Indices are stable.
class ProofBuilder {
public:
    std::size_t axiom(const AxiomInstance& a);
    /// minor proves A, major proves A -> B; throws std::logic_error otherwise.
    std::size_t mp(std::size_t minor, std::size_t major);
    /// Copies p into the builder; returns the index of its conclusion.
    std::size_t append(const JProof& p);
    JFormula formula(std::size_t i) const { return steps_[i].formula; }
    std::optional<std::size_t> find(JFormula f) const;
    std::size_t size() const { return steps_.size(); }
    /// The steps needed for step i, in order, ending with step i.
    JProof extract(std::size_t i) const;

private:
    std::size_t push(JStep s);
    std::vector<JStep> steps_;
    std::map<const JNode*, std::size_t> index_;
};

/// Sort-preserving map from variables (plain or provisional) to terms.
class JSubstitution {
public:
    /// Throws std::invalid_argument unless v is a variable of the sort of t.
    void set(Term v, Term t);
    std::optional<Term> get(Term v) const;
    const std::map<Term, Term>& entries() const { return map_; }
    bool empty() const { return map_.empty(); }

    Term apply(Term t) const;
    JFormula apply(JFormula f) const;
    AxiomInstance apply(const AxiomInstance& a) const;

    /// Domain all provisional and every image provisional-free.
    bool finalizing() const;
    /// (this o other)(v) = this(other(v)).
    JSubstitution compose(const JSubstitution& other) const;

private:
    struct Cache;
    Cache& cache() const;
    std::map<Term, Term> map_;
    bool provisional_domain_ = true;
    mutable std::shared_ptr<Cache> cache_;  // memo for apply, dropped by set
};

}  // namespace kplus
