// Cyclic proof search and refutation for the sequent calculus of K+.
//
// Provability is a nested fixpoint over focused sequents: a least fixpoint
// for well-founded reasoning, interleaved with a greatest fixpoint per focus
// formula in which a sequent may rely on itself only through the right
// premise of a boxplus rule whose principal formula is the focus.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kplus/kripke.hpp"
#include "kplus/sequent.hpp"

namespace kplus {

enum class Rule : std::uint8_t {
    AxiomVar,
    AxiomBot,
    ImpLeft,
    ImpRight,
    Box,
    BoxPlus,
    ImpLeft1,
    ImpLeft2,
    CrossBox,
    Backlink,  // leaf closed by a back-link
    Open,      // saturated leaf of a saturation tree
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

struct ProofNode {
    FocusedSequent seq;
    Rule rule = Rule::AxiomVar;
    Formula principal;
    /// ImpLeft: {Gamma,B => Delta ; Gamma => A,Delta}. BoxPlus: {left ; right}.
    std::vector<std::size_t> children;
    /// Occurrence number of a modal rule in a prepared proof, -1 otherwise.
    int occ = -1;
};

/// Finite tree (node 0 is the root) plus back-links from leaves to ancestors.
struct CyclicProof {
    std::vector<ProofNode> nodes;
    std::map<std::size_t, std::size_t> backlinks;

    std::vector<std::size_t> parents() const;
};

struct CheckResult {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
    explicit operator bool() const { return ok(); }
};

/// Validates tree shape, every rule application and every back-link.
/// With `annotated`, every sequent must also respect the parity rule and
/// carry labels on all modal connectives.
CheckResult check_cyclic(const CyclicProof& p, bool annotated = false);

struct RefNode {
    Sequent seq;
    Rule rule = Rule::Open;
    Formula principal;
    /// ImpLeft: {Gamma,B => Delta ; Gamma => A,Delta}. CrossBox: Prem1 then Prem2.
    /// Children may point anywhere: the refutation is a graph whose
    /// unravelling is the (regular) refutation tree.
    std::vector<std::size_t> children;
    /// Omitted provable premises (ImpLeft1/ImpLeft2/CrossBox) with proofs.
    std::vector<Sequent> omitted;
    std::vector<CyclicProof> certificates;
};

struct RefutationTree {
    std::vector<RefNode> nodes;  // node 0 is the root
};

using ProvabilityOracle = std::function<bool(const Sequent&)>;

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded() : std::runtime_error("resource budget exceeded") {}
};

/// Memoizing prover over one growing state graph. Not thread-safe; separate
/// instances share nothing.
class Prover {
public:
    explicit Prover(std::size_t budget = 1'000'000);
    ~Prover();
    Prover(const Prover&) = delete;
    Prover& operator=(const Prover&) = delete;

    /// Throws BudgetExceeded when the state graph would exceed the budget.
    bool provable(const FocusedSequent& s);
    bool provable(const Sequent& s) { return provable(FocusedSequent{s, {}}); }
    /// Proof of a provable sequent (throws std::logic_error otherwise).
    CyclicProof proof(const FocusedSequent& s);
    CyclicProof proof(const Sequent& s) { return proof(FocusedSequent{s, {}}); }
    std::size_t states() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

enum class Verdict { Provable, Refutable, BudgetExceeded };

struct Decision {
    Verdict verdict = Verdict::BudgetExceeded;
    std::optional<CyclicProof> proof;
    std::optional<RefutationTree> refutation;
    std::size_t states = 0;
};

struct EngineOptions {
    std::size_t budget = 1'000'000;
    /// Skip building the proof / refutation object.
    bool verdict_only = false;
};

Decision decide(const FocusedSequent& s, const EngineOptions& opts = {});
Decision decide(const Sequent& s, const EngineOptions& opts = {});

/// Saturation tree of an unprovable sequent; leaves have rule Open.
/// Throws std::invalid_argument when `s` is provable.
RefutationTree saturate(const Sequent& s, Prover& prover);
RefutationTree saturate(const Sequent& s, const ProvabilityOracle& oracle);

/// Builds the refutation graph of an unprovable sequent.
RefutationTree refute(const Sequent& s, Prover& prover);

/// Checks every node unprovable, rule shapes, side conditions with their
/// certificates, and the boxplus-falsification property at every node.
CheckResult check_refutation(const RefutationTree& t, const ProvabilityOracle& oracle);
CheckResult check_refutation(const RefutationTree& t, Prover& prover);

/// Worlds are the CrossBox nodes; a -> b iff b is reachable from a premise of a
/// without crossing another CrossBox node. Throws std::invalid_argument on
/// malformed input.
Countermodel model_from_refutation(const RefutationTree& t);

}  // namespace kplus
