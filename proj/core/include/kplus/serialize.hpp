// JSON artifacts. Formulas, terms and sequents are stored in the text syntax
// of syntax.hpp; every document carries a "kind" field. Readers throw
// std::invalid_argument on malformed input (including parse errors).

#pragma once

#include <string>
#include <vector>

#include "kplus/annotate.hpp"
#include "kplus/engine.hpp"
#include "kplus/generate.hpp"
#include "kplus/jproof.hpp"
#include "kplus/kripke.hpp"
#include "kplus/realize.hpp"

namespace kplus {

/// "cyclic-proof", "prepared-proof", "refutation", "countermodel", "jproof",
/// "realization" or "corpus".
std::string artifact_kind(const std::string& json);

std::string to_json(const CyclicProof& p);
std::string to_json(const PreparedProof& p);
std::string to_json(const RefutationTree& t);
/// `formula` is the refuted formula, stored alongside the model.
std::string to_json(const Countermodel& m, Formula formula);
std::string to_json(const JProof& p);
std::string to_json(const RealizationResult& r, Formula formula);
std::string to_json(const std::vector<CorpusEntry>& corpus);

CyclicProof read_cyclic_proof(const std::string& json);
PreparedProof read_prepared_proof(const std::string& json);
RefutationTree read_refutation(const std::string& json);

struct StoredCountermodel {
    Countermodel countermodel;
    Formula formula;
};
StoredCountermodel read_countermodel(const std::string& json);

JProof read_jproof(const std::string& json);

struct StoredRealization {
    Formula formula;
    JFormula realized;
    JSubstitution theta;
    JProof proof;
    PreparedProof prepared;
};
StoredRealization read_realization(const std::string& json);

std::vector<CorpusEntry> read_corpus(const std::string& json);

}  // namespace kplus
