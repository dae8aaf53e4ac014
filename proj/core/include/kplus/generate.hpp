// Seeded generators for formulas and theorem corpora.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kplus/formula.hpp"

namespace kplus {

/// Random formula of exactly `size` nodes over variables p0..p{vars-1}.
Formula random_formula_of_size(std::mt19937_64& rng, unsigned size, unsigned vars);
/// Size drawn uniformly from 1..max_size.
Formula random_formula(std::mt19937_64& rng, unsigned max_size, unsigned vars);

struct CorpusEntry {
    enum class Expected { Provable, Refutable, Unknown };
    Formula formula;
    Expected expected = Expected::Unknown;
    /// How the entry was obtained, e.g. "axiom4" or "mp(3,7)".
    std::string origin;
};

/// The eight K+ axiom schemas instantiated at A, B, C.
std::vector<Formula> kplus_axioms(Formula a, Formula b, Formula c);

/// Instances of the eight axiom schemas over the atom pool p0..p{vars-1},
/// closed under necessitation (boxplus) and modus ponens up to `depth`
/// rounds. Entries are in a deterministic order; `seed` shuffles nothing but
/// selects which mp/nec candidates are kept once `limit` is reached.
std::vector<CorpusEntry> axiom_corpus(unsigned depth, unsigned vars, std::uint64_t seed = 1,
                                      std::size_t limit = 200);

}  // namespace kplus
