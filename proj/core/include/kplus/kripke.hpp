// Finite bimodal Kripke models (W, R, R+, V) with R+ the transitive closure of R.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kplus/formula.hpp"

namespace kplus {

using Relation = std::set<std::pair<unsigned, unsigned>>;

/// Smallest transitive superset of rel.
Relation transitive_closure(const Relation& rel);

struct KripkeModel {
    std::set<unsigned> worlds;
    Relation r;
    Relation rplus;
    std::map<unsigned, std::set<unsigned>> valuation;

    /// Builds a model with rplus computed from r.
    static KripkeModel make(std::set<unsigned> worlds, Relation r,
                            std::map<unsigned, std::set<unsigned>> valuation);

    /// Checks nonempty worlds, closed edges and rplus == closure(r).
    bool valid(std::string* why = nullptr) const;

    friend bool operator==(const KripkeModel&, const KripkeModel&) = default;
};

/// Standard satisfaction. Throws std::out_of_range for an unknown world.
bool eval(const KripkeModel& m, unsigned w, Formula f);

struct Countermodel {
    KripkeModel model;
    unsigned world;
};

/// Exhaustive search over all relations on 1..max_worlds worlds (in order of
/// world count, then relation bitmask with edge (0,0) as the lowest bit) and
/// all valuations of the variables of f. Returns the first model/world where
/// f fails, or nothing.
std::optional<Countermodel> search_countermodel(Formula f, unsigned max_worlds);

}  // namespace kplus
