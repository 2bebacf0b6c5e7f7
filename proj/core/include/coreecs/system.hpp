#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "coreecs/mutation.hpp"
#include "coreecs/query.hpp"

namespace coreecs {

/// A system pairs a query vector with a function from one entity match to a
/// mutation. The function must be pure (equal matches yield equal mutations)
/// and may consult nothing but its match argument; that contract is what
/// makes influence analysis and replayed linearizations meaningful.
struct System {
    std::string name;
    QueryVector query;
    std::function<Mutation(const EntityMatch&)> func;
};

using SystemPtr = std::shared_ptr<const System>;

SystemPtr make_system(std::string name, QueryVector query,
                      std::function<Mutation(const EntityMatch&)> func);

/// Folds the system function over the matches in order, composing the
/// produced mutations left to right. Empty matches yield nil. Throws
/// ShapeError when a match does not conform to the system's query shape.
Mutation apply_system(const System& s, const std::vector<EntityMatch>& matches);

/// Visits the matches in order, re-evaluating the system's query against an
/// evolving state before each one. A match whose entity vector no longer
/// appears in the re-evaluation is dropped; a retained match carries the
/// refreshed component results, and the evolving state advances by the
/// mutation the system produces for it. Dropped matches are never revisited.
std::vector<EntityMatch> roll(const System& s, const WorldState& c,
                              const std::vector<EntityMatch>& matches);

/// Looks up an entity vector in a fresh evaluation of the system's query at
/// `c`, returning the refreshed match, or nothing when any position dropped
/// out of its query's result.
std::optional<EntityMatch> refresh_match(const System& s, const WorldState& c,
                                         const std::vector<EntityId>& entities);

/// Observes the state once: applies the system to the matches of a single
/// query evaluation.
Mutation concurrent_production(const WorldState& c, const System& s);

/// Observes the state again before each match: applies the system to the
/// rolled matches.
Mutation sequential_production(const WorldState& c, const System& s);

}  // namespace coreecs
