#include "coreecs/system.hpp"

namespace coreecs {

SystemPtr make_system(std::string name, QueryVector query,
                      std::function<Mutation(const EntityMatch&)> func) {
    return std::make_shared<const System>(
        System{std::move(name), std::move(query), std::move(func)});
}

namespace {

void check_match_shape(const System& s, const Schema& schema, const EntityMatch& match) {
    if (match.entities.size() != s.query.dim() || match.results.size() != s.query.dim()) {
        throw ShapeError("match arity does not fit system '" + s.name + "'");
    }
    for (std::size_t j = 0; j < s.query.dim(); ++j) {
        if (!match.results[j].conforms_to(result_shape(schema, s.query.at(j)))) {
            throw ShapeError("match result " + std::to_string(j) +
                             " does not conform to the query of system '" + s.name + "'");
        }
    }
}

}  // namespace

std::optional<EntityMatch> refresh_match(const System& s, const WorldState& c,
                                         const std::vector<EntityId>& entities) {
    EntityMatch refreshed;
    refreshed.entities = entities;
    refreshed.results.reserve(entities.size());
    for (std::size_t j = 0; j < entities.size(); ++j) {
        auto factor = eval_query(c, s.query.at(j));
        auto it = factor.find(entities[j]);
        if (it == factor.end()) return std::nullopt;
        refreshed.results.push_back(it->second);
    }
    return refreshed;
}

Mutation apply_system(const System& s, const std::vector<EntityMatch>& matches) {
    for (const EntityMatch& match : matches) {
        if (match.entities.size() != s.query.dim() || match.results.size() != s.query.dim()) {
            throw ShapeError("match arity does not fit system '" + s.name + "'");
        }
    }
    if (matches.empty()) return Mutation::nil();
    Mutation composite = s.func(matches.front());
    for (std::size_t i = 1; i < matches.size(); ++i) {
        composite = Mutation::compose(std::move(composite), s.func(matches[i]));
    }
    return composite;
}

std::vector<EntityMatch> roll(const System& s, const WorldState& c,
                              const std::vector<EntityMatch>& matches) {
    std::vector<EntityMatch> kept;
    WorldState state = c;
    for (const EntityMatch& match : matches) {
        auto refreshed = refresh_match(s, state, match.entities);
        if (!refreshed) continue;  // dropped, never revisited
        state = apply_mutation(state, s.func(*refreshed));
        kept.push_back(std::move(*refreshed));
    }
    return kept;
}

Mutation concurrent_production(const WorldState& c, const System& s) {
    auto matches = eval_query_vector(c, s.query);
    for (const EntityMatch& match : matches) {
        check_match_shape(s, c.schema(), match);
    }
    return apply_system(s, matches);
}

Mutation sequential_production(const WorldState& c, const System& s) {
    auto matches = eval_query_vector(c, s.query);
    for (const EntityMatch& match : matches) {
        check_match_shape(s, c.schema(), match);
    }
    return apply_system(s, roll(s, c, matches));
}

}  // namespace coreecs
