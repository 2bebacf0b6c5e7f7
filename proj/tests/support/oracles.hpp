#pragma once

// Independent oracles the test suites check library results against. These
// deliberately avoid the library's interpretation paths: mutations are
// replayed over flat maps, topological orders come from permutation
// filtering, and sequential production is restated as an immediate-apply
// loop.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "coreecs/coreecs.hpp"

namespace coreecs::testing {

// ---------------------------------------------------------------------------
// Naive mutation-application oracle over plain maps.

struct FlatState {
    using Payload = std::variant<std::int64_t, std::monostate, std::uint64_t>;

    std::map<std::string, std::map<std::uint64_t, Payload>> stores;
    std::uint64_t next_fresh = 0;
};

inline FlatState flatten(const WorldState& c) {
    FlatState flat;
    const Schema& schema = c.schema();
    for (std::size_t i = 0; i < schema.size(); ++i) {
        auto& store = flat.stores[schema.label_at(i).name];
        for (const auto& [e, value] : c.store_at(i)) {
            switch (value.kind()) {
                case ComponentKind::Integer: store[e.value] = value.as_integer(); break;
                case ComponentKind::Flag: store[e.value] = std::monostate{}; break;
                case ComponentKind::EntityRef: store[e.value] = value.as_entity_ref().value; break;
            }
        }
    }
    flat.next_fresh = c.next_fresh().value;
    return flat;
}

// Step-by-step map updates, the definitional reading of a mutation.
inline void naive_apply(FlatState& flat, const Mutation& m) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Mutation::AttachNode>) {
                FlatState::Payload payload;
                switch (node.value.kind()) {
                    case ComponentKind::Integer: payload = node.value.as_integer(); break;
                    case ComponentKind::Flag: payload = std::monostate{}; break;
                    case ComponentKind::EntityRef:
                        payload = node.value.as_entity_ref().value;
                        break;
                }
                flat.stores[node.value.label().name][node.entity.value] = payload;
            } else if constexpr (std::is_same_v<T, Mutation::DetachNode>) {
                flat.stores[node.label.name].erase(node.entity.value);
            } else if constexpr (std::is_same_v<T, Mutation::ComposeNode>) {
                naive_apply(flat, node.first);
                naive_apply(flat, node.second);
            } else if constexpr (std::is_same_v<T, Mutation::FreshNode>) {
                EntityId e{flat.next_fresh++};
                naive_apply(flat, node.binder(e));
            }
        },
        m.node());
}

// Compares a WorldState against the flat oracle, store contents and counter.
inline bool agrees_with(const WorldState& c, const FlatState& flat) {
    if (flatten(c).stores != flat.stores) return false;
    return c.next_fresh().value == flat.next_fresh;
}

// ---------------------------------------------------------------------------
// Brute-force topological orders: filter all permutations.

inline std::vector<std::vector<std::size_t>> all_orders_brute(const InvocationPO& po) {
    std::vector<std::size_t> perm(po.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::vector<std::vector<std::size_t>> orders;
    do {
        bool respects = true;
        for (std::size_t i = 0; i < perm.size() && respects; ++i) {
            for (std::size_t j = i + 1; j < perm.size(); ++j) {
                if (po.before(perm[j], perm[i])) {
                    respects = false;
                    break;
                }
            }
        }
        if (respects) orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(orders.begin(), orders.end());
    return orders;
}

// ---------------------------------------------------------------------------
// Immediate-apply restatement of sequential production: re-query before each
// match, apply the produced mutation to the state right away.

inline WorldState immediate_apply_oracle(const WorldState& c, const System& s) {
    WorldState state = c;
    for (const EntityMatch& match : eval_query_vector(c, s.query)) {
        std::optional<EntityMatch> refreshed;
        {
            EntityMatch candidate;
            candidate.entities = match.entities;
            bool alive = true;
            for (std::size_t j = 0; j < match.entities.size(); ++j) {
                auto factor = eval_query(state, s.query.at(j));
                auto it = factor.find(match.entities[j]);
                if (it == factor.end()) {
                    alive = false;
                    break;
                }
                candidate.results.push_back(it->second);
            }
            if (alive) refreshed = std::move(candidate);
        }
        if (!refreshed) continue;
        state = apply_mutation(state, s.func(*refreshed));
    }
    return state;
}

// ---------------------------------------------------------------------------
// Samplers for property tests.

struct Sampler {
    std::mt19937_64 rng;

    explicit Sampler(std::uint64_t seed) : rng(seed) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    }

    // A small world over {Pos, Vel}, every entity live.
    WorldState physics_world() {
        Schema schema{{ComponentLabel{"Pos"}, ComponentKind::Integer},
                      {ComponentLabel{"Vel"}, ComponentKind::Integer}};
        WorldState state = WorldState::empty(schema);
        std::int64_t entities = range(0, 5);
        for (std::int64_t i = 0; i < entities; ++i) {
            auto [e, next] = state.fresh_entity();
            state = next;
            bool has_pos = range(0, 3) != 0;
            if (has_pos) {
                state = state.with_attached(
                    e, ComponentValue::integer(ComponentLabel{"Pos"}, range(0, 6)));
            }
            if (!has_pos || range(0, 1) == 0) {
                state = state.with_attached(
                    e, ComponentValue::integer(ComponentLabel{"Vel"}, range(-3, 3)));
            }
        }
        return state;
    }

    // One mutation drawn from a catalogue system applied to a random match.
    std::optional<Mutation> catalogue_mutation(const WorldState& c,
                                               const std::vector<SystemPtr>& systems) {
        const SystemPtr& s = systems[static_cast<std::size_t>(range(0, systems.size() - 1))];
        auto matches = eval_query_vector(c, s->query);
        if (matches.empty()) return std::nullopt;
        return s->func(matches[static_cast<std::size_t>(range(0, matches.size() - 1))]);
    }
};

}  // namespace coreecs::testing
