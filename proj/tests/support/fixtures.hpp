#pragma once

// Shared fixtures: the running physics example's states and the systems the
// property tests sample from.

#include <vector>

#include "coreecs/coreecs.hpp"

namespace coreecs::testing {

inline const ComponentLabel kPos{"Pos"};
inline const ComponentLabel kVel{"Vel"};
inline const ComponentLabel kInt{"Int"};

inline Schema physics_schema() {
    return Schema{{kPos, ComponentKind::Integer}, {kVel, ComponentKind::Integer}};
}

// Two movers flanking a stationary object: e0 at 1 moving +6, e1 at 7
// stationary, e2 at 9 moving -2.
inline WorldState physics_start() {
    return WorldState::empty(physics_schema())
        .with_attached(EntityId{0}, ComponentValue::integer(kPos, 1))
        .with_attached(EntityId{0}, ComponentValue::integer(kVel, 6))
        .with_attached(EntityId{1}, ComponentValue::integer(kPos, 7))
        .with_attached(EntityId{2}, ComponentValue::integer(kPos, 9))
        .with_attached(EntityId{2}, ComponentValue::integer(kVel, -2))
        .with_next_fresh_at_least(EntityId{3});
}

// The state after one concurrent inertia step: both movers share the
// stationary object's position.
inline WorldState physics_converged() {
    return WorldState::empty(physics_schema())
        .with_attached(EntityId{0}, ComponentValue::integer(kPos, 7))
        .with_attached(EntityId{0}, ComponentValue::integer(kVel, 6))
        .with_attached(EntityId{1}, ComponentValue::integer(kPos, 7))
        .with_attached(EntityId{2}, ComponentValue::integer(kPos, 7))
        .with_attached(EntityId{2}, ComponentValue::integer(kVel, -2))
        .with_next_fresh_at_least(EntityId{3});
}

// Every catalogue system whose labels live in the physics schema.
inline std::vector<SystemPtr> physics_systems() {
    std::vector<SystemPtr> systems{inertia_system(), collision_system()};
    for (const Scenario& scenario : mutation_category_suite()) {
        for (const SystemPtr& s : scenario.schedule.systems()) {
            systems.push_back(s);
        }
    }
    return systems;
}

inline Query pos_and_vel() { return Query::conj(Query::incl(kPos), Query::incl(kVel)); }
inline Query pos_no_vel() { return Query::conj(Query::incl(kPos), Query::excl(kVel)); }

}  // namespace coreecs::testing
