#include <gtest/gtest.h>

#include "coreecs/coreecs.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace coreecs {
namespace {

using testing::kPos;
using testing::kVel;
using testing::physics_converged;
using testing::physics_schema;
using testing::physics_start;

// The frame after the single surviving collision resolves at the converged
// state.
WorldState collision_resolved() {
    return WorldState::empty(physics_schema())
        .with_attached(EntityId{1}, ComponentValue::integer(kPos, 7))
        .with_attached(EntityId{2}, ComponentValue::integer(kPos, 7))
        .with_attached(EntityId{3}, ComponentValue::integer(kPos, 7))
        .with_attached(EntityId{1}, ComponentValue::integer(kVel, 3))
        .with_attached(EntityId{2}, ComponentValue::integer(kVel, -2))
        .with_attached(EntityId{3}, ComponentValue::integer(kVel, -3))
        .with_next_fresh_at_least(EntityId{4});
}

TEST(ApplySystem, CollisionOnSurvivingMatch) {
    SystemPtr collide = collision_system();
    WorldState converged = physics_converged();
    auto matches = eval_query_vector(converged, collide->query);
    ASSERT_EQ(matches.size(), 2u);

    // Only the first match survives rolling; applying the system to it alone
    // produces the detach/detach/attach/fresh-attach composite.
    Mutation m = apply_system(*collide, {matches[0]});
    EXPECT_EQ(apply_mutation(converged, m), collision_resolved());
    EXPECT_EQ(mutation_influence(m), Influence({{EntityId{0}, kPos},
                                                {EntityId{0}, kVel},
                                                {EntityId{1}, kVel}}));
}

TEST(ApplySystem, EmptyMatchesYieldNil) {
    EXPECT_TRUE(apply_system(*collision_system(), {}).is_nil());
}

// Hand-folded inertia: attach(p + v) per mover, composed left to right.
TEST(ApplySystem, InertiaFold) {
    SystemPtr inertia = inertia_system();
    WorldState start = physics_start();
    Mutation m = apply_system(*inertia, eval_query_vector(start, inertia->query));

    Mutation expected = Mutation::attach(EntityId{0}, ComponentValue::integer(kPos, 7)) *
                        Mutation::attach(EntityId{2}, ComponentValue::integer(kPos, 7));
    EXPECT_EQ(apply_mutation(start, m), apply_mutation(start, expected));
    EXPECT_EQ(mutation_influence(m), mutation_influence(expected));
}

TEST(ApplySystem, ArityMismatchRejected) {
    EntityMatch bogus;
    bogus.entities = {EntityId{0}};
    bogus.results = {ComponentResult::unit()};
    EXPECT_THROW(apply_system(*collision_system(), {bogus}), ShapeError);
}

TEST(Roll, DropsInvalidatedCollision) {
    SystemPtr collide = collision_system();
    WorldState converged = physics_converged();
    auto matches = eval_query_vector(converged, collide->query);
    ASSERT_EQ(matches.size(), 2u);

    auto rolled = roll(*collide, converged, matches);
    ASSERT_EQ(rolled.size(), 1u);
    EXPECT_EQ(rolled[0].entities, (std::vector<EntityId>{EntityId{0}, EntityId{1}}));
}

TEST(Roll, EmptyMatches) {
    EXPECT_TRUE(roll(*collision_system(), physics_converged(), {}).empty());
}

TEST(Roll, ReadOnlySystemKeepsMatches) {
    SystemPtr noop = make_system("noop", QueryVector{Query::incl(kPos)},
                                 [](const EntityMatch&) { return Mutation::nil(); });
    WorldState start = physics_start();
    auto matches = eval_query_vector(start, noop->query);
    EXPECT_EQ(roll(*noop, start, matches), matches);
}

TEST(ConcurrentProduction, InertiaReachesConvergedState) {
    WorldState start = physics_start();
    Mutation m = concurrent_production(start, *inertia_system());
    EXPECT_EQ(apply_mutation(start, m), physics_converged());
}

TEST(ConcurrentProduction, NoMatchesYieldNil) {
    EXPECT_TRUE(concurrent_production(WorldState::empty(physics_schema()), *inertia_system())
                    .is_nil());
}

// Both collisions fire; the second write to the stationary object's velocity
// wins and the first is lost.
TEST(ConcurrentProduction, DoubleCollisionLosesAWrite) {
    WorldState converged = physics_converged();
    Mutation m = concurrent_production(converged, *collision_system());
    WorldState result = apply_mutation(converged, m);

    ASSERT_TRUE(result.lookup(kVel, EntityId{1}).has_value());
    EXPECT_EQ(result.lookup(kVel, EntityId{1})->as_integer(), -1);
    // Both movers were destroyed and two entities were spawned.
    EXPECT_FALSE(result.is_live(EntityId{0}));
    EXPECT_FALSE(result.is_live(EntityId{2}));
    EXPECT_EQ(result.live_entities().size(), 3u);
}

TEST(SequentialProduction, ResolvesExactlyOneCollision) {
    WorldState converged = physics_converged();
    Mutation m = sequential_production(converged, *collision_system());
    EXPECT_EQ(apply_mutation(converged, m), collision_resolved());
}

TEST(SequentialProduction, EmptyStateYieldsNil) {
    EXPECT_TRUE(sequential_production(WorldState::empty(physics_schema()), *collision_system())
                    .is_nil());
}

TEST(SequentialProduction, AgreesWithImmediateApplyOracle) {
    testing::Sampler sampler(29);
    std::vector<SystemPtr> systems = testing::physics_systems();
    for (int iteration = 0; iteration < 50; ++iteration) {
        WorldState c = sampler.physics_world();
        for (const SystemPtr& s : systems) {
            WorldState produced = apply_mutation(c, sequential_production(c, *s));
            WorldState oracle = testing::immediate_apply_oracle(c, *s);
            EXPECT_TRUE(states_equal_upto_fresh(produced, oracle))
                << s->name << " diverged from the immediate-apply loop at "
                << render_state(c);
        }
    }
}

// ---------------------------------------------------------------------------
// Invariants.

TEST(SystemProperties, RollOutputIsSubsequenceOfInput) {
    testing::Sampler sampler(31);
    std::vector<SystemPtr> systems = testing::physics_systems();
    for (int iteration = 0; iteration < 100; ++iteration) {
        WorldState c = sampler.physics_world();
        for (const SystemPtr& s : systems) {
            auto input = eval_query_vector(c, s->query);
            auto output = roll(*s, c, input);
            std::size_t cursor = 0;
            for (const EntityMatch& kept : output) {
                while (cursor < input.size() && input[cursor].entities != kept.entities) {
                    ++cursor;
                }
                ASSERT_LT(cursor, input.size())
                    << "rolled match is not a subsequence for " << s->name;
                ++cursor;
            }
        }
    }
}

// Replays the roll recursion independently: each retained match's results
// must equal a re-evaluation at the corresponding intermediate state.
TEST(SystemProperties, RollResultsAreRefreshedAtIntermediateStates) {
    testing::Sampler sampler(59);
    std::vector<SystemPtr> systems = testing::physics_systems();
    for (int iteration = 0; iteration < 50; ++iteration) {
        WorldState c = sampler.physics_world();
        for (const SystemPtr& s : systems) {
            auto input = eval_query_vector(c, s->query);
            auto output = roll(*s, c, input);

            WorldState state = c;
            std::size_t kept = 0;
            for (const EntityMatch& match : input) {
                bool alive = true;
                EntityMatch refreshed;
                refreshed.entities = match.entities;
                for (std::size_t j = 0; j < match.entities.size(); ++j) {
                    auto factor = eval_query(state, s->query.at(j));
                    auto it = factor.find(match.entities[j]);
                    if (it == factor.end()) {
                        alive = false;
                        break;
                    }
                    refreshed.results.push_back(it->second);
                }
                if (!alive) continue;
                ASSERT_LT(kept, output.size());
                EXPECT_EQ(output[kept], refreshed);
                state = apply_mutation(state, s->func(refreshed));
                ++kept;
            }
            EXPECT_EQ(kept, output.size());
        }
    }
}

}  // namespace
}  // namespace coreecs
