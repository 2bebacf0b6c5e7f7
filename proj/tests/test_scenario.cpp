#include <gtest/gtest.h>

#include "coreecs/coreecs.hpp"
#include "support/fixtures.hpp"

namespace coreecs {
namespace {

using testing::kInt;
using testing::kPos;
using testing::kVel;

TEST(ToyPhysics, GoldenOutput) {
    Scenario scenario = toy_physics_scenario();
    ASSERT_TRUE(scenario.expected_output.has_value());
    EXPECT_EQ(run_scenario_reference(scenario), *scenario.expected_output);
}

TEST(ToyPhysics, SingleWorkerParallelMatches) {
    Scenario scenario = toy_physics_scenario();
    RunConfig cfg;
    cfg.workers = 1;
    EXPECT_EQ(run_scenario_parallel(scenario, cfg), *scenario.expected_output);
}

TEST(ToyPhysics, ZeroFramesPrintsStartOnly) {
    Scenario scenario = toy_physics_scenario();
    scenario.frames = 0;
    auto lines = run_scenario_reference(scenario);
    ASSERT_EQ(lines.size(), 1u);
    EXPECT_EQ(lines[0], scenario.expected_output->front() + " END");
}

TEST(DisjointEntities, GoldenOutput) {
    Scenario scenario = disjoint_entities_scenario();
    ASSERT_TRUE(scenario.expected_output.has_value());
    EXPECT_EQ(run_scenario_reference(scenario), *scenario.expected_output);
}

TEST(DisjointEntities, SafeDynamicallyButNotStatically) {
    Scenario scenario = disjoint_entities_scenario();
    EXPECT_EQ(check_safe(scenario.start_state(), scenario.schedule).verdict,
              SafetyVerdict::Safe);
    Schedule inc = Schedule::conc(adjust_system(4, true));
    Schedule dec = Schedule::conc(adjust_system(4, false));
    EXPECT_FALSE(
        check_static_disjoint_labels(scenario.schema, inc, dec, scenario.declared_labels));
}

TEST(FindScenario, KnownAndUnknownNames) {
    EXPECT_TRUE(find_scenario("toy-phys").has_value());
    EXPECT_TRUE(find_scenario("disjoint-entities").has_value());
    EXPECT_FALSE(find_scenario("nonsense").has_value());
}

TEST(MutationCategories, SuiteCoversAllEightRows) {
    auto suite = mutation_category_suite();
    ASSERT_EQ(suite.size(), 8u);
    std::vector<std::string> names;
    for (const Scenario& s : suite) names.push_back(s.name);
    EXPECT_EQ(names, (std::vector<std::string>{"owned-update", "owned-insert",
                                               "owned-initialize", "owned-delete",
                                               "deferred-update", "deferred-insert",
                                               "deferred-initialize", "deferred-delete"}));
}

Scenario category(const std::string& name) {
    for (const Scenario& s : mutation_category_suite()) {
        if (s.name == name) return s;
    }
    throw std::runtime_error("no category scenario " + name);
}

TEST(MutationCategories, OwnedUpdateZeroesEveryPosition) {
    Scenario s = category("owned-update");
    WorldState after = apply_schedule(s.start_state(), s.schedule);
    ASSERT_FALSE(after.store(kPos).empty());
    for (const auto& [e, value] : after.store(kPos)) {
        EXPECT_EQ(value.as_integer(), 0);
    }
}

TEST(MutationCategories, OwnedInsertGivesEveryEntityAPosition) {
    Scenario s = category("owned-insert");
    WorldState start = s.start_state();
    EXPECT_TRUE(start.store(kPos).empty());
    WorldState after = apply_schedule(start, s.schedule);
    EXPECT_EQ(after.store(kPos).size(), after.live_entities().size());
}

TEST(MutationCategories, OwnedInitializeSpawnsOnePerLiveEntity) {
    Scenario s = category("owned-initialize");
    WorldState start = s.start_state();
    WorldState after = apply_schedule(start, s.schedule);
    EXPECT_EQ(after.live_entities().size(), 2 * start.live_entities().size());
}

TEST(MutationCategories, OwnedDeleteEmptiesThePositionStore) {
    Scenario s = category("owned-delete");
    WorldState after = apply_schedule(s.start_state(), s.schedule);
    EXPECT_TRUE(after.store(kPos).empty());
    EXPECT_TRUE(after.live_entities().empty());
}

TEST(MutationCategories, DeferredUpdateOverwritesVelocities) {
    Scenario s = category("deferred-update");
    WorldState start = s.start_state();
    EXPECT_EQ(start.store(kVel).size(), start.live_entities().size());
    WorldState after = apply_schedule(start, s.schedule);
    for (const auto& [e, value] : after.store(kVel)) {
        EXPECT_EQ(value.as_integer(), 1);
    }
}

TEST(MutationCategories, DeferredInsertAttachesMissingVelocities) {
    Scenario s = category("deferred-insert");
    WorldState start = s.start_state();
    EXPECT_TRUE(start.store(kVel).empty());
    WorldState after = apply_schedule(start, s.schedule);
    EXPECT_EQ(after.store(kVel).size(), start.live_entities().size());
}

// One fresh velocity-bearing entity per previously live entity.
TEST(MutationCategories, DeferredInitializeSpawnsVelocityEntities) {
    Scenario s = category("deferred-initialize");
    WorldState start = s.start_state();
    WorldState after = apply_schedule(start, s.schedule);
    EXPECT_EQ(after.store(kVel).size(), start.live_entities().size());
    EXPECT_EQ(after.live_entities().size(), 2 * start.live_entities().size());
    // The spawned entities are new ones.
    for (const auto& [e, value] : after.store(kVel)) {
        EXPECT_GE(e, start.next_fresh());
    }
}

TEST(MutationCategories, DeferredDeleteClearsVelocities) {
    Scenario s = category("deferred-delete");
    WorldState start = s.start_state();
    EXPECT_FALSE(start.store(kVel).empty());
    WorldState after = apply_schedule(start, s.schedule);
    EXPECT_TRUE(after.store(kVel).empty());
    // Position bearers survive.
    EXPECT_EQ(after.live_entities().size(), start.live_entities().size());
}

TEST(MutationCategories, EveryRowRunsConcurrently) {
    for (const Scenario& s : mutation_category_suite()) {
        WorldState start = s.start_state();
        EXPECT_NO_THROW(apply_schedule(start, s.schedule)) << s.name;
        // Single-label writers with singleton queries are all safe to run
        // concurrently at these start states.
        EXPECT_EQ(check_safe(start, s.schedule).verdict, SafetyVerdict::Safe) << s.name;
    }
}

TEST(FuzzCatalogue, DeclaredLabelsCoverObservedInfluence) {
    for (std::uint64_t i = 0; i < 150; ++i) {
        FuzzInstance instance = generate_instance(401, i);
        std::set<ComponentLabel> allowed =
            declared_label_set(instance.schedule, instance.declared_labels);
        Influence observed = schedule_influence(instance.start, instance.schedule);
        for (const auto& [e, label] : observed.cells()) {
            EXPECT_TRUE(allowed.count(label))
                << "label " << label.name << " undeclared in " << instance.description;
        }
    }
}

// Forcing the generator's pieces onto the known convergence state must
// reproduce the lost write and be classified as such.
TEST(Fuzz, ForcedConcurrentCollisionInstance) {
    FuzzInstance forced{
        testing::physics_schema(),
        testing::physics_start(),
        Schedule::seq_comp(Schedule::conc(inertia_system()),
                           Schedule::conc(collision_system())),
        {{"inertia", {kPos}}, {"collide", {kPos, kVel}}},
        "forced concurrent collisions",
    };
    InstanceOutcome outcome = evaluate_instance(forced, 8);
    EXPECT_EQ(outcome.classification, InstanceClass::UnknownNondeterministic);
    ASSERT_TRUE(outcome.determinism.witness.has_value());
    EXPECT_TRUE(outcome.violations.empty());
}

TEST(Fuzz, SmallRunHasNoFailures) {
    FuzzSummary summary = fuzz(60, 8, 7);
    EXPECT_TRUE(summary.ok()) << summary.render();
    EXPECT_EQ(summary.instances, 60u);
    EXPECT_EQ(summary.safe_deterministic + summary.unknown_deterministic +
                  summary.unknown_nondeterministic + summary.skipped,
              60u);
}

TEST(Fuzz, ZeroInstancesSucceed) {
    FuzzSummary summary = fuzz(0, 8, 7);
    EXPECT_TRUE(summary.ok());
    EXPECT_EQ(summary.instances, 0u);
}

}  // namespace
}  // namespace coreecs
