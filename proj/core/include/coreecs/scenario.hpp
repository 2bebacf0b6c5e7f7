#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coreecs/parallel.hpp"
#include "coreecs/safety.hpp"
#include "coreecs/schedule.hpp"

namespace coreecs {

/// Numeric knobs a template instantiation may draw on.
struct TemplateParams {
    std::int64_t constant = 0;
    std::int64_t threshold = 0;
};

/// A named, parameterized recipe for a system. Instantiated systems are pure
/// and treat entity arguments opaquely; the declared labels over-approximate
/// every label their mutations can touch and are validated during fuzzing.
struct SystemTemplate {
    std::string name;

    /// Labels the template's query and mutations mention; a schema must
    /// declare all of them for the template to apply.
    std::set<ComponentLabel> required_labels;

    std::set<ComponentLabel> declared_labels;
    std::function<SystemPtr(const TemplateParams&)> instantiate;
};

/// A runnable program: a schema, a mutation that builds the start state, a
/// schedule, and a frame count. When golden text is present, the reference
/// interpreter must reproduce it byte for byte.
struct Scenario {
    std::string name;
    Schema schema;
    Mutation initial;
    Schedule schedule;
    unsigned frames = 1;
    std::optional<std::vector<std::string>> expected_output;

    /// Declarations for the static label analysis, keyed by system name.
    DeclaredLabels declared_labels;

    WorldState start_state() const;
};

/// The one-dimensional physics program: movers with position and velocity,
/// an inertia system run concurrently, then collision resolution run
/// sequentially. Two frames; golden output included.
Scenario toy_physics_scenario();

/// Inertia: singleton query over position and velocity, adds one velocity
/// step to the position.
SystemPtr inertia_system();

/// Collision resolution: a (mover, stationary) pair query. On equal
/// positions the mover is destroyed, the stationary object gets half the
/// mover's velocity (truncated toward zero), and a fresh entity departs the
/// other way with the negated half.
SystemPtr collision_system();

/// The start state of the physics program as a plain value, and the state
/// after running the inertia system once (both movers converged on the
/// stationary object). Useful fixtures for analysis demos.
WorldState toy_physics_start();
WorldState toy_physics_converged();

/// Two entities below/above a threshold; one system increments below it
/// while, in parallel, another decrements the rest. The sides touch the same
/// store but disjoint entities. Two frames; golden output included.
Scenario disjoint_entities_scenario();

SystemPtr adjust_system(std::int64_t bound, bool increment);

/// Eight one-frame scenarios, one per category of mutation that concurrent
/// execution must cope with: update / insert / initialize / delete, each in
/// an "owned" form (the written store appears in the query) and a "deferred"
/// form (it does not). Side conditions are realized in the start states.
std::vector<Scenario> mutation_category_suite();

/// Runs a scenario's frames under the reference interpreter, returning the
/// rendered state per frame; the final line carries the " END" suffix.
std::vector<std::string> run_scenario_reference(const Scenario& scenario);

/// Same frame loop under the threaded runtime.
std::vector<std::string> run_scenario_parallel(const Scenario& scenario, const RunConfig& cfg);

/// Looks up a built-in scenario by CLI name ("toy-phys", "disjoint-entities").
std::optional<Scenario> find_scenario(const std::string& name);

}  // namespace coreecs
