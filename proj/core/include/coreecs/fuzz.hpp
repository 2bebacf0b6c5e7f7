#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "coreecs/scenario.hpp"

namespace coreecs {

/// The template catalogue the fuzzer draws from: the physics systems, the
/// threshold adjusters, and one representative per mutation category.
std::vector<SystemTemplate> fuzz_catalogue();

/// One generated program: a small world and a schedule over catalogue
/// systems.
struct FuzzInstance {
    Schema schema;
    WorldState start;
    Schedule schedule;
    DeclaredLabels declared_labels;
    std::string description;
};

/// Deterministically generates the n-th instance of a seeded stream.
/// Worlds stay small (few entities, few labels, few schedule nodes) so
/// linearization counts remain enumerable.
FuzzInstance generate_instance(std::uint64_t seed, std::uint64_t index);

enum class InstanceClass {
    SafeDeterministic,
    SafeNondeterministic,  ///< a counterexample; must never occur
    UnknownDeterministic,
    UnknownNondeterministic,
    Skipped,  ///< linearization count over the enumeration guard
};

std::string to_string(InstanceClass c);

struct InstanceOutcome {
    InstanceClass classification = InstanceClass::Skipped;
    SafetyReport safety;
    DeterminismVerdict determinism;

    /// Set when the parallel runtime disagreed with the reference on a safe
    /// instance, or when observed influence escaped the declared labels.
    std::vector<std::string> violations;
};

/// Checks one instance: safety verdict, brute-force determinism when the
/// partial order is enumerable within `max_invocations`, a declared-label
/// soundness check, and (for safe instances) a reference-vs-parallel
/// comparison over a few runtime seeds.
InstanceOutcome evaluate_instance(const FuzzInstance& instance, std::uint64_t max_invocations);

struct FuzzSummary {
    std::uint64_t instances = 0;
    std::uint64_t safe_deterministic = 0;
    std::uint64_t unknown_deterministic = 0;
    std::uint64_t unknown_nondeterministic = 0;
    std::uint64_t skipped = 0;

    /// Descriptions of safe-but-nondeterministic instances and contract
    /// violations. Empty on a passing run.
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }

    std::string render() const;
};

/// Generates and evaluates `instances` programs from the seeded stream and
/// tallies the classifications. Any safe-but-nondeterministic instance or
/// contract violation is a failure.
FuzzSummary fuzz(std::uint64_t instances, std::uint64_t max_invocations, std::uint64_t seed);

}  // namespace coreecs
