#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coreecs/schedule.hpp"

namespace coreecs {

enum class SafetyVerdict { Safe, Unsafe, Unknown };

std::string to_string(SafetyVerdict v);

/// The construction rule that decided a schedule node.
enum class SafetyRule {
    SeqAlwaysSafe,         ///< seq nodes admit only one order
    SeqCompOfSafe,         ///< sequencing of safe sub-schedules
    ConcPairwiseDisjoint,  ///< per-invocation influences pairwise disjoint
    ParDisjointInfluence,  ///< safe sides with disjoint influence
    StaticSingletonQuery,  ///< singleton query, no entity-valued components
    StaticDisjointLabels,  ///< declared label sets disjoint
};

std::string to_string(SafetyRule r);

/// Two invocations whose influences overlap, with the shared cells.
struct SafetyConflict {
    Invocation a;
    Invocation b;
    Influence overlap;
};

/// The verdict for a schedule at a state, with one rule-trace line per
/// schedule node and the influence overlaps found on failing nodes.
///
/// Unknown means no construction rule applied; the rules are sufficient, not
/// necessary, so Unknown schedules may still be deterministic. Unsafe is
/// only ever assigned from an exhibited non-determinism witness, never from
/// rule failure alone.
struct SafetyReport {
    struct TraceEntry {
        std::string node;
        SafetyRule rule;
        SafetyVerdict verdict;
    };

    SafetyVerdict verdict = SafetyVerdict::Unknown;
    std::vector<TraceEntry> rule_trace;
    std::vector<SafetyConflict> conflicts;

    /// One line per schedule node, conflicts listed underneath.
    std::string render() const;
};

/// Influence of a schedule at a state: the union over its invocations of
/// each produced mutation's influence, with seq_comp's right side evaluated
/// at the left-updated state.
Influence schedule_influence(const WorldState& c, const Schedule& z);

/// Applies the safe-construction rules at `c`. Rule failure yields Unknown
/// with the overlapping invocation pairs reported.
SafetyReport check_safe(const WorldState& c, const Schedule& z);

/// True iff the system's query vector is a singleton and no label whose
/// values can reach the result carries entity references. When true, running
/// the system concurrently is safe at every state.
bool check_static_singleton(const Schema& schema, const System& s);

/// Label sets a static analysis is told each system may influence. Keyed by
/// system name; must over-approximate every label any invocation's mutation
/// can touch.
using DeclaredLabels = std::map<std::string, std::set<ComponentLabel>>;

/// True iff both schedules are safe by the statically checkable rules alone
/// and their declared label sets are disjoint. When true, running them in
/// parallel is safe at every state. Throws AnalysisError for systems that
/// have no declaration.
bool check_static_disjoint_labels(const Schema& schema, const Schedule& z, const Schedule& z2,
                                  const DeclaredLabels& declared_labels);

/// Whether a schedule is safe at every state by the static rules alone:
/// seq always, seq_comp of statically safe sides, conc via the singleton
/// rule, par via disjoint declared labels.
bool statically_safe(const Schema& schema, const Schedule& z, const DeclaredLabels& declared_labels);

/// The labels a schedule's systems declare, unioned. Throws AnalysisError
/// for undeclared systems.
std::set<ComponentLabel> declared_label_set(const Schedule& z, const DeclaredLabels& declared_labels);

/// Outcome of brute-forcing every linearization of a schedule at a state.
struct DeterminismVerdict {
    struct Outcome {
        std::vector<std::size_t> linearization;
        WorldState final_state;
    };

    bool deterministic = true;
    std::uint64_t distinct_outcomes = 0;

    /// Present iff non-deterministic: two linearizations with differing
    /// canonical final states.
    std::optional<std::pair<Outcome, Outcome>> witness;
};

/// Applies every linearization of the schedule's invocation partial order,
/// buckets the final states by canonical form, and reports whether they all
/// agree. Throws TooManyLinearizations past `limit`.
DeterminismVerdict brute_force_determinism(const WorldState& c, const Schedule& z,
                                           std::uint64_t limit = kDefaultLinearizationLimit);

}  // namespace coreecs
