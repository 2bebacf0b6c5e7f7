#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coreecs/schedule.hpp"

namespace coreecs {

/// Configuration for the threaded runtime.
struct RunConfig {
    /// Upper bound on worker threads applying one concurrent region's
    /// matches. Must be at least 1. A single worker removes all interleaving
    /// freedom: the run then applies the canonical linearization.
    unsigned workers = 4;

    /// Perturbs the dispatch order of concurrent matches so that repeated
    /// runs cover more interleavings. Ignored when workers == 1.
    std::uint64_t seed = 0;

    /// Record the order in which invocations were applied.
    bool trace = false;
};

/// One applied invocation, in application order.
struct TraceEntry {
    std::size_t step = 0;
    std::string system;
    std::string tag;

    /// Region bookkeeping used to check ordering constraints: entries of one
    /// seq region must appear in index order, and every entry of a seq_comp
    /// left subtree must precede the right subtree's.
    std::vector<int> region_path;
    std::size_t index_in_region = 0;
};

using RunTrace = std::vector<TraceEntry>;

std::string render_trace(const RunTrace& trace);

struct RunResult {
    WorldState state;
    std::optional<RunTrace> trace;
};

/// Executes a schedule with real threads over a shared state behind one
/// exclusive lock. Every produced mutation is applied to the shared state
/// immediately and atomically; fresh ids come from the shared counter, so
/// they are globally unique.
///
/// Region behavior: a conc node takes one initial query and dispatches one
/// task per match; a seq node processes its matches one at a time,
/// re-querying before each; par sides run concurrently; a seq_comp right
/// side starts only after the left side has fully completed. Par sides
/// evaluate their queries against a snapshot taken when the par node is
/// entered, advanced only by that side's own mutations — sides never observe
/// each other mid-flight, while their writes still race into the shared
/// state in completion order.
///
/// Returns only after every dispatched invocation has completed. Throws
/// RuntimeError if a worker cannot be run; the state is discarded.
RunResult run_parallel(const WorldState& c, const Schedule& z, const RunConfig& cfg);

}  // namespace coreecs
