#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coreecs/system.hpp"

namespace coreecs {

/// A schedule composes systems into a whole ECS program: single systems run
/// concurrently or sequentially over their matches, and sub-schedules
/// compose in parallel or in sequence.
class Schedule {
  public:
    static Schedule conc(SystemPtr s);
    static Schedule seq(SystemPtr s);
    static Schedule par(Schedule left, Schedule right);
    static Schedule seq_comp(Schedule left, Schedule right);

    struct ConcNode;
    struct SeqNode;
    struct ParNode;
    struct SeqCompNode;

    using Node = std::variant<ConcNode, SeqNode, ParNode, SeqCompNode>;

    const Node& node() const;

    /// Every system referenced by the schedule, in tree order.
    std::vector<SystemPtr> systems() const;

    std::string render() const;

  private:
    explicit Schedule(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct Schedule::ConcNode {
    SystemPtr system;
};
struct Schedule::SeqNode {
    SystemPtr system;
};
struct Schedule::ParNode {
    Schedule left;
    Schedule right;
};
struct Schedule::SeqCompNode {
    Schedule left;
    Schedule right;
};

inline const Schedule::Node& Schedule::node() const { return *node_; }

/// Produces the composite mutation a schedule denotes at a state: concurrent
/// production for conc, sequential production for seq, composition of both
/// sides at the same state for par, and composition where the right side is
/// produced at the left-updated state for seq_comp.
Mutation interpret_schedule(const WorldState& c, const Schedule& z);

/// apply_mutation(c, interpret_schedule(c, z)): one step of the program.
WorldState apply_schedule(const WorldState& c, const Schedule& z);

/// One system-function invocation of a schedule: the system, the match it
/// captured when the partial order was built, and a tag unique within that
/// construction.
struct Invocation {
    SystemPtr system;
    EntityMatch match;
    std::size_t tag = 0;
};

/// The invocations a schedule performs at a state, with the partial order
/// that any execution must respect. Elements are listed in canonical
/// left-to-right, match-order position; `before(a, b)` is the strict order,
/// transitively closed.
class InvocationPO {
  public:
    InvocationPO() = default;
    InvocationPO(std::vector<Invocation> elements, std::vector<std::pair<std::size_t, std::size_t>> pairs);

    const std::vector<Invocation>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

    bool before(std::size_t tag_a, std::size_t tag_b) const;

    /// The order relation as tag pairs, reflexive-transitively closed.
    std::set<std::pair<std::size_t, std::size_t>> order_pairs() const;

  private:
    std::vector<Invocation> elements_;
    std::vector<std::vector<bool>> strictly_before_;
};

/// Builds the invocation partial order of `z` at `c`: conc contributes an
/// antichain over its query's matches, seq a chain over its rolled matches,
/// par a disjoint union, and seq_comp a disjoint union plus every
/// left-before-right pair, with the right side built at the left-updated
/// state. Matches are captured here; replaying a linearization never
/// re-queries.
InvocationPO invocation_po(const WorldState& c, const Schedule& z);

/// All topological orders of the partial order, as sequences of tags,
/// enumerated deterministically (lexicographic by tag). Throws
/// TooManyLinearizations when the count would exceed `limit`.
std::vector<std::vector<std::size_t>> enumerate_linearizations(const InvocationPO& po,
                                                               std::uint64_t limit);

/// Counts the topological orders without materializing them.
std::uint64_t count_linearizations(const InvocationPO& po);

/// Default enumeration guard, roughly the orders of a 7-element antichain.
inline constexpr std::uint64_t kDefaultLinearizationLimit = 10080;

/// Applies the composite mutation of one linearization: folds each
/// invocation's system function over its captured match, composing left to
/// right, and interprets the result at `c`. Fresh entities are drawn from
/// c's counter in application order.
WorldState apply_linearization(const WorldState& c, const InvocationPO& po,
                               const std::vector<std::size_t>& linearization);

}  // namespace coreecs
