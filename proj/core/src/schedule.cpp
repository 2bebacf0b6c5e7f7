#include "coreecs/schedule.hpp"

#include <algorithm>

#include "coreecs/errors.hpp"

namespace coreecs {

Schedule Schedule::conc(SystemPtr s) {
    return Schedule(std::make_shared<const Node>(ConcNode{std::move(s)}));
}
Schedule Schedule::seq(SystemPtr s) {
    return Schedule(std::make_shared<const Node>(SeqNode{std::move(s)}));
}
Schedule Schedule::par(Schedule left, Schedule right) {
    return Schedule(std::make_shared<const Node>(ParNode{std::move(left), std::move(right)}));
}
Schedule Schedule::seq_comp(Schedule left, Schedule right) {
    return Schedule(std::make_shared<const Node>(SeqCompNode{std::move(left), std::move(right)}));
}

std::vector<SystemPtr> Schedule::systems() const {
    std::vector<SystemPtr> out;
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ConcNode> || std::is_same_v<T, SeqNode>) {
                out.push_back(node.system);
            } else {
                auto left = node.left.systems();
                auto right = node.right.systems();
                out.insert(out.end(), left.begin(), left.end());
                out.insert(out.end(), right.begin(), right.end());
            }
        },
        *node_);
    return out;
}

std::string Schedule::render() const {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ConcNode>) {
                return "conc(" + node.system->name + ")";
            } else if constexpr (std::is_same_v<T, SeqNode>) {
                return "seq(" + node.system->name + ")";
            } else if constexpr (std::is_same_v<T, ParNode>) {
                return "(" + node.left.render() + " || " + node.right.render() + ")";
            } else {
                return "(" + node.left.render() + " ; " + node.right.render() + ")";
            }
        },
        *node_);
}

Mutation interpret_schedule(const WorldState& c, const Schedule& z) {
    return std::visit(
        [&](const auto& node) -> Mutation {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Schedule::ConcNode>) {
                return concurrent_production(c, *node.system);
            } else if constexpr (std::is_same_v<T, Schedule::SeqNode>) {
                return sequential_production(c, *node.system);
            } else if constexpr (std::is_same_v<T, Schedule::ParNode>) {
                // Both sides observe the same state; neither side's mutation
                // is visible to the other.
                return Mutation::compose(interpret_schedule(c, node.left),
                                         interpret_schedule(c, node.right));
            } else {
                Mutation left = interpret_schedule(c, node.left);
                WorldState after_left = apply_mutation(c, left);
                return Mutation::compose(std::move(left),
                                         interpret_schedule(after_left, node.right));
            }
        },
        z.node());
}

WorldState apply_schedule(const WorldState& c, const Schedule& z) {
    return apply_mutation(c, interpret_schedule(c, z));
}

InvocationPO::InvocationPO(std::vector<Invocation> elements,
                           std::vector<std::pair<std::size_t, std::size_t>> pairs)
    : elements_(std::move(elements)),
      strictly_before_(elements_.size(), std::vector<bool>(elements_.size(), false)) {
    for (const auto& [a, b] : pairs) {
        strictly_before_[a][b] = true;
    }
    // Transitive closure; the input pairs are already acyclic by
    // construction.
    const std::size_t n = elements_.size();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!strictly_before_[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (strictly_before_[k][j]) strictly_before_[i][j] = true;
            }
        }
    }
}

bool InvocationPO::before(std::size_t tag_a, std::size_t tag_b) const {
    return strictly_before_[tag_a][tag_b];
}

std::set<std::pair<std::size_t, std::size_t>> InvocationPO::order_pairs() const {
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        pairs.emplace(i, i);
        for (std::size_t j = 0; j < elements_.size(); ++j) {
            if (strictly_before_[i][j]) pairs.emplace(i, j);
        }
    }
    return pairs;
}

namespace {

struct PoBuilder {
    std::vector<Invocation> elements;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    // Returns the tags contributed by this sub-schedule.
    std::vector<std::size_t> build(const WorldState& c, const Schedule& z) {
        return std::visit(
            [&](const auto& node) -> std::vector<std::size_t> {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Schedule::ConcNode>) {
                    // An antichain: one element per match, no order.
                    return add_invocations(node.system,
                                           eval_query_vector(c, node.system->query), false);
                } else if constexpr (std::is_same_v<T, Schedule::SeqNode>) {
                    // A chain over the rolled matches.
                    auto matches = eval_query_vector(c, node.system->query);
                    return add_invocations(node.system, roll(*node.system, c, matches), true);
                } else if constexpr (std::is_same_v<T, Schedule::ParNode>) {
                    auto left = build(c, node.left);
                    auto right = build(c, node.right);
                    left.insert(left.end(), right.begin(), right.end());
                    return left;
                } else {
                    auto left = build(c, node.left);
                    auto right = build(apply_schedule(c, node.left), node.right);
                    for (std::size_t l : left) {
                        for (std::size_t r : right) pairs.emplace_back(l, r);
                    }
                    left.insert(left.end(), right.begin(), right.end());
                    return left;
                }
            },
            z.node());
    }

    std::vector<std::size_t> add_invocations(const SystemPtr& system,
                                             const std::vector<EntityMatch>& matches,
                                             bool chained) {
        std::vector<std::size_t> tags;
        tags.reserve(matches.size());
        for (const EntityMatch& match : matches) {
            std::size_t tag = elements.size();
            elements.push_back(Invocation{system, match, tag});
            if (chained && !tags.empty()) pairs.emplace_back(tags.back(), tag);
            tags.push_back(tag);
        }
        return tags;
    }
};

}  // namespace

InvocationPO invocation_po(const WorldState& c, const Schedule& z) {
    PoBuilder builder;
    builder.build(c, z);
    return InvocationPO(std::move(builder.elements), std::move(builder.pairs));
}

namespace {

// Backtracking over the minimal available tag first, so the enumeration is
// lexicographic and the first sequence produced is the canonical
// linearization.
void enumerate_rec(const InvocationPO& po, std::vector<bool>& used,
                   std::vector<std::size_t>& prefix,
                   std::vector<std::vector<std::size_t>>& out, std::uint64_t limit) {
    const std::size_t n = po.size();
    if (prefix.size() == n) {
        if (out.size() >= limit) {
            throw TooManyLinearizations(out.size() + 1);
        }
        out.push_back(prefix);
        return;
    }
    for (std::size_t t = 0; t < n; ++t) {
        if (used[t]) continue;
        bool ready = true;
        for (std::size_t p = 0; p < n; ++p) {
            if (!used[p] && po.before(p, t)) {
                ready = false;
                break;
            }
        }
        if (!ready) continue;
        used[t] = true;
        prefix.push_back(t);
        enumerate_rec(po, used, prefix, out, limit);
        prefix.pop_back();
        used[t] = false;
    }
}

std::uint64_t count_rec(const InvocationPO& po, std::vector<bool>& used, std::size_t placed,
                        std::uint64_t cap) {
    const std::size_t n = po.size();
    if (placed == n) return 1;
    std::uint64_t total = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (used[t]) continue;
        bool ready = true;
        for (std::size_t p = 0; p < n; ++p) {
            if (!used[p] && po.before(p, t)) {
                ready = false;
                break;
            }
        }
        if (!ready) continue;
        used[t] = true;
        total += count_rec(po, used, placed + 1, cap);
        used[t] = false;
        if (total >= cap) return total;  // saturating; caller only needs a bound
    }
    return total;
}

}  // namespace

std::uint64_t count_linearizations(const InvocationPO& po) {
    std::vector<bool> used(po.size(), false);
    return count_rec(po, used, 0, UINT64_MAX);
}

std::vector<std::vector<std::size_t>> enumerate_linearizations(const InvocationPO& po,
                                                               std::uint64_t limit) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> used(po.size(), false);
    std::vector<std::size_t> prefix;
    enumerate_rec(po, used, prefix, out, limit);
    return out;
}

WorldState apply_linearization(const WorldState& c, const InvocationPO& po,
                               const std::vector<std::size_t>& linearization) {
    // The composite mutation of the linearization, applied step by step;
    // captured matches are used as-is, never re-queried.
    WorldState state = c;
    for (std::size_t tag : linearization) {
        const Invocation& inv = po.elements()[tag];
        state = apply_mutation(state, inv.system->func(inv.match));
    }
    return state;
}

}  // namespace coreecs
