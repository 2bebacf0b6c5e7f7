#include "coreecs/mutation.hpp"

#include <sstream>

namespace coreecs {

Mutation::Mutation() : node_(std::make_shared<const Node>(NilNode{})) {}

Mutation Mutation::nil() { return Mutation(); }

Mutation Mutation::attach(EntityId e, ComponentValue value) {
    return Mutation(std::make_shared<const Node>(AttachNode{e, std::move(value)}));
}

Mutation Mutation::detach(ComponentLabel label, EntityId e) {
    return Mutation(std::make_shared<const Node>(DetachNode{std::move(label), e}));
}

Mutation Mutation::compose(Mutation first, Mutation second) {
    return Mutation(std::make_shared<const Node>(ComposeNode{std::move(first), std::move(second)}));
}

Mutation Mutation::fresh(FreshBinder binder) {
    return Mutation(std::make_shared<const Node>(FreshNode{std::move(binder)}));
}

bool Mutation::is_nil() const { return std::holds_alternative<NilNode>(*node_); }

WorldState apply_mutation(const WorldState& c, const Mutation& m) {
    return std::visit(
        [&](const auto& node) -> WorldState {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Mutation::AttachNode>) {
                return c.with_attached(node.entity, node.value);
            } else if constexpr (std::is_same_v<T, Mutation::DetachNode>) {
                // Detaching an absent mapping leaves the store untouched.
                c.schema().index_of(node.label);
                return c.with_detached(node.label, node.entity);
            } else if constexpr (std::is_same_v<T, Mutation::ComposeNode>) {
                return apply_mutation(apply_mutation(c, node.first), node.second);
            } else if constexpr (std::is_same_v<T, Mutation::FreshNode>) {
                auto [e, next] = c.fresh_entity();
                return apply_mutation(next, node.binder(e));
            } else {
                return c;
            }
        },
        m.node());
}

Mutation ground(const Mutation& m, EntityId& counter) {
    return std::visit(
        [&](const auto& node) -> Mutation {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Mutation::ComposeNode>) {
                Mutation first = ground(node.first, counter);
                Mutation second = ground(node.second, counter);
                return Mutation::compose(std::move(first), std::move(second));
            } else if constexpr (std::is_same_v<T, Mutation::FreshNode>) {
                if (counter.value + 1 >= kEntityIdCapacity) {
                    throw CapacityError("fresh-entity counter exhausted");
                }
                EntityId e = counter;
                counter = EntityId{counter.value + 1};
                return ground(node.binder(e), counter);
            } else {
                return m;
            }
        },
        m.node());
}

void Influence::merge(const Influence& other) {
    cells_.insert(other.cells_.begin(), other.cells_.end());
}

Influence Influence::intersect(const Influence& other) const {
    std::set<Cell> common;
    for (const Cell& cell : cells_) {
        if (other.cells_.count(cell)) common.insert(cell);
    }
    return Influence(std::move(common));
}

bool Influence::disjoint_with(const Influence& other) const {
    const auto& smaller = cells_.size() <= other.cells_.size() ? cells_ : other.cells_;
    const auto& larger = cells_.size() <= other.cells_.size() ? other.cells_ : cells_;
    for (const Cell& cell : smaller) {
        if (larger.count(cell)) return false;
    }
    return true;
}

std::string Influence::render() const {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [e, label] : cells_) {
        if (!first) out << ", ";
        first = false;
        out << "(" << to_string(e) << ", " << label.name << ")";
    }
    out << "}";
    return out.str();
}

namespace {

// Influence of a mutation with fresh binders probed at sentinel ids drawn
// from `sentinel`. Nested binders get their own pair so distinct fresh
// entities never alias.
Influence influence_probed(const Mutation& m, std::uint64_t& sentinel) {
    return std::visit(
        [&](const auto& node) -> Influence {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Mutation::AttachNode>) {
                return Influence({{node.entity, node.value.label()}});
            } else if constexpr (std::is_same_v<T, Mutation::DetachNode>) {
                return Influence({{node.entity, node.label}});
            } else if constexpr (std::is_same_v<T, Mutation::ComposeNode>) {
                Influence left = influence_probed(node.first, sentinel);
                left.merge(influence_probed(node.second, sentinel));
                return left;
            } else if constexpr (std::is_same_v<T, Mutation::FreshNode>) {
                // Whatever the binder does to the fresh entity itself differs
                // between the probes and is intersected away; only influence
                // invariant to the choice survives.
                EntityId s1{sentinel++};
                EntityId s2{sentinel++};
                Influence first = influence_probed(node.binder(s1), sentinel);
                Influence second = influence_probed(node.binder(s2), sentinel);
                return first.intersect(second);
            } else {
                return Influence();
            }
        },
        m.node());
}

}  // namespace

Influence mutation_influence(const Mutation& m) {
    std::uint64_t sentinel = kEntityIdCapacity;
    return influence_probed(m, sentinel);
}

}  // namespace coreecs
