#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>

#include "coreecs/entity.hpp"
#include "coreecs/state.hpp"
#include "coreecs/value.hpp"

namespace coreecs {

/// A composable description of a state update. Mutations are immutable
/// trees; composition is right-biased (later writes win on overlap).
///
/// The fresh constructor defers to a binder that receives a fresh entity at
/// interpretation time. Binders must be pure: the same entity argument must
/// yield the same mutation.
class Mutation {
  public:
    using FreshBinder = std::function<Mutation(EntityId)>;

    /// The empty mutation.
    Mutation();

    static Mutation nil();
    static Mutation attach(EntityId e, ComponentValue value);
    static Mutation detach(ComponentLabel label, EntityId e);
    static Mutation compose(Mutation first, Mutation second);
    static Mutation fresh(FreshBinder binder);

    bool is_nil() const;

    /// Structure walk, used by interpretation and influence.
    struct AttachNode;
    struct DetachNode;
    struct ComposeNode;
    struct FreshNode;
    struct NilNode;

    using Node = std::variant<AttachNode, DetachNode, ComposeNode, FreshNode, NilNode>;

    const Node& node() const;

  private:
    explicit Mutation(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct Mutation::AttachNode {
    EntityId entity;
    ComponentValue value;
};
struct Mutation::DetachNode {
    ComponentLabel label;
    EntityId entity;
};
struct Mutation::ComposeNode {
    Mutation first;
    Mutation second;
};
struct Mutation::FreshNode {
    FreshBinder binder;
};
struct Mutation::NilNode {};

inline const Mutation::Node& Mutation::node() const { return *node_; }

/// Convenience composition, left applied first.
inline Mutation operator*(Mutation a, Mutation b) {
    return Mutation::compose(std::move(a), std::move(b));
}

/// Interprets a mutation against a state and returns the updated state.
///
/// Attach adds or overwrites one mapping, detach removes one (a no-op when
/// absent), composition applies left then right, and fresh consumes the
/// state's counter before interpreting the bound mutation. Throws
/// SchemaError for unknown labels or kind mismatches.
WorldState apply_mutation(const WorldState& c, const Mutation& m);

/// Replaces every fresh binder by the mutation it produces for an id drawn
/// from `counter`, in interpretation order. The result interprets to the
/// same state as `m` does from a state whose counter equals the initial
/// `counter`, and can be re-applied without consuming fresh ids.
Mutation ground(const Mutation& m, EntityId& counter);

/// The set of (entity, label) cells a mutation necessarily affects.
class Influence {
  public:
    using Cell = std::pair<EntityId, ComponentLabel>;

    Influence() = default;
    explicit Influence(std::set<Cell> cells) : cells_(std::move(cells)) {}

    const std::set<Cell>& cells() const { return cells_; }
    bool empty() const { return cells_.empty(); }
    bool contains(const Cell& cell) const { return cells_.count(cell) != 0; }

    void insert(Cell cell) { cells_.insert(std::move(cell)); }
    void merge(const Influence& other);

    Influence intersect(const Influence& other) const;
    bool disjoint_with(const Influence& other) const;

    bool operator==(const Influence& other) const { return cells_ == other.cells_; }

    std::string render() const;

  private:
    std::set<Cell> cells_;
};

/// Influence of a mutation: singletons for attach and detach, unions for
/// composition, empty for nil. A fresh binder is probed at two distinct
/// sentinel entities and only the influence common to both is kept, so
/// whatever depends on the choice of fresh entity is discarded. The sentinels
/// are drawn from a reserved high range that no world counter reaches.
Influence mutation_influence(const Mutation& m);

}  // namespace coreecs
