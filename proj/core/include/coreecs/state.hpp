#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coreecs/entity.hpp"
#include "coreecs/schema.hpp"
#include "coreecs/value.hpp"

namespace coreecs {

/// The whole state of an ECS world: one column of entity-to-value mappings
/// per schema label, plus the next fresh entity id.
///
/// Values are immutable after construction; updates return new states.
/// Instances are safe to share across threads for reading.
class WorldState {
  public:
    using Store = std::map<EntityId, ComponentValue>;

    WorldState() = default;

    /// All stores empty, counter at e0. Throws SchemaError on duplicate labels
    /// (via Schema construction when built from raw entries).
    static WorldState empty(Schema schema);

    const Schema& schema() const { return *schema_; }
    std::shared_ptr<const Schema> schema_ptr() const { return schema_; }

    EntityId next_fresh() const { return next_fresh_; }

    const Store& store(const ComponentLabel& label) const;
    const Store& store_at(std::size_t index) const { return stores_[index]; }

    std::optional<ComponentValue> lookup(const ComponentLabel& label, EntityId e) const;

    /// The union of the domains of all stores.
    std::set<EntityId> live_entities() const;

    bool is_live(EntityId e) const;

    /// Returns the current counter and the successor state. Throws
    /// CapacityError if the counter cannot be advanced.
    std::pair<EntityId, WorldState> fresh_entity() const;

    /// New state with (label, e) mapped to value. The entity need not be
    /// live beforehand; this is how entities come alive.
    WorldState with_attached(EntityId e, const ComponentValue& value) const;

    /// New state with (label, e) unmapped. Detaching an absent mapping is
    /// the identity.
    WorldState with_detached(const ComponentLabel& label, EntityId e) const;

    /// New state with the counter forced to at least `floor`. Used by
    /// builders of hand-rolled states; never needed on the mutation path.
    WorldState with_next_fresh_at_least(EntityId floor) const;

    bool operator==(const WorldState& other) const;

  private:
    std::shared_ptr<const Schema> schema_ = std::make_shared<const Schema>();
    std::vector<Store> stores_;
    EntityId next_fresh_{0};
};

/// Exactly the union of the store domains of `c`.
std::set<EntityId> live_entities(const WorldState& c);

/// Returns the current counter and the successor state.
std::pair<EntityId, WorldState> fresh_entity(const WorldState& c);

/// Canonical textual form: stores in schema order joined by " :+ ", entities
/// ascending in each, then the fresh-counter trailer.
std::string render_state(const WorldState& c);

/// Renames entity ids to a normal form so that states differing only in the
/// choice of fresh entities compare equal. Entities are keyed by their
/// component content (refined through entity references) and renumbered
/// 0..n-1; the counter is normalized to the renamed id space.
WorldState canonicalize(const WorldState& c);

/// True iff both states have the same schema and equal canonical forms.
/// Throws SchemaError when the schemas differ.
bool states_equal_upto_fresh(const WorldState& c, const WorldState& c2);

/// render_state of the canonical form; usable as a bucketing key.
std::string canonical_render(const WorldState& c);

}  // namespace coreecs
