#include "coreecs/state.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace coreecs {

WorldState WorldState::empty(Schema schema) {
    WorldState c;
    c.schema_ = std::make_shared<const Schema>(std::move(schema));
    c.stores_.resize(c.schema_->size());
    return c;
}

const WorldState::Store& WorldState::store(const ComponentLabel& label) const {
    return stores_[schema_->index_of(label)];
}

std::optional<ComponentValue> WorldState::lookup(const ComponentLabel& label, EntityId e) const {
    const Store& s = store(label);
    auto it = s.find(e);
    if (it == s.end()) return std::nullopt;
    return it->second;
}

std::set<EntityId> WorldState::live_entities() const {
    std::set<EntityId> live;
    for (const Store& s : stores_) {
        for (const auto& [e, _] : s) live.insert(e);
    }
    return live;
}

bool WorldState::is_live(EntityId e) const {
    return std::any_of(stores_.begin(), stores_.end(),
                       [&](const Store& s) { return s.count(e) != 0; });
}

std::pair<EntityId, WorldState> WorldState::fresh_entity() const {
    if (next_fresh_.value + 1 >= kEntityIdCapacity) {
        throw CapacityError("fresh-entity counter exhausted");
    }
    WorldState next = *this;
    next.next_fresh_ = EntityId{next_fresh_.value + 1};
    return {next_fresh_, std::move(next)};
}

WorldState WorldState::with_attached(EntityId e, const ComponentValue& value) const {
    std::size_t index = schema_->index_of(value.label());
    if (schema_->kind_at(index) != value.kind()) {
        throw SchemaError("value kind " + to_string(value.kind()) + " does not match label '" +
                          value.label().name + "' of kind " + to_string(schema_->kind_at(index)));
    }
    WorldState next = *this;
    next.stores_[index].insert_or_assign(e, value);
    return next;
}

WorldState WorldState::with_detached(const ComponentLabel& label, EntityId e) const {
    std::size_t index = schema_->index_of(label);
    WorldState next = *this;
    next.stores_[index].erase(e);
    return next;
}

WorldState WorldState::with_next_fresh_at_least(EntityId floor) const {
    if (floor.value >= kEntityIdCapacity) {
        throw CapacityError("fresh-entity counter exhausted");
    }
    WorldState next = *this;
    next.next_fresh_ = std::max(next.next_fresh_, floor);
    return next;
}

bool WorldState::operator==(const WorldState& other) const {
    return *schema_ == *other.schema_ && stores_ == other.stores_ &&
           next_fresh_ == other.next_fresh_;
}

std::set<EntityId> live_entities(const WorldState& c) { return c.live_entities(); }

std::pair<EntityId, WorldState> fresh_entity(const WorldState& c) { return c.fresh_entity(); }

std::string render_state(const WorldState& c) {
    std::ostringstream out;
    const Schema& schema = c.schema();
    for (std::size_t i = 0; i < schema.size(); ++i) {
        out << schema.label_at(i).name << "↦{";
        bool first = true;
        for (const auto& [e, value] : c.store_at(i)) {
            if (!first) out << ", ";
            first = false;
            out << to_string(e) << " ↦ " << value.render();
        }
        out << "} :+ ";
    }
    out << "Metadata {nextFresh = " << to_string(c.next_fresh()) << "}";
    return out.str();
}

namespace {

// Refined content signature per live entity: starts from the entity's
// component values (with reference payloads blanked) and folds in the
// signatures of referenced entities until the partition stabilizes. Entities
// that end up with equal signatures are interchangeable under renaming.
std::map<EntityId, std::string> content_signatures(const WorldState& c,
                                                   const std::set<EntityId>& live) {
    const Schema& schema = c.schema();
    std::map<EntityId, std::string> sig;
    for (EntityId e : live) {
        std::string s;
        for (std::size_t i = 0; i < schema.size(); ++i) {
            auto it = c.store_at(i).find(e);
            if (it == c.store_at(i).end()) continue;
            s += std::to_string(i) + ":";
            switch (it->second.kind()) {
                case ComponentKind::Integer:
                    s += std::to_string(it->second.as_integer());
                    break;
                case ComponentKind::Flag:
                    s += "*";
                    break;
                case ComponentKind::EntityRef:
                    s += "@";
                    break;
            }
            s += ";";
        }
        sig[e] = std::move(s);
    }

    auto ref_signature = [&](EntityId target) -> std::string {
        auto it = sig.find(target);
        // Dangling references keep their numeric identity; they carry no
        // content to refine on.
        if (it == sig.end()) return "dead:" + std::to_string(target.value);
        return it->second;
    };

    for (std::size_t round = 0; round < live.size(); ++round) {
        std::map<EntityId, std::string> next;
        for (EntityId e : live) {
            std::string s = sig[e];
            for (std::size_t i = 0; i < schema.size(); ++i) {
                auto it = c.store_at(i).find(e);
                if (it == c.store_at(i).end()) continue;
                if (it->second.kind() == ComponentKind::EntityRef) {
                    s += "(" + ref_signature(it->second.as_entity_ref()) + ")";
                }
            }
            next[e] = std::move(s);
        }
        bool changed = false;
        for (EntityId e : live) {
            for (EntityId e2 : live) {
                bool was_equal = sig[e] == sig[e2];
                bool now_equal = next[e] == next[e2];
                if (was_equal != now_equal) changed = true;
            }
        }
        sig = std::move(next);
        if (!changed) break;
    }
    return sig;
}

}  // namespace

WorldState canonicalize(const WorldState& c) {
    const Schema& schema = c.schema();
    std::set<EntityId> live = c.live_entities();
    std::map<EntityId, std::string> sig = content_signatures(c, live);

    // Live entities ordered by signature (ties by original id), then any
    // dangling reference targets in original order.
    std::vector<EntityId> order(live.begin(), live.end());
    std::stable_sort(order.begin(), order.end(), [&](EntityId a, EntityId b) {
        if (sig[a] != sig[b]) return sig[a] < sig[b];
        return a < b;
    });

    std::set<EntityId> dangling;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (schema.kind_at(i) != ComponentKind::EntityRef) continue;
        for (const auto& [_, value] : c.store_at(i)) {
            EntityId target = value.as_entity_ref();
            if (live.count(target) == 0) dangling.insert(target);
        }
    }
    order.insert(order.end(), dangling.begin(), dangling.end());

    std::map<EntityId, EntityId> rename;
    for (std::size_t i = 0; i < order.size(); ++i) {
        rename[order[i]] = EntityId{i};
    }

    WorldState canon = WorldState::empty(schema);
    for (std::size_t i = 0; i < schema.size(); ++i) {
        for (const auto& [e, value] : c.store_at(i)) {
            ComponentValue renamed =
                value.kind() == ComponentKind::EntityRef
                    ? ComponentValue::entity_ref(value.label(), rename.at(value.as_entity_ref()))
                    : value;
            canon = canon.with_attached(rename.at(e), renamed);
        }
    }
    return canon.with_next_fresh_at_least(EntityId{order.size()});
}

bool states_equal_upto_fresh(const WorldState& c, const WorldState& c2) {
    if (!(c.schema() == c2.schema())) {
        throw SchemaError("states_equal_upto_fresh requires a common schema");
    }
    return canonicalize(c) == canonicalize(c2);
}

std::string canonical_render(const WorldState& c) { return render_state(canonicalize(c)); }

}  // namespace coreecs
