#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include "coreecs/entity.hpp"
#include "coreecs/errors.hpp"
#include "coreecs/schema.hpp"

namespace coreecs {

/// The payload of a Flag component.
struct Unit {
    auto operator<=>(const Unit&) const = default;
};

/// One component value: a label plus a payload whose variant must match the
/// label's kind in the schema.
class ComponentValue {
  public:
    static ComponentValue integer(ComponentLabel label, std::int64_t v) {
        return ComponentValue(std::move(label), v);
    }
    static ComponentValue flag(ComponentLabel label) {
        return ComponentValue(std::move(label), Unit{});
    }
    static ComponentValue entity_ref(ComponentLabel label, EntityId target) {
        return ComponentValue(std::move(label), target);
    }

    const ComponentLabel& label() const { return label_; }

    ComponentKind kind() const {
        if (std::holds_alternative<std::int64_t>(payload_)) return ComponentKind::Integer;
        if (std::holds_alternative<Unit>(payload_)) return ComponentKind::Flag;
        return ComponentKind::EntityRef;
    }

    std::int64_t as_integer() const {
        if (const auto* v = std::get_if<std::int64_t>(&payload_)) return *v;
        throw SchemaError("component value of label '" + label_.name + "' is not an integer");
    }

    EntityId as_entity_ref() const {
        if (const auto* v = std::get_if<EntityId>(&payload_)) return *v;
        throw SchemaError("component value of label '" + label_.name + "' is not an entity reference");
    }

    bool operator==(const ComponentValue& other) const {
        return label_ == other.label_ && payload_ == other.payload_;
    }

    /// Textual form used in state listings: "Pos 7", "Pos (-2)", bare "7"
    /// for a label literally named Int, the label name for flags, and
    /// "Target e3" for entity references.
    std::string render() const;

  private:
    template <typename P>
    ComponentValue(ComponentLabel label, P payload)
        : label_(std::move(label)), payload_(payload) {}

    ComponentLabel label_;
    std::variant<std::int64_t, Unit, EntityId> payload_;
};

}  // namespace coreecs
