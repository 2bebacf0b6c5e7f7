#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coreecs/errors.hpp"

namespace coreecs {

/// The payload kind a component label may carry.
enum class ComponentKind {
    Integer,    ///< a signed 64-bit integer
    Flag,       ///< a unit marker, no payload
    EntityRef,  ///< a reference to another entity
};

std::string to_string(ComponentKind kind);

/// Names one column of the state. Labels are compared by name and must be
/// declared in a schema before use.
struct ComponentLabel {
    std::string name;

    ComponentLabel() = default;
    ComponentLabel(std::string n) : name(std::move(n)) {}
    ComponentLabel(const char* n) : name(n) {}

    auto operator<=>(const ComponentLabel&) const = default;
};

/// The fixed set of component labels of a world and their kinds. Order is
/// fixed at construction and drives canonical rendering.
class Schema {
  public:
    Schema() = default;

    /// Throws SchemaError if a label appears twice.
    Schema(std::initializer_list<std::pair<ComponentLabel, ComponentKind>> entries);
    explicit Schema(std::vector<std::pair<ComponentLabel, ComponentKind>> entries);

    std::size_t size() const { return entries_.size(); }
    const ComponentLabel& label_at(std::size_t i) const { return entries_[i].first; }
    ComponentKind kind_at(std::size_t i) const { return entries_[i].second; }

    bool contains(const ComponentLabel& label) const;

    /// Position of the label in declaration order; throws SchemaError if the
    /// label was never declared.
    std::size_t index_of(const ComponentLabel& label) const;

    ComponentKind kind_of(const ComponentLabel& label) const;

    bool operator==(const Schema& other) const { return entries_ == other.entries_; }

  private:
    std::vector<std::pair<ComponentLabel, ComponentKind>> entries_;
    std::map<std::string, std::size_t> index_;
};

}  // namespace coreecs
