#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace coreecs {

/// An opaque entity identifier. Ids are sequential, never reused, and
/// totally ordered by value.
struct EntityId {
    std::uint64_t value = 0;

    auto operator<=>(const EntityId&) const = default;
};

inline EntityId entity(std::uint64_t value) { return EntityId{value}; }

/// Ids at or above this bound are never issued by a world counter; the range
/// above it is reserved for analysis probes.
inline constexpr std::uint64_t kEntityIdCapacity = std::uint64_t{1} << 62;

/// Renders an id the way state listings do: e0, e1, ...
inline std::string to_string(EntityId id) {
    return "e" + std::to_string(id.value);
}

}  // namespace coreecs
