#include "coreecs/value.hpp"

namespace coreecs {

std::string ComponentValue::render() const {
    switch (kind()) {
        case ComponentKind::Integer: {
            std::int64_t v = as_integer();
            // A label literally named Int prints its payload bare; any other
            // label prefixes its name and parenthesizes negatives.
            if (label_.name == "Int") {
                return std::to_string(v);
            }
            if (v < 0) {
                return label_.name + " (" + std::to_string(v) + ")";
            }
            return label_.name + " " + std::to_string(v);
        }
        case ComponentKind::Flag:
            return label_.name;
        case ComponentKind::EntityRef:
            return label_.name + " " + to_string(as_entity_ref());
    }
    return "?";
}

}  // namespace coreecs
