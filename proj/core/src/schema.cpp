#include "coreecs/schema.hpp"

namespace coreecs {

std::string to_string(ComponentKind kind) {
    switch (kind) {
        case ComponentKind::Integer: return "Integer";
        case ComponentKind::Flag: return "Flag";
        case ComponentKind::EntityRef: return "EntityRef";
    }
    return "?";
}

Schema::Schema(std::initializer_list<std::pair<ComponentLabel, ComponentKind>> entries)
    : Schema(std::vector<std::pair<ComponentLabel, ComponentKind>>(entries)) {}

Schema::Schema(std::vector<std::pair<ComponentLabel, ComponentKind>> entries)
    : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        auto [it, inserted] = index_.emplace(entries_[i].first.name, i);
        if (!inserted) {
            throw SchemaError("duplicate label '" + entries_[i].first.name + "' in schema");
        }
    }
}

bool Schema::contains(const ComponentLabel& label) const {
    return index_.count(label.name) != 0;
}

std::size_t Schema::index_of(const ComponentLabel& label) const {
    auto it = index_.find(label.name);
    if (it == index_.end()) {
        throw SchemaError("label '" + label.name + "' is not declared in the schema");
    }
    return it->second;
}

ComponentKind Schema::kind_of(const ComponentLabel& label) const {
    return entries_[index_of(label)].second;
}

}  // namespace coreecs
