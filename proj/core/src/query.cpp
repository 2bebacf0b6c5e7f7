#include "coreecs/query.hpp"

#include <algorithm>

namespace coreecs {

Query Query::incl(ComponentLabel label) {
    return Query(std::make_shared<const Node>(InclNode{std::move(label)}));
}
Query Query::excl(ComponentLabel label) {
    return Query(std::make_shared<const Node>(ExclNode{std::move(label)}));
}
Query Query::anyway(ComponentLabel label) {
    return Query(std::make_shared<const Node>(AnywayNode{std::move(label)}));
}
Query Query::conj(Query left, Query right) {
    return Query(std::make_shared<const Node>(AndNode{std::move(left), std::move(right)}));
}

std::string Query::render() const {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, InclNode>) {
                return "incl " + node.label.name;
            } else if constexpr (std::is_same_v<T, ExclNode>) {
                return "excl " + node.label.name;
            } else if constexpr (std::is_same_v<T, AnywayNode>) {
                return "anyway " + node.label.name;
            } else {
                return "(" + node.left.render() + " & " + node.right.render() + ")";
            }
        },
        *node_);
}

QueryVector::QueryVector(std::vector<Query> queries) : queries_(std::move(queries)) {
    if (queries_.empty()) {
        throw ShapeError("a query vector needs at least one query");
    }
}

QueryVector::QueryVector(std::initializer_list<Query> queries)
    : QueryVector(std::vector<Query>(queries)) {}

ResultShape ResultShape::component(ComponentLabel label) {
    return ResultShape(std::make_shared<const Node>(ComponentSlot{std::move(label)}));
}
ResultShape ResultShape::unit() { return ResultShape(std::make_shared<const Node>(UnitSlot{})); }
ResultShape ResultShape::optional(ComponentLabel label) {
    return ResultShape(std::make_shared<const Node>(OptionalSlot{std::move(label)}));
}
ResultShape ResultShape::pair(ResultShape first, ResultShape second) {
    return ResultShape(std::make_shared<const Node>(PairSlot{std::move(first), std::move(second)}));
}

std::vector<ComponentLabel> ResultShape::value_labels() const {
    std::vector<ComponentLabel> labels;
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ComponentSlot>) {
                labels.push_back(node.label);
            } else if constexpr (std::is_same_v<T, OptionalSlot>) {
                labels.push_back(node.label);
            } else if constexpr (std::is_same_v<T, PairSlot>) {
                auto left = node.first.value_labels();
                auto right = node.second.value_labels();
                labels.insert(labels.end(), left.begin(), left.end());
                labels.insert(labels.end(), right.begin(), right.end());
            }
        },
        *node_);
    return labels;
}

bool ResultShape::operator==(const ResultShape& other) const {
    return std::visit(
        [&](const auto& a, const auto& b) -> bool {
            using A = std::decay_t<decltype(a)>;
            using B = std::decay_t<decltype(b)>;
            if constexpr (!std::is_same_v<A, B>) {
                return false;
            } else if constexpr (std::is_same_v<A, ComponentSlot>) {
                return a.label == b.label;
            } else if constexpr (std::is_same_v<A, OptionalSlot>) {
                return a.label == b.label;
            } else if constexpr (std::is_same_v<A, PairSlot>) {
                return a.first == b.first && a.second == b.second;
            } else {
                return true;
            }
        },
        *node_, *other.node_);
}

ComponentResult ComponentResult::value(ComponentValue v) { return ComponentResult(Node(std::move(v))); }
ComponentResult ComponentResult::unit() { return ComponentResult(Node(Unit{})); }
ComponentResult ComponentResult::optional(std::optional<ComponentValue> v) {
    return ComponentResult(Node(std::move(v)));
}
ComponentResult ComponentResult::pair(ComponentResult first, ComponentResult second) {
    return ComponentResult(
        Node(std::make_shared<const PairNode>(PairNode{std::move(first), std::move(second)})));
}

bool ComponentResult::is_value() const { return std::holds_alternative<ComponentValue>(node_); }
bool ComponentResult::is_unit() const { return std::holds_alternative<Unit>(node_); }
bool ComponentResult::is_optional() const {
    return std::holds_alternative<std::optional<ComponentValue>>(node_);
}
bool ComponentResult::is_pair() const {
    return std::holds_alternative<std::shared_ptr<const PairNode>>(node_);
}

const ComponentValue& ComponentResult::as_value() const {
    if (const auto* v = std::get_if<ComponentValue>(&node_)) return *v;
    throw ShapeError("component result is not a plain value");
}

const std::optional<ComponentValue>& ComponentResult::as_optional() const {
    if (const auto* v = std::get_if<std::optional<ComponentValue>>(&node_)) return *v;
    throw ShapeError("component result is not optional");
}

const ComponentResult& ComponentResult::first() const {
    if (const auto* p = std::get_if<std::shared_ptr<const PairNode>>(&node_)) return (*p)->first;
    throw ShapeError("component result is not a pair");
}

const ComponentResult& ComponentResult::second() const {
    if (const auto* p = std::get_if<std::shared_ptr<const PairNode>>(&node_)) return (*p)->second;
    throw ShapeError("component result is not a pair");
}

bool ComponentResult::conforms_to(const ResultShape& shape) const {
    return std::visit(
        [&](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ResultShape::ComponentSlot>) {
                return is_value() && as_value().label() == node.label;
            } else if constexpr (std::is_same_v<T, ResultShape::UnitSlot>) {
                return is_unit();
            } else if constexpr (std::is_same_v<T, ResultShape::OptionalSlot>) {
                return is_optional() &&
                       (!as_optional().has_value() || as_optional()->label() == node.label);
            } else {
                return is_pair() && first().conforms_to(node.first) &&
                       second().conforms_to(node.second);
            }
        },
        shape.node());
}

bool ComponentResult::operator==(const ComponentResult& other) const {
    if (node_.index() != other.node_.index()) return false;
    if (is_pair()) {
        return first() == other.first() && second() == other.second();
    }
    if (is_value()) return as_value() == other.as_value();
    if (is_optional()) return as_optional() == other.as_optional();
    return true;  // both unit
}

std::string ComponentResult::render() const {
    if (is_value()) return as_value().render();
    if (is_unit()) return "*";
    if (is_optional()) return as_optional() ? as_optional()->render() : "*";
    return "(" + first().render() + ", " + second().render() + ")";
}

ResultShape result_shape(const Schema& schema, const Query& q) {
    return std::visit(
        [&](const auto& node) -> ResultShape {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Query::InclNode>) {
                schema.index_of(node.label);
                return ResultShape::component(node.label);
            } else if constexpr (std::is_same_v<T, Query::ExclNode>) {
                schema.index_of(node.label);
                return ResultShape::unit();
            } else if constexpr (std::is_same_v<T, Query::AnywayNode>) {
                schema.index_of(node.label);
                return ResultShape::optional(node.label);
            } else {
                return ResultShape::pair(result_shape(schema, node.left),
                                         result_shape(schema, node.right));
            }
        },
        q.node());
}

std::vector<ResultShape> result_shape(const Schema& schema, const QueryVector& qv) {
    std::vector<ResultShape> shapes;
    shapes.reserve(qv.dim());
    for (const Query& q : qv.queries()) {
        shapes.push_back(result_shape(schema, q));
    }
    return shapes;
}

std::map<EntityId, ComponentResult> eval_query(const WorldState& c, const Query& q) {
    return std::visit(
        [&](const auto& node) -> std::map<EntityId, ComponentResult> {
            using T = std::decay_t<decltype(node)>;
            std::map<EntityId, ComponentResult> out;
            if constexpr (std::is_same_v<T, Query::InclNode>) {
                for (const auto& [e, value] : c.store(node.label)) {
                    out.emplace(e, ComponentResult::value(value));
                }
            } else if constexpr (std::is_same_v<T, Query::ExclNode>) {
                c.schema().index_of(node.label);
                const auto& store = c.store(node.label);
                for (EntityId e : c.live_entities()) {
                    if (store.count(e) == 0) out.emplace(e, ComponentResult::unit());
                }
            } else if constexpr (std::is_same_v<T, Query::AnywayNode>) {
                const auto& store = c.store(node.label);
                for (EntityId e : c.live_entities()) {
                    auto it = store.find(e);
                    out.emplace(e, ComponentResult::optional(
                                       it == store.end() ? std::nullopt
                                                         : std::optional<ComponentValue>(it->second)));
                }
            } else {
                // Conjunction joins on the entity: keep entities present in
                // both sides and pair their results.
                auto left = eval_query(c, node.left);
                auto right = eval_query(c, node.right);
                for (const auto& [e, lv] : left) {
                    auto it = right.find(e);
                    if (it != right.end()) {
                        out.emplace(e, ComponentResult::pair(lv, it->second));
                    }
                }
            }
            return out;
        },
        q.node());
}

std::vector<EntityMatch> eval_query_vector(const WorldState& c, const QueryVector& qv) {
    std::vector<std::map<EntityId, ComponentResult>> factors;
    factors.reserve(qv.dim());
    for (const Query& q : qv.queries()) {
        factors.push_back(eval_query(c, q));
    }

    std::vector<EntityMatch> matches;
    EntityMatch current;
    current.entities.resize(qv.dim(), EntityId{0});
    current.results.reserve(qv.dim());

    // Nested iteration over ordered maps yields the lexicographic order of
    // entity vectors directly.
    auto product = [&](auto&& self, std::size_t j) -> void {
        if (j == factors.size()) {
            matches.push_back(current);
            return;
        }
        for (const auto& [e, result] : factors[j]) {
            current.entities[j] = e;
            current.results.push_back(result);
            self(self, j + 1);
            current.results.pop_back();
        }
    };
    product(product, 0);
    return matches;
}

}  // namespace coreecs
