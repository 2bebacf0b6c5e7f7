#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coreecs/entity.hpp"
#include "coreecs/state.hpp"
#include "coreecs/value.hpp"

namespace coreecs {

/// A single-entity query: constraints on which components an entity has,
/// combined by conjunction.
class Query {
  public:
    static Query incl(ComponentLabel label);
    static Query excl(ComponentLabel label);
    static Query anyway(ComponentLabel label);
    static Query conj(Query left, Query right);

    struct InclNode;
    struct ExclNode;
    struct AnywayNode;
    struct AndNode;

    using Node = std::variant<InclNode, ExclNode, AnywayNode, AndNode>;

    const Node& node() const;

    std::string render() const;

  private:
    explicit Query(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct Query::InclNode {
    ComponentLabel label;
};
struct Query::ExclNode {
    ComponentLabel label;
};
struct Query::AnywayNode {
    ComponentLabel label;
};
struct Query::AndNode {
    Query left;
    Query right;
};

inline const Query::Node& Query::node() const { return *node_; }

/// A nonempty sequence of queries; a system's input is one entity per
/// element. Zero-dimensional vectors are rejected at construction.
class QueryVector {
  public:
    explicit QueryVector(std::vector<Query> queries);
    QueryVector(std::initializer_list<Query> queries);

    std::size_t dim() const { return queries_.size(); }
    const Query& at(std::size_t j) const { return queries_[j]; }
    const std::vector<Query>& queries() const { return queries_; }

  private:
    std::vector<Query> queries_;
};

/// The shape of a query's result: mirrors the query tree.
class ResultShape {
  public:
    static ResultShape component(ComponentLabel label);
    static ResultShape unit();
    static ResultShape optional(ComponentLabel label);
    static ResultShape pair(ResultShape first, ResultShape second);

    struct ComponentSlot;
    struct UnitSlot;
    struct OptionalSlot;
    struct PairSlot;

    using Node = std::variant<ComponentSlot, UnitSlot, OptionalSlot, PairSlot>;

    const Node& node() const;

    /// Labels whose component values can appear in results of this shape.
    /// Excluded labels contribute no value and are not collected.
    std::vector<ComponentLabel> value_labels() const;

    bool operator==(const ResultShape& other) const;

  private:
    explicit ResultShape(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct ResultShape::ComponentSlot {
    ComponentLabel label;
};
struct ResultShape::UnitSlot {};
struct ResultShape::OptionalSlot {
    ComponentLabel label;
};
struct ResultShape::PairSlot {
    ResultShape first;
    ResultShape second;
};

inline const ResultShape::Node& ResultShape::node() const { return *node_; }

/// A value tree conforming to a ResultShape.
class ComponentResult {
  public:
    static ComponentResult value(ComponentValue v);
    static ComponentResult unit();
    static ComponentResult optional(std::optional<ComponentValue> v);
    static ComponentResult pair(ComponentResult first, ComponentResult second);

    bool is_value() const;
    bool is_unit() const;
    bool is_optional() const;
    bool is_pair() const;

    const ComponentValue& as_value() const;
    const std::optional<ComponentValue>& as_optional() const;
    const ComponentResult& first() const;
    const ComponentResult& second() const;

    bool conforms_to(const ResultShape& shape) const;

    bool operator==(const ComponentResult& other) const;

    std::string render() const;

  private:
    struct PairNode;
    using Node = std::variant<ComponentValue, Unit, std::optional<ComponentValue>,
                              std::shared_ptr<const PairNode>>;

    explicit ComponentResult(Node node) : node_(std::move(node)) {}

    Node node_;
};

struct ComponentResult::PairNode {
    ComponentResult first;
    ComponentResult second;
};

/// One element of a query vector's result: an entity per query paired with
/// that query's component result.
struct EntityMatch {
    std::vector<EntityId> entities;
    std::vector<ComponentResult> results;

    bool operator==(const EntityMatch& other) const {
        return entities == other.entities && results == other.results;
    }
};

/// Shape of a single query's results. Throws SchemaError on unknown labels.
ResultShape result_shape(const Schema& schema, const Query& q);

/// Shapes of a query vector's results, one per element.
std::vector<ResultShape> result_shape(const Schema& schema, const QueryVector& qv);

/// Evaluates a query against a state, yielding the matching live entities
/// and their component results, keyed ascending.
std::map<EntityId, ComponentResult> eval_query(const WorldState& c, const Query& q);

/// Cartesian product of the per-query results, sorted ascending by the
/// lexicographic order of entity vectors.
std::vector<EntityMatch> eval_query_vector(const WorldState& c, const QueryVector& qv);

}  // namespace coreecs
