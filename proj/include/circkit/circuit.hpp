#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "circkit/scalar.hpp"

namespace circkit {

using NodeId = std::uint32_t;

enum class NodeKind { Input, One, Sum, Product };

const char* to_string(NodeKind kind);

struct Node {
  NodeKind kind = NodeKind::Sum;
  /// Unique node name; for inputs it is also the variable name.
  std::string name;
  friend bool operator==(const Node&, const Node&) = default;
};

/// Directed child -> parent edge; the parent sees `label` times the child.
struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  Scalar label;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// An arithmetic circuit: a labelled DAG of input, one, sum and product
/// gates with designated outputs. Parallel edges are allowed (a product with
/// the same child twice squares it).
///
/// Construction validates and canonicalizes: nodes are renumbered in a stable
/// topological order, edges are grouped by target node, unnamed nodes receive
/// fresh names, and zero-labelled edges into sums are dropped. Instances are
/// immutable.
class Circuit {
 public:
  Circuit() = default;
  Circuit(Field field, std::vector<Node> nodes, std::vector<Edge> edges, std::vector<NodeId> outputs);

  Field field() const { return field_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId v) const { return nodes_.at(v); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<NodeId>& outputs() const { return outputs_; }
  std::size_t node_count() const { return nodes_.size(); }
  /// Number of edges.
  std::size_t size() const { return edges_.size(); }

  /// Indices into edges() of the edges entering v, in order.
  std::span<const std::uint32_t> in_edges(NodeId v) const;
  /// Indices into edges() of the edges leaving v.
  std::span<const std::uint32_t> out_edges(NodeId v) const;
  std::size_t in_degree(NodeId v) const { return in_edges(v).size(); }
  std::size_t out_degree(NodeId v) const { return out_edges(v).size(); }
  bool is_output(NodeId v) const;

  /// Input variable names in node order.
  std::vector<std::string> variables() const;
  std::optional<NodeId> find(const std::string& name) const;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.field_ == b.field_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.outputs_ == b.outputs_;
  }

 private:
  Field field_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<NodeId> outputs_;
  std::vector<std::uint32_t> in_offsets_;
  std::vector<std::uint32_t> in_index_;
  std::vector<std::uint32_t> out_offsets_;
  std::vector<std::uint32_t> out_index_;
};

/// Incremental construction of a Circuit.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(Field field = Field::rational()) : field_(field) {}

  NodeId input(std::string name);
  NodeId one(std::string name = {});
  NodeId sum(std::string name = {});
  NodeId product(std::string name = {});
  NodeId sum(const std::vector<std::pair<Scalar, NodeId>>& children, std::string name = {});
  NodeId product(const std::vector<std::pair<Scalar, NodeId>>& children, std::string name = {});
  NodeId product(const std::vector<NodeId>& children, std::string name = {});
  void edge(NodeId from, NodeId to, const Scalar& label);
  void edge(NodeId from, NodeId to) { edge(from, to, Scalar(mpq_class(1), field_)); }
  void output(NodeId v) { outputs_.push_back(v); }

  Field field() const { return field_; }
  Scalar one_scalar() const { return Scalar(mpq_class(1), field_); }

  Circuit build() const { return Circuit(field_, nodes_, edges_, outputs_); }

 private:
  NodeId add(NodeKind kind, std::string name);

  Field field_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<NodeId> outputs_;
};

}  // namespace circkit
