#pragma once

// Mutable circuit used inside transformations. Nodes and edges are only ever
// marked dead, never erased, so ids stay stable while a pass runs;
// to_circuit() compacts and canonicalizes.

#include <cstddef>
#include <string>
#include <vector>

#include "circkit/circuit.hpp"

namespace circkit::detail {

struct WorkEdge {
  NodeId from = 0;
  NodeId to = 0;
  Scalar label;
  bool alive = true;
};

class WorkGraph {
 public:
  explicit WorkGraph(Field f) : field(f) {}
  static WorkGraph from(const Circuit& c);

  NodeId add_node(NodeKind kind, std::string name = {});
  std::size_t add_edge(NodeId from, NodeId to, const Scalar& label);
  Scalar one() const { return Scalar(mpq_class(1), field); }
  Scalar zero() const { return Scalar(mpq_class(0), field); }

  std::vector<std::vector<std::size_t>> in_lists() const;
  std::vector<std::vector<std::size_t>> out_lists() const;
  /// Live nodes, children before parents.
  std::vector<NodeId> topo_order() const;
  std::vector<char> output_flags() const;
  void kill_node(NodeId v);

  /// Propagates zeros: zero-labelled edges into sums vanish, a product with a
  /// zero factor is zero, a sum left without children is zero. Zero nodes
  /// lose their edges; zero outputs become childless sums, other zero nodes
  /// are deleted. `seed` marks nodes known to be zero up front.
  void prune_zeros(const std::vector<char>& seed = {});
  /// Deletes non-input nodes with no path to an output.
  void sweep();

  Circuit to_circuit() const;

  Field field;
  std::vector<Node> nodes;
  std::vector<char> alive;
  std::vector<WorkEdge> edges;
  std::vector<NodeId> outputs;
};

}  // namespace circkit::detail
