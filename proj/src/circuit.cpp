#include "circkit/circuit.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "circkit/errors.hpp"

namespace circkit {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Input: return "input";
    case NodeKind::One: return "one";
    case NodeKind::Sum: return "sum";
    case NodeKind::Product: return "product";
  }
  return "?";
}

Circuit::Circuit(Field field, std::vector<Node> nodes, std::vector<Edge> edges, std::vector<NodeId> outputs)
    : field_(field) {
  const std::size_t n = nodes.size();
  for (const auto& e : edges) {
    if (e.from >= n || e.to >= n) throw DanglingReference("edge refers to a missing node");
    if (e.label.field() != field) throw FieldMismatch("edge label over a different field");
  }
  for (NodeId o : outputs) {
    if (o >= n) throw DanglingReference("output refers to a missing node");
  }
  {
    std::unordered_set<NodeId> seen;
    for (NodeId o : outputs) {
      if (!seen.insert(o).second) throw InvalidCircuit("node listed twice as output: " + nodes[o].name);
    }
  }

  // Drop zero-labelled edges into sums; a zero factor of a product cannot be
  // expressed by edge absence.
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (auto& e : edges) {
    if (e.label.is_zero()) {
      if (nodes[e.to].kind == NodeKind::Product) throw InvalidCircuit("zero label on an edge into a product");
      continue;
    }
    kept.push_back(std::move(e));
  }
  edges = std::move(kept);

  std::vector<std::vector<std::uint32_t>> out(n);
  std::vector<std::uint32_t> indeg(n, 0);
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    out[edges[i].from].push_back(i);
    ++indeg[edges[i].to];
  }
  for (NodeId v = 0; v < n; ++v) {
    if ((nodes[v].kind == NodeKind::Input || nodes[v].kind == NodeKind::One) && indeg[v] != 0) {
      throw InvalidCircuit(std::string(to_string(nodes[v].kind)) + " gate `" + nodes[v].name + "` has incoming edges");
    }
  }
  for (NodeId o : outputs) {
    if (!out[o].empty()) throw InvalidCircuit("output `" + nodes[o].name + "` feeds another node");
  }

  // Stable topological order: among ready nodes, the smallest old index first.
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  std::vector<std::uint32_t> pending = indeg;
  for (NodeId v = 0; v < n; ++v) {
    if (pending[v] == 0) ready.push(v);
  }
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (auto ei : out[v]) {
      if (--pending[edges[ei].to] == 0) ready.push(edges[ei].to);
    }
  }
  if (order.size() != n) throw CycleDetected("circuit graph has a directed cycle");
  std::vector<NodeId> rank(n);
  for (NodeId i = 0; i < n; ++i) rank[order[i]] = i;

  // Names: inputs must be named; other nodes get fresh names on demand.
  std::unordered_set<std::string> used;
  for (const auto& node : nodes) {
    if (node.name.empty()) {
      if (node.kind == NodeKind::Input) throw InvalidCircuit("input gate without a variable name");
      continue;
    }
    if (!used.insert(node.name).second) throw InvalidCircuit("duplicate node name `" + node.name + "`");
  }
  nodes_.resize(n);
  for (NodeId old = 0; old < n; ++old) {
    Node node = std::move(nodes[old]);
    if (node.name.empty()) {
      std::string candidate = "g" + std::to_string(rank[old]);
      while (used.count(candidate) != 0) candidate += "_";
      used.insert(candidate);
      node.name = std::move(candidate);
    }
    nodes_[rank[old]] = std::move(node);
  }

  std::vector<std::uint32_t> perm(edges.size());
  for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return rank[edges[a].to] < rank[edges[b].to]; });
  edges_.reserve(edges.size());
  for (auto i : perm) {
    edges_.push_back(Edge{rank[edges[i].from], rank[edges[i].to], edges[i].label});
  }
  outputs_.reserve(outputs.size());
  for (NodeId o : outputs) outputs_.push_back(rank[o]);

  in_offsets_.assign(n + 1, 0);
  out_offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++in_offsets_[e.to + 1];
    ++out_offsets_[e.from + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    in_offsets_[v + 1] += in_offsets_[v];
    out_offsets_[v + 1] += out_offsets_[v];
  }
  in_index_.resize(edges_.size());
  out_index_.resize(edges_.size());
  std::vector<std::uint32_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  std::vector<std::uint32_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    in_index_[in_fill[edges_[i].to]++] = i;
    out_index_[out_fill[edges_[i].from]++] = i;
  }
}

std::span<const std::uint32_t> Circuit::in_edges(NodeId v) const {
  return {in_index_.data() + in_offsets_.at(v), in_index_.data() + in_offsets_.at(v + 1)};
}

std::span<const std::uint32_t> Circuit::out_edges(NodeId v) const {
  return {out_index_.data() + out_offsets_.at(v), out_index_.data() + out_offsets_.at(v + 1)};
}

bool Circuit::is_output(NodeId v) const {
  return std::find(outputs_.begin(), outputs_.end(), v) != outputs_.end();
}

std::vector<std::string> Circuit::variables() const {
  std::vector<std::string> vars;
  for (const auto& node : nodes_) {
    if (node.kind == NodeKind::Input) vars.push_back(node.name);
  }
  return vars;
}

std::optional<NodeId> Circuit::find(const std::string& name) const {
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (nodes_[v].name == name) return v;
  }
  return std::nullopt;
}

NodeId CircuitBuilder::add(NodeKind kind, std::string name) {
  nodes_.push_back(Node{kind, std::move(name)});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId CircuitBuilder::input(std::string name) { return add(NodeKind::Input, std::move(name)); }
NodeId CircuitBuilder::one(std::string name) { return add(NodeKind::One, std::move(name)); }
NodeId CircuitBuilder::sum(std::string name) { return add(NodeKind::Sum, std::move(name)); }
NodeId CircuitBuilder::product(std::string name) { return add(NodeKind::Product, std::move(name)); }

NodeId CircuitBuilder::sum(const std::vector<std::pair<Scalar, NodeId>>& children, std::string name) {
  NodeId v = sum(std::move(name));
  for (const auto& [label, child] : children) edge(child, v, label);
  return v;
}

NodeId CircuitBuilder::product(const std::vector<std::pair<Scalar, NodeId>>& children, std::string name) {
  NodeId v = product(std::move(name));
  for (const auto& [label, child] : children) edge(child, v, label);
  return v;
}

NodeId CircuitBuilder::product(const std::vector<NodeId>& children, std::string name) {
  NodeId v = product(std::move(name));
  for (NodeId child : children) edge(child, v);
  return v;
}

void CircuitBuilder::edge(NodeId from, NodeId to, const Scalar& label) {
  edges_.push_back(Edge{from, to, label});
}

}  // namespace circkit
