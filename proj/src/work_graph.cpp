#include "work_graph.hpp"

#include <algorithm>
#include <queue>

#include "circkit/errors.hpp"

namespace circkit::detail {

WorkGraph WorkGraph::from(const Circuit& c) {
  WorkGraph g(c.field());
  g.nodes = c.nodes();
  g.alive.assign(g.nodes.size(), 1);
  for (const auto& e : c.edges()) g.edges.push_back(WorkEdge{e.from, e.to, e.label, true});
  g.outputs = c.outputs();
  return g;
}

NodeId WorkGraph::add_node(NodeKind kind, std::string name) {
  nodes.push_back(Node{kind, std::move(name)});
  alive.push_back(1);
  return static_cast<NodeId>(nodes.size() - 1);
}

std::size_t WorkGraph::add_edge(NodeId from, NodeId to, const Scalar& label) {
  edges.push_back(WorkEdge{from, to, label, true});
  return edges.size() - 1;
}

std::vector<std::vector<std::size_t>> WorkGraph::in_lists() const {
  std::vector<std::vector<std::size_t>> in(nodes.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].alive) in[edges[i].to].push_back(i);
  }
  return in;
}

std::vector<std::vector<std::size_t>> WorkGraph::out_lists() const {
  std::vector<std::vector<std::size_t>> out(nodes.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].alive) out[edges[i].from].push_back(i);
  }
  return out;
}

std::vector<NodeId> WorkGraph::topo_order() const {
  const auto out = out_lists();
  std::vector<std::size_t> pending(nodes.size(), 0);
  for (const auto& e : edges) {
    if (e.alive) ++pending[e.to];
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId v = 0; v < nodes.size(); ++v) {
    if (alive[v] && pending[v] == 0) ready.push(v);
  }
  std::vector<NodeId> order;
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (auto ei : out[v]) {
      if (--pending[edges[ei].to] == 0) ready.push(edges[ei].to);
    }
  }
  return order;
}

std::vector<char> WorkGraph::output_flags() const {
  std::vector<char> flags(nodes.size(), 0);
  for (NodeId o : outputs) flags[o] = 1;
  return flags;
}

void WorkGraph::kill_node(NodeId v) {
  alive[v] = 0;
  for (auto& e : edges) {
    if (e.alive && (e.from == v || e.to == v)) e.alive = false;
  }
}

void WorkGraph::prune_zeros(const std::vector<char>& seed) {
  std::vector<char> zero(nodes.size(), 0);
  for (std::size_t v = 0; v < seed.size() && v < nodes.size(); ++v) zero[v] = seed[v];
  const auto in = in_lists();
  const auto is_out = output_flags();
  for (NodeId v : topo_order()) {
    if (!zero[v] && (nodes[v].kind == NodeKind::Sum || nodes[v].kind == NodeKind::Product)) {
      std::size_t live = 0;
      for (auto ei : in[v]) {
        auto& e = edges[ei];
        if (!e.alive) continue;
        if (zero[e.from] || e.label.is_zero()) {
          if (nodes[v].kind == NodeKind::Product) {
            zero[v] = 1;
            break;
          }
          e.alive = false;
        } else {
          ++live;
        }
      }
      if (nodes[v].kind == NodeKind::Sum && live == 0) zero[v] = 1;
    }
    if (!zero[v]) continue;
    for (auto ei : in[v]) edges[ei].alive = false;
    if (is_out[v]) {
      nodes[v].kind = NodeKind::Sum;
    } else {
      alive[v] = 0;
    }
  }
  for (auto& e : edges) {
    if (e.alive && (zero[e.from] || !alive[e.from])) e.alive = false;
  }
}

void WorkGraph::sweep() {
  const auto in = in_lists();
  std::vector<char> reach(nodes.size(), 0);
  std::vector<NodeId> stack;
  for (NodeId o : outputs) {
    if (!reach[o]) {
      reach[o] = 1;
      stack.push_back(o);
    }
  }
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (auto ei : in[v]) {
      NodeId u = edges[ei].from;
      if (!reach[u]) {
        reach[u] = 1;
        stack.push_back(u);
      }
    }
  }
  for (NodeId v = 0; v < nodes.size(); ++v) {
    if (alive[v] && !reach[v] && nodes[v].kind != NodeKind::Input) alive[v] = 0;
  }
  for (auto& e : edges) {
    if (e.alive && (!alive[e.from] || !alive[e.to])) e.alive = false;
  }
}

Circuit WorkGraph::to_circuit() const {
  std::vector<NodeId> remap(nodes.size(), 0);
  std::vector<Node> out_nodes;
  for (NodeId v = 0; v < nodes.size(); ++v) {
    if (!alive[v]) continue;
    remap[v] = static_cast<NodeId>(out_nodes.size());
    out_nodes.push_back(nodes[v]);
  }
  std::vector<Edge> out_edges;
  for (const auto& e : edges) {
    if (!e.alive) continue;
    if (!alive[e.from] || !alive[e.to]) throw InvalidCircuit("internal: live edge at a deleted node");
    out_edges.push_back(Edge{remap[e.from], remap[e.to], e.label});
  }
  std::vector<NodeId> outs;
  for (NodeId o : outputs) {
    if (!alive[o]) throw InvalidCircuit("internal: deleted output");
    outs.push_back(remap[o]);
  }
  return Circuit(field, std::move(out_nodes), std::move(out_edges), std::move(outs));
}

}  // namespace circkit::detail
