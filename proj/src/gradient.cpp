#include "circkit/gradient.hpp"

#include <optional>

#include "circkit/circuit_ops.hpp"
#include "circkit/errors.hpp"
#include "work_graph.hpp"

namespace circkit {

namespace {

// Adjoint of a forward node: zero, a constant, or scale * (some node).
struct Adjoint {
  enum class Kind { Zero, Const, Node } kind = Kind::Zero;
  Scalar value;  // the constant, or the scale of `node`
  NodeId node = 0;
};

struct Term {
  Scalar scale;
  std::optional<NodeId> node;  // empty: constant term
};

}  // namespace

GradientResult gradient_circuit(const Circuit& c, const std::vector<std::string>& wrt) {
  if (c.outputs().size() != 1) throw MultipleOutputs("gradient needs exactly one output");
  if (metrics(c).fanin > 2) throw FaninTooLarge("gradient needs fanin at most 2; binarize first");
  std::vector<NodeId> wrt_nodes;
  for (const auto& name : wrt) {
    auto v = c.find(name);
    if (!v || c.node(*v).kind != NodeKind::Input) throw UnknownVariable("`" + name + "` is not an input of the circuit");
    wrt_nodes.push_back(*v);
  }

  auto g = detail::WorkGraph::from(c);
  const Field f = c.field();
  const Scalar one = g.one();
  std::optional<NodeId> one_gate;
  auto constant_node = [&]() {
    if (!one_gate) one_gate = g.add_node(NodeKind::One);
    return *one_gate;
  };

  std::vector<std::vector<Term>> terms(c.node_count());
  std::vector<Adjoint> adj(c.node_count());

  auto settle = [&](NodeId v) {
    Adjoint a;
    Scalar constant(mpq_class(0), f);
    std::vector<Term> nodes;
    for (auto& t : terms[v]) {
      if (t.node) {
        nodes.push_back(t);
      } else {
        constant += t.scale;
      }
    }
    if (nodes.empty()) {
      if (!constant.is_zero()) a = Adjoint{Adjoint::Kind::Const, constant, 0};
    } else if (nodes.size() == 1 && constant.is_zero()) {
      a = Adjoint{Adjoint::Kind::Node, nodes[0].scale, *nodes[0].node};
    } else {
      const NodeId s = g.add_node(NodeKind::Sum);
      for (const auto& t : nodes) g.add_edge(*t.node, s, t.scale);
      if (!constant.is_zero()) g.add_edge(constant_node(), s, constant);
      a = Adjoint{Adjoint::Kind::Node, one, s};
    }
    terms[v].clear();
    return a;
  };

  const NodeId root = c.outputs().front();
  adj[root] = Adjoint{Adjoint::Kind::Const, one, 0};
  for (NodeId v = static_cast<NodeId>(c.node_count()); v-- > 0;) {
    if (v != root) adj[v] = settle(v);
    const Adjoint& a = adj[v];
    if (a.kind == Adjoint::Kind::Zero) continue;
    const auto in = c.in_edges(v);
    const auto kind = c.node(v).kind;
    for (std::size_t k = 0; k < in.size(); ++k) {
      const auto& e = c.edges()[in[k]];
      if (kind == NodeKind::Sum || in.size() == 1) {
        // d(parent)/d(child) is the constant label.
        if (a.kind == Adjoint::Kind::Const) {
          terms[e.from].push_back(Term{e.label * a.value, std::nullopt});
        } else {
          terms[e.from].push_back(Term{e.label * a.value, a.node});
        }
        continue;
      }
      // Product of two factors: d(parent)/d(child) = both labels times the sibling.
      const auto& sib = c.edges()[in[1 - k]];
      const Scalar scale = e.label * sib.label * a.value;
      if (a.kind == Adjoint::Kind::Const) {
        terms[e.from].push_back(Term{scale, sib.from});
      } else {
        const NodeId t = g.add_node(NodeKind::Product);
        g.add_edge(sib.from, t, one);
        g.add_edge(a.node, t, one);
        terms[e.from].push_back(Term{scale, t});
      }
    }
  }

  g.outputs.clear();
  for (NodeId x : wrt_nodes) {
    const NodeId out = g.add_node(NodeKind::Sum);
    const Adjoint& a = adj[x];
    if (a.kind == Adjoint::Kind::Const) g.add_edge(constant_node(), out, a.value);
    if (a.kind == Adjoint::Kind::Node) g.add_edge(a.node, out, a.value);
    g.outputs.push_back(out);
  }
  g.sweep();

  GradientResult r;
  r.circuit = g.to_circuit();
  r.size = r.circuit.size();
  r.source_size = c.size();
  r.within_bound = r.size < 5 * r.source_size;
  return r;
}

}  // namespace circkit
