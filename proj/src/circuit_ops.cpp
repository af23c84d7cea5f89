#include "circkit/circuit_ops.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "circkit/errors.hpp"
#include "work_graph.hpp"

namespace circkit {

Metrics metrics(const Circuit& c) {
  Metrics m;
  m.size = c.size();
  std::vector<std::size_t> depth(c.node_count(), 0);
  for (NodeId v = 0; v < c.node_count(); ++v) {
    m.fanin = std::max(m.fanin, c.in_degree(v));
    for (auto ei : c.in_edges(v)) depth[v] = std::max(depth[v], depth[c.edges()[ei].from] + 1);
    m.depth = std::max(m.depth, depth[v]);
  }
  return m;
}

std::vector<std::uint64_t> syntactic_degree(const Circuit& c) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> deg(c.node_count(), 0);
  for (NodeId v = 0; v < c.node_count(); ++v) {
    switch (c.node(v).kind) {
      case NodeKind::One: deg[v] = 0; break;
      case NodeKind::Input: deg[v] = 1; break;
      case NodeKind::Sum:
        for (auto ei : c.in_edges(v)) deg[v] = std::max(deg[v], deg[c.edges()[ei].from]);
        break;
      case NodeKind::Product:
        for (auto ei : c.in_edges(v)) {
          const auto d = deg[c.edges()[ei].from];
          deg[v] = (kMax - deg[v] < d) ? kMax : deg[v] + d;
        }
        break;
    }
  }
  return deg;
}

std::vector<Scalar> evaluate(const Circuit& c, const std::map<std::string, Scalar>& point) {
  const Scalar one(mpq_class(1), c.field());
  std::vector<Scalar> val(c.node_count());
  for (NodeId v = 0; v < c.node_count(); ++v) {
    const auto& node = c.node(v);
    switch (node.kind) {
      case NodeKind::Input: {
        auto it = point.find(node.name);
        if (it == point.end()) throw MissingVariable("no value for variable `" + node.name + "`");
        if (it->second.field() != c.field()) throw FieldMismatch("value of `" + node.name + "` over a different field");
        val[v] = it->second;
        break;
      }
      case NodeKind::One: val[v] = one; break;
      case NodeKind::Sum:
        val[v] = Scalar(mpq_class(0), c.field());
        for (auto ei : c.in_edges(v)) val[v] += c.edges()[ei].label * val[c.edges()[ei].from];
        break;
      case NodeKind::Product:
        val[v] = one;
        for (auto ei : c.in_edges(v)) val[v] *= c.edges()[ei].label * val[c.edges()[ei].from];
        break;
    }
  }
  std::vector<Scalar> out;
  for (NodeId o : c.outputs()) out.push_back(val[o]);
  return out;
}

namespace {

void check_budget(const SparsePoly& p, std::size_t max_terms) {
  if (p.term_count() > max_terms) {
    throw BudgetExceeded("expansion exceeded the budget of " + std::to_string(max_terms) + " terms");
  }
}

}  // namespace

std::vector<SparsePoly> expand_nodes(const Circuit& c, const VarList& vars, std::size_t max_terms) {
  std::unordered_map<std::string, VarIndex> index;
  for (VarIndex i = 0; i < vars->size(); ++i) index.emplace((*vars)[i], i);
  const Field f = c.field();
  std::vector<SparsePoly> poly(c.node_count(), SparsePoly(vars, f));
  for (NodeId v = 0; v < c.node_count(); ++v) {
    const auto& node = c.node(v);
    switch (node.kind) {
      case NodeKind::Input: {
        auto it = index.find(node.name);
        if (it == index.end()) throw UnknownVariable("circuit input `" + node.name + "` is not in the variable list");
        poly[v].add_term(Monomial::variable(it->second), Scalar(mpq_class(1), f));
        break;
      }
      case NodeKind::One: poly[v].add_term(Monomial(), Scalar(mpq_class(1), f)); break;
      case NodeKind::Sum:
        for (auto ei : c.in_edges(v)) {
          const auto& e = c.edges()[ei];
          poly[v] += poly[e.from] * e.label;
          check_budget(poly[v], max_terms);
        }
        break;
      case NodeKind::Product:
        poly[v].add_term(Monomial(), Scalar(mpq_class(1), f));
        for (auto ei : c.in_edges(v)) {
          const auto& e = c.edges()[ei];
          poly[v] = poly[v] * (poly[e.from] * e.label);
          check_budget(poly[v], max_terms);
        }
        break;
    }
  }
  return poly;
}

std::vector<SparsePoly> expand(const Circuit& c, const VarList& vars, std::size_t max_terms) {
  auto all = expand_nodes(c, vars, max_terms);
  std::vector<SparsePoly> out;
  for (NodeId o : c.outputs()) out.push_back(std::move(all[o]));
  return out;
}

std::vector<SparsePoly> expand(const Circuit& c, std::size_t max_terms) {
  return expand(c, make_vars(c.variables()), max_terms);
}

Circuit substitute(const Circuit& c, const std::map<std::string, Scalar>& assignment) {
  if (assignment.empty()) return c;
  for (const auto& [name, value] : assignment) {
    if (std::none_of(c.nodes().begin(), c.nodes().end(),
                     [&](const Node& n) { return n.kind == NodeKind::Input && n.name == name; })) {
      throw UnknownVariable("`" + name + "` is not an input of the circuit");
    }
  }
  auto g = detail::WorkGraph::from(c);
  const auto is_out = g.output_flags();
  const auto out = g.out_lists();
  std::vector<char> zero(g.nodes.size(), 0);
  bool any_zero = false;
  for (NodeId v = 0; v < g.nodes.size(); ++v) {
    if (g.nodes[v].kind != NodeKind::Input) continue;
    auto it = assignment.find(g.nodes[v].name);
    if (it == assignment.end()) continue;
    const Scalar& value = it->second;
    if (value.field() != c.field()) throw FieldMismatch("assigned value for `" + it->first + "` over a different field");
    g.nodes[v].kind = NodeKind::One;
    if (value.is_zero()) {
      zero[v] = 1;
      any_zero = true;
      continue;
    }
    if (is_out[v] && !value.is_one()) {
      // An output carries no outgoing label, so the constant needs its own edge.
      const NodeId s = g.add_node(NodeKind::Sum);
      g.add_edge(v, s, value);
      std::replace(g.outputs.begin(), g.outputs.end(), v, s);
      continue;
    }
    for (auto ei : out[v]) g.edges[ei].label *= value;
  }
  if (any_zero) g.prune_zeros(zero);
  return g.to_circuit();
}

Circuit remove_dead(const Circuit& c) {
  auto g = detail::WorkGraph::from(c);
  g.sweep();
  return g.to_circuit();
}

}  // namespace circkit
