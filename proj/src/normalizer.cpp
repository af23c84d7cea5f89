#include "circkit/normalizer.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <random>
#include <set>

#include "circkit/errors.hpp"
#include "work_graph.hpp"

namespace circkit {

std::size_t GateCensus::n_plus(std::uint64_t j) const {
  auto it = by_degree.find(j);
  return it == by_degree.end() ? 0 : it->second.n_plus;
}

std::size_t GateCensus::n_times(std::uint64_t j) const {
  auto it = by_degree.find(j);
  return it == by_degree.end() ? 0 : it->second.n_times;
}

GateCensus gate_census(const Circuit& c) {
  GateCensus census;
  const auto deg = syntactic_degree(c);
  for (NodeId v = 0; v < c.node_count(); ++v) {
    switch (c.node(v).kind) {
      case NodeKind::One: ++census.one_gates; continue;
      case NodeKind::Sum: ++census.by_degree[deg[v]].n_plus; break;
      case NodeKind::Input:
      case NodeKind::Product: ++census.by_degree[deg[v]].n_times; break;
    }
    ++census.total;
  }
  return census;
}

CensusBounds census_bounds(const GateCensus& census, std::size_t s, unsigned r) {
  CensusBounds b;
  b.s = s;
  b.r = r;
  b.n_times_max = 8ULL * s;
  b.n_max = 24ULL * s * r;
  b.low_plus_max = r >= 1 ? 16ULL * s * (r - 1) : 0;
  b.n_times_ok = true;
  b.per_degree_plus_ok = true;
  std::uint64_t low_plus = 0;
  for (const auto& [j, count] : census.by_degree) {
    if (count.n_times > b.n_times_max) b.n_times_ok = false;
    if (count.n_plus > 8ULL * s) {
      b.per_degree_plus_ok = false;
      b.per_degree_plus_failures.push_back(j);
    }
    if (j >= 1 && j < r) low_plus += count.n_plus;
  }
  // For r = 1 the range is empty and the strict bound reads 0 < 0.
  b.low_plus_ok = r <= 1 ? low_plus == 0 : low_plus < b.low_plus_max;
  b.n_ok = census.total <= b.n_max;
  b.ok = b.n_times_ok && b.n_ok;
  return b;
}

namespace {

using detail::WorkGraph;

std::vector<std::uint64_t> work_degrees(const WorkGraph& g) {
  const auto in = g.in_lists();
  std::vector<std::uint64_t> deg(g.nodes.size(), 0);
  for (NodeId v : g.topo_order()) {
    switch (g.nodes[v].kind) {
      case NodeKind::One: deg[v] = 0; break;
      case NodeKind::Input: deg[v] = 1; break;
      case NodeKind::Sum:
        for (auto ei : in[v]) deg[v] = std::max(deg[v], deg[g.edges[ei].from]);
        break;
      case NodeKind::Product:
        for (auto ei : in[v]) deg[v] += deg[g.edges[ei].from];
        break;
    }
  }
  return deg;
}

bool is_gate(NodeKind k) { return k == NodeKind::Sum || k == NodeKind::Product; }

// Step 1: a non-output gate with a single child is replaced by that child.
void splice_unary(WorkGraph& g) {
  const auto in = g.in_lists();
  const auto out = g.out_lists();
  const auto is_out = g.output_flags();
  for (NodeId v : g.topo_order()) {
    if (!is_gate(g.nodes[v].kind) || is_out[v] || in[v].size() != 1) continue;
    auto& child = g.edges[in[v].front()];
    for (auto ei : out[v]) {
      g.edges[ei].from = child.from;
      g.edges[ei].label = child.label * g.edges[ei].label;
    }
    child.alive = false;
    g.alive[v] = 0;
  }
}

// Step 2: gates of in-degree k > 2 become chains of k - 1 binary gates.
void chain_wide(WorkGraph& g) {
  const auto in = g.in_lists();
  const std::size_t count = g.nodes.size();
  for (NodeId v = 0; v < count; ++v) {
    if (!g.alive[v] || !is_gate(g.nodes[v].kind) || in[v].size() <= 2) continue;
    const auto& es = in[v];
    NodeId acc = g.add_node(g.nodes[v].kind);
    g.edges[es[0]].to = acc;
    g.edges[es[1]].to = acc;
    for (std::size_t i = 2; i + 1 < es.size(); ++i) {
      const NodeId next = g.add_node(g.nodes[v].kind);
      g.add_edge(acc, next, g.one());
      g.edges[es[i]].to = next;
      acc = next;
    }
    g.add_edge(acc, v, g.one());
  }
}

WorkGraph homogenize_graph(const WorkGraph& src, unsigned r) {
  WorkGraph g(src.field);
  const auto in = src.in_lists();
  const auto is_out = src.output_flags();
  std::vector<std::vector<std::optional<NodeId>>> part(src.nodes.size(),
                                                       std::vector<std::optional<NodeId>>(r + 1));
  for (NodeId v : src.topo_order()) {
    const auto& node = src.nodes[v];
    auto& p = part[v];
    switch (node.kind) {
      case NodeKind::Input: p[1] = g.add_node(NodeKind::Input, node.name); break;
      case NodeKind::One: p[0] = g.add_node(NodeKind::One); break;
      case NodeKind::Sum:
        for (unsigned i = 0; i <= r; ++i) {
          std::vector<std::size_t> present;
          for (auto ei : in[v]) {
            if (part[src.edges[ei].from][i]) present.push_back(ei);
          }
          if (present.empty()) continue;
          const NodeId s = g.add_node(NodeKind::Sum);
          for (auto ei : present) g.add_edge(*part[src.edges[ei].from][i], s, src.edges[ei].label);
          p[i] = s;
        }
        break;
      case NodeKind::Product:
        if (in[v].empty()) {
          p[0] = g.add_node(NodeKind::One);
        } else if (in[v].size() == 1) {
          const auto& e = src.edges[in[v].front()];
          for (unsigned i = 0; i <= r; ++i) {
            if (!part[e.from][i]) continue;
            const NodeId s = g.add_node(NodeKind::Sum);
            g.add_edge(*part[e.from][i], s, e.label);
            p[i] = s;
          }
        } else {
          const auto& a = src.edges[in[v][0]];
          const auto& b = src.edges[in[v][1]];
          for (unsigned i = 0; i <= r; ++i) {
            std::vector<NodeId> products;
            for (unsigned j = 0; j <= i; ++j) {
              if (!part[a.from][j] || !part[b.from][i - j]) continue;
              const NodeId t = g.add_node(NodeKind::Product);
              g.add_edge(*part[a.from][j], t, a.label);
              g.add_edge(*part[b.from][i - j], t, b.label);
              products.push_back(t);
            }
            if (products.empty()) continue;
            if (products.size() == 1) {
              p[i] = products.front();
              continue;
            }
            const NodeId s = g.add_node(NodeKind::Sum);
            for (NodeId t : products) g.add_edge(t, s, g.one());
            p[i] = s;
          }
        }
        break;
    }
    // Keep the source name on the part an output will use.
    if (is_out[v] && p[r] && node.kind != NodeKind::Input) g.nodes[*p[r]].name = node.name;
  }
  for (NodeId o : src.outputs) {
    if (part[o][r]) {
      g.outputs.push_back(*part[o][r]);
    } else {
      g.outputs.push_back(g.add_node(NodeKind::Sum, src.nodes[o].name));
    }
  }
  return g;
}

// Step 4: nodes of syntactic degree 0 compute constants. A product with a
// constant factor is spliced away, the constant moving into edge labels.
void fold_constants(WorkGraph& g) {
  const auto deg = work_degrees(g);
  const auto in = g.in_lists();
  const auto out = g.out_lists();
  const auto is_out = g.output_flags();
  std::vector<std::optional<Scalar>> value(g.nodes.size());
  std::vector<char> zero(g.nodes.size(), 0);
  bool any_zero = false;
  for (NodeId v : g.topo_order()) {
    if (!g.alive[v]) continue;
    const auto kind = g.nodes[v].kind;
    if (deg[v] == 0) {
      Scalar x = kind == NodeKind::Sum ? g.zero() : g.one();
      for (auto ei : in[v]) {
        const auto& e = g.edges[ei];
        if (!e.alive) continue;
        if (kind == NodeKind::Sum) {
          x += e.label * *value[e.from];
        } else {
          x *= e.label * *value[e.from];
        }
      }
      value[v] = x;
      continue;
    }
    if (kind != NodeKind::Product) continue;
    // Collect the constant factor and the remaining live factors.
    Scalar factor = g.one();
    std::vector<std::size_t> rest;
    for (auto ei : in[v]) {
      const auto& e = g.edges[ei];
      if (!e.alive) continue;
      if (deg[e.from] == 0) {
        factor *= e.label * *value[e.from];
      } else {
        rest.push_back(ei);
      }
    }
    if (rest.size() == in[v].size()) continue;
    if (factor.is_zero()) {
      zero[v] = 1;
      any_zero = true;
      continue;
    }
    for (auto ei : in[v]) {
      if (deg[g.edges[ei].from] == 0) g.edges[ei].alive = false;
    }
    if (rest.size() != 1) {
      // Degree >= 1 with several factors left cannot arise from binary products.
      throw InvalidCircuit("internal: product with a constant factor and fanin > 2");
    }
    auto& child = g.edges[rest.front()];
    if (is_out[v]) {
      g.nodes[v].kind = NodeKind::Sum;
      child.label = child.label * factor;
      continue;
    }
    for (auto ei : out[v]) {
      g.edges[ei].from = child.from;
      g.edges[ei].label = factor * child.label * g.edges[ei].label;
    }
    child.alive = false;
    g.alive[v] = 0;
  }
  if (any_zero) g.prune_zeros(zero);
  for (NodeId v = 0; v < g.nodes.size(); ++v) {
    if (g.alive[v] && deg[v] == 0 && !is_out[v]) g.kill_node(v);
  }
}

// Step 5: a dummy sum between adjacent products; sums feeding sums are
// dissolved into their parents.
void alternate(WorkGraph& g) {
  const std::size_t edge_count = g.edges.size();
  for (std::size_t ei = 0; ei < edge_count; ++ei) {
    auto& e = g.edges[ei];
    if (!e.alive) continue;
    if (g.nodes[e.from].kind == NodeKind::Product && g.nodes[e.to].kind == NodeKind::Product) {
      const NodeId d = g.add_node(NodeKind::Sum);
      const NodeId parent = e.to;
      g.edges[ei].to = d;
      g.add_edge(d, parent, g.one());
    }
  }
  const auto order = g.topo_order();
  auto in = g.in_lists();
  std::vector<char> zero(g.nodes.size(), 0);
  bool any_zero = false;
  for (NodeId v : order) {
    if (g.nodes[v].kind != NodeKind::Sum) continue;
    // child -> merged label, in first-seen order
    std::vector<std::pair<NodeId, Scalar>> merged;
    auto push = [&](NodeId child, const Scalar& label) {
      for (auto& [c, l] : merged) {
        if (c == child) {
          l += label;
          return;
        }
      }
      merged.emplace_back(child, label);
    };
    bool changed = false;
    for (auto ei : in[v]) {
      const auto& e = g.edges[ei];
      if (!e.alive) continue;
      if (g.nodes[e.from].kind == NodeKind::Sum) {
        changed = true;
        for (auto fi : in[e.from]) {
          if (g.edges[fi].alive) push(g.edges[fi].from, e.label * g.edges[fi].label);
        }
      } else {
        push(e.from, e.label);
      }
    }
    if (!changed && merged.size() == in[v].size()) continue;
    for (auto ei : in[v]) g.edges[ei].alive = false;
    in[v].clear();
    for (const auto& [child, label] : merged) {
      if (label.is_zero()) continue;
      in[v].push_back(g.add_edge(child, v, label));
    }
    if (in[v].empty()) {
      zero[v] = 1;
      any_zero = true;
    }
  }
  if (any_zero) g.prune_zeros(zero);
}

// Step 6: every output that is not a sum gets a dummy sum on top.
void sum_outputs(WorkGraph& g) {
  for (auto& o : g.outputs) {
    if (g.nodes[o].kind == NodeKind::Sum) continue;
    const NodeId d = g.add_node(NodeKind::Sum);
    g.add_edge(o, d, g.one());
    if (g.nodes[o].kind != NodeKind::Input) std::swap(g.nodes[o].name, g.nodes[d].name);
    o = d;
  }
}

// Step 7: a dummy sum on every edge from an input into a product.
void shield_inputs(WorkGraph& g) {
  const std::size_t edge_count = g.edges.size();
  for (std::size_t ei = 0; ei < edge_count; ++ei) {
    if (!g.edges[ei].alive) continue;
    if (g.nodes[g.edges[ei].from].kind != NodeKind::Input || g.nodes[g.edges[ei].to].kind != NodeKind::Product) continue;
    const NodeId d = g.add_node(NodeKind::Sum);
    const NodeId parent = g.edges[ei].to;
    g.edges[ei].to = d;
    g.add_edge(d, parent, g.one());
  }
}

// Step 8: a sum with out-degree q > 1 is copied so each copy has one parent.
void split_shared_sums(WorkGraph& g) {
  const auto in = g.in_lists();
  const auto out = g.out_lists();
  const std::size_t count = g.nodes.size();
  for (NodeId v = 0; v < count; ++v) {
    if (!g.alive[v] || g.nodes[v].kind != NodeKind::Sum || out[v].size() <= 1) continue;
    for (std::size_t k = 1; k < out[v].size(); ++k) {
      const NodeId copy = g.add_node(NodeKind::Sum);
      for (auto ei : in[v]) {
        if (g.edges[ei].alive) g.add_edge(g.edges[ei].from, copy, g.edges[ei].label);
      }
      g.edges[out[v][k]].from = copy;
    }
  }
}

void require_homogeneous_outputs(const Circuit& c, unsigned r, std::size_t max_terms) {
  if (r == 0) throw DegreeZeroOutput("output degree r must be at least 1");
  try {
    const auto polys = expand(c, max_terms);
    for (std::size_t i = 0; i < polys.size(); ++i) {
      const auto& p = polys[i];
      if (p.is_zero()) continue;
      const std::string name = c.node(c.outputs()[i]).name;
      if (!p.is_homogeneous()) {
        throw NotHomogeneousOutputs("output `" + name + "` is not homogeneous (degree " + std::to_string(p.degree()) + ")");
      }
      if (p.degree() == 0) throw DegreeZeroOutput("output `" + name + "` is a nonzero constant");
      if (p.degree() != static_cast<int>(r)) {
        throw NotHomogeneousOutputs("output `" + name + "` has degree " + std::to_string(p.degree()) +
                                    ", expected " + std::to_string(r));
      }
    }
    return;
  } catch (const BudgetExceeded&) {
  }
  // Too large to expand: f(t a) = t^r f(a) at a few pseudo-random points.
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<long> coord(-50, 50);
  const auto vars = c.variables();
  for (int trial = 0; trial < 4; ++trial) {
    std::map<std::string, Scalar> a, ta;
    const Scalar t(mpq_class(trial + 2), c.field());
    for (const auto& x : vars) {
      const Scalar v(mpq_class(coord(rng)), c.field());
      a.emplace(x, v);
      ta.emplace(x, t * v);
    }
    const auto fa = evaluate(c, a);
    const auto fta = evaluate(c, ta);
    for (std::size_t i = 0; i < fa.size(); ++i) {
      if (fta[i] != t.pow(r) * fa[i]) {
        throw NotHomogeneousOutputs("output `" + c.node(c.outputs()[i]).name +
                                    "` fails the degree-" + std::to_string(r) + " scaling test");
      }
    }
  }
}

WorkGraph binarize_graph(const Circuit& c) {
  auto g = WorkGraph::from(c);
  g.prune_zeros();
  g.sweep();
  splice_unary(g);
  g.sweep();
  chain_wide(g);
  return g;
}

}  // namespace

Circuit binarize(const Circuit& c) { return binarize_graph(c).to_circuit(); }

Circuit homogenize(const Circuit& c, unsigned r) {
  if (metrics(c).fanin > 2) throw NotBinarized("homogenize needs fanin at most 2");
  auto g = homogenize_graph(WorkGraph::from(c), r);
  g.sweep();
  return g.to_circuit();
}

NormalizeResult normalize(const Circuit& c, unsigned r, const NormalizeOptions& options) {
  require_homogeneous_outputs(c, r, options.max_terms);
  NormalizeResult res;
  res.source_size = c.size();
  res.r = r;
  auto record = [&](const char* step, const WorkGraph& g) {
    if (options.trace) res.trace.emplace_back(step, g.to_circuit());
  };

  auto g = WorkGraph::from(c);
  g.prune_zeros();
  g.sweep();
  splice_unary(g);
  g.sweep();
  record("step1-splice", g);
  chain_wide(g);
  g.sweep();
  record("step2-binarize", g);
  res.binarized_size = g.to_circuit().size();

  g = homogenize_graph(g, r);
  g.sweep();
  record("step3-homogenize", g);
  fold_constants(g);
  g.sweep();
  record("step4-fold", g);
  alternate(g);
  g.sweep();
  record("step5-alternate", g);
  sum_outputs(g);
  record("step6-outputs", g);
  shield_inputs(g);
  record("step7-inputs", g);
  split_shared_sums(g);
  g.sweep();
  record("step8-split", g);

  res.circuit = g.to_circuit();
  res.census = gate_census(res.circuit);
  res.bounds = census_bounds(res.census, res.source_size, r);
  return res;
}

NormalFormReport check_normal_form(const Circuit& c, bool semantic, std::size_t max_terms) {
  NormalFormReport rep;
  auto flag = [&](int cond, NodeId v, std::string detail) {
    rep.ok = false;
    rep.violations.push_back(Violation{cond, c.node(v).name, std::move(detail)});
  };
  const auto deg = syntactic_degree(c);
  for (NodeId v = 0; v < c.node_count(); ++v) {
    const auto kind = c.node(v).kind;
    if (kind == NodeKind::One) flag(1, v, "one-gate present");
    if (kind == NodeKind::Input) {
      for (auto ei : c.out_edges(v)) {
        if (c.node(c.edges()[ei].to).kind != NodeKind::Sum) flag(2, v, "input feeds a non-sum gate");
      }
    }
    if (kind == NodeKind::Product) {
      if (c.in_degree(v) != 2) flag(5, v, "product in-degree " + std::to_string(c.in_degree(v)));
      for (auto ei : c.in_edges(v)) {
        if (c.node(c.edges()[ei].from).kind != NodeKind::Sum) flag(4, v, "product child is not a sum");
      }
    }
    if (kind == NodeKind::Sum) {
      if (c.out_degree(v) > 1) flag(6, v, "sum out-degree " + std::to_string(c.out_degree(v)));
      for (auto ei : c.in_edges(v)) {
        const auto& e = c.edges()[ei];
        const auto ck = c.node(e.from).kind;
        if (ck != NodeKind::Product && ck != NodeKind::Input) flag(4, v, "sum child is not a product or input");
        if (deg[e.from] != deg[v]) flag(7, v, "sum children of different syntactic degree");
      }
    }
  }
  for (NodeId o : c.outputs()) {
    if (c.node(o).kind != NodeKind::Sum) flag(3, o, "output is not a sum");
  }
  if (semantic) {
    try {
      const auto polys = expand_nodes(c, make_vars(c.variables()), max_terms);
      for (NodeId v = 0; v < c.node_count(); ++v) {
        if (!polys[v].is_homogeneous()) flag(7, v, "computes a non-homogeneous polynomial");
      }
      rep.semantic_check_done = true;
    } catch (const BudgetExceeded&) {
      rep.semantic_check_done = false;
    }
  }
  return rep;
}

}  // namespace circkit
