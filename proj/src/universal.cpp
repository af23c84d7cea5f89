#include "circkit/universal.hpp"

#include <algorithm>
#include <functional>

#include "circkit/errors.hpp"
#include "circkit/normalizer.hpp"
#include "work_graph.hpp"

namespace circkit {

UniversalGraph UniversalGraph::build(const UniversalParams& params) {
  const auto& [s, r, n, m] = params;
  if (r < 1) throw ParamViolation("r must be at least 1");
  if (n < 1 || n > s) throw ParamViolation("need 1 <= n <= s (n = " + std::to_string(n) + ", s = " + std::to_string(s) + ")");
  if (m < 1 || m > s) throw ParamViolation("need 1 <= m <= s (m = " + std::to_string(m) + ", s = " + std::to_string(s) + ")");
  if (r > 64 || s > (1ULL << 20)) throw ParamViolation("parameters too large to index");

  UniversalGraph g;
  g.p_ = params;
  const std::uint64_t blk = 8ULL * s;
  g.sum_slots_.assign(r + 1, 0);
  // Dedicated sum blocks, enumerated by the product input they feed.
  for (unsigned level = 1; level < r; ++level) {
    std::uint64_t count = 0;
    for (unsigned ip = level + 1; ip <= r; ++ip) {
      for (unsigned j = 1; j <= ip / 2; ++j) {
        for (unsigned pos = 0; pos < 2; ++pos) {
          const unsigned child_level = pos == 0 ? j : ip - j;
          if (child_level != level) continue;
          g.block_offset_[{ip, j, pos}] = count;
          count += blk;
        }
      }
    }
    g.sum_slots_[level] = count;
  }
  g.sum_slots_[r] = m;
  g.edge_offset_.assign(r + 1, 0);
  for (unsigned i = 1; i <= r; ++i) {
    g.edge_offset_[i] = g.edge_offset_[i - 1] + g.sum_slots_[i] * g.odd_slots(i);
  }
  if (g.sum_edge_count() >= g.sum_edge_bound()) {
    throw ParamViolation("internal: sum-edge count reached the 64 s^2 r^3 bound");
  }
  return g;
}

std::uint64_t UniversalGraph::odd_slots(unsigned i) const {
  if (i == 1) return p_.n;
  return product_types(i) * block();
}

std::uint64_t UniversalGraph::sum_edge_bound() const {
  const std::uint64_t s = p_.s, r = p_.r;
  return 64 * s * s * r * r * r;
}

std::uint64_t UniversalGraph::node_count() const {
  std::uint64_t total = 0;
  for (unsigned i = 1; i <= p_.r; ++i) total += odd_slots(i) + sum_slots(i);
  return total;
}

std::uint64_t UniversalGraph::product_edge_count() const {
  std::uint64_t total = 0;
  for (unsigned i = 2; i <= p_.r; ++i) total += 2 * odd_slots(i);
  return total;
}

Slot UniversalGraph::product_child(unsigned i, unsigned j, std::uint64_t t, unsigned pos) const {
  auto it = block_offset_.find({i, j, pos});
  if (it == block_offset_.end() || t >= block()) throw DomainViolation("no such product slot");
  const unsigned child = pos == 0 ? j : i - j;
  return Slot{2 * child, it->second + t};
}

std::uint64_t UniversalGraph::sum_edge_id(unsigned i, std::uint64_t sum_index, std::uint64_t child_index) const {
  if (i < 1 || i > p_.r || sum_index >= sum_slots(i) || child_index >= sum_fanin(i)) {
    throw DomainViolation("no such sum edge");
  }
  return edge_offset_[i - 1] + sum_index * sum_fanin(i) + child_index;
}

UniversalGraph::SumEdge UniversalGraph::decode_sum_edge(std::uint64_t id) const {
  if (id >= sum_edge_count()) throw UnknownEdgeId("sum-edge id " + std::to_string(id) + " out of range");
  const auto it = std::upper_bound(edge_offset_.begin(), edge_offset_.end(), id);
  const auto i = static_cast<unsigned>(it - edge_offset_.begin());
  const std::uint64_t local = id - edge_offset_[i - 1];
  return SumEdge{i, local / sum_fanin(i), local % sum_fanin(i)};
}

std::string UniversalGraph::slot_name(const Slot& slot) const {
  if (slot.level == 1) return "z" + std::to_string(slot.index + 1);
  if (slot.level % 2 == 0) return "s" + std::to_string(slot.level) + "_" + std::to_string(slot.index);
  const std::uint64_t type = slot.index / block() + 1;
  return "p" + std::to_string(slot.level) + "_" + std::to_string(type) + "_" + std::to_string(slot.index % block());
}

Circuit push_product_labels(const Circuit& psi) {
  auto g = detail::WorkGraph::from(psi);
  const auto in = g.in_lists();
  const auto out = g.out_lists();
  for (NodeId p = 0; p < g.nodes.size(); ++p) {
    if (g.nodes[p].kind != NodeKind::Product) continue;
    for (auto ei : in[p]) {
      auto& e = g.edges[ei];
      if (e.label.is_one()) continue;
      if (g.nodes[e.from].kind != NodeKind::Sum || out[e.from].size() != 1) {
        throw NotNormalForm("product `" + g.nodes[p].name + "` has a labelled input not from a private sum");
      }
      for (auto fi : in[e.from]) g.edges[fi].label *= e.label;
      e.label = g.one();
    }
  }
  return g.to_circuit();
}

Embedding embed(const UniversalGraph& g, const Circuit& psi) {
  const auto report = check_normal_form(psi, false);
  if (!report.ok) {
    const auto& v = report.violations.front();
    throw NotNormalForm("condition " + std::to_string(v.condition) + " at `" + v.node + "`: " + v.detail);
  }
  const auto& P = g.params();
  Embedding emb;
  emb.conditioned = push_product_labels(psi);
  const Circuit& c = emb.conditioned;
  const auto deg = syntactic_degree(c);
  emb.node_map.assign(c.node_count(), std::nullopt);

  if (c.outputs().size() != P.m) {
    throw DimensionMismatch("circuit has " + std::to_string(c.outputs().size()) + " outputs, graph has " +
                            std::to_string(P.m));
  }
  std::uint64_t next_input = 0;
  for (NodeId v = 0; v < c.node_count(); ++v) {
    if (c.node(v).kind != NodeKind::Input) continue;
    if (next_input >= P.n) throw CapacityExceeded("level 1: more than " + std::to_string(P.n) + " inputs");
    emb.node_map[v] = Slot{1, next_input++};
  }
  for (std::size_t k = 0; k < c.outputs().size(); ++k) {
    const NodeId o = c.outputs()[k];
    if (c.in_degree(o) != 0 && deg[o] != P.r) {
      throw NotNormalForm("output `" + c.node(o).name + "` has syntactic degree " + std::to_string(deg[o]));
    }
    emb.node_map[o] = Slot{2 * P.r, k};
  }

  // Products, greedily per (degree, type) in topological order.
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> used;
  for (NodeId v = 0; v < c.node_count(); ++v) {
    if (c.node(v).kind != NodeKind::Product || c.out_degree(v) == 0) continue;
    const auto in = c.in_edges(v);
    const auto d0 = deg[c.edges()[in[0]].from];
    const auto d1 = deg[c.edges()[in[1]].from];
    const std::uint64_t i = deg[v];
    const std::uint64_t j = std::min(d0, d1);
    if (i < 2 || i > P.r || j < 1) throw NotNormalForm("product `" + c.node(v).name + "` of unexpected degree");
    auto& t = used[{i, j}];
    if (t >= g.block()) {
      throw CapacityExceeded("level " + std::to_string(2 * i - 1) + " type " + std::to_string(j) + ": more than " +
                             std::to_string(g.block()) + " products");
    }
    const auto ii = static_cast<unsigned>(i);
    const auto jj = static_cast<unsigned>(j);
    emb.node_map[v] = Slot{2 * ii - 1, (j - 1) * g.block() + t};
    // The child of degree j takes position 0; equal degrees go in edge order.
    const unsigned first = d0 == j ? 0 : 1;
    emb.node_map[c.edges()[in[first]].from] = g.product_child(ii, jj, t, 0);
    emb.node_map[c.edges()[in[1 - first]].from] = g.product_child(ii, jj, t, 1);
    ++t;
  }

  for (NodeId v = 0; v < c.node_count(); ++v) {
    if (c.node(v).kind != NodeKind::Sum || !emb.node_map[v]) continue;
    const Slot sum = *emb.node_map[v];
    const unsigned i = sum.level / 2;
    for (auto ei : c.in_edges(v)) {
      const auto& e = c.edges()[ei];
      const auto& child = emb.node_map[e.from];
      if (!child || child->level != sum.level - 1) {
        throw NotNormalForm("sum `" + c.node(v).name + "` has a child off the level below");
      }
      const auto id = g.sum_edge_id(i, sum.index, child->index);
      auto [it, fresh] = emb.labels.emplace(id, e.label);
      if (!fresh) it->second += e.label;
    }
  }
  std::erase_if(emb.labels, [](const auto& kv) { return kv.second.is_zero(); });
  return emb;
}

Circuit instantiate(const UniversalGraph& g, const std::map<std::uint64_t, Scalar>& labels, Field field,
                    std::vector<std::string> var_names) {
  const auto& P = g.params();
  for (const auto& [id, label] : labels) {
    if (id >= g.sum_edge_count()) throw UnknownEdgeId("sum-edge id " + std::to_string(id) + " out of range");
    if (label.field() != field) throw FieldMismatch("label of sum edge " + std::to_string(id) + " over a different field");
  }
  if (var_names.empty()) {
    for (std::size_t k = 0; k < P.n; ++k) var_names.push_back("z" + std::to_string(k + 1));
  }
  if (var_names.size() != P.n) throw DimensionMismatch("need one variable name per input slot");

  detail::WorkGraph w(field);
  std::vector<NodeId> inputs;
  for (const auto& name : var_names) inputs.push_back(w.add_node(NodeKind::Input, name));
  std::map<std::pair<unsigned, std::uint64_t>, NodeId> made;

  std::function<NodeId(const Slot&)> node_for = [&](const Slot& slot) -> NodeId {
    if (slot.level == 1) return inputs.at(slot.index);
    if (auto it = made.find({slot.level, slot.index}); it != made.end()) return it->second;
    NodeId v;
    if (slot.level % 2 == 0) {
      v = w.add_node(NodeKind::Sum, g.slot_name(slot));
      const unsigned i = slot.level / 2;
      const auto lo = g.sum_edge_id(i, slot.index, 0);
      const auto hi = lo + g.sum_fanin(i);
      for (auto it = labels.lower_bound(lo); it != labels.end() && it->first < hi; ++it) {
        if (it->second.is_zero()) continue;
        const NodeId child = node_for(Slot{slot.level - 1, it->first - lo});
        w.add_edge(child, v, it->second);
      }
    } else {
      v = w.add_node(NodeKind::Product, g.slot_name(slot));
      const unsigned i = (slot.level + 1) / 2;
      const auto j = static_cast<unsigned>(slot.index / g.block() + 1);
      const auto t = slot.index % g.block();
      for (unsigned pos = 0; pos < 2; ++pos) w.add_edge(node_for(g.product_child(i, j, t, pos)), v, w.one());
    }
    made.emplace(std::make_pair(slot.level, slot.index), v);
    return v;
  };
  for (std::uint64_t k = 0; k < P.m; ++k) w.outputs.push_back(node_for(Slot{2 * P.r, k}));
  w.prune_zeros();
  w.sweep();
  return w.to_circuit();
}

GammaMap gamma_map(const UniversalGraph& g, std::size_t max_terms) {
  const auto& P = g.params();
  GammaMap gm;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < P.n; ++k) names.push_back("z" + std::to_string(k + 1));
  const std::uint64_t edges = g.sum_edge_count();
  if (edges > 50'000'000) throw BudgetExceeded("too many sum edges for a symbolic map");
  for (std::uint64_t e = 0; e < edges; ++e) names.push_back("y" + std::to_string(e));
  gm.vars = make_vars(std::move(names));
  std::vector<bool> y_mask(gm.vars->size(), false);
  std::fill(y_mask.begin() + static_cast<std::ptrdiff_t>(P.n), y_mask.end(), true);
  std::vector<bool> z_mask(gm.vars->size(), false);
  std::fill(z_mask.begin(), z_mask.begin() + static_cast<std::ptrdiff_t>(P.n), true);
  const Field f = Field::rational();
  const Scalar one(mpq_class(1), f);

  std::map<std::pair<unsigned, std::uint64_t>, SparsePoly> memo;
  auto check = [&](const Slot& slot, const SparsePoly& p) {
    ++gm.slots_checked;
    if (p.is_zero()) return;
    const unsigned i = (slot.level + 1) / 2;
    const int want_y = slot.level % 2 == 0 ? static_cast<int>(2 * i - 1) : static_cast<int>(2 * i - 2);
    const auto y = degree_in_mask(p, y_mask);
    const auto z = degree_in_mask(p, z_mask);
    if (!y.homogeneous || y.degree != want_y || !z.homogeneous || z.degree != static_cast<int>(i)) {
      gm.bidegree_ok = false;
      gm.failures.push_back(g.slot_name(slot));
    }
  };
  std::function<const SparsePoly&(const Slot&)> poly_for = [&](const Slot& slot) -> const SparsePoly& {
    if (auto it = memo.find({slot.level, slot.index}); it != memo.end()) return it->second;
    SparsePoly p(gm.vars, f);
    if (slot.level == 1) {
      p.add_term(Monomial::variable(static_cast<VarIndex>(slot.index)), one);
    } else if (slot.level % 2 == 0) {
      const unsigned i = slot.level / 2;
      for (std::uint64_t k = 0; k < g.sum_fanin(i); ++k) {
        const auto id = g.sum_edge_id(i, slot.index, k);
        const auto& child = poly_for(Slot{slot.level - 1, k});
        SparsePoly term(gm.vars, f);
        const Monomial y = Monomial::variable(static_cast<VarIndex>(P.n + id));
        for (const auto& [mono, coef] : child.terms()) term.add_term(mono * y, coef);
        p += term;
        if (p.term_count() > max_terms) throw BudgetExceeded("symbolic map exceeded " + std::to_string(max_terms) + " terms");
      }
    } else {
      const unsigned i = (slot.level + 1) / 2;
      const auto j = static_cast<unsigned>(slot.index / g.block() + 1);
      const auto t = slot.index % g.block();
      p = poly_for(g.product_child(i, j, t, 0)) * poly_for(g.product_child(i, j, t, 1));
      if (p.term_count() > max_terms) throw BudgetExceeded("symbolic map exceeded " + std::to_string(max_terms) + " terms");
    }
    check(slot, p);
    return memo.emplace(std::make_pair(slot.level, slot.index), std::move(p)).first->second;
  };
  for (std::uint64_t k = 0; k < P.m; ++k) gm.outputs.push_back(poly_for(Slot{2 * P.r, k}));
  return gm;
}

}  // namespace circkit
