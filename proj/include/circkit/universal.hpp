#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "circkit/circuit.hpp"
#include "circkit/circuit_ops.hpp"
#include "circkit/sparse_poly.hpp"

namespace circkit {

struct UniversalParams {
  std::size_t s = 0;
  unsigned r = 0;
  std::size_t n = 0;
  std::size_t m = 0;
};

/// A slot of the universal graph: `level` in 1..2r, `index` within the level.
/// Odd levels 2i-1 (i >= 2) hold product slots, `index` = (type-1)*8s + t.
struct Slot {
  unsigned level = 0;
  std::uint64_t index = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

/// The leveled circuit-graph G_{s,r,n,m}, kept implicit: slot and edge
/// counts are closed-form and edges are enumerated on demand.
///
/// Level 1 holds the n inputs. Level 2i-1 (i >= 2) holds floor(i/2) product
/// types of 8s slots; a type-j product takes one sum child at level 2j and
/// one at level 2i-2j. Every sum at level 2i < 2r is dedicated to exactly one
/// product input, so sum out-degree is 1; level 2r holds the m outputs. Each
/// sum is connected to every slot of the level below it. Sum edges are
/// numbered level by level, sum by sum, child by child.
class UniversalGraph {
 public:
  /// Throws ParamViolation unless r >= 1, 1 <= n <= s and 1 <= m <= s.
  static UniversalGraph build(const UniversalParams& params);

  const UniversalParams& params() const { return p_; }
  unsigned levels() const { return 2 * p_.r; }
  std::size_t block() const { return 8 * p_.s; }

  /// Product slots at level 2i-1 (the inputs when i == 1).
  std::uint64_t odd_slots(unsigned i) const;
  std::uint64_t product_types(unsigned i) const { return i >= 2 ? i / 2 : 0; }
  /// Sum slots at level 2i.
  std::uint64_t sum_slots(unsigned i) const { return sum_slots_.at(i); }
  /// Children of every sum at level 2i.
  std::uint64_t sum_fanin(unsigned i) const { return odd_slots(i); }

  std::uint64_t sum_edge_count() const { return edge_offset_.back(); }
  /// 64 s^2 r^3, which sum_edge_count() stays strictly below.
  std::uint64_t sum_edge_bound() const;
  std::uint64_t node_count() const;
  std::uint64_t product_edge_count() const;

  /// The sum slot (at level 2j or 2i-2j) feeding input `pos` of product
  /// slot t of type j at level 2i-1.
  Slot product_child(unsigned i, unsigned j, std::uint64_t t, unsigned pos) const;
  std::uint64_t sum_edge_id(unsigned i, std::uint64_t sum_index, std::uint64_t child_index) const;
  struct SumEdge {
    unsigned i;                 // the sum sits at level 2i
    std::uint64_t sum_index;
    std::uint64_t child_index;  // slot index at level 2i-1
  };
  SumEdge decode_sum_edge(std::uint64_t id) const;

  std::string slot_name(const Slot& slot) const;

 private:
  UniversalParams p_;
  std::vector<std::uint64_t> sum_slots_;    // indexed by i, 1..r
  std::vector<std::uint64_t> edge_offset_;  // edge_offset_[i-1] = first id at level 2i; back() = total
  // (i, j, pos) of a product input -> first sum index of its block at its child level
  std::map<std::tuple<unsigned, unsigned, unsigned>, std::uint64_t> block_offset_;
};

struct Embedding {
  /// Universal slot of every node of the pre-conditioned circuit; empty for
  /// nodes outside the graph (dead nodes, unused inputs).
  std::vector<std::optional<Slot>> node_map;
  /// Sum-edge id -> label; ids not present carry 0.
  std::map<std::uint64_t, Scalar> labels;
  /// The circuit after moving product-input labels into the sums below, so
  /// that every edge into a product has label 1.
  Circuit conditioned;
};

/// Moves the labels of edges into products onto the in-edges of the sums
/// feeding them. Requires sum out-degree <= 1.
Circuit push_product_labels(const Circuit& psi);

/// Embeds a normal-form circuit. Inputs map to input slots in variable
/// order, a degree-i product with child degrees (j, i-j), j <= i-j, to the
/// next free type-j slot at level 2i-1, outputs to the output slots in order.
/// Throws NotNormalForm, CapacityExceeded.
Embedding embed(const UniversalGraph& g, const Circuit& psi);

/// The concrete circuit obtained by labelling the sum edges; product edges
/// get label 1 and unlabelled sum edges are absent. Variable names default
/// to z1..zn. Throws UnknownEdgeId.
Circuit instantiate(const UniversalGraph& g, const std::map<std::uint64_t, Scalar>& labels,
                    Field field = Field::rational(), std::vector<std::string> var_names = {});

struct GammaMap {
  /// z1..zn followed by y<id> for every sum edge.
  VarList vars;
  std::vector<SparsePoly> outputs;
  /// Every slot polynomial is homogeneous in y of degree 2i-1 (sums at
  /// level 2i) or 2i-2 (level 2i-1), and of degree i in z.
  bool bidegree_ok = true;
  std::vector<std::string> failures;
  std::size_t slots_checked = 0;
};

/// Symbolic outputs of the graph with every sum edge e labelled by y<e>.
/// Throws BudgetExceeded once a slot polynomial exceeds `max_terms` terms.
GammaMap gamma_map(const UniversalGraph& g, std::size_t max_terms = kDefaultTermBudget);

}  // namespace circkit
