#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "circkit/circuit_io.hpp"
#include "circkit/errors.hpp"
#include "circkit/normalizer.hpp"
#include "circkit/permanent.hpp"
#include "circkit/universal.hpp"
#include "random_circuits.hpp"

using namespace circkit;

namespace {

// Sum-edge count straight from the level structure: every product input at
// level 2i-1 owns one sum at its child level, and that sum reads every slot
// of the level below it.
std::uint64_t brute_edges(const UniversalParams& p) {
  const std::uint64_t block = 8 * p.s;
  auto odd = [&](unsigned i) -> std::uint64_t { return i == 1 ? p.n : (i / 2) * block; };
  std::vector<std::uint64_t> sums(p.r + 1, 0);
  sums[p.r] = p.m;
  for (unsigned i = 2; i <= p.r; ++i) {
    for (unsigned j = 1; j <= i / 2; ++j) {
      sums[j] += block;
      sums[i - j] += block;
    }
  }
  // sums at level 2i < 2r feed products only; the top level holds outputs only
  std::uint64_t total = 0;
  for (unsigned i = 1; i <= p.r; ++i) total += sums[i] * odd(i);
  return total;
}

bool same(const Circuit& a, const Circuit& b) {
  const auto pa = expand(a);
  const auto pb = expand(b);
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i].reembed(pb[i].vars()) != pb[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("edge counts") {
  const auto g = UniversalGraph::build({6, 3, 3, 3});
  CHECK(g.sum_edge_count() == 2880);
  CHECK(g.sum_edge_bound() == 62208);
  CHECK(g.sum_edge_count() < g.sum_edge_bound());
  CHECK(g.levels() == 6);
  CHECK(g.odd_slots(1) == 3);
  CHECK(g.odd_slots(3) == 48);
  CHECK(g.sum_slots(3) == 3);
  CHECK(UniversalGraph::build({2, 1, 2, 1}).sum_edge_count() == 2);
  for (std::size_t s = 1; s <= 4; ++s) {
    for (unsigned r = 1; r <= 6; ++r) {
      for (std::size_t n = 1; n <= s; ++n) {
        const UniversalParams p{s, r, n, s};
        const auto u = UniversalGraph::build(p);
        CHECK(u.sum_edge_count() == brute_edges(p));
        CHECK(u.sum_edge_count() < u.sum_edge_bound());
      }
    }
  }
}

TEST_CASE("parameter checks") {
  CHECK_THROWS_AS(UniversalGraph::build({2, 0, 1, 1}), ParamViolation);
  CHECK_THROWS_AS(UniversalGraph::build({2, 2, 3, 1}), ParamViolation);
  CHECK_THROWS_AS(UniversalGraph::build({2, 2, 1, 3}), ParamViolation);
  CHECK_THROWS_AS(UniversalGraph::build({2, 2, 0, 1}), ParamViolation);
}

TEST_CASE("sum edge ids round-trip") {
  const auto g = UniversalGraph::build({3, 4, 2, 2});
  std::uint64_t expected = 0;
  for (unsigned i = 1; i <= 4; ++i) {
    for (std::uint64_t k = 0; k < g.sum_slots(i); ++k) {
      for (std::uint64_t c = 0; c < g.sum_fanin(i); ++c, ++expected) {
        const auto id = g.sum_edge_id(i, k, c);
        CHECK(id == expected);
        const auto e = g.decode_sum_edge(id);
        CHECK(e.i == i);
        CHECK(e.sum_index == k);
        CHECK(e.child_index == c);
      }
    }
  }
  CHECK(expected == g.sum_edge_count());
  CHECK_THROWS_AS(g.decode_sum_edge(g.sum_edge_count()), UnknownEdgeId);
  CHECK_THROWS_AS(instantiate(g, {{g.sum_edge_count(), Scalar(1)}}), UnknownEdgeId);
}

TEST_CASE("product children sit at the right levels") {
  const auto g = UniversalGraph::build({2, 4, 2, 1});
  for (unsigned i = 2; i <= 4; ++i) {
    for (unsigned j = 1; j <= i / 2; ++j) {
      for (std::uint64_t t = 0; t < g.block(); ++t) {
        CHECK(g.product_child(i, j, t, 0).level == 2 * j);
        CHECK(g.product_child(i, j, t, 1).level == 2 * (i - j));
      }
    }
  }
}

TEST_CASE("permanent embeds and instantiates back") {
  const Circuit c = permanent_circuit(2);
  const auto res = normalize(c, 2);
  const auto g = UniversalGraph::build({c.size(), 2, 4, 1});
  CHECK(g.sum_edge_count() == 432);
  CHECK(g.sum_edge_bound() == 18432);
  const auto emb = embed(g, res.circuit);
  const auto inst = instantiate(g, emb.labels, Field::rational(), res.circuit.variables());
  CHECK(same(inst, c));
  for (const auto& [id, label] : emb.labels) CHECK_FALSE(label.is_zero());
}

TEST_CASE("random corpus embeds") {
  for (const auto& [c, r] : testing::homogeneous_corpus(30, 31337)) {
    const auto res = normalize(c, r);
    const auto g = UniversalGraph::build({c.size(), r, res.circuit.variables().size(), res.circuit.outputs().size()});
    const auto emb = embed(g, res.circuit);
    CHECK(same(instantiate(g, emb.labels, c.field(), res.circuit.variables()), c));
  }
}

TEST_CASE("embedding preconditions") {
  const Circuit c = permanent_circuit(2);
  const auto res = normalize(c, 2);
  CHECK_THROWS_AS(embed(UniversalGraph::build({c.size(), 3, 4, 1}), res.circuit), NotNormalForm);
  CHECK_THROWS_AS(embed(UniversalGraph::build({c.size(), 2, 4, 2}), res.circuit), DimensionMismatch);
  CHECK_THROWS_AS(embed(UniversalGraph::build({c.size(), 2, 4, 1}), c), NotNormalForm);
  // 17 distinct degree-2 products against 8s = 16 slots
  std::string text = "field Q\ninput x\ninput y\n";
  std::string out = "g = +";
  for (int k = 1; k <= 18; ++k) text += "a" + std::to_string(k) + " = + 1:x " + std::to_string(k) + ":y\n";
  for (int k = 1; k <= 17; ++k) {
    text += "p" + std::to_string(k) + " = * 1:a" + std::to_string(k) + " 1:a" + std::to_string(k + 1) + "\n";
    out += " 1:p" + std::to_string(k);
  }
  const auto wide = normalize(parse_circuit(text + out + "\noutput g\n"), 2).circuit;
  CHECK_THROWS_AS(embed(UniversalGraph::build({2, 2, 2, 1}), wide), CapacityExceeded);
}

TEST_CASE("gamma map agrees with instantiation") {
  const auto g = UniversalGraph::build({2, 2, 2, 1});
  const auto gm = gamma_map(g);
  CHECK(gm.bidegree_ok);
  CHECK(gm.failures.empty());
  REQUIRE(gm.outputs.size() == 1);
  const auto names = gm.outputs[0].var_names();
  REQUIRE(names.size() == 2 + g.sum_edge_count());
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Scalar> point;
    std::map<std::uint64_t, Scalar> labels;
    std::map<std::string, Scalar> z;
    for (std::size_t k = 0; k < names.size(); ++k) {
      point.emplace_back(dist(rng));
      if (k < 2) {
        z.emplace(names[k], point.back());
      } else if (!point.back().is_zero()) {
        labels.emplace(k - 2, point.back());
      }
    }
    const Circuit c = instantiate(g, labels);
    const Scalar expected = labels.empty() ? Scalar(0) : evaluate(c, z).front();
    CHECK(gm.outputs[0].evaluate(point) == expected);
  }
  CHECK_THROWS_AS(gamma_map(UniversalGraph::build({6, 3, 3, 3}), 1000), BudgetExceeded);
}
