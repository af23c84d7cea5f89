#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "circkit/circuit_io.hpp"
#include "circkit/circuit_ops.hpp"
#include "circkit/errors.hpp"
#include "circkit/normalizer.hpp"
#include "circkit/permanent.hpp"
#include "random_circuits.hpp"

using namespace circkit;

namespace {

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

TEST_CASE("permanents normalize within the bounds") {
  const std::size_t gates[] = {11, 37, 101};
  for (unsigned n = 2; n <= 4; ++n) {
    const Circuit c = permanent_circuit(n);
    const auto res = normalize(c, n);
    CHECK(res.source_size == c.size());
    CHECK(res.census.total == gates[n - 2]);
    CHECK(res.bounds.ok);
    CHECK(res.bounds.n_times_max == 8 * c.size());
    CHECK(res.bounds.n_max == 24 * c.size() * n);
    CHECK(check_normal_form(res.circuit).ok);
    CHECK(same(res.circuit, c));
  }
}

TEST_CASE("trace lists the eight steps in order") {
  NormalizeOptions opts;
  opts.trace = true;
  const auto res = normalize(permanent_circuit(3), 3, opts);
  const std::vector<std::string> expected = {"step1-splice",  "step2-binarize", "step3-homogenize", "step4-fold",
                                             "step5-alternate", "step6-outputs", "step7-inputs",     "step8-split"};
  REQUIRE(res.trace.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(res.trace[i].first == expected[i]);
    CHECK(same(res.trace[i].second, res.circuit));
  }
}

TEST_CASE("outputs must be homogeneous of degree r") {
  const Circuit mixed = parse_circuit("field Q\ninput x\ninput y\np = * 1:x 1:y\ng = + 1:p 1:x\noutput g\n");
  CHECK_THROWS_AS(normalize(mixed, 2), NotHomogeneousOutputs);
  CHECK_THROWS_AS(normalize(permanent_circuit(2), 3), NotHomogeneousOutputs);
  const Circuit constant = parse_circuit("field Q\none c\ng = + 3:c\noutput g\n");
  CHECK_THROWS_AS(normalize(constant, 1), DegreeZeroOutput);
}

TEST_CASE("cancellation through a constant gate") {
  // (x + 2) * y - 2y = xy
  const Circuit c = parse_circuit(
      "field Q\ninput x\ninput y\none c\na = + 1:x 2:c\np = * 1:a 1:y\ng = + 1:p -2:y\noutput g\n");
  const auto res = normalize(c, 2);
  CHECK(same(res.circuit, c));
  CHECK(check_normal_form(res.circuit).ok);
  CHECK(res.bounds.ok);
}

TEST_CASE("binarize and homogenize") {
  const Circuit wide = parse_circuit(
      "field Q\ninput x\ninput y\ninput z\ng = * 1:x 1:y 1:z\nh = + 1:g 2:g 1:g\noutput h\n");
  const Circuit b = binarize(wide);
  CHECK(metrics(b).fanin <= 2);
  CHECK(same(b, wide));
  CHECK_THROWS_AS(homogenize(wide, 3), NotBinarized);
  CHECK(same(homogenize(b, 3), wide));
}

TEST_CASE("normal-form checker reports violations") {
  const Circuit c = parse_circuit("field Q\ninput x\ninput y\ns = + 1:x 2:y\np = * 1:s 1:x\noutput p\n");
  const auto rep = check_normal_form(c);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.violations.empty());
  const auto fixed = normalize(c, 2).circuit;
  CHECK(check_normal_form(fixed).ok);
}

TEST_CASE("census bounds") {
  GateCensus census;
  census.by_degree[1] = {3, 9};
  census.total = 12;
  const auto b = census_bounds(census, 1, 1);
  CHECK(b.n_times_max == 8);
  CHECK_FALSE(b.n_times_ok);
  CHECK(b.n_max == 24);
  CHECK(b.n_ok);
  CHECK_FALSE(b.ok);
  const auto loose = census_bounds(census, 2, 1);
  CHECK(loose.n_times_ok);
  CHECK(loose.n_ok);
  CHECK(loose.ok);
  // an input used directly as output has size 0: the bounds cannot hold
  const auto res = normalize(parse_circuit("field Q\ninput x\noutput x\n"), 1);
  CHECK(res.source_size == 0);
  CHECK_FALSE(res.bounds.ok);
  CHECK(check_normal_form(res.circuit).ok);
}

TEST_CASE("random homogeneous corpus") {
  const auto corpus = testing::homogeneous_corpus(60, 4242);
  for (const auto& [c, r] : corpus) {
    const auto res = normalize(c, r);
    CHECK(same(res.circuit, c));
    CHECK(check_normal_form(res.circuit).ok);
    CHECK(res.bounds.n_times_ok);
    CHECK(res.bounds.n_ok);
  }
}
