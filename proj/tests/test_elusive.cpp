#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "circkit/elusive.hpp"
#include "circkit/errors.hpp"

using namespace circkit;

namespace {

PolyMap make_map(const std::vector<std::string>& names, const std::vector<std::vector<std::pair<int, std::string>>>& comps) {
  const auto vars = make_vars(names);
  std::vector<SparsePoly> out;
  for (const auto& terms : comps) {
    SparsePoly p(vars);
    for (const auto& [c, v] : terms) {
      if (v.empty()) continue;
      p = p + SparsePoly::variable(vars, v) * Scalar(c);
    }
    out.push_back(p);
  }
  return PolyMap(vars, out);
}

Matrix from_rows(const std::vector<std::vector<int>>& rows) {
  Matrix a = zero_matrix(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = Scalar(rows[i][j]);
  }
  return a;
}

std::string evidence(const Certificate& c, const std::string& key) {
  for (const auto& [k, v] : c.evidence) {
    if (k == key) return v;
  }
  return "";
}

}  // namespace

TEST_CASE("hilbert values of small maps") {
  // the Veronese conic: one quadric relation u0 u2 - u1^2
  const auto nu = PolyMap::veronese(2, 2);
  CHECK(nu.m() == 3);
  CHECK(nu.homogeneous_degree() == 2u);
  const auto h = hilbert_value(nu, 2);
  CHECK(h.dim_pol == 6);
  CHECK(h.dim_i == 1);
  CHECK(h.dim_a == 5);
  CHECK(hilbert_value(nu, 1).dim_i == 0);

  const auto line = make_map({"x"}, {{{1, "x"}}, {{0, ""}}});
  const auto hl = hilbert_value(line, 1);
  CHECK(hl.dim_i == 1);
  CHECK(hl.dim_a == 1);

  const auto coords = make_map({"x", "y"}, {{{1, "x"}}, {{1, "y"}}});
  const auto hc = hilbert_value(coords, 2);
  CHECK(hc.dim_i == 0);
  CHECK(hc.dim_a == 3);
}

TEST_CASE("kernel elements vanish on the image") {
  const auto nu = PolyMap::veronese(3, 2);
  const auto h = hilbert_value(nu, 2);
  CHECK(h.dim_i == 6);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<Scalar> p = {Scalar(dist(rng)), Scalar(dist(rng)), Scalar(dist(rng))};
    std::vector<Scalar> image;
    for (const auto& c : nu.components()) image.push_back(c.evaluate(p));
    for (const auto& k : h.kernel) CHECK(k.evaluate(image).is_zero());
  }
}

TEST_CASE("hilbert value preconditions") {
  const auto nu = PolyMap::veronese(2, 2);
  CHECK_THROWS_AS(hilbert_value(nu, 0), DomainViolation);
  CHECK_THROWS_AS(hilbert_value(nu, 30, 100), BudgetExceeded);
  const auto vars = make_vars({"x"});
  const PolyMap f7(vars, {SparsePoly::variable(vars, "x", Field::prime(7))}, Field::prime(7));
  CHECK_THROWS_AS(hilbert_value(f7, 1), UnsupportedField);
  CHECK_THROWS_AS(PolyMap(vars, {SparsePoly::variable(vars, "x", Field::prime(7))}), FieldMismatch);
  const auto other = make_vars({"y"});
  CHECK_THROWS_AS(PolyMap(vars, {SparsePoly::variable(other, "y")}), VariableMismatch);
}

TEST_CASE("dimension certificates") {
  const auto nu = PolyMap::veronese(3, 2);
  const auto yes = certify_by_dimension(nu, 1, 1, 2);
  CHECK(yes.certified());
  CHECK(yes.kind == CertificateKind::Dimension);
  CHECK(yes.name == "dimension(d=1)");
  CHECK(evidence(yes, "d1.required") == "2");
  CHECK(evidence(yes, "d1.dimA") == "6");

  const auto no = certify_by_dimension(nu, 6, 1, 2);
  CHECK_FALSE(no.certified());
  CHECK(evidence(no, "d2.required") == "22");
  // C(7, 2) = 21 < 22: no Hilbert count needed
  CHECK(evidence(no, "d2.dimPol") == "21");
  CHECK(evidence(no, "d1.dimPol") == "6");

  // nu_r on F^s meets the count C(s+rd-1, rd) exactly and never more
  for (unsigned r = 1; r <= 3; ++r) {
    CHECK_FALSE(certify_by_dimension(PolyMap::veronese(2, r), 2, r, 3).certified());
  }
}

TEST_CASE("evaluation map") {
  const Matrix fstars = from_rows({{1, 2}, {0, -1}, {3, 3}});
  const Matrix points = from_rows({{1, 0, 2, -1}, {4, 1, 0, 1}});
  const Matrix direct = fstars * points;
  const Matrix viaMap = evaluation_map_apply(fstars, points, 1);
  for (Eigen::Index i = 0; i < direct.rows(); ++i) {
    for (Eigen::Index j = 0; j < direct.cols(); ++j) CHECK(viaMap(i, j) == direct(i, j));
  }
  const Matrix zero = zero_matrix(2, 3);
  const Matrix onZero = evaluation_map_apply(fstars, zero, 1);
  for (Eigen::Index i = 0; i < onZero.rows(); ++i) {
    for (Eigen::Index j = 0; j < onZero.cols(); ++j) CHECK(onZero(i, j).is_zero());
  }
  // s = 1, r = 2: c * a^2
  const Matrix sq = evaluation_map_apply(from_rows({{3}}), from_rows({{-2, 5}}), 2);
  CHECK(sq(0, 0) == Scalar(12));
  CHECK(sq(0, 1) == Scalar(75));
  CHECK_THROWS_AS(evaluation_map_apply(fstars, points, 2), DimensionMismatch);

  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index s = 1 + trial % 3;
    const unsigned r = 1 + trial % 4;
    const auto cols = static_cast<Eigen::Index>(dim_pol_hom(static_cast<std::size_t>(s), r).get_ui());
    Matrix fs = zero_matrix(2, cols);
    Matrix pts = zero_matrix(s, 3);
    for (Eigen::Index i = 0; i < fs.rows(); ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) fs(i, j) = Scalar(dist(rng));
    }
    for (Eigen::Index i = 0; i < s; ++i) {
      for (Eigen::Index j = 0; j < 3; ++j) pts(i, j) = Scalar(dist(rng));
    }
    const Matrix out = evaluation_map_apply(fs, pts, r);
    const Matrix expected = fs * veronese_columns(pts, r);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) CHECK(out(i, j) == expected(i, j));
    }
  }
}

TEST_CASE("rank criterion") {
  const Matrix id = from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(rank_criterion(id, 2).certified());
  CHECK_FALSE(rank_criterion(id, 3).certified());
  const Matrix low = from_rows({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}});
  const auto c = rank_criterion(low, 1);
  CHECK(c.certified());
  CHECK(evidence(c, "rank") == "2");
  CHECK_FALSE(rank_criterion(low, 2).certified());
}

TEST_CASE("veronese ideal generators") {
  const auto g = veronese_ideal_generators(2, 2);
  REQUIRE(g.size() == 1);
  const auto& u = g[0].vars();
  const auto expected = SparsePoly::variable(u, "u0") * SparsePoly::variable(u, "u2") -
                        SparsePoly::variable(u, "u1") * SparsePoly::variable(u, "u1");
  CHECK((g[0] == expected || g[0] == expected * Scalar(-1)));
  CHECK(veronese_ideal_generators(1, 3).empty());
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (const auto& [s, r] : std::vector<std::pair<std::size_t, unsigned>>{{3, 2}, {2, 3}, {3, 3}}) {
    const auto gens = veronese_ideal_generators(s, r);
    CHECK_FALSE(gens.empty());
    const auto nu = PolyMap::veronese(s, r);
    std::vector<Scalar> p;
    for (std::size_t i = 0; i < s; ++i) p.emplace_back(dist(rng));
    std::vector<Scalar> image;
    for (const auto& c : nu.components()) image.push_back(c.evaluate(p));
    for (const auto& gen : gens) CHECK(gen.evaluate(image).is_zero());
  }
  CHECK_THROWS_AS(veronese_ideal_generators(4, 3, 5), BudgetExceeded);
}

TEST_CASE("inequality domains") {
  CHECK_THROWS_AS(codi2(2, 1, 3, 3, 1), DomainViolation);
  CHECK_THROWS_AS(bih(2, 1, 2, 0, 1), DomainViolation);
  CHECK_THROWS_AS(bih(2, 1, 2, 1, 2), DomainViolation);
  CHECK_THROWS_AS(per_inequality(3, 4, 1), DomainViolation);
  CHECK_THROWS_AS(per_inequality(4, 2, 6), DomainViolation);
  const auto held = codi2(2, 1, 3, 1, 1);
  CHECK(held.holds);
  const auto cert = to_certificate(held, 1, 1);
  CHECK(cert.certified());
  CHECK(cert.kind == CertificateKind::Inequality);
  CHECK_FALSE(to_certificate(codi2(3, 2, 10, 4, 2), 4, 2).certified());
  const auto fam = per_family(2, 1);
  CHECK(fam.n == 16);
  CHECK(fam.t == 8);
  CHECK(fam.s == 16);
}

TEST_CASE("span of minor permanents") {
  const auto c = span_minor_permanents(4, 2);
  CHECK(c.certified());
  CHECK(c.s == 5);
  CHECK(c.r == 1);
  CHECK(evidence(c, "spanDim") == "6");
  CHECK(span_minor_permanents(3, 1).s == 2);
  CHECK(span_minor_permanents(5, 2).s == 9);
  CHECK_THROWS_AS(span_minor_permanents(4, 3), ParamViolation);
  CHECK_THROWS_AS(span_minor_permanents(6, 2), ParamViolation);
}

TEST_CASE("projection to independent components") {
  const auto f = make_map({"x", "y"}, {{{1, "x"}}, {{2, "x"}}, {{1, "y"}}, {{1, "x"}, {-1, "y"}}});
  const auto red = project_reduce(f);
  CHECK(red.span_dim == 2);
  CHECK(red.kept == std::vector<std::size_t>{0, 2});
  CHECK(red.reduced.m() == 2);
  CHECK(red.reduced.component(1) == f.component(2));
}

TEST_CASE("bounds and thresholds") {
  const auto b = bound_formula(5, 1, BoundCase::General);
  CHECK(b.bound_squared == mpq_class(5, 64));
  CHECK_FALSE(b.bound.has_value());
  CHECK(b.decimal == "0.279508497187");
  CHECK(b.threshold_factor == 64);
  const auto exact = bound_formula(64, 1, BoundCase::Pt1);
  REQUIRE(exact.bound.has_value());
  CHECK(*exact.bound == 1);
  const auto pt2 = bound_formula(6400, 2, BoundCase::Pt2);
  CHECK(pt2.bound_squared == mpq_class(1, 2));
  CHECK(pt2.threshold_factor == 12800);
  CHECK(threshold_s0(1, 1) == 64);
  CHECK(threshold_s0(1, 1, BoundCase::Pt2) == 1600);
  CHECK(threshold_s0(mpq_class(1, 2), 2) == 128);
  CHECK(sqrt_decimal(2, 5) == "1.41421");
  CHECK(sqrt_decimal(mpq_class(9, 4)) == "1.500000000000");
  CHECK_THROWS_AS(bound_formula(5, 0, BoundCase::General), DomainViolation);
}

TEST_CASE("lower bound reports") {
  Certificate cert;
  cert.s = 512;
  cert.r = 3;
  cert.verdict = Verdict::Certified;
  const auto rep = lower_bound_report(cert, BoundCase::General);
  CHECK(rep.r == 2);
  CHECK(rep.bound_squared == 1);
  cert.r = 2;
  CHECK_THROWS_AS(lower_bound_report(cert, BoundCase::General), WrongDegreeParameter);
  cert.r = 1;
  cert.verdict = Verdict::Inconclusive;
  CHECK_THROWS_AS(lower_bound_report(cert, BoundCase::General), NotCertified);
}
