#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "circkit/errors.hpp"
#include "circkit/linalg.hpp"
#include "circkit/poly_io.hpp"
#include "circkit/sparse_poly.hpp"

using namespace circkit;

namespace {

SparsePoly var(const VarList& vars, const std::string& name) { return SparsePoly::variable(vars, name); }

}  // namespace

TEST_CASE("rational scalars are exact") {
  const Scalar a(1, 3);
  const Scalar b(1, 6);
  CHECK(a + b == Scalar(1, 2));
  CHECK(a * b == Scalar(1, 18));
  CHECK((a / b) == Scalar(2));
  CHECK(Scalar::parse("-4/6") == Scalar(-2, 3));
  CHECK(Scalar(0).is_zero());
  CHECK_THROWS_AS(Scalar(0).inverse(), DivisionByZero);
}

TEST_CASE("prime-field scalars reduce and refuse mixing") {
  const Field f7 = Field::prime(7);
  const Scalar three(mpq_class(3), f7);
  CHECK(three.inverse() == Scalar(mpq_class(5), f7));
  CHECK(Scalar(mpq_class(10), f7) == three);
  CHECK(Scalar(mpq_class(1, 2), f7) == Scalar(mpq_class(4), f7));
  CHECK_THROWS_AS(three + Scalar(3), FieldMismatch);
  CHECK(Field::parse("F7") == f7);
  CHECK(Field::parse("F<7>") == f7);
  CHECK(Field::parse("Q").is_rational());
}

TEST_CASE("monomials use graded lex order") {
  const std::vector<std::uint32_t> e1 = {2, 0};
  const std::vector<std::uint32_t> e2 = {1, 1};
  const std::vector<std::uint32_t> e3 = {0, 3};
  const auto a = Monomial::from_dense(e1);
  const auto b = Monomial::from_dense(e2);
  const auto c = Monomial::from_dense(e3);
  CHECK(grlex_compare(c, a) < 0);  // higher degree first
  CHECK(grlex_compare(a, b) < 0);
  CHECK((a * b).to_dense(2) == std::vector<std::uint32_t>{3, 1});
  CHECK(b.degree_in({true, false}) == 1);
  const auto basis = monomial_basis(2, 2);
  REQUIRE(basis.size() == 3);
  CHECK(basis[0] == a);
  CHECK(basis[1] == b);
}

TEST_CASE("polynomial arithmetic and derivatives") {
  const auto vars = make_vars({"x", "y"});
  const auto x = var(vars, "x");
  const auto y = var(vars, "y");
  const auto f = (x + y * Scalar(2)).pow(3);
  CHECK(f.term_count() == 4);
  CHECK(f.degree() == 3);
  CHECK(f.is_homogeneous());
  // d/dx (x + 2y)^3 = 3x^2 + 12xy + 12y^2
  const auto expected = x * x * Scalar(3) + x * y * Scalar(12) + y * y * Scalar(12);
  CHECK(partial_derivative(f, "x") == expected);
  CHECK((f - f).is_zero());
  CHECK(f.evaluate({Scalar(1), Scalar(1)}) == Scalar(27));
  CHECK_THROWS_AS(partial_derivative(f, "z"), UnknownVariable);
}

TEST_CASE("operands must share variables and field") {
  const auto x = SparsePoly::variable(make_vars({"x"}), "x");
  const auto y = SparsePoly::variable(make_vars({"y"}), "y");
  CHECK_THROWS_AS(x + y, VariableMismatch);
  const auto x7 = SparsePoly::variable(make_vars({"x"}), "x", Field::prime(7));
  CHECK_THROWS_AS(x * x7, FieldMismatch);
}

TEST_CASE("subset degrees and partial homogeneity") {
  const auto vars = make_vars({"a", "x", "y"});
  const auto a = var(vars, "a");
  const auto x = var(vars, "x");
  const auto y = var(vars, "y");
  const auto f = a * x * x + a * a * x * y;
  const auto in_z = degree_in_subset(f, {"x", "y"});
  CHECK(in_z.homogeneous);
  CHECK(in_z.degree == 2);
  CHECK_FALSE(degree_in_subset(f, {"a"}).homogeneous);
  CHECK(homogeneous_component(f, 3) == a * x * x);
  bool found = false;
  for (const auto& h : detect_partial_homogeneity(f)) {
    if (h.z == std::vector<std::string>{"x", "y"} && h.degree == 2) found = true;
  }
  CHECK(found);
}

TEST_CASE("specialization and re-embedding") {
  const auto vars = make_vars({"a", "x"});
  const auto f = var(vars, "a") * var(vars, "x") + var(vars, "x");
  const auto rest = make_vars({"x"});
  const auto g = f.specialize({{"a", Scalar(2)}}, rest);
  CHECK(g == SparsePoly::variable(rest, "x") * Scalar(3));
  const auto wide = make_vars({"w", "x"});
  CHECK(g.reembed(wide).var_names() == std::vector<std::string>{"w", "x"});
  CHECK_THROWS_AS(f.reembed(rest), VariableMismatch);
}

TEST_CASE("binomials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(2, 5) == 0);
  CHECK(binomial(mpz_class(135), 8) == mpz_class("2214919483920"));
  CHECK(dim_pol_hom(3, 2) == 6);
}

TEST_CASE("polynomial text format round-trips") {
  const auto vars = make_vars({"x1", "x2"});
  const auto f = var(vars, "x1") * Scalar(3, 2) - var(vars, "x2").pow(2);
  const auto text = serialize_poly(f);
  CHECK(parse_poly(text) == f);
  CHECK(serialize_poly(parse_poly(text)) == text);
  CHECK_THROWS_AS(parse_poly("field Q\nvars x\n1 2 3\n"), SyntaxError);
  const auto comps = parse_poly_map("field Q\nvars x y\ncomponent\n1 1 0\ncomponent\n2 0 1\n");
  REQUIRE(comps.size() == 2);
  CHECK(comps[1] == var(comps[1].vars(), "y") * Scalar(2));
}

TEST_CASE("exact rank and nullspace") {
  Matrix a = zero_matrix(3, 3);
  const int values[3][3] = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a(i, j) = Scalar(values[i][j]);
  }
  CHECK(rank(a) == 2);
  const Matrix k = nullspace(a);
  REQUIRE(k.cols() == 1);
  // (-1, -1, 1) spans the kernel
  CHECK(k(0, 0) == Scalar(-1));
  CHECK(k(1, 0) == Scalar(-1));
  CHECK(k(2, 0) == Scalar(1));
  const Matrix zero = a * k;
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(zero(i, 0).is_zero());
  const auto e = row_reduce(a);
  CHECK(e.pivot_columns == std::vector<Eigen::Index>{0, 1});
  CHECK(e.reduced(0, 2) == Scalar(1));
  CHECK(e.reduced(1, 2) == Scalar(1));
}
