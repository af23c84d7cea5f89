#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "circkit/circuit_io.hpp"
#include "circkit/errors.hpp"
#include "circkit/families.hpp"
#include "circkit/permanent.hpp"
#include "circkit/poly_io.hpp"

using namespace circkit;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(CIRCKIT_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// a x^2 + b x y + a b y^2
SparsePoly quadratic() {
  const auto vars = make_vars({"a", "b", "x", "y"});
  const auto a = SparsePoly::variable(vars, "a");
  const auto b = SparsePoly::variable(vars, "b");
  const auto x = SparsePoly::variable(vars, "x");
  const auto y = SparsePoly::variable(vars, "y");
  return a * x * x + b * x * y + a * b * y * y;
}

}  // namespace

TEST_CASE("case 1 coefficients by hand") {
  const auto f = quadratic();
  const auto fam = decompose_case1(f, {"a", "b"}, {"x", "y"});
  CHECK(fam.kind == FamilyCase::Case1);
  CHECK(fam.partition.r == 2);
  CHECK(fam.k() == 2);
  CHECK(fam.p() == 1);
  CHECK(fam.m_prime() == 3);
  CHECK(fam.m() == 3);
  const auto& y = fam.y_vars;
  const auto a = SparsePoly::variable(y, "a");
  const auto b = SparsePoly::variable(y, "b");
  // basis x^2, xy, y^2
  CHECK(fam.coeffs[0][0] == a);
  CHECK(fam.coeffs[0][1] == b);
  CHECK(fam.coeffs[0][2] == a * b);
  CHECK(reconstruction_holds(fam, f));
  CHECK(fam.row_polynomial(0).reembed(f.vars()) == f);

  const auto spec = specialize(fam, {Scalar(2), Scalar(3)});
  const auto& z = fam.z_vars;
  const auto x = SparsePoly::variable(z, "x");
  const auto w = SparsePoly::variable(z, "y");
  REQUIRE(spec.tuple.size() == 1);
  CHECK(spec.tuple[0] == x * x * Scalar(2) + x * w * Scalar(3) + w * w * Scalar(6));
  CHECK_FALSE(spec.witness.has_value());
  CHECK_THROWS_AS(specialize(fam, {Scalar(1)}), DimensionMismatch);
}

TEST_CASE("case 2 on the bilinear example") {
  const auto f = parse_poly(slurp("bilinear.poly"));
  auto fam = decompose_case2(f, {"u"}, {"a", "b"}, {"x", "y"});
  CHECK(fam.kind == FamilyCase::Case2);
  CHECK(fam.p() == 1);
  CHECK(fam.m() == 3);
  CHECK(reconstruction_holds(fam, f));
  fam.source = parse_circuit(slurp("bilinear.circ"));
  const auto spec = specialize(fam, {Scalar(-1), Scalar(1, 2)});
  REQUIRE(spec.witness.has_value());
  CHECK(spec.source_size == 19);
  CHECK(spec.within_bound);
  CHECK(spec.witness_size < 5 * spec.source_size);
  CHECK(spec.witness_matches);
  const auto& z = fam.z_vars;
  const auto x = SparsePoly::variable(z, "x");
  const auto y = SparsePoly::variable(z, "y");
  CHECK(spec.tuple[0] == x * x * Scalar(-1) + x * y * Scalar(1, 2) + y * y * Scalar(-1, 2));
}

TEST_CASE("partition errors") {
  const auto f = quadratic();
  CHECK_THROWS_AS(decompose_case1(f, {"a"}, {"x", "y"}), VariableMismatch);
  CHECK_THROWS_AS(decompose_case1(f, {"a", "b", "q"}, {"x", "y"}), UnknownVariable);
  CHECK_THROWS_AS(decompose_case1(f, {"a", "x"}, {"b", "y"}), NotHomogeneousInZ);
  const auto g = parse_poly("field Q\nvars u a x\n1 2 0 1\n1 0 1 1\n");
  CHECK_THROWS_AS(decompose_case2(g, {"u"}, {"a"}, {"x"}), DegreeNotOneInX);
  // d/du1 (u1 u2 x) = u2 x still involves X
  const auto h = parse_poly("field Q\nvars u1 u2 a x\n1 1 1 0 1\n");
  CHECK_THROWS_AS(decompose_case2(h, {"u1", "u2"}, {"a"}, {"x"}), VariableMismatch);
}

TEST_CASE("permanent in case 1") {
  const auto obj = permanent_objects(3, 1, PermanentVariant::Case1YZ);
  CHECK(obj.partition.y == std::vector<std::string>{"x11", "x12", "x13"});
  CHECK(obj.partition.z.size() == 6);
  CHECK(obj.family.m_prime() == 21);
  CHECK(reconstruction_holds(obj.family, obj.f));
  const auto spec = specialize(obj.family, {Scalar(1), Scalar(0), Scalar(0)});
  const auto& z = obj.family.z_vars;
  const auto expected = SparsePoly::variable(z, "x22") * SparsePoly::variable(z, "x33") +
                        SparsePoly::variable(z, "x23") * SparsePoly::variable(z, "x32");
  CHECK(spec.tuple[0] == expected);
  CHECK(spec.within_bound);
  CHECK(spec.witness_size <= spec.source_size);
  CHECK(spec.witness_matches);
}

TEST_CASE("permanent in case 2") {
  const auto obj = permanent_objects(4, 2, PermanentVariant::Case2XYZ);
  CHECK(obj.partition.x.size() == 4);
  CHECK(obj.family.k() == 4);
  CHECK(obj.family.p() == 4);
  CHECK(obj.family.m_prime() == 36);
  CHECK(obj.family.m() == 144);
  CHECK(reconstruction_holds(obj.family, obj.f));
  const auto spec = specialize(obj.family, {Scalar(1), Scalar(2), Scalar(-1), Scalar(1, 3)});
  CHECK(spec.source_size == 90);
  CHECK(spec.within_bound);
  CHECK(spec.witness_matches);
}

TEST_CASE("permanent parameter ranges") {
  CHECK_THROWS_AS(permanent_objects(3, 2, PermanentVariant::Case1YZ), ParamViolation);
  CHECK_THROWS_AS(permanent_objects(3, 0, PermanentVariant::Case1YZ), ParamViolation);
  CHECK_THROWS_AS(permanent_objects(4, 1, PermanentVariant::Case2XYZ), ParamViolation);
  CHECK_THROWS_AS(permanent_objects(6, 2, PermanentVariant::Case1YZ), ParamViolation);
  CHECK_NOTHROW(permanent_objects(5, 3, PermanentVariant::Case2XYZ));
}
