#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "circkit/elusive.hpp"
#include "circkit/families.hpp"
#include "circkit/normalizer.hpp"
#include "circkit/universal.hpp"

namespace circkit {

using Json = nlohmann::json;

/// Integers up to 2^53 in magnitude as JSON numbers, larger ones as strings.
Json exact(const mpz_class& v);
/// Integers as above, proper fractions as "p/q".
Json exact(const mpq_class& v);
Json exact(const Scalar& v);

struct Check {
  std::string name;
  std::string claim;
  Json measured;
  bool ok = false;
};

struct RunReport {
  std::string command;
  Json params = Json::object();
  std::vector<std::string> artifacts;
  std::vector<Check> checks;
  Json result = Json::object();
  std::map<std::string, double> timings;  // seconds

  void check(std::string name, std::string claim, Json measured, bool ok);
  bool all_ok() const;
  Json to_json() const;
};

/// Sorted keys, two-space indent, trailing newline.
std::string canonical(const Json& j);

Json to_json(const GateCensus& census, const CensusBounds& bounds);
Json to_json(const NormalFormReport& rep);
Json to_json(const Certificate& cert);
Json to_json(const InequalityResult& res);
Json to_json(const BoundReport& rep);
Json to_json(const PolynomialFamily& fam);
Json to_json(const UniversalGraph& g);

}  // namespace circkit
