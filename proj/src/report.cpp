#include "circkit/report.hpp"

namespace circkit {

namespace {

const mpz_class kSafe = mpz_class(1) << 53;

Json big(std::uint64_t v) { return exact(mpz_class(std::to_string(v))); }

}  // namespace

Json exact(const mpz_class& v) {
  if (abs(v) <= kSafe) return Json(v.get_si());
  return Json(v.get_str());
}

Json exact(const mpq_class& v) {
  if (v.get_den() == 1) return exact(v.get_num());
  return Json(v.get_str());
}

Json exact(const Scalar& v) { return exact(v.value()); }

void RunReport::check(std::string name, std::string claim, Json measured, bool ok) {
  checks.push_back(Check{std::move(name), std::move(claim), std::move(measured), ok});
}

bool RunReport::all_ok() const {
  for (const auto& c : checks) {
    if (!c.ok) return false;
  }
  return true;
}

Json RunReport::to_json() const {
  Json j;
  j["command"] = command;
  j["params"] = params;
  j["artifacts"] = artifacts;
  j["checks"] = Json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name}, {"claimBound", c.claim}, {"measured", c.measured}, {"ok", c.ok}});
  }
  j["result"] = result;
  j["ok"] = all_ok();
  Json t = Json::object();
  for (const auto& [k, v] : timings) t[k] = v;
  j["timings"] = t;
  return j;
}

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const GateCensus& census, const CensusBounds& bounds) {
  Json by = Json::object();
  for (const auto& [deg, count] : census.by_degree) {
    by[std::to_string(deg)] = {{"nPlus", count.n_plus}, {"nTimes", count.n_times}};
  }
  return {{"byDegree", by},
          {"N", census.total},
          {"oneGates", census.one_gates},
          {"bounds",
           {{"s", bounds.s},
            {"r", bounds.r},
            {"nTimesMax", bounds.n_times_max},
            {"NMax", bounds.n_max},
            {"lowPlusMax", bounds.low_plus_max},
            {"nTimesOk", bounds.n_times_ok},
            {"NOk", bounds.n_ok},
            {"lowPlusOk", bounds.low_plus_ok},
            {"perDegreePlusOk", bounds.per_degree_plus_ok},
            {"perDegreePlusFailures", bounds.per_degree_plus_failures},
            {"ok", bounds.ok}}}};
}

Json to_json(const NormalFormReport& rep) {
  Json v = Json::array();
  for (const auto& x : rep.violations) v.push_back({{"condition", x.condition}, {"node", x.node}, {"detail", x.detail}});
  return {{"ok", rep.ok}, {"violations", v}, {"semanticCheck", rep.semantic_check_done}};
}

Json to_json(const Certificate& cert) {
  Json ev = Json::array();
  for (const auto& [k, v] : cert.evidence) ev.push_back({k, v});
  return {{"kind", to_string(cert.kind)}, {"name", cert.name},       {"s", exact(cert.s)},
          {"r", cert.r},                  {"verdict", to_string(cert.verdict)}, {"evidence", ev}};
}

Json to_json(const InequalityResult& res) {
  Json ev = Json::array();
  for (const auto& [k, v] : res.evidence) ev.push_back({k, v});
  return {{"name", res.name}, {"holds", res.holds}, {"lhs", exact(res.lhs)}, {"rhs", exact(res.rhs)}, {"evidence", ev}};
}

Json to_json(const BoundReport& rep) {
  Json j = {{"s", exact(rep.s)},
            {"r", rep.r},
            {"case", to_string(rep.which)},
            {"boundSquared", exact(rep.bound_squared)},
            {"decimal", rep.decimal},
            {"formula", rep.formula},
            {"thresholdFactor", exact(rep.threshold_factor)}};
  j["bound"] = rep.bound ? exact(*rep.bound) : Json(nullptr);
  return j;
}

Json to_json(const PolynomialFamily& fam) {
  Json rows = Json::array();
  for (const auto& row : fam.coeffs) {
    Json r = Json::object();
    for (std::size_t q = 0; q < row.size(); ++q) {
      if (!row[q].is_zero()) r[fam.basis[q].to_string(*fam.z_vars)] = row[q].to_string();
    }
    rows.push_back(r);
  }
  return {{"case", to_string(fam.kind)},
          {"x", fam.partition.x},
          {"y", fam.partition.y},
          {"z", fam.partition.z},
          {"r", fam.partition.r},
          {"k", fam.k()},
          {"p", fam.p()},
          {"mPrime", fam.m_prime()},
          {"m", fam.m()},
          {"rows", rows}};
}

Json to_json(const UniversalGraph& g) {
  const auto& p = g.params();
  Json sums = Json::array();
  for (unsigned i = 1; i <= p.r; ++i) sums.push_back(big(g.sum_slots(i)));
  return {{"s", p.s},
          {"r", p.r},
          {"n", p.n},
          {"m", p.m},
          {"levels", g.levels()},
          {"block", g.block()},
          {"sumSlots", sums},
          {"nodeCount", big(g.node_count())},
          {"sumEdgeCount", big(g.sum_edge_count())},
          {"sumEdgeBound", big(g.sum_edge_bound())},
          {"productEdgeCount", big(g.product_edge_count())}};
}

}  // namespace circkit
