#include "circkit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "circkit/circuit_io.hpp"
#include "circkit/circuit_ops.hpp"
#include "circkit/elusive.hpp"
#include "circkit/errors.hpp"
#include "circkit/families.hpp"
#include "circkit/gradient.hpp"
#include "circkit/normalizer.hpp"
#include "circkit/permanent.hpp"
#include "circkit/poly_io.hpp"
#include "circkit/report.hpp"
#include "circkit/universal.hpp"

namespace circkit {

namespace {

struct Options {
  bool quiet = false;
  bool json = true;
  std::size_t budget_terms = kDefaultTermBudget;
  std::size_t budget_dim = kDefaultDimBudget;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot read `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("IoError", "cannot write `" + path + "`");
  out << text;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    out.push_back(item);
  }
  return out;
}

mpz_class parse_int(const std::string& text, const std::string& flag) {
  try {
    return mpz_class(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(flag + ": `" + text + "` is not an integer");
  }
}

std::vector<Scalar> parse_scalars(const std::string& text) {
  std::vector<Scalar> out;
  for (const auto& item : split(text, ',')) out.push_back(Scalar::parse(item));
  return out;
}

Matrix parse_matrix(const std::string& text) {
  std::string flat = text;
  std::replace(flat.begin(), flat.end(), ';', ' ');
  std::vector<std::string> rows;
  std::istringstream ss(flat);
  for (std::string row; ss >> row;) rows.push_back(row);
  if (rows.empty()) throw UsageError("--matrix: empty matrix");
  std::vector<std::vector<Scalar>> cells;
  for (const auto& row : rows) cells.push_back(parse_scalars(row));
  for (const auto& row : cells) {
    if (row.size() != cells[0].size()) throw DimensionMismatch("--matrix: rows of different lengths");
  }
  Matrix m = zero_matrix(static_cast<Eigen::Index>(cells.size()), static_cast<Eigen::Index>(cells[0].size()));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = 0; j < cells[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cells[i][j];
    }
  }
  return m;
}

BoundCase parse_case(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "general" || t == "0") return BoundCase::General;
  if (t == "pt1" || t == "1") return BoundCase::Pt1;
  if (t == "pt2" || t == "2") return BoundCase::Pt2;
  throw UsageError("--case: expected general, 1 (pt1) or 2 (pt2), got `" + text + "`");
}

Circuit load_circuit(const std::string& path) { return parse_circuit(read_file(path)); }

Json poly_list(const std::vector<SparsePoly>& polys) {
  Json arr = Json::array();
  for (const auto& p : polys) arr.push_back(p.to_string());
  return arr;
}

/// expand(a) == expand(b) output by output, over b's variables.
bool same_outputs(const Circuit& a, const Circuit& b, std::size_t budget) {
  const auto pa = expand(a, budget);
  const auto pb = expand(b, budget);
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    try {
      if (pa[i].reembed(pb[i].vars()) != pb[i]) return false;
    } catch (const VariableMismatch&) {
      return false;
    }
  }
  return true;
}

void oracle_check(RunReport& rep, const std::string& name, const Circuit& a, const Circuit& b, std::size_t budget) {
  try {
    const bool eq = same_outputs(a, b, budget);
    rep.check(name, "expansions equal", eq ? "equal" : "different", eq);
  } catch (const BudgetExceeded& e) {
    rep.result["skipped"].push_back(name + ": " + e.what());
  }
}

Json labels_to_json(const std::map<std::uint64_t, Scalar>& labels) {
  Json j = Json::object();
  for (const auto& [id, label] : labels) j[std::to_string(id)] = label.to_string();
  return j;
}

Certificate certificate_from_json(const Json& j) {
  const Json& c = j.contains("result") && j["result"].contains("certificate") ? j["result"]["certificate"] : j;
  Certificate cert;
  const std::string kind = c.at("kind").get<std::string>();
  if (kind == "DIMENSION") {
    cert.kind = CertificateKind::Dimension;
  } else if (kind == "RANK") {
    cert.kind = CertificateKind::Rank;
  } else if (kind == "INEQUALITY") {
    cert.kind = CertificateKind::Inequality;
  } else {
    throw SyntaxError("unknown certificate kind `" + kind + "`");
  }
  cert.name = c.value("name", "");
  const auto& s = c.at("s");
  cert.s = s.is_string() ? parse_int(s.get<std::string>(), "s") : mpz_class(std::to_string(s.get<long long>()));
  cert.r = c.at("r").get<unsigned>();
  cert.verdict = c.at("verdict").get<std::string>() == to_string(Verdict::Certified) ? Verdict::Certified
                                                                                      : Verdict::Inconclusive;
  for (const auto& e : c.value("evidence", Json::array())) cert.evidence.emplace_back(e.at(0), e.at(1));
  return cert;
}

int finish_certificate(RunReport& rep, const Certificate& cert, const std::string& out_path) {
  rep.result["certificate"] = to_json(cert);
  if (!out_path.empty()) {
    write_file(out_path, canonical(to_json(cert)));
    rep.artifacts.push_back(out_path);
  }
  return cert.certified() ? kExitOk : kExitInconclusive;
}

// ---------------------------------------------------------------- commands

struct NormalizeArgs {
  std::string in, out;
  unsigned degree = 0;
};

int cmd_normalize(const NormalizeArgs& a, const Options& o, RunReport& rep) {
  rep.params = {{"in", a.in}, {"degree", a.degree}};
  const Circuit c = load_circuit(a.in);
  NormalizeOptions opts;
  opts.max_terms = o.budget_terms;
  const auto res = normalize(c, a.degree, opts);
  std::uint64_t worst = 0;
  for (const auto& [deg, count] : res.census.by_degree) worst = std::max<std::uint64_t>(worst, count.n_times);
  rep.check("nTimesPerDegree", "N_j^x <= 8s = " + std::to_string(res.bounds.n_times_max), worst,
            res.bounds.n_times_ok);
  rep.check("gateCount", "N <= 24sr = " + std::to_string(res.bounds.n_max), res.census.total, res.bounds.n_ok);
  const auto nf = check_normal_form(res.circuit, true, o.budget_terms);
  rep.check("normalForm", "all normal-form conditions", nf.violations.size(), nf.ok);
  oracle_check(rep, "oracleEqual", res.circuit, c, o.budget_terms);
  rep.result["sourceSize"] = res.source_size;
  rep.result["binarizedSize"] = res.binarized_size;
  rep.result["size"] = res.circuit.size();
  rep.result["census"] = to_json(res.census, res.bounds);
  rep.result["normalForm"] = to_json(nf);
  if (a.out.empty()) {
    rep.result["circuit"] = serialize_circuit(res.circuit);
  } else {
    write_file(a.out, serialize_circuit(res.circuit));
    rep.artifacts.push_back(a.out);
  }
  return kExitOk;
}

int cmd_expand(const std::string& in, const Options& o, RunReport& rep) {
  rep.params = {{"in", in}};
  const Circuit c = load_circuit(in);
  const auto polys = expand(c, o.budget_terms);
  Json outs = Json::array();
  for (std::size_t i = 0; i < polys.size(); ++i) {
    outs.push_back({{"name", c.node(c.outputs()[i]).name},
                    {"polynomial", polys[i].to_string()},
                    {"terms", polys[i].term_count()},
                    {"degree", polys[i].degree()}});
  }
  const auto m = metrics(c);
  rep.result["outputs"] = outs;
  rep.result["size"] = m.size;
  rep.result["depth"] = m.depth;
  rep.result["fanin"] = m.fanin;
  return kExitOk;
}

struct BoundArgs {
  std::string s, big_l, which = "general";
  unsigned r = 1;
};

int cmd_bound(const BoundArgs& a, RunReport& rep) {
  rep.params = {{"r", a.r}, {"case", a.which}};
  const BoundCase which = parse_case(a.which);
  if (a.s.empty() && a.big_l.empty()) throw UsageError("bound: give --s and/or --L");
  if (!a.s.empty()) {
    rep.params["s"] = a.s;
    const auto b = bound_formula(parse_int(a.s, "--s"), a.r, which);
    rep.result["bound"] = to_json(b);
    rep.check("duality", "s0(bound) = s", exact(b.threshold_factor * b.bound_squared),
              b.threshold_factor * b.bound_squared == mpq_class(b.s));
  }
  if (!a.big_l.empty()) {
    rep.params["L"] = a.big_l;
    mpq_class l(a.big_l);
    l.canonicalize();
    rep.result["s0"] = exact(threshold_s0(l, a.r, which));
  }
  return kExitOk;
}

std::vector<Scalar> partial_identity(std::size_t rows, std::size_t n, std::size_t first_row) {
  // Row first_row + i selects column i.
  std::vector<Scalar> lambda(rows * n, Scalar(0));
  for (std::size_t i = 0; i < rows; ++i) lambda[i * n + first_row + i] = Scalar(1);
  return lambda;
}

void family_checks(RunReport& rep, const std::string& tag, const PermanentObjects& obj, const Specialization& sp) {
  rep.check(tag + ".reconstruction", "coefficients rebuild the polynomial", reconstruction_holds(obj.family, obj.f),
            reconstruction_holds(obj.family, obj.f));
  const bool case1 = obj.family.kind == FamilyCase::Case1;
  rep.check(tag + ".witnessSize", case1 ? "size <= " + std::to_string(sp.source_size)
                                        : "size < 5 * " + std::to_string(sp.source_size),
            sp.witness_size, sp.within_bound);
  rep.check(tag + ".witnessMatches", "witness computes the specialization", sp.witness_matches, sp.witness_matches);
}

int cmd_demo_perm(std::size_t n, std::size_t t, const Options& o, RunReport& rep) {
  rep.params = {{"n", n}, {"t", t}};
  (void)o;
  const auto cert = span_minor_permanents(n, t);
  const mpz_class expected = binomial(n, n - t);
  std::string span;
  for (const auto& [k, v] : cert.evidence) {
    if (k == "spanDim") span = v;
  }
  rep.check("spanDim", "dim = C(n,n-t) = " + expected.get_str(), std::stoul(span), span == expected.get_str());
  rep.check("certificate", "(C(n,n-t)-1, 1)-weakly elusive", to_string(cert.verdict), cert.certified());
  rep.result["certificate"] = to_json(cert);

  const auto c1 = permanent_objects(n, t, PermanentVariant::Case1YZ);
  const auto s1 = specialize(c1.family, partial_identity(t, n, 0));
  family_checks(rep, "case1", c1, s1);
  rep.result["case1"] = {{"family", to_json(c1.family)},
                         {"witnessSize", s1.witness_size},
                         {"sourceSize", s1.source_size},
                         {"specialization", poly_list(s1.tuple)}};
  if (t >= 2) {
    const auto c2 = permanent_objects(n, t, PermanentVariant::Case2XYZ);
    const auto s2 = specialize(c2.family, partial_identity(t - 1, n, 0));
    family_checks(rep, "case2", c2, s2);
    rep.result["case2"] = {{"family", to_json(c2.family)},
                           {"witnessSize", s2.witness_size},
                           {"sourceSize", s2.source_size},
                           {"specialization", poly_list(s2.tuple)}};
  }
  rep.result["permanentCircuitSize"] = c1.circuit.size();
  return kExitOk;
}

struct UniversalArgs {
  std::size_t s = 0, n = 0, m = 0;
  unsigned r = 0;
  bool gamma = false;
  std::string in, out, labels;
};

int cmd_universal_build(const UniversalArgs& a, const Options& o, RunReport& rep) {
  rep.params = {{"s", a.s}, {"r", a.r}, {"n", a.n}, {"m", a.m}};
  const auto g = UniversalGraph::build({a.s, a.r, a.n, a.m});
  rep.result["graph"] = to_json(g);
  rep.check("sumEdges", "|sum edges| < 64 s^2 r^3", exact(mpz_class(std::to_string(g.sum_edge_count()))),
            g.sum_edge_count() < g.sum_edge_bound());
  if (a.gamma) {
    const auto gm = gamma_map(g, o.budget_terms);
    rep.check("gammaBidegree", "sum: y-degree 2i-1, product: 2i-2", gm.failures.size(), gm.bidegree_ok);
    rep.result["gamma"] = {{"slotsChecked", gm.slots_checked},
                           {"variables", gm.vars->size()},
                           {"failures", gm.failures}};
    Json terms = Json::array();
    for (const auto& p : gm.outputs) terms.push_back(p.term_count());
    rep.result["gamma"]["outputTerms"] = terms;
  }
  return kExitOk;
}

int cmd_universal_embed(const UniversalArgs& a, const Options& o, RunReport& rep) {
  rep.params = {{"in", a.in}, {"degree", a.r}};
  const Circuit c = load_circuit(a.in);
  NormalizeOptions opts;
  opts.max_terms = o.budget_terms;
  const auto res = normalize(c, a.r, opts);
  const std::size_t s = a.s ? a.s : c.size();
  const UniversalParams params{s, a.r, res.circuit.variables().size(), res.circuit.outputs().size()};
  rep.params["s"] = s;
  const auto g = UniversalGraph::build(params);
  const auto emb = embed(g, res.circuit);
  const auto inst = instantiate(g, emb.labels, c.field(), res.circuit.variables());
  rep.check("sumEdges", "|sum edges| < 64 s^2 r^3", exact(mpz_class(std::to_string(g.sum_edge_count()))),
            g.sum_edge_count() < g.sum_edge_bound());
  oracle_check(rep, "instantiateEqual", inst, c, o.budget_terms);
  Json doc = {{"params", {{"s", params.s}, {"r", params.r}, {"n", params.n}, {"m", params.m}}},
              {"field", c.field().to_string()},
              {"variables", res.circuit.variables()},
              {"labels", labels_to_json(emb.labels)}};
  rep.result["graph"] = to_json(g);
  rep.result["labelCount"] = emb.labels.size();
  if (a.out.empty()) {
    rep.result["embedding"] = doc;
  } else {
    write_file(a.out, canonical(doc));
    rep.artifacts.push_back(a.out);
  }
  return kExitOk;
}

int cmd_universal_instantiate(const UniversalArgs& a, RunReport& rep) {
  rep.params = {{"labels", a.labels}};
  Json doc;
  try {
    doc = Json::parse(read_file(a.labels));
  } catch (const Json::parse_error& e) {
    throw SyntaxError(a.labels + ": " + e.what());
  }
  const auto& p = doc.at("params");
  const UniversalParams params{p.at("s").get<std::size_t>(), p.at("r").get<unsigned>(), p.at("n").get<std::size_t>(),
                               p.at("m").get<std::size_t>()};
  const Field field = Field::parse(doc.value("field", "Q"));
  std::map<std::uint64_t, Scalar> labels;
  for (const auto& [id, label] : doc.at("labels").items()) {
    labels.emplace(std::stoull(id), Scalar::parse(label.get<std::string>(), field));
  }
  std::vector<std::string> names;
  if (doc.contains("variables")) names = doc["variables"].get<std::vector<std::string>>();
  const auto g = UniversalGraph::build(params);
  const auto c = instantiate(g, labels, field, names);
  rep.result["size"] = c.size();
  if (a.out.empty()) {
    rep.result["circuit"] = serialize_circuit(c);
  } else {
    write_file(a.out, serialize_circuit(c));
    rep.artifacts.push_back(a.out);
  }
  return kExitOk;
}

struct FamilyArgs {
  std::string in, x, y, z, lambda, circuit, which = "1";
  std::size_t n = 0, t = 0;
};

PolynomialFamily family_from(const FamilyArgs& a, const SparsePoly& f) {
  const auto x = split(a.x, ',');
  const auto y = split(a.y, ',');
  const auto z = split(a.z, ',');
  return x.empty() ? decompose_case1(f, y, z) : decompose_case2(f, x, y, z);
}

void specialization_result(RunReport& rep, const Specialization& sp, bool with_witness) {
  rep.result["specialization"] = poly_list(sp.tuple);
  if (!with_witness) return;
  rep.result["witnessSize"] = sp.witness_size;
  rep.result["sourceSize"] = sp.source_size;
  rep.check("witnessSize", "within the size bound", sp.witness_size, sp.within_bound);
  rep.check("witnessMatches", "witness computes the specialization", sp.witness_matches, sp.witness_matches);
}

int cmd_family_extract(const FamilyArgs& a, RunReport& rep, bool do_specialize) {
  rep.params = {{"in", a.in}, {"x", a.x}, {"y", a.y}, {"z", a.z}};
  const SparsePoly f = parse_poly(read_file(a.in));
  auto fam = family_from(a, f);
  const bool ok = reconstruction_holds(fam, f);
  rep.check("reconstruction", "coefficients rebuild the polynomial", ok, ok);
  rep.result["family"] = to_json(fam);
  if (do_specialize) {
    rep.params["lambda"] = a.lambda;
    if (!a.circuit.empty()) {
      rep.params["circuit"] = a.circuit;
      fam.source = load_circuit(a.circuit);
    }
    specialization_result(rep, specialize(fam, parse_scalars(a.lambda)), fam.source.has_value());
  }
  return kExitOk;
}

int cmd_family_perm(const FamilyArgs& a, RunReport& rep) {
  rep.params = {{"n", a.n}, {"t", a.t}, {"case", a.which}};
  PermanentVariant v;
  if (a.which == "1") {
    v = PermanentVariant::Case1YZ;
  } else if (a.which == "2") {
    v = PermanentVariant::Case2XYZ;
  } else {
    throw UsageError("--case: expected 1 or 2");
  }
  const auto obj = permanent_objects(a.n, a.t, v);
  const bool ok = reconstruction_holds(obj.family, obj.f);
  rep.check("reconstruction", "coefficients rebuild the polynomial", ok, ok);
  rep.result["family"] = to_json(obj.family);
  rep.result["circuitSize"] = obj.circuit.size();
  if (!a.lambda.empty()) {
    rep.params["lambda"] = a.lambda;
    specialization_result(rep, specialize(obj.family, parse_scalars(a.lambda)), true);
  }
  return kExitOk;
}

struct ElusiveArgs {
  std::string in, veronese, matrix, name, s, n, p, m, nx, ny, cert, out, which = "general";
  unsigned r = 1, dmax = 1;
  unsigned long q = 1, t = 0, big_n = 0, k = 1;
  std::size_t span_n = 0, span_t = 0;
};

PolyMap load_map(const ElusiveArgs& a) {
  if (!a.veronese.empty()) {
    const auto parts = split(a.veronese, ',');
    if (parts.size() != 2) throw UsageError("--veronese: expected n,k");
    return PolyMap::veronese(std::stoul(parts[0]), static_cast<unsigned>(std::stoul(parts[1])));
  }
  if (a.in.empty()) throw UsageError("dim-cert: give --in or --veronese");
  auto comps = parse_poly_map(read_file(a.in));
  if (comps.empty()) throw SyntaxError(a.in + ": no components");
  const auto vars = comps[0].vars();
  const Field field = comps[0].field();
  return PolyMap(vars, std::move(comps), field);
}

int cmd_dim_cert(const ElusiveArgs& a, const Options& o, RunReport& rep) {
  rep.params = {{"s", a.s}, {"r", a.r}, {"dmax", a.dmax}};
  if (!a.veronese.empty()) rep.params["veronese"] = a.veronese;
  if (!a.in.empty()) rep.params["in"] = a.in;
  const PolyMap f = load_map(a);
  const auto cert = certify_by_dimension(f, parse_int(a.s, "--s"), a.r, a.dmax, o.budget_dim);
  return finish_certificate(rep, cert, a.out);
}

int cmd_rank(const ElusiveArgs& a, RunReport& rep) {
  rep.params = {{"matrix", a.matrix}, {"s", a.s}};
  return finish_certificate(rep, rank_criterion(parse_matrix(a.matrix), parse_int(a.s, "--s")), a.out);
}

int cmd_ineq(const ElusiveArgs& a, RunReport& rep) {
  std::string name = a.name;
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
  rep.params = {{"name", name}};
  InequalityResult res;
  mpz_class s;
  unsigned degree = 1;
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw UsageError(std::string(flag) + " is required");
    return parse_int(v, flag);
  };
  if (name == "CODI2") {
    rep.params.update({{"n", a.n}, {"p", a.p}, {"m", a.m}, {"s", a.s}, {"r", a.r}});
    s = need(a.s, "--s");
    degree = a.r;
    res = codi2(need(a.n, "--n"), need(a.p, "--p").get_ui(), need(a.m, "--m"), s, a.r);
  } else if (name == "BIH") {
    rep.params.update({{"nx", a.nx}, {"p", a.p}, {"ny", a.ny}, {"q", a.q}, {"s", a.s}});
    s = need(a.s, "--s");
    degree = static_cast<unsigned>(2 * a.q - 1);
    res = bih(need(a.nx, "--nx"), need(a.p, "--p").get_ui(), need(a.ny, "--ny"), a.q, s);
  } else if (name == "PER") {
    unsigned long n = 0, t = a.t;
    if (a.big_n > 0) {
      const auto fam = per_family(a.big_n, a.k);
      n = fam.n;
      t = fam.t;
      s = fam.s;
      rep.params.update({{"N", a.big_n}, {"k", a.k}});
    } else {
      n = need(a.n, "--n").get_ui();
      s = need(a.s, "--s");
    }
    rep.params.update({{"n", std::to_string(n)}, {"t", t}, {"s", s.get_str()}});
    degree = static_cast<unsigned>(2 * (n - t) - 1);
    res = per_inequality(n, t, s);
  } else {
    throw UsageError("--name: expected CODI2, BIH or PER");
  }
  rep.result["inequality"] = to_json(res);
  return finish_certificate(rep, to_certificate(res, s, degree), a.out);
}

int cmd_span(const ElusiveArgs& a, RunReport& rep) {
  rep.params = {{"n", a.span_n}, {"t", a.span_t}};
  return finish_certificate(rep, span_minor_permanents(a.span_n, a.span_t), a.out);
}

int cmd_elusive_bound(const ElusiveArgs& a, RunReport& rep) {
  rep.params = {{"cert", a.cert}, {"case", a.which}};
  Json doc;
  try {
    doc = Json::parse(read_file(a.cert));
  } catch (const Json::parse_error& e) {
    throw SyntaxError(a.cert + ": " + e.what());
  }
  const auto cert = certificate_from_json(doc);
  const auto b = lower_bound_report(cert, parse_case(a.which));
  rep.result["bound"] = to_json(b);
  rep.check("duality", "s0(bound) = s", exact(b.threshold_factor * b.bound_squared),
            b.threshold_factor * b.bound_squared == mpq_class(b.s));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Options o;
  CLI::App app{"Exact toolkit for arithmetic circuits and elusive polynomial mappings", "circkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "JSON report on standard output (default)");
  app.add_flag("--quiet", o.quiet, "no report, exit code only");
  app.add_option("--budget-terms", o.budget_terms, "term cap for symbolic expansion")->capture_default_str();
  app.add_option("--budget-dim", o.budget_dim, "matrix-size cap for dimension counts")->capture_default_str();

  NormalizeArgs na;
  auto* normalize_cmd = app.add_subcommand("normalize", "normal-homogeneous form with census bounds");
  normalize_cmd->add_option("--in", na.in, "circuit file")->required();
  normalize_cmd->add_option("--degree", na.degree, "output degree r")->required();
  normalize_cmd->add_option("--out", na.out, "write the normalized circuit here");

  std::string expand_in;
  auto* expand_cmd = app.add_subcommand("expand", "expand every output to a polynomial");
  expand_cmd->add_option("--in", expand_in, "circuit file")->required();

  BoundArgs ba;
  auto* bound_cmd = app.add_subcommand("bound", "circuit-size bound from an elusiveness parameter");
  bound_cmd->add_option("--s", ba.s, "elusiveness parameter s");
  bound_cmd->add_option("--r", ba.r, "degree r (the claim is for 2r-1)")->capture_default_str();
  bound_cmd->add_option("--case", ba.which, "general, 1 or 2")->capture_default_str();
  bound_cmd->add_option("--L", ba.big_l, "size L for the threshold s0 = 64 L^2 r^3");

  std::size_t demo_n = 4, demo_t = 2;
  auto* demo_cmd = app.add_subcommand("demo", "end-to-end walkthroughs");
  demo_cmd->require_subcommand(1);
  auto* demo_perm = demo_cmd->add_subcommand("perm", "permanent: families, witnesses, span certificate");
  demo_perm->add_option("--n", demo_n, "matrix size")->capture_default_str();
  demo_perm->add_option("--t", demo_t, "rows in Y")->capture_default_str();

  UniversalArgs ua;
  auto* universal_cmd = app.add_subcommand("universal", "universal circuit-graph");
  universal_cmd->require_subcommand(1);
  auto* ubuild = universal_cmd->add_subcommand("build", "graph counts");
  ubuild->add_option("--s", ua.s)->required();
  ubuild->add_option("--r", ua.r)->required();
  ubuild->add_option("--n", ua.n)->required();
  ubuild->add_option("--m", ua.m)->required();
  ubuild->add_flag("--gamma", ua.gamma, "also expand the symbolic outputs and check bidegrees");
  auto* uembed = universal_cmd->add_subcommand("embed", "normalize a circuit and embed it");
  uembed->add_option("--in", ua.in, "circuit file")->required();
  uembed->add_option("--degree", ua.r, "output degree r")->required();
  uembed->add_option("--s", ua.s, "graph parameter s (default: circuit size)");
  uembed->add_option("--out", ua.out, "write the labels here");
  auto* uinst = universal_cmd->add_subcommand("instantiate", "circuit from embedding labels");
  uinst->add_option("--labels", ua.labels, "labels file written by embed")->required();
  uinst->add_option("--out", ua.out, "write the circuit here");

  FamilyArgs fa;
  auto* family_cmd = app.add_subcommand("family", "polynomial families of partially homogeneous polynomials");
  family_cmd->require_subcommand(1);
  auto* fextract = family_cmd->add_subcommand("extract", "coefficients in Y of the Z-monomials");
  auto* fspec = family_cmd->add_subcommand("specialize", "evaluate the family at lambda");
  for (auto* sub : {fextract, fspec}) {
    sub->add_option("--in", fa.in, "polynomial file")->required();
    sub->add_option("--x", fa.x, "comma-separated X (empty for case 1)");
    sub->add_option("--y", fa.y, "comma-separated Y")->required();
    sub->add_option("--z", fa.z, "comma-separated Z")->required();
  }
  fspec->add_option("--lambda", fa.lambda, "comma-separated values for Y")->required();
  fspec->add_option("--circuit", fa.circuit, "source circuit for the size witness");
  auto* fperm = family_cmd->add_subcommand("perm", "permanent family");
  fperm->add_option("--n", fa.n)->required();
  fperm->add_option("--t", fa.t)->required();
  fperm->add_option("--case", fa.which, "1 (Y,Z) or 2 (X,Y,Z)")->capture_default_str();
  fperm->add_option("--lambda", fa.lambda, "comma-separated values for Y");

  ElusiveArgs ea;
  auto* elusive_cmd = app.add_subcommand("elusive", "weak elusiveness certificates");
  elusive_cmd->require_subcommand(1);
  auto* edim = elusive_cmd->add_subcommand("dim-cert", "dimension-count certificate");
  edim->add_option("--in", ea.in, "polynomial map file");
  edim->add_option("--veronese", ea.veronese, "n,k for the Veronese map");
  edim->add_option("--s", ea.s)->required();
  edim->add_option("--r", ea.r)->required();
  edim->add_option("--dmax", ea.dmax)->capture_default_str();
  auto* erank = elusive_cmd->add_subcommand("rank", "rank criterion (r = 1)");
  erank->add_option("--matrix", ea.matrix, "rows separated by ';' or spaces, entries by ','")->required();
  erank->add_option("--s", ea.s)->required();
  auto* eineq = elusive_cmd->add_subcommand("ineq", "CODI2, BIH or PER inequality");
  eineq->add_option("--name", ea.name)->required();
  eineq->add_option("--s", ea.s);
  eineq->add_option("--n", ea.n);
  eineq->add_option("--p", ea.p);
  eineq->add_option("--m", ea.m);
  eineq->add_option("--r", ea.r);
  eineq->add_option("--nx", ea.nx);
  eineq->add_option("--ny", ea.ny);
  eineq->add_option("--q", ea.q);
  eineq->add_option("--t", ea.t);
  eineq->add_option("--family", ea.big_n, "N for n = N^4, t = N^3(N-1), s = N^(4k)");
  eineq->add_option("--k", ea.k);
  auto* espan = elusive_cmd->add_subcommand("span-per", "span of minor permanents");
  espan->add_option("--n", ea.span_n)->required();
  espan->add_option("--t", ea.span_t)->required();
  auto* ebound = elusive_cmd->add_subcommand("bound", "lower bound from a certificate");
  ebound->add_option("--cert", ea.cert, "certificate or report file")->required();
  ebound->add_option("--case", ea.which)->capture_default_str();
  for (auto* sub : {edim, erank, eineq, espan}) sub->add_option("--out", ea.out, "write the certificate here");

  RunReport rep;
  int code = kExitOk;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: UsageError: " << e.what() << "\n" << app.help();
    return kExitError;
  }

  try {
    if (normalize_cmd->parsed()) {
      rep.command = "normalize";
      code = cmd_normalize(na, o, rep);
    } else if (expand_cmd->parsed()) {
      rep.command = "expand";
      code = cmd_expand(expand_in, o, rep);
    } else if (bound_cmd->parsed()) {
      rep.command = "bound";
      code = cmd_bound(ba, rep);
    } else if (demo_perm->parsed()) {
      rep.command = "demo perm";
      code = cmd_demo_perm(demo_n, demo_t, o, rep);
    } else if (ubuild->parsed()) {
      rep.command = "universal build";
      code = cmd_universal_build(ua, o, rep);
    } else if (uembed->parsed()) {
      rep.command = "universal embed";
      code = cmd_universal_embed(ua, o, rep);
    } else if (uinst->parsed()) {
      rep.command = "universal instantiate";
      code = cmd_universal_instantiate(ua, rep);
    } else if (fextract->parsed() || fspec->parsed()) {
      rep.command = fspec->parsed() ? "family specialize" : "family extract";
      code = cmd_family_extract(fa, rep, fspec->parsed());
    } else if (fperm->parsed()) {
      rep.command = "family perm";
      code = cmd_family_perm(fa, rep);
    } else if (edim->parsed()) {
      rep.command = "elusive dim-cert";
      code = cmd_dim_cert(ea, o, rep);
    } else if (erank->parsed()) {
      rep.command = "elusive rank";
      code = cmd_rank(ea, rep);
    } else if (eineq->parsed()) {
      rep.command = "elusive ineq";
      code = cmd_ineq(ea, rep);
    } else if (espan->parsed()) {
      rep.command = "elusive span-per";
      code = cmd_span(ea, rep);
    } else if (ebound->parsed()) {
      rep.command = "elusive bound";
      code = cmd_elusive_bound(ea, rep);
    }
  } catch (const UsageError& e) {
    err << "error: UsageError: " << e.what() << "\n";
    return kExitError;
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    if (!o.quiet) out << canonical(Json{{"command", rep.command}, {"error", {{"code", e.code()}, {"message", e.what()}}}});
    return kExitError;
  } catch (const Json::exception& e) {
    err << "error: SyntaxError: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kExitError;
  }

  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.timings["totalSeconds"] = elapsed;
  if (!o.quiet) out << canonical(rep.to_json());
  if (!rep.all_ok()) return kExitError;
  return code;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace circkit
