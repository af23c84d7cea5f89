#include "circkit/poly_io.hpp"

#include <charconv>
#include <sstream>

#include "circkit/errors.hpp"

namespace circkit {

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream is(line);
  for (std::string w; is >> w;) words.push_back(w);
  return words;
}

std::string strip_comment(std::string line) {
  const auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  return line;
}

[[noreturn]] void fail(std::size_t lineno, const std::string& msg) {
  throw SyntaxError("line " + std::to_string(lineno) + ": " + msg);
}

struct Parsed {
  Field field;
  VarList vars;
  std::vector<SparsePoly> components;
};

Parsed parse_impl(std::string_view text, bool allow_components) {
  Parsed out;
  bool have_field = false;
  bool have_vars = false;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const auto words = split_words(strip_comment(raw));
    if (words.empty()) continue;
    if (words[0] == "field") {
      if (have_field || words.size() != 2) fail(lineno, "expected a single `field` line");
      try {
        out.field = Field::parse(words[1]);
      } catch (const Error& e) {
        fail(lineno, e.what());
      }
      have_field = true;
      continue;
    }
    if (words[0] == "vars") {
      if (!have_field) fail(lineno, "`vars` before `field`");
      if (have_vars) fail(lineno, "duplicate `vars` line");
      out.vars = make_vars(std::vector<std::string>(words.begin() + 1, words.end()));
      have_vars = true;
      if (!allow_components) out.components.emplace_back(out.vars, out.field);
      continue;
    }
    if (words[0] == "component") {
      if (!allow_components) fail(lineno, "`component` outside a polynomial map");
      if (!have_vars) fail(lineno, "`component` before `vars`");
      out.components.emplace_back(out.vars, out.field);
      continue;
    }
    if (!have_vars) fail(lineno, "term before `vars`");
    if (out.components.empty()) fail(lineno, "term before the first `component`");
    const std::size_t n = out.vars->size();
    if (words.size() != n + 1) {
      fail(lineno, "expected coefficient and " + std::to_string(n) + " exponents");
    }
    Scalar coef;
    try {
      coef = Scalar::parse(words[0], out.field);
    } catch (const Error& e) {
      fail(lineno, e.what());
    }
    std::vector<std::uint32_t> exps(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& w = words[i + 1];
      auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), exps[i]);
      if (ec != std::errc() || ptr != w.data() + w.size()) fail(lineno, "bad exponent `" + w + "`");
    }
    out.components.back().add_term(Monomial::from_dense(exps), coef);
  }
  if (!have_field) fail(lineno, "missing `field` line");
  if (!have_vars) fail(lineno, "missing `vars` line");
  return out;
}

void write_header(std::ostringstream& os, Field field, const std::vector<std::string>& vars) {
  os << "field " << field.to_string() << "\n";
  os << "vars";
  for (const auto& v : vars) os << ' ' << v;
  os << "\n";
}

void write_terms(std::ostringstream& os, const SparsePoly& p) {
  for (const auto& [m, c] : p.terms()) {
    os << c.to_string();
    for (auto e : m.to_dense(p.nvars())) os << ' ' << e;
    os << "\n";
  }
}

}  // namespace

SparsePoly parse_poly(std::string_view text) { return parse_impl(text, false).components.front(); }

std::string serialize_poly(const SparsePoly& p) {
  std::ostringstream os;
  write_header(os, p.field(), p.var_names());
  write_terms(os, p);
  return os.str();
}

std::vector<SparsePoly> parse_poly_map(std::string_view text) { return parse_impl(text, true).components; }

std::string serialize_poly_map(const std::vector<SparsePoly>& components) {
  if (components.empty()) throw DimensionMismatch("empty polynomial map");
  std::ostringstream os;
  write_header(os, components.front().field(), components.front().var_names());
  for (const auto& p : components) {
    if (p.field() != components.front().field() || p.var_names() != components.front().var_names()) {
      throw VariableMismatch("map components disagree on field or variables");
    }
    os << "component\n";
    write_terms(os, p);
  }
  return os.str();
}

}  // namespace circkit
