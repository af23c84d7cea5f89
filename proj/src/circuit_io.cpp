#include "circkit/circuit_io.hpp"

#include <sstream>
#include <unordered_map>

#include "circkit/errors.hpp"

namespace circkit {

namespace {

[[noreturn]] void fail(std::size_t lineno, const std::string& msg) {
  throw SyntaxError("line " + std::to_string(lineno) + ": " + msg);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch == ':' || ch == '=' || ch == '#') return false;
  }
  return true;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  Field field;
  bool have_field = false;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<NodeId> outputs;
  std::unordered_map<std::string, NodeId> ids;

  auto declare = [&](std::size_t lineno, NodeKind kind, const std::string& name) {
    if (!valid_name(name)) fail(lineno, "bad node name `" + name + "`");
    if (ids.count(name) != 0) fail(lineno, "node `" + name + "` declared twice");
    ids.emplace(name, static_cast<NodeId>(nodes.size()));
    nodes.push_back(Node{kind, name});
    return static_cast<NodeId>(nodes.size() - 1);
  };

  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> words;
    for (std::string w; ls >> w;) words.push_back(w);
    if (words.empty()) continue;

    const auto& head = words[0];
    if (head == "field") {
      if (have_field || words.size() != 2) fail(lineno, "expected a single `field` line");
      if (!nodes.empty()) fail(lineno, "`field` must precede all gates");
      try {
        field = Field::parse(words[1]);
      } catch (const Error& e) {
        fail(lineno, e.what());
      }
      have_field = true;
    } else if (head == "input" || head == "one") {
      if (words.size() != 2) fail(lineno, "expected `" + head + " <name>`");
      declare(lineno, head == "input" ? NodeKind::Input : NodeKind::One, words[1]);
    } else if (head == "output") {
      if (words.size() < 2) fail(lineno, "`output` needs at least one node");
      for (std::size_t i = 1; i < words.size(); ++i) {
        auto it = ids.find(words[i]);
        if (it == ids.end()) throw DanglingReference("line " + std::to_string(lineno) + ": unknown node `" + words[i] + "`");
        outputs.push_back(it->second);
      }
    } else {
      if (words.size() < 3 || words[1] != "=" || (words[2] != "+" && words[2] != "*")) {
        fail(lineno, "expected `<name> = + ...` or `<name> = * ...`");
      }
      std::vector<Edge> pending;
      for (std::size_t i = 3; i < words.size(); ++i) {
        const auto& w = words[i];
        auto colon = w.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == w.size()) {
          fail(lineno, "expected `<label>:<child>`, got `" + w + "`");
        }
        Scalar label;
        try {
          label = Scalar::parse(w.substr(0, colon), field);
        } catch (const Error& e) {
          fail(lineno, e.what());
        }
        const std::string child = w.substr(colon + 1);
        auto it = ids.find(child);
        if (it == ids.end()) {
          throw DanglingReference("line " + std::to_string(lineno) + ": unknown node `" + child + "`");
        }
        pending.push_back(Edge{it->second, 0, label});
      }
      NodeId v = declare(lineno, words[2] == "+" ? NodeKind::Sum : NodeKind::Product, head);
      for (auto& e : pending) {
        e.to = v;
        edges.push_back(std::move(e));
      }
    }
  }
  return Circuit(field, std::move(nodes), std::move(edges), std::move(outputs));
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "field " << c.field().to_string() << "\n";
  for (NodeId v = 0; v < c.node_count(); ++v) {
    const auto& node = c.node(v);
    switch (node.kind) {
      case NodeKind::Input: os << "input " << node.name << "\n"; break;
      case NodeKind::One: os << "one " << node.name << "\n"; break;
      case NodeKind::Sum:
      case NodeKind::Product:
        os << node.name << " = " << (node.kind == NodeKind::Sum ? '+' : '*');
        for (auto ei : c.in_edges(v)) {
          const auto& e = c.edges()[ei];
          os << ' ' << e.label.to_string() << ':' << c.node(e.from).name;
        }
        os << "\n";
        break;
    }
  }
  if (!c.outputs().empty()) {
    os << "output";
    for (NodeId o : c.outputs()) os << ' ' << c.node(o).name;
    os << "\n";
  }
  return os.str();
}

}  // namespace circkit
