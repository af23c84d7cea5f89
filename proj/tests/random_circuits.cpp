#include "random_circuits.hpp"

#include <algorithm>
#include <string>

namespace circkit::testing {

namespace {

struct Pooled {
  NodeId id;
  unsigned degree;
};

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

Scalar label(std::mt19937_64& rng) { return pick(rng, label_grid()); }

std::vector<Pooled> of_degree(const std::vector<Pooled>& pool, unsigned d) {
  std::vector<Pooled> out;
  for (const auto& p : pool) {
    if (p.degree == d) out.push_back(p);
  }
  return out;
}

std::vector<NodeId> distinct(std::mt19937_64& rng, std::vector<Pooled> from, std::size_t k) {
  std::shuffle(from.begin(), from.end(), rng);
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < std::min(k, from.size()); ++i) out.push_back(from[i].id);
  return out;
}

}  // namespace

const std::vector<Scalar>& label_grid() {
  static const std::vector<Scalar> grid = {Scalar(-3), Scalar(-2), Scalar(-1), Scalar(1, 2),
                                           Scalar(1),  Scalar(2),  Scalar(3)};
  return grid;
}

Circuit random_homogeneous(std::mt19937_64& rng, const HomogeneousSpec& spec) {
  CircuitBuilder b;
  std::vector<Pooled> pool;
  for (std::size_t i = 1; i <= spec.n; ++i) pool.push_back({b.input("x" + std::to_string(i)), 1});
  std::size_t size = 0;

  // a chain reaching every degree 1..r
  const std::vector<Pooled> inputs = pool;
  NodeId cur = pick(rng, inputs).id;
  for (unsigned d = 2; d <= spec.r; ++d) {
    cur = b.product({{label(rng), cur}, {label(rng), pick(rng, inputs).id}});
    pool.push_back({cur, d});
    size += 2;
  }

  const bool correction = spec.correction && spec.r >= 2;
  const std::size_t reserve = 3 * spec.m + (correction ? 6 : 0);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int attempts = 0; size + 3 + reserve <= spec.max_size && attempts < 200; ++attempts) {
    if (coin(rng)) {
      const auto a = pick(rng, pool);
      const auto c = pick(rng, pool);
      if (a.degree + c.degree > spec.r) continue;
      pool.push_back({b.product({{label(rng), a.id}, {label(rng), c.id}}), a.degree + c.degree});
      size += 2;
    } else {
      const unsigned d = pick(rng, pool).degree;
      const auto kids = distinct(rng, of_degree(pool, d), 2 + coin(rng));
      if (kids.size() < 2) continue;
      std::vector<std::pair<Scalar, NodeId>> children;
      for (auto k : kids) children.emplace_back(label(rng), k);
      pool.push_back({b.sum(children), d});
      size += children.size();
    }
  }

  for (std::size_t o = 0; o < spec.m; ++o) {
    if (o == 0 && correction) {
      const unsigned a = std::uniform_int_distribution<unsigned>(1, spec.r - 1)(rng);
      const NodeId big_a = pick(rng, of_degree(pool, a)).id;
      const NodeId big_b = pick(rng, of_degree(pool, spec.r - a)).id;
      const Scalar c = label(rng);
      const NodeId one = b.one();
      const NodeId shifted = b.sum({{Scalar(1), big_a}, {c, one}});
      const NodeId g = b.product(std::vector<NodeId>{shifted, big_b});
      b.output(b.sum({{Scalar(1), g}, {-c, big_b}}));
      continue;
    }
    // the newest gates reach furthest back
    auto top = of_degree(pool, spec.r);
    if (top.size() > 3) top.erase(top.begin(), top.end() - 3);
    const auto kids = distinct(rng, top, 1 + std::uniform_int_distribution<std::size_t>(0, 2)(rng));
    std::vector<std::pair<Scalar, NodeId>> children;
    for (auto k : kids) children.emplace_back(label(rng), k);
    b.output(b.sum(children));
  }
  return b.build();
}

Circuit random_circuit(std::mt19937_64& rng, std::size_t n, std::size_t max_size) {
  CircuitBuilder b;
  std::vector<Pooled> pool;
  for (std::size_t i = 1; i <= n; ++i) pool.push_back({b.input("x" + std::to_string(i)), 1});
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) pool.push_back({b.one(), 0});
  std::size_t size = 0;
  NodeId last = pool.front().id;
  bool any = false;
  std::uniform_int_distribution<std::size_t> arity(2, 3);
  for (int attempts = 0; size + 3 <= max_size && attempts < 200; ++attempts) {
    const bool product = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    const auto kids = distinct(rng, pool, arity(rng));
    if (kids.size() < 2) continue;
    unsigned deg = 0;
    std::vector<std::pair<Scalar, NodeId>> children;
    for (auto k : kids) {
      const auto d = std::find_if(pool.begin(), pool.end(), [&](const Pooled& p) { return p.id == k; })->degree;
      deg = product ? deg + d : std::max(deg, d);
      children.emplace_back(label(rng), k);
    }
    if (deg > 8) continue;
    last = product ? b.product(children) : b.sum(children);
    pool.push_back({last, deg});
    size += children.size();
    any = true;
  }
  if (!any) last = b.sum({{Scalar(1), pool.front().id}});
  b.output(last);
  return b.build();
}

std::vector<std::pair<Circuit, unsigned>> homogeneous_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Circuit, unsigned>> out;
  for (std::size_t i = 0; i < count; ++i) {
    HomogeneousSpec spec;
    spec.n = 1 + i % 4;
    spec.r = 1 + static_cast<unsigned>((i / 4) % 5);
    spec.m = 1 + (i / 20) % 2;
    spec.max_size = 30;
    spec.correction = (i / 3) % 4 == 1;
    out.emplace_back(random_homogeneous(rng, spec), spec.r);
  }
  return out;
}

}  // namespace circkit::testing
