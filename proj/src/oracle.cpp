#include "detequiv/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "detequiv/equivalence.hpp"

namespace detequiv {

namespace {

using Rng = std::mt19937_64;
using Cell = std::pair<std::size_t, std::size_t>;

constexpr std::uint64_t kEnumerationLimit = 10'000'000;

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Rationals: numerator in [-9, 9], denominator in [1, 9]. Prime fields: uniform.
Scalar random_scalar(const FieldSpec& field, Rng& rng, bool nonzero) {
  if (field.is_rational()) {
    std::int64_t num = 0;
    do {
      num = uniform_int(rng, -9, 9);
    } while (nonzero && num == 0);
    return Scalar(mpq_class(static_cast<long>(num), static_cast<unsigned long>(uniform_int(rng, 1, 9))));
  }
  const std::int64_t p = field.modulus();
  return Scalar(field, static_cast<std::uint64_t>(uniform_int(rng, nonzero ? 1 : 0, p - 1)));
}

struct ZeroPlan {
  struct Pair {
    std::size_t x;
    std::size_t y;
    bool symmetric;
  };
  std::vector<Pair> pairs;

  std::set<Cell> cells() const {
    std::set<Cell> out;
    for (const auto& p : pairs) {
      out.insert({p.x, p.y});
      if (p.symmetric) out.insert({p.y, p.x});
    }
    return out;
  }
};

ZeroPlan plan_zeros(std::size_t n, std::size_t count, Rng& rng) {
  if (2 * count > n) {
    throw PreconditionError("cannot place " + std::to_string(count) +
                            " vertex-disjoint zero pairs on " + std::to_string(n) + " points");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  ZeroPlan plan;
  for (std::size_t i = 0; i < count; ++i) {
    plan.pairs.push_back({order[2 * i], order[2 * i + 1], uniform_int(rng, 0, 1) == 1});
  }
  return plan;
}

bool filled_before(std::size_t r, std::size_t c, std::size_t i, std::size_t j) {
  return r < i || (r == i && c < j);
}

// Every fully assigned 2x2 minor on four distinct points that uses (i, j).
bool minors_through_cell_ok(const Matrix& m, std::size_t i, std::size_t j) {
  const auto n = m.size();
  for (std::size_t w = 0; w < n; ++w) {
    if (w == i || w == j) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (c == i || c == j || c == w) continue;
      if (!filled_before(i, c, i, j) || !filled_before(w, j, i, j) || !filled_before(w, c, i, j)) {
        continue;
      }
      if ((m(i, j) * m(w, c) - m(i, c) * m(w, j)).is_zero()) return false;
    }
  }
  return true;
}

// One attempt of entrywise rejection sampling; each off-diagonal entry is
// redrawn a bounded number of times before the attempt is abandoned.
std::optional<Matrix> sample_once(const FieldSpec& field, std::size_t n,
                                  const std::set<Cell>& zeros, Rng& rng) {
  const std::size_t redraws =
      field.is_rational() ? 32 : std::min<std::size_t>(32, 2 * field.modulus());
  Matrix m(field, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = random_scalar(field, rng, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (zeros.count({i, j})) {
        m(i, j) = field.zero();
        if (!minors_through_cell_ok(m, i, j)) return std::nullopt;
        continue;
      }
      bool placed = false;
      for (std::size_t r = 0; r < redraws && !placed; ++r) {
        m(i, j) = random_scalar(field, rng, true);
        placed = minors_through_cell_ok(m, i, j);
      }
      if (!placed) return std::nullopt;
    }
  return m;
}

using Point = std::pair<Scalar, Scalar>;

// Distinct points of the projective line, shuffled.
std::vector<Point> projective_points(const FieldSpec& field, std::size_t count, Rng& rng) {
  std::vector<Point> pts;
  if (field.is_rational()) {
    std::vector<std::int64_t> ts(61);
    std::iota(ts.begin(), ts.end(), -30);
    std::shuffle(ts.begin(), ts.end(), rng);
    for (std::size_t i = 0; i < count; ++i) pts.emplace_back(field.one(), field.from_int(ts[i]));
    return pts;
  }
  const std::uint64_t p = field.modulus();
  if (count > p + 1) return pts;
  std::vector<std::uint64_t> ids(p + 1);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  for (std::size_t i = 0; i < count; ++i) {
    if (ids[i] == p) {
      pts.emplace_back(field.zero(), field.one());
    } else {
      pts.emplace_back(field.one(), Scalar(field, ids[i]));
    }
  }
  return pts;
}

std::size_t projective_size(const FieldSpec& field) {
  return field.is_rational() ? 61 : static_cast<std::size_t>(field.modulus()) + 1;
}

// h(x, y) = r(x) s(y) [a_x, c_y] off the diagonal, where [., .] is the 2x2
// bracket of two projective points. Any 2x2 minor on distinct rows {x, w} and
// columns {y, z} equals r r' s s' [a_x, a_w][c_y, c_z], so distinct points
// give class D, and h(x, y) = 0 exactly where c_y = a_x.
std::optional<Matrix> structured_once(const FieldSpec& field, std::size_t n, ZeroPlan plan,
                                      Rng& rng) {
  if (n > projective_size(field)) return std::nullopt;
  std::size_t spare = projective_size(field) - n;
  for (auto& pair : plan.pairs) {
    if (!pair.symmetric) {
      if (spare == 0) {
        pair.symmetric = true;
      } else {
        --spare;
      }
    }
  }
  std::size_t singles = 0;
  for (const auto& pair : plan.pairs) singles += pair.symmetric ? 0 : 1;

  auto pts = projective_points(field, n + singles, rng);
  std::vector<Point> a(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<Point> c = a;
  std::size_t fresh = n;
  for (const auto& pair : plan.pairs) {
    c[pair.y] = a[pair.x];
    c[pair.x] = pair.symmetric ? a[pair.y] : pts[fresh++];
  }
  std::vector<Scalar> r;
  std::vector<Scalar> s;
  for (std::size_t i = 0; i < n; ++i) {
    r.push_back(random_scalar(field, rng, true));
    s.push_back(random_scalar(field, rng, true));
  }
  Matrix m(field, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) {
        m(x, y) = random_scalar(field, rng, false);
      } else {
        Scalar bracket = a[x].first * c[y].second - a[x].second * c[y].first;
        m(x, y) = r[x] * s[y] * bracket;
      }
    }
  return m;
}

std::optional<Gauge> enumerate_gauge(const Kernel& t, const Kernel& q) {
  const auto n = t.size();
  const std::uint64_t p = t.field().modulus();
  std::vector<std::uint64_t> tv(n * n);
  std::vector<std::uint64_t> qv(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      tv[i * n + j] = t(i, j).residue();
      qv[i * n + j] = q(i, j).residue();
    }
  // g(0) = 1; the remaining values run over all nonzero residues.
  std::vector<std::uint64_t> g(n, 1);
  while (true) {
    bool ok = true;
    // q(x,y) g(y) = g(x) t(x,y) avoids inverses.
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) {
        ok = qv[x * n + y] * g[y] % p == g[x] * tv[x * n + y] % p;
      }
    if (ok) {
      std::vector<Scalar> values;
      for (auto v : g) values.emplace_back(t.field(), v);
      return Gauge(std::move(values));
    }
    std::size_t i = 1;
    while (i < n && g[i] == p - 1) g[i++] = 1;
    if (i >= n) return std::nullopt;
    ++g[i];
  }
}

std::optional<Gauge> propagate(const Kernel& t, const Kernel& q) {
  const auto n = t.size();
  std::vector<std::optional<Scalar>> g(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (g[root]) continue;
    g[root] = t.field().one();
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (g[v] || v == u) continue;
        if (!t(u, v).is_zero() && !q(u, v).is_zero()) {
          g[v] = *g[u] * t(u, v) / q(u, v);
        } else if (!t(v, u).is_zero() && !q(v, u).is_zero()) {
          g[v] = q(v, u) * *g[u] / t(v, u);
        } else {
          continue;
        }
        stack.push_back(v);
      }
    }
  }
  std::vector<Scalar> values;
  for (auto& v : g) values.push_back(std::move(*v));
  Gauge gauge(std::move(values));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!(q(x, y) == gauge[x] * t(x, y) / gauge[y])) return std::nullopt;
    }
  return gauge;
}

// ---- fast modular filters for the counterexample search ----

std::uint64_t det_mod(std::vector<std::uint64_t> a, std::size_t n, std::uint64_t p) {
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot * n + k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[pivot * n + j]);
      det = (p - det) % p;
    }
    const std::uint64_t pv = a[k * n + k];
    det = det * pv % p;
    std::uint64_t inv = 1;
    for (std::uint64_t e = p - 2, b = pv; e; e >>= 1, b = b * b % p) {
      if (e & 1) inv = inv * b % p;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::uint64_t f = a[i * n + k] * inv % p;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] = (a[i * n + j] + (p - f) * a[k * n + j]) % p;
    }
  }
  return det;
}

struct RawPair {
  std::size_t n;
  std::uint64_t p;
  std::vector<std::uint64_t> k;
  std::vector<std::uint64_t> q;
};

bool raw_minors_agree(const RawPair& r, const std::vector<std::vector<std::size_t>>& subsets) {
  for (const auto& s : subsets) {
    const auto m = s.size();
    std::vector<std::uint64_t> a(m * m);
    std::vector<std::uint64_t> b(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        a[i * m + j] = r.k[s[i] * r.n + s[j]];
        b[i * m + j] = r.q[s[i] * r.n + s[j]];
      }
    if (det_mod(std::move(a), m, r.p) != det_mod(std::move(b), m, r.p)) return false;
  }
  return true;
}

bool raw_similar(const RawPair& r, bool transposed) {
  const auto n = r.n;
  const auto p = r.p;
  std::vector<std::uint64_t> g(n, 1);
  while (true) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) {
        const auto t = transposed ? r.k[y * n + x] : r.k[x * n + y];
        ok = r.q[x * n + y] * g[y] % p == g[x] * t % p;
      }
    if (ok) return true;
    std::size_t i = 1;
    while (i < n && g[i] == p - 1) g[i++] = 1;
    if (i >= n) return false;
    ++g[i];
  }
}

Kernel raw_kernel(const FieldSpec& field, std::size_t n, const std::vector<std::uint64_t>& v) {
  std::vector<Scalar> entries;
  for (auto x : v) entries.emplace_back(field, x);
  return Kernel(default_labels(n), Matrix(field, n, std::move(entries)));
}

std::string serialize(const std::vector<std::uint64_t>& k, const std::vector<std::uint64_t>& q) {
  std::string out;
  for (auto x : k) out += std::to_string(x) + ",";
  out += "|";
  for (auto x : q) out += std::to_string(x) + ",";
  return out;
}

}  // namespace

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  return labels;
}

Instance gen_instance(const InstanceSpec& spec) {
  if (spec.n == 0) throw PreconditionError("instance needs at least one point");
  Rng rng(spec.seed);
  const auto plan = plan_zeros(spec.n, spec.zero_edges, rng);
  const auto zeros = plan.cells();

  std::optional<Matrix> m;
  bool structured = false;
  if (spec.method != GenMethod::Structured) {
    for (std::size_t attempt = 0; attempt < spec.max_attempts && !m; ++attempt) {
      m = sample_once(spec.field, spec.n, zeros, rng);
      if (m && spec.n >= 4 && !check_class_d(Kernel(default_labels(spec.n), *m)).holds) {
        m.reset();
      }
    }
  }
  if (!m && spec.method != GenMethod::Sampled) {
    m = structured_once(spec.field, spec.n, plan, rng);
    structured = m.has_value();
  }
  if (!m) {
    throw GenerationBudgetExceeded("no class-D kernel of size " + std::to_string(spec.n) +
                                   " over " + spec.field.to_string() + " within budget");
  }

  Kernel k(default_labels(spec.n), std::move(*m));
  std::vector<Scalar> g;
  for (std::size_t i = 0; i < spec.n; ++i) g.push_back(random_scalar(spec.field, rng, true));
  Gauge gauge(std::move(g));
  Kernel q = conjugate(spec.transpose ? transpose(k) : k, gauge);
  return Instance{std::move(k), std::move(q), GroundTruth{std::move(gauge), spec.transpose},
                  spec.seed, structured};
}

Kernel perturb(const Kernel& k, const Kernel& q, std::uint64_t seed) {
  require_same_domain(k, q);
  Rng rng(seed);
  const auto n = q.size();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const auto i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
    const auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
    Kernel out = q.with_entry(i, j, q(i, j) + random_scalar(q.field(), rng, true));
    // Minors of order <= 3 containing both i and j are the only ones that can move.
    for (std::size_t order = 1; order <= std::min<std::size_t>(3, n); ++order) {
      for (const auto& s : subsets_of_size(n, order)) {
        if (std::find(s.begin(), s.end(), i) == s.end() ||
            std::find(s.begin(), s.end(), j) == s.end()) {
          continue;
        }
        if (!(principal_minor(out, s) == principal_minor(q, s))) return out;
      }
    }
  }
  throw GenerationBudgetExceeded("no minor-changing perturbation found");
}

std::optional<GroundTruth> brute_force_diagonal_similar(const Kernel& k, const Kernel& q,
                                                        std::optional<bool> only_flag) {
  require_same_domain(k, q);
  const auto n = k.size();
  if (!k.field().is_rational()) {
    std::uint64_t work = n;
    for (std::size_t i = 1; i < n && work <= kEnumerationLimit; ++i) work *= k.field().modulus() - 1;
    if (work > kEnumerationLimit) {
      throw PreconditionError("gauge enumeration exceeds 10^7 candidates");
    }
  }
  for (bool transposed : {false, true}) {
    if (only_flag && *only_flag != transposed) continue;
    const Kernel t = transposed ? transpose(k) : k;
    auto g = k.field().is_rational() ? propagate(t, q) : enumerate_gauge(t, q);
    if (g) return GroundTruth{std::move(*g), transposed};
  }
  return std::nullopt;
}

std::vector<CounterexampleWitness> search_counterexample(FieldSpec field, std::size_t n,
                                                         std::uint64_t budget, std::uint64_t seed,
                                                         std::size_t max_witnesses) {
  if (field.is_rational()) throw PreconditionError("counterexample search needs a prime field");
  if (n < 4) throw PreconditionError("counterexample search needs at least four points");
  const std::uint64_t p = field.modulus();
  std::uint64_t work = n;
  for (std::size_t i = 1; i < n && work <= kEnumerationLimit; ++i) work *= p - 1;
  if (work > kEnumerationLimit) throw PreconditionError("gauge enumeration exceeds 10^7 candidates");

  // Orders 1 and 2 agree by construction; only larger subsets need checking.
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t order = 3; order <= n; ++order) {
    for (auto& s : subsets_of_size(n, order)) subsets.push_back(std::move(s));
  }

  Rng rng(seed);
  auto draw = [&](std::uint64_t lo) {
    return static_cast<std::uint64_t>(uniform_int(rng, static_cast<std::int64_t>(lo),
                                                  static_cast<std::int64_t>(p) - 1));
  };
  auto inverse = [&](std::uint64_t a) {
    std::uint64_t inv = 1;
    for (std::uint64_t e = p - 2, b = a; e; e >>= 1, b = b * b % p) {
      if (e & 1) inv = inv * b % p;
    }
    return inv;
  };

  std::map<std::string, CounterexampleWitness> found;
  RawPair raw{n, p, std::vector<std::uint64_t>(n * n), std::vector<std::uint64_t>(n * n)};
  for (std::uint64_t sample = 0; sample < budget && found.size() < max_witnesses; ++sample) {
    for (auto& v : raw.k) v = draw(0);
    for (std::size_t x = 0; x < n; ++x) {
      raw.q[x * n + x] = raw.k[x * n + x];
      for (std::size_t y = x + 1; y < n; ++y) {
        const auto prod = raw.k[x * n + y] * raw.k[y * n + x] % p;
        auto& qxy = raw.q[x * n + y];
        auto& qyx = raw.q[y * n + x];
        if (prod != 0) {
          qxy = draw(1);
          qyx = prod * inverse(qxy) % p;
        } else {
          switch (uniform_int(rng, 0, 2)) {
            case 0: qxy = 0; qyx = 0; break;
            case 1: qxy = 0; qyx = draw(1); break;
            default: qxy = draw(1); qyx = 0; break;
          }
        }
      }
    }
    if (!raw_minors_agree(raw, subsets)) continue;
    if (raw_similar(raw, false) || raw_similar(raw, true)) continue;

    auto key = serialize(raw.k, raw.q);
    if (found.count(key)) continue;
    Kernel k = raw_kernel(field, n, raw.k);
    Kernel q = raw_kernel(field, n, raw.q);
    if (check_equivalence(k, q).verdict != Verdict::Equivalent) continue;
    if (brute_force_diagonal_similar(k, q)) continue;
    auto dk = check_class_d(k);
    auto dq = check_class_d(q);
    found.emplace(std::move(key),
                  CounterexampleWitness{std::move(k), std::move(q), std::move(dk), std::move(dq)});
  }
  std::vector<CounterexampleWitness> out;
  for (auto& [key, w] : found) out.push_back(std::move(w));
  return out;
}

}  // namespace detequiv
