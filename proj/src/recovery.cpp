#include "detequiv/recovery.hpp"

#include <algorithm>
#include <deque>

namespace detequiv {

namespace {

std::string pair_text(std::size_t x, std::size_t y) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

void require_table_admits(const CaseTable& table, GlobalCase wanted) {
  if (table.first_neither() != nullptr) {
    throw PreconditionError("case table contains a Neither cycle");
  }
  const auto excluded = wanted == GlobalCase::Case1 ? CaseLabel::Case2Only : CaseLabel::Case1Only;
  for (const auto& e : table.entries()) {
    if (e.label == excluded) {
      throw PreconditionError(std::string("case table does not admit ") + to_string(wanted));
    }
  }
}

std::optional<std::size_t> smallest_third_point(std::size_t n, std::size_t x, std::size_t y) {
  for (std::size_t z = 0; z < n; ++z) {
    if (z != x && z != y) return z;
  }
  return std::nullopt;
}

// Branch-4 value for a doubly-zero pair through the third point z, or nullopt
// when its denominator vanishes.
std::optional<Scalar> through_point(const Kernel& k, const Kernel& q, std::size_t x,
                                    std::size_t y, std::size_t z, GlobalCase framework) {
  Scalar den = framework == GlobalCase::Case1 ? k(x, z) * k(z, y) : k(z, x) * k(y, z);
  if (den.is_zero()) return std::nullopt;
  return q(x, z) * q(z, y) / den;
}

CocycleFn build_cocycle(const Kernel& k, const Kernel& q, const CaseTable& table,
                        GlobalCase framework) {
  require_same_domain(k, q);
  require_table_admits(table, framework);
  const auto n = k.size();
  // In the Case-2 framework the roles of K(x,y) and K(y,x) swap.
  auto kf = [&](std::size_t a, std::size_t b) -> const Scalar& {
    return framework == GlobalCase::Case1 ? k(a, b) : k(b, a);
  };
  Matrix s(k.field(), n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) {
        s(x, y) = k.field().one();
      } else if (!kf(x, y).is_zero()) {
        s(x, y) = q(x, y) / kf(x, y);
      } else if (!kf(y, x).is_zero()) {
        if (q(y, x).is_zero()) throw BranchUnavailable(x, y);
        s(x, y) = kf(y, x) / q(y, x);
      } else {
        auto z = smallest_third_point(n, x, y);
        if (!z) throw BranchUnavailable(x, y);
        auto value = through_point(k, q, x, y, *z, framework);
        if (!value) throw BranchUnavailable(x, y);
        s(x, y) = std::move(*value);
      }
    }
  }
  return CocycleFn(std::move(s));
}

// Solves Q = conj(g)(T) by fixing g = 1 at a root of each connected component
// of the nonzero pattern of T and propagating along nonzero entries.
std::optional<Gauge> propagate_gauge(const Kernel& t, const Kernel& q, std::size_t base) {
  const auto n = t.size();
  std::vector<std::optional<Scalar>> g(n);
  std::vector<std::size_t> roots{base};
  for (std::size_t i = 0; i < n; ++i) {
    if (i != base) roots.push_back(i);
  }
  for (auto root : roots) {
    if (g[root]) continue;
    g[root] = t.field().one();
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < n; ++v) {
        if (g[v]) continue;
        if (!t(u, v).is_zero()) {
          // q(u,v) = g(u) t(u,v) / g(v)
          if (q(u, v).is_zero()) return std::nullopt;
          g[v] = *g[u] * t(u, v) / q(u, v);
        } else if (!t(v, u).is_zero()) {
          // q(v,u) = g(v) t(v,u) / g(u)
          if (q(v, u).is_zero()) return std::nullopt;
          g[v] = q(v, u) * *g[u] / t(v, u);
        } else {
          continue;
        }
        queue.push_back(v);
      }
    }
  }
  std::vector<Scalar> values;
  for (auto& v : g) values.push_back(std::move(*v));
  return Gauge(std::move(values));
}

RecoveryResult small_n_recover(const Kernel& k, const Kernel& q) {
  const auto base = smallest_label_index(k);
  for (bool transposed : {false, true}) {
    const Kernel t = transposed ? transpose(k) : k;
    auto g = propagate_gauge(t, q, base);
    if (!g || first_conjugation_mismatch(k, q, *g, transposed)) continue;
    return RecoveryResult{transposed,
                          std::move(*g),
                          base,
                          k.label(base),
                          transposed ? GlobalCase::Case2 : GlobalCase::Case1,
                          {true, k.size() * k.size()},
                          true};
  }
  throw NotRecoverable();
}

NotEquivalent neither_refutation(const Kernel& k, const Kernel& q, const Cycle& p) {
  std::vector<std::size_t> subset = p.vertices();
  std::sort(subset.begin(), subset.end());
  return NotEquivalent(p, subset, principal_minor(k, subset), principal_minor(q, subset));
}

RecoveryResult recover_in_framework(const Kernel& k, const Kernel& q, const CaseTable& table,
                                    GlobalCase which, const RecoveryOptions& options) {
  const auto n = k.size();
  auto c = which == GlobalCase::Case1 ? build_cocycle_case1(k, q, table)
                                      : build_cocycle_case2(k, q, table);
  if (auto violation = verify_cocycle(c)) {
    const auto& v = violation->vertices;
    throw VerificationFailed(v.front(), v.size() > 1 ? v[1] : v.front());
  }

  if (options.audit_consistency) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (x != y && k(x, y).is_zero() && k(y, x).is_zero()) consistency_audit(k, q, x, y, which);
      }
  }

  const auto base = smallest_label_index(k);
  auto g = extract_gauge(c, base);
  const bool transposed = which == GlobalCase::Case2;
  if (auto bad = first_conjugation_mismatch(k, q, g, transposed)) {
    throw VerificationFailed(bad->first, bad->second);
  }
  return RecoveryResult{transposed, std::move(g), base, k.label(base), which, {true, n * n}, false};
}

}  // namespace

BranchUnavailable::BranchUnavailable(std::size_t x, std::size_t y)
    : Error("no cocycle branch applies at " + pair_text(x, y)), x(x), y(y) {}

Inconsistent::Inconsistent(std::size_t x, std::size_t y, std::size_t z1, std::size_t z2)
    : Error("cocycle value at " + pair_text(x, y) + " differs between z=" + std::to_string(z1) +
            " and z=" + std::to_string(z2)),
      x(x),
      y(y),
      z1(z1),
      z2(z2) {}

NotEquivalent::NotEquivalent(MinorWitness witness)
    : Error("kernels are not determinantally equivalent"), witness(std::move(witness)) {}

NotEquivalent::NotEquivalent(Cycle neither_cycle, std::vector<std::size_t> subset,
                             Scalar minor_k, Scalar minor_q)
    : Error("a 3-cycle belongs to neither Case"),
      witness{std::move(subset), std::move(minor_k), std::move(minor_q)},
      neither_cycle(std::move(neither_cycle)) {}

ClassDViolation::ClassDViolation(char which, ClassDWitness witness)
    : Error(std::string("kernel ") + which + " is not of class D"),
      which(which),
      witness(std::move(witness)) {}

VerificationFailed::VerificationFailed(std::size_t x, std::size_t y)
    : Error("recovered transform does not reproduce Q at " + pair_text(x, y)), x(x), y(y) {}

NotRecoverable::NotRecoverable()
    : Error("no conjugation with or without transposition maps K to Q") {}

CocycleFn build_cocycle_case1(const Kernel& k, const Kernel& q, const CaseTable& table) {
  return build_cocycle(k, q, table, GlobalCase::Case1);
}

CocycleFn build_cocycle_case2(const Kernel& k, const Kernel& q, const CaseTable& table) {
  return build_cocycle(k, q, table, GlobalCase::Case2);
}

std::optional<CocycleViolation> verify_cocycle(const CocycleFn& c) {
  const auto n = c.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!c(x, x).is_one()) return CocycleViolation{1, {x}, c(x, x)};
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      Scalar p = c(x, y) * c(y, x);
      if (!p.is_one()) return CocycleViolation{2, {x, y}, std::move(p)};
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = x + 1; z < n; ++z) {
        if (z == y) continue;
        Scalar p = c(x, y) * c(y, z) * c(z, x);
        if (!p.is_one()) return CocycleViolation{3, {x, y, z}, std::move(p)};
      }
  return std::nullopt;
}

Gauge extract_gauge(const CocycleFn& c, std::size_t base) {
  if (base >= c.size()) throw IndexOutOfRange("gauge base point out of range");
  std::vector<Scalar> g;
  g.reserve(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) g.push_back(c(x, base));
  return Gauge(std::move(g));
}

Scalar consistency_audit(const Kernel& k, const Kernel& q, std::size_t x, std::size_t y,
                         GlobalCase framework) {
  require_same_domain(k, q);
  const auto n = k.size();
  if (x >= n || y >= n) throw IndexOutOfRange("audit pair out of range");
  if (x == y || !k(x, y).is_zero() || !k(y, x).is_zero()) {
    throw PreconditionError("consistency_audit needs K(x,y) = 0 = K(y,x) with x != y");
  }
  std::optional<Scalar> common;
  std::size_t first_z = 0;
  for (std::size_t z = 0; z < n; ++z) {
    if (z == x || z == y) continue;
    auto value = through_point(k, q, x, y, z, framework);
    if (!value) continue;
    if (!common) {
      common = std::move(value);
      first_z = z;
    } else if (!(*common == *value)) {
      throw Inconsistent(x, y, first_z, z);
    }
  }
  if (!common) throw PreconditionError("no admissible third point for " + pair_text(x, y));
  return *common;
}

std::size_t smallest_label_index(const Kernel& k) {
  const auto& labels = k.labels();
  return static_cast<std::size_t>(std::min_element(labels.begin(), labels.end()) -
                                  labels.begin());
}

std::optional<std::pair<std::size_t, std::size_t>> first_conjugation_mismatch(
    const Kernel& k, const Kernel& q, const Gauge& g, bool transposed) {
  require_same_domain(k, q);
  if (g.size() != k.size()) throw LengthMismatch("gauge length does not match kernel size");
  const auto n = k.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Scalar& t = transposed ? k(y, x) : k(x, y);
      if (!(q(x, y) == g[x] * t / g[y])) return std::make_pair(x, y);
    }
  return std::nullopt;
}

RecoveryResult recover(const Kernel& k, const Kernel& q, const RecoveryOptions& options) {
  require_same_domain(k, q);
  auto report = check_equivalence(k, q, options.max_order);
  if (report.verdict == Verdict::NotEquivalent) throw NotEquivalent(std::move(*report.witness));

  const auto n = k.size();
  if (n <= 3) return small_n_recover(k, q);

  auto dk = check_class_d(k);
  if (!dk.holds) throw ClassDViolation('k', std::move(*dk.witness));
  auto dq = check_class_d(q);
  if (!dq.holds) throw ClassDViolation('q', std::move(*dq.witness));

  const auto table = build_case_table(k, q);
  if (const auto* e = table.first_neither()) throw neither_refutation(k, q, e->cycle);
  const auto which = global_case(table);
  const bool tie = std::all_of(table.entries().begin(), table.entries().end(),
                               [](const CaseEntry& e) { return e.label == CaseLabel::Both; });
  if (!tie) return recover_in_framework(k, q, table, which, options);
  // An all-Both table leaves the framework open; Case 2 is the fallback.
  try {
    return recover_in_framework(k, q, table, GlobalCase::Case1, options);
  } catch (const VerificationFailed&) {
  } catch (const BranchUnavailable&) {
  } catch (const Inconsistent&) {
  }
  return recover_in_framework(k, q, table, GlobalCase::Case2, options);
}

}  // namespace detequiv
