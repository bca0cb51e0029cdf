#include "detequiv/equivalence.hpp"

#include <algorithm>

namespace detequiv {

std::vector<PrecheckFailure> quick_consequences(const Kernel& k, const Kernel& q) {
  require_same_domain(k, q);
  std::vector<PrecheckFailure> out;
  const auto n = k.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!(k(x, x) == q(x, x))) {
      out.push_back({PrecheckFailure::Kind::Diagonal, x, x, k(x, x), q(x, x)});
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      Scalar kp = k(x, y) * k(y, x);
      Scalar qp = q(x, y) * q(y, x);
      if (!(kp == qp)) out.push_back({PrecheckFailure::Kind::PairProduct, x, y, kp, qp});
    }
  }
  return out;
}

EquivalenceReport check_equivalence(const Kernel& k, const Kernel& q,
                                    std::optional<std::size_t> max_order) {
  require_same_domain(k, q);
  const auto n = k.size();
  const auto cap = std::min(max_order.value_or(n), n);

  EquivalenceReport report{Verdict::Equivalent, cap, cap < n, std::nullopt,
                           quick_consequences(k, q)};
  for (std::size_t order = 1; order <= cap; ++order) {
    for (auto& subset : subsets_of_size(n, order)) {
      Scalar mk = principal_minor(k, subset);
      Scalar mq = principal_minor(q, subset);
      if (!(mk == mq)) {
        report.verdict = Verdict::NotEquivalent;
        report.witness = MinorWitness{std::move(subset), std::move(mk), std::move(mq)};
        return report;
      }
    }
  }
  return report;
}

std::vector<TraceViolation> trace_identity_audit(const Kernel& k, const Kernel& q) {
  require_same_domain(k, q);
  std::vector<TraceViolation> out;
  if (k.size() < 3) return out;
  for (const auto& p : enumerate_3cycles(k.size())) {
    Scalar lhs = cycle_product(k, p) + reversed_cycle_product(k, p);
    Scalar rhs = cycle_product(q, p) + reversed_cycle_product(q, p);
    if (!(lhs == rhs)) out.push_back({p, std::move(lhs), std::move(rhs)});
  }
  return out;
}

}  // namespace detequiv
