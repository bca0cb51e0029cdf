#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "detequiv/kernel.hpp"

namespace detequiv {

/// A violation of one of the order-1 / order-2 consequences of equal minors:
/// K(x,x) = Q(x,x), or K(x,y)K(y,x) = Q(x,y)Q(y,x).
struct PrecheckFailure {
  enum class Kind { Diagonal, PairProduct };
  Kind kind;
  std::size_t x;
  std::size_t y;  // equals x for Diagonal
  Scalar k_value;
  Scalar q_value;
};

struct MinorWitness {
  std::vector<std::size_t> subset;
  Scalar minor_k;
  Scalar minor_q;
};

enum class Verdict { Equivalent, NotEquivalent };

struct EquivalenceReport {
  Verdict verdict;
  /// Largest subset order that was compared.
  std::size_t checked_order_max;
  /// True when checked_order_max is below the ground-set size, so an
  /// Equivalent verdict only holds up to that order.
  bool capped;
  /// Smallest failing subset (by size, then lexicographically).
  std::optional<MinorWitness> witness;
  std::vector<PrecheckFailure> prechecks;
};

std::vector<PrecheckFailure> quick_consequences(const Kernel& k, const Kernel& q);

/// Compares all principal minors of order <= max_order (default: all),
/// smallest subsets first, stopping at the first mismatch.
EquivalenceReport check_equivalence(const Kernel& k, const Kernel& q,
                                    std::optional<std::size_t> max_order = std::nullopt);

struct TraceViolation {
  Cycle cycle;
  Scalar lhs;  // K[p] + K'[p]
  Scalar rhs;  // Q[p] + Q'[p]
};

/// Checks K[p] + K'[p] = Q[p] + Q'[p] on every 3-cycle.
std::vector<TraceViolation> trace_identity_audit(const Kernel& k, const Kernel& q);

}  // namespace detequiv
