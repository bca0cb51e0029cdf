#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "detequiv/class_d.hpp"
#include "detequiv/cycles.hpp"
#include "detequiv/equivalence.hpp"
#include "detequiv/kernel.hpp"

namespace detequiv {

/// No branch of the cocycle definition applies at (x, y).
class BranchUnavailable : public Error {
 public:
  BranchUnavailable(std::size_t x, std::size_t y);
  std::size_t x;
  std::size_t y;
};

/// Case-1 cocycle S with Q(x,y) = S(x,y) K(x,y):
///   S(x,x) = 1
///   S(x,y) = Q(x,y) / K(x,y)                      if K(x,y) != 0
///   S(x,y) = (Q(y,x) / K(y,x))^-1                  if K(x,y) = 0 != K(y,x)
///   S(x,y) = Q(x,z)Q(z,y) / (K(x,z)K(z,y))         if K(x,y) = 0 = K(y,x)
/// with z the smallest index outside {x, y}.
CocycleFn build_cocycle_case1(const Kernel& k, const Kernel& q, const CaseTable& table);

/// Case-2 cocycle S~ with Q(x,y) = S~(x,y) K(y,x):
///   S~(x,y) = Q(x,y) / K(y,x)                     if K(y,x) != 0
///   S~(x,y) = (Q(y,x) / K(x,y))^-1                 if K(y,x) = 0 != K(x,y)
///   S~(x,y) = Q(x,z)Q(z,y) / (K(z,x)K(y,z))        if K(y,x) = 0 = K(x,y)
CocycleFn build_cocycle_case2(const Kernel& k, const Kernel& q, const CaseTable& table);

struct CocycleViolation {
  /// 1, 2 or 3.
  std::size_t order;
  std::vector<std::size_t> vertices;
  Scalar product;
};

/// Checks c(x,x) = 1, c(x,y)c(y,x) = 1 and c(x,y)c(y,z)c(z,x) = 1; these
/// imply unit products around cycles of every length. Returns the first
/// violation found, or nullopt.
std::optional<CocycleViolation> verify_cocycle(const CocycleFn& c);

/// g(x) = c(x, base). For a verified cocycle, c(x,y) = g(x) / g(y).
Gauge extract_gauge(const CocycleFn& c, std::size_t base);

/// The branch-4 expression takes different values for two choices of z.
class Inconsistent : public Error {
 public:
  Inconsistent(std::size_t x, std::size_t y, std::size_t z1, std::size_t z2);
  std::size_t x;
  std::size_t y;
  std::size_t z1;
  std::size_t z2;
};

/// For K(x,y) = 0 = K(y,x), evaluates the branch-4 expression for every z
/// whose denominator is nonzero and returns the common value. Throws
/// Inconsistent if two values differ.
Scalar consistency_audit(const Kernel& k, const Kernel& q, std::size_t x, std::size_t y,
                         GlobalCase framework = GlobalCase::Case1);

struct RecoveryOptions {
  std::optional<std::size_t> max_order;
  /// Run consistency_audit on every doubly-zero pair.
  bool audit_consistency = false;
};

struct VerificationSummary {
  bool passed;
  std::size_t entries_checked;
};

struct RecoveryResult {
  bool transposed;
  Gauge gauge;
  std::size_t base;
  std::string base_label;
  GlobalCase global_case;
  VerificationSummary verification;
  /// Fewer than four points: solved by direct propagation.
  bool small_n_fallback;
};

class NotEquivalent : public Error {
 public:
  explicit NotEquivalent(MinorWitness witness);
  NotEquivalent(Cycle neither_cycle, std::vector<std::size_t> subset, Scalar minor_k,
                Scalar minor_q);
  /// Differing principal minor; for a Neither cycle this is the minor on its
  /// three points, which the trace identity guarantees to differ.
  MinorWitness witness;
  std::optional<Cycle> neither_cycle;
};

class ClassDViolation : public Error {
 public:
  ClassDViolation(char which, ClassDWitness witness);
  /// 'k' or 'q'.
  char which;
  ClassDWitness witness;
};

class VerificationFailed : public Error {
 public:
  VerificationFailed(std::size_t x, std::size_t y);
  std::size_t x;
  std::size_t y;
};

/// Equivalent at all checked orders but no conjugation, with or without
/// transposition, maps K to Q (only reachable below four points).
class NotRecoverable : public Error {
 public:
  NotRecoverable();
};

/// Finds a transposition flag and gauge with Q = conj(g)(K) or conj(g)(K^T).
RecoveryResult recover(const Kernel& k, const Kernel& q, const RecoveryOptions& options = {});

/// Index of the lexicographically smallest label.
std::size_t smallest_label_index(const Kernel& k);

/// Entrywise check of Q(x,y) = g(x) T(x,y) g(y)^-1 with T = K or K^T.
/// Returns the first failing entry.
std::optional<std::pair<std::size_t, std::size_t>> first_conjugation_mismatch(
    const Kernel& k, const Kernel& q, const Gauge& g, bool transposed);

}  // namespace detequiv
