#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "detequiv/class_d.hpp"
#include "detequiv/kernel.hpp"

namespace detequiv {

class GenerationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

enum class GenMethod {
  /// Entrywise rejection sampling, then the structured family if the budget runs out.
  Auto,
  /// Entrywise rejection sampling only.
  Sampled,
  /// Scaled rank-two construction only.
  Structured,
};

struct InstanceSpec {
  FieldSpec field = FieldSpec::rationals();
  std::size_t n = 4;
  bool transpose = false;
  /// Number of vertex-disjoint point pairs carrying a zero; each is either a
  /// symmetric pair K(x,y) = K(y,x) = 0 or a single K(x,y) = 0.
  std::size_t zero_edges = 0;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 200;
  GenMethod method = GenMethod::Auto;
};

struct GroundTruth {
  Gauge gauge;
  bool transposed;
};

struct Instance {
  Kernel k;
  Kernel q;
  GroundTruth truth;
  std::uint64_t seed;
  /// True when the structured family produced k.
  bool structured;
};

/// Draws a class-D kernel k with the requested zero pattern, a nowhere-zero
/// gauge g, and sets q = conj(g)(k) or conj(g)(k^T). Deterministic in the seed.
Instance gen_instance(const InstanceSpec& spec);

/// Copy of q with exactly one entry changed so that some principal minor of
/// order <= 3 differs from q's.
Kernel perturb(const Kernel& k, const Kernel& q, std::uint64_t seed);

/// Decides Q = conj(g)(K) (or conj(g)(K^T)) directly: exhaustive gauge
/// enumeration over a prime field, propagation along nonzero entries over the
/// rationals. Tries transposed = false first unless `only_flag` pins it.
/// Over a prime field n (p-1)^(n-1) must not exceed 10^7.
std::optional<GroundTruth> brute_force_diagonal_similar(const Kernel& k, const Kernel& q,
                                                        std::optional<bool> only_flag = std::nullopt);

struct CounterexampleWitness {
  Kernel k;
  Kernel q;
  ClassDReport k_class_d;
  ClassDReport q_class_d;
};

/// Samples pairs agreeing on all principal minors and keeps those that are
/// not diagonally similar with or without transposition. Every emitted pair
/// has been re-checked with check_equivalence and brute_force_diagonal_similar.
/// Output is sorted by serialized entries; at most `max_witnesses` are kept.
std::vector<CounterexampleWitness> search_counterexample(FieldSpec field, std::size_t n,
                                                         std::uint64_t budget, std::uint64_t seed,
                                                         std::size_t max_witnesses = 64);

/// Labels "x0", "x1", ... used by generated kernels.
std::vector<std::string> default_labels(std::size_t n);

}  // namespace detequiv
