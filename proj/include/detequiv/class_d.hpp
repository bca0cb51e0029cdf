#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "detequiv/kernel.hpp"

namespace detequiv {

/// Points (x, y, z, w) whose 2x2 minor h(x,y)h(w,z) - h(x,z)h(w,y), taken on
/// rows {x, w} and columns {y, z}, vanishes. Canonical form has x < w, y < z.
struct ClassDWitness {
  std::size_t x;
  std::size_t y;
  std::size_t z;
  std::size_t w;
  Scalar minor;
};

struct ClassDReport {
  bool holds;
  /// Fewer than four points: the property holds with nothing to check.
  bool vacuous;
  /// Lexicographically smallest (x, y, z, w) among failing quadruples.
  std::optional<ClassDWitness> witness;
};

/// The 2x2 minor on rows {x, w} and columns {y, z}.
Scalar class_d_minor(const Kernel& h, std::size_t x, std::size_t y, std::size_t z,
                     std::size_t w);

/// Every 2x2 minor on four pairwise distinct points must be nonzero.
ClassDReport check_class_d(const Kernel& h);

struct ZeroPatternViolation {
  std::size_t x;
  std::size_t y;
  /// h(x, y) = 0 but h(x, z) = 0 or h(z, y) = 0.
  std::size_t z;
};

/// For every off-diagonal zero h(x, y), checks h(x, z) != 0 and h(z, y) != 0
/// for all other z.
std::vector<ZeroPatternViolation> zero_pattern_validate(const Kernel& h);

/// Classification of an unordered pair {x, y} of a determinantally
/// equivalent class-D pair (K, Q).
enum class EdgeTag {
  AllZero,            // K(x,y)=K(y,x)=Q(x,y)=Q(y,x)=0
  AllNonzero,         // all four nonzero
  Case1ZeroForward,   // K(x,y)=0=Q(x,y); K(y,x), Q(y,x) nonzero
  Case1ZeroBackward,  // K(y,x)=0=Q(y,x); K(x,y), Q(x,y) nonzero
  Case2Zero,          // K(x,y)=0=Q(y,x); K(y,x), Q(x,y) nonzero
  Case2ZeroReversed,  // K(y,x)=0=Q(x,y); K(x,y), Q(y,x) nonzero
};

struct EdgePattern {
  EdgeTag tag;
  std::size_t x;
  std::size_t y;
};

/// Zero/nonzero pattern at (x, y) that fits none of the six admissible tags.
class ProblematicPair : public Error {
 public:
  ProblematicPair(std::size_t x, std::size_t y, bool product_mismatch);
  std::size_t x;
  std::size_t y;
  /// True when K(x,y)K(y,x) != Q(x,y)Q(y,x), i.e. the pair is not even
  /// equivalent at order 2; false for the zero-pattern scenarios where no
  /// conjugation with or without transposition can exist.
  bool product_mismatch;
};

EdgePattern edge_pattern(const Kernel& k, const Kernel& q, std::size_t x, std::size_t y);

const char* to_string(EdgeTag tag);

}  // namespace detequiv
