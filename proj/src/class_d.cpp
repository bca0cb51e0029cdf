#include "detequiv/class_d.hpp"

namespace detequiv {

Scalar class_d_minor(const Kernel& h, std::size_t x, std::size_t y, std::size_t z,
                     std::size_t w) {
  return h(x, y) * h(w, z) - h(x, z) * h(w, y);
}

ClassDReport check_class_d(const Kernel& h) {
  const auto n = h.size();
  if (n < 4) return {true, true, std::nullopt};
  // Swapping x<->w or y<->z only flips the sign, so unordered row and column
  // pairs cover every case. Loop order gives the lexicographic minimum first.
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      for (std::size_t z = y + 1; z < n; ++z) {
        if (z == x) continue;
        for (std::size_t w = x + 1; w < n; ++w) {
          if (w == y || w == z) continue;
          Scalar m = class_d_minor(h, x, y, z, w);
          if (m.is_zero()) return {false, false, ClassDWitness{x, y, z, w, std::move(m)}};
        }
      }
    }
  return {true, false, std::nullopt};
}

std::vector<ZeroPatternViolation> zero_pattern_validate(const Kernel& h) {
  std::vector<ZeroPatternViolation> out;
  const auto n = h.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !h(x, y).is_zero()) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        if (h(x, z).is_zero() || h(z, y).is_zero()) out.push_back({x, y, z});
      }
    }
  return out;
}

ProblematicPair::ProblematicPair(std::size_t x, std::size_t y, bool product_mismatch)
    : Error(std::string(product_mismatch ? "pair products differ"
                                         : "zero pattern admits no canonical transform") +
            " at (" + std::to_string(x) + ", " + std::to_string(y) + ")"),
      x(x),
      y(y),
      product_mismatch(product_mismatch) {}

EdgePattern edge_pattern(const Kernel& k, const Kernel& q, std::size_t x, std::size_t y) {
  require_same_domain(k, q);
  if (x >= k.size() || y >= k.size()) throw IndexOutOfRange("edge endpoint out of range");
  if (x == y) throw PreconditionError("edge_pattern needs distinct points");

  const bool kxy = k(x, y).is_zero();
  const bool kyx = k(y, x).is_zero();
  const bool qxy = q(x, y).is_zero();
  const bool qyx = q(y, x).is_zero();

  auto tag = [&]() -> std::optional<EdgeTag> {
    if (kxy && kyx && qxy && qyx) return EdgeTag::AllZero;
    if (!kxy && !kyx && !qxy && !qyx) return EdgeTag::AllNonzero;
    if (kxy && qxy && !kyx && !qyx) return EdgeTag::Case1ZeroForward;
    if (!kxy && !qxy && kyx && qyx) return EdgeTag::Case1ZeroBackward;
    if (kxy && qyx && !kyx && !qxy) return EdgeTag::Case2Zero;
    if (!kxy && !qyx && kyx && qxy) return EdgeTag::Case2ZeroReversed;
    return std::nullopt;
  }();
  if (!tag) {
    // The remaining patterns either break K(x,y)K(y,x) = Q(x,y)Q(y,x) or are
    // the zero-product scenarios that rule out both S and its transpose form.
    const bool k_product_zero = kxy || kyx;
    const bool q_product_zero = qxy || qyx;
    throw ProblematicPair(x, y, k_product_zero != q_product_zero);
  }
  return {*tag, x, y};
}

const char* to_string(EdgeTag tag) {
  switch (tag) {
    case EdgeTag::AllZero: return "all_zero";
    case EdgeTag::AllNonzero: return "all_nonzero";
    case EdgeTag::Case1ZeroForward: return "case1_zero_forward";
    case EdgeTag::Case1ZeroBackward: return "case1_zero_backward";
    case EdgeTag::Case2Zero: return "case2_zero";
    case EdgeTag::Case2ZeroReversed: return "case2_zero_reversed";
  }
  return "unknown";
}

}  // namespace detequiv
