#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "detequiv/scalar.hpp"

namespace detequiv {

/// A function on a finite labeled ground set, stored as a dense table:
/// entry(i, j) is the kernel's value at (labels[i], labels[j]).
class Kernel {
 public:
  /// Throws PreconditionError on an empty ground set or repeated labels and
  /// FieldMismatch when `entries` is over a different field.
  Kernel(std::vector<std::string> labels, Matrix entries);

  FieldSpec field() const { return entries_.field(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> index_of(const std::string& label) const;

  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Matrix& entries() const { return entries_; }

  /// Copy with a single entry replaced.
  Kernel with_entry(std::size_t i, std::size_t j, Scalar value) const;

  friend bool operator==(const Kernel& lhs, const Kernel& rhs) {
    return lhs.labels_ == rhs.labels_ && lhs.field() == rhs.field() &&
           lhs.entries_ == rhs.entries_;
  }

 private:
  std::vector<std::string> labels_;
  Matrix entries_;
};

/// Closed walk through pairwise distinct vertices. The closing edge back to
/// the first vertex is implicit; the rotation is normalized so the smallest
/// vertex comes first.
class Cycle {
 public:
  explicit Cycle(std::vector<std::size_t> vertices);

  std::size_t size() const { return v_.size(); }
  std::size_t operator[](std::size_t i) const { return v_[i]; }
  const std::vector<std::size_t>& vertices() const { return v_; }

  /// Same vertex set traversed in the opposite direction.
  Cycle reversed() const;

  /// Directed edges (v[i], v[i+1]) including the closing edge.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  friend auto operator<=>(const Cycle&, const Cycle&) = default;

 private:
  std::vector<std::size_t> v_;
};

/// Nowhere-zero one-variable function g on the ground set.
class Gauge {
 public:
  /// Throws GaugeZero if any value vanishes.
  explicit Gauge(std::vector<Scalar> values);

  std::size_t size() const { return values_.size(); }
  const Scalar& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Scalar>& values() const { return values_; }

  /// Pointwise inverse.
  Gauge inverse() const;

 private:
  std::vector<Scalar> values_;
};

/// Two-index scalar table c. Whether it actually has the cocycle property is
/// decided by verify_cocycle; this type only stores the values.
class CocycleFn {
 public:
  explicit CocycleFn(Matrix table) : table_(std::move(table)) {}

  /// The cocycle c(x, y) = g(x) / g(y).
  static CocycleFn from_gauge(const Gauge& g);

  FieldSpec field() const { return table_.field(); }
  std::size_t size() const { return table_.size(); }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return table_(i, j); }
  const Matrix& table() const { return table_; }

 private:
  Matrix table_;
};

/// Determinant of the sub-table on `subset` (strictly increasing indices).
Scalar principal_minor(const Kernel& k, const std::vector<std::size_t>& subset);

/// Product of k along the cycle's edges, closing edge included.
Scalar cycle_product(const Kernel& k, const Cycle& p);
/// Product of k along the reversed edges: k(p1,p0) k(p2,p1) ... k(p0,p_last).
Scalar reversed_cycle_product(const Kernel& k, const Cycle& p);

Kernel transpose(const Kernel& k);
/// entry(i, j) -> g(i) entry(i, j) g(j)^-1.
Kernel conjugate(const Kernel& k, const Gauge& g);
/// entry(i, j) -> c(i, j) entry(i, j).
Kernel apply_cocycle(const Kernel& k, const CocycleFn& c);
/// Same kernel with ground-set positions reordered: result(i, j) = k(perm[i], perm[j]).
Kernel permute(const Kernel& k, const std::vector<std::size_t>& perm);

/// Every directed 3-cycle up to rotation on {0..n-1}, both orientations of
/// each triple, in lexicographic order of the normalized vertex sequence.
std::vector<Cycle> enumerate_3cycles(std::size_t n);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k);

/// Throws LabelMismatch / FieldMismatch unless both kernels share a ground set and field.
void require_same_domain(const Kernel& k, const Kernel& q);

}  // namespace detequiv
