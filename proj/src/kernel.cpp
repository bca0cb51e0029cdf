#include "detequiv/kernel.hpp"

#include <algorithm>
#include <set>

namespace detequiv {

namespace {

void check_index(std::size_t i, std::size_t n) {
  if (i >= n) {
    throw IndexOutOfRange("index " + std::to_string(i) + " out of range for ground set of size " +
                          std::to_string(n));
  }
}

}  // namespace

Kernel::Kernel(std::vector<std::string> labels, Matrix entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
  if (labels_.empty()) throw PreconditionError("kernel needs at least one point");
  if (labels_.size() != entries_.size()) {
    throw LengthMismatch("kernel has " + std::to_string(labels_.size()) + " labels but a " +
                         std::to_string(entries_.size()) + "x" +
                         std::to_string(entries_.size()) + " table");
  }
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw PreconditionError("kernel labels must be distinct");
}

std::optional<std::size_t> Kernel::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

Kernel Kernel::with_entry(std::size_t i, std::size_t j, Scalar value) const {
  check_index(i, size());
  check_index(j, size());
  if (value.field() != field()) throw FieldMismatch();
  Matrix m = entries_;
  m(i, j) = std::move(value);
  return Kernel(labels_, std::move(m));
}

Cycle::Cycle(std::vector<std::size_t> vertices) : v_(std::move(vertices)) {
  if (v_.empty()) throw PreconditionError("a cycle needs at least one vertex");
  std::set<std::size_t> seen(v_.begin(), v_.end());
  if (seen.size() != v_.size()) throw PreconditionError("cycle vertices must be distinct");
  std::rotate(v_.begin(), std::min_element(v_.begin(), v_.end()), v_.end());
}

Cycle Cycle::reversed() const {
  std::vector<std::size_t> r(v_.rbegin(), v_.rend());
  return Cycle(std::move(r));
}

std::vector<std::pair<std::size_t, std::size_t>> Cycle::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < v_.size(); ++i) out.emplace_back(v_[i], v_[(i + 1) % v_.size()]);
  return out;
}

Gauge::Gauge(std::vector<Scalar> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].is_zero()) throw GaugeZero(i);
  }
}

Gauge Gauge::inverse() const {
  std::vector<Scalar> inv;
  inv.reserve(values_.size());
  for (const auto& v : values_) inv.push_back(v.inverse());
  return Gauge(std::move(inv));
}

CocycleFn CocycleFn::from_gauge(const Gauge& g) {
  if (g.size() == 0) throw PreconditionError("empty gauge");
  Matrix m(g[0].field(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) m(i, j) = g[i] / g[j];
  return CocycleFn(std::move(m));
}

Scalar principal_minor(const Kernel& k, const std::vector<std::size_t>& subset) {
  for (std::size_t i = 0; i < subset.size(); ++i) {
    check_index(subset[i], k.size());
    if (i > 0 && subset[i] <= subset[i - 1]) {
      throw PreconditionError("principal minor subset must be strictly increasing");
    }
  }
  return determinant(k.entries().submatrix(subset));
}

Scalar cycle_product(const Kernel& k, const Cycle& p) {
  Scalar acc = k.field().one();
  for (auto [a, b] : p.edges()) {
    check_index(a, k.size());
    acc *= k(a, b);
  }
  return acc;
}

Scalar reversed_cycle_product(const Kernel& k, const Cycle& p) {
  Scalar acc = k.field().one();
  for (auto [a, b] : p.edges()) {
    check_index(a, k.size());
    acc *= k(b, a);
  }
  return acc;
}

Kernel transpose(const Kernel& k) { return Kernel(k.labels(), k.entries().transposed()); }

Kernel conjugate(const Kernel& k, const Gauge& g) {
  if (g.size() != k.size()) throw LengthMismatch("gauge length does not match kernel size");
  const auto n = k.size();
  Matrix m(k.field(), n);
  std::vector<Scalar> inv;
  inv.reserve(n);
  for (std::size_t j = 0; j < n; ++j) inv.push_back(g[j].inverse());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = i == j ? k(i, i) : g[i] * k(i, j) * inv[j];
  return Kernel(k.labels(), std::move(m));
}

Kernel apply_cocycle(const Kernel& k, const CocycleFn& c) {
  if (c.size() != k.size()) throw LengthMismatch("cocycle size does not match kernel size");
  const auto n = k.size();
  Matrix m(k.field(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = c(i, j) * k(i, j);
  return Kernel(k.labels(), std::move(m));
}

Kernel permute(const Kernel& k, const std::vector<std::size_t>& perm) {
  const auto n = k.size();
  if (perm.size() != n) throw LengthMismatch("permutation length does not match kernel size");
  std::vector<std::string> labels;
  Matrix m(k.field(), n);
  for (std::size_t i = 0; i < n; ++i) {
    check_index(perm[i], n);
    labels.push_back(k.label(perm[i]));
    for (std::size_t j = 0; j < n; ++j) m(i, j) = k(perm[i], perm[j]);
  }
  return Kernel(std::move(labels), std::move(m));
}

std::vector<Cycle> enumerate_3cycles(std::size_t n) {
  if (n < 3) throw PreconditionError("3-cycles need at least three points");
  std::vector<Cycle> out;
  out.reserve(n * (n - 1) * (n - 2) / 3);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = a + 1; c < n; ++c)
        if (c != b) out.emplace_back(std::vector<std::size_t>{a, b, c});
  return out;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

void require_same_domain(const Kernel& k, const Kernel& q) {
  if (k.field() != q.field()) throw FieldMismatch();
  if (k.labels() != q.labels()) throw LabelMismatch();
}

}  // namespace detequiv
