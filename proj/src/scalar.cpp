#include "detequiv/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace detequiv {

namespace {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Splits an optional leading sign off `text`.
std::pair<bool, std::string_view> split_sign(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    return {text.front() == '-', text.substr(1)};
  }
  return {false, text};
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p < 2 || p >= kMaxModulus || !is_prime(p)) {
    throw PreconditionError("field modulus " + std::to_string(p) +
                            " is not a prime below 2^31");
  }
  return FieldSpec(FieldKind::Prime, static_cast<std::uint32_t>(p));
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "rational") return rationals();
  constexpr std::string_view prefix = "prime:";
  if (text.substr(0, prefix.size()) == prefix) {
    auto digits = text.substr(prefix.size());
    if (!all_digits(digits) || digits.size() > 10) {
      throw ParseError("bad field modulus in '" + std::string(text) + "'");
    }
    const auto p = std::stoull(std::string(digits));
    if (p < 2 || p >= kMaxModulus || !is_prime(p)) {
      throw ParseError("field modulus " + std::string(digits) + " is not a prime below 2^31");
    }
    return prime(p);
  }
  throw ParseError("unknown field '" + std::string(text) + "' (expected rational or prime:P)");
}

Scalar FieldSpec::zero() const { return from_int(0); }
Scalar FieldSpec::one() const { return from_int(1); }

Scalar FieldSpec::from_int(std::int64_t value) const {
  if (is_rational()) return Scalar(mpq_class(static_cast<long>(value)));
  auto m = static_cast<std::int64_t>(modulus_);
  auto r = value % m;
  if (r < 0) r += m;
  return Scalar(*this, static_cast<std::uint64_t>(r));
}

Scalar FieldSpec::parse_scalar(std::string_view text) const {
  auto [negative, body] = split_sign(text);
  if (is_rational()) {
    auto slash = body.find('/');
    auto num = body.substr(0, slash);
    auto den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    mpq_class q(negative ? mpz_class(-n) : n, d);
    q.canonicalize();
    return Scalar(std::move(q));
  }
  if (!all_digits(body)) {
    throw ParseError("malformed field element '" + std::string(text) + "'");
  }
  mpz_class v(std::string(body), 10);
  if (negative) v = -v;
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), modulus_);
  return Scalar(*this, r.get_ui());
}

std::string FieldSpec::to_string() const {
  return is_rational() ? "rational" : "prime:" + std::to_string(modulus_);
}

Scalar::Scalar() : value_(mpq_class(0)) {}

Scalar::Scalar(mpq_class value) : value_(std::move(value)) {
  std::get<mpq_class>(value_).canonicalize();
}

Scalar::Scalar(FieldSpec field, std::uint64_t value) : value_(Residue{0, field.modulus()}) {
  if (field.is_rational()) throw PreconditionError("residue constructor needs a prime field");
  std::get<Residue>(value_).value = static_cast<std::uint32_t>(value % field.modulus());
}

FieldSpec Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return FieldSpec(FieldKind::Prime, r->modulus);
  return FieldSpec::rationals();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1;
  return std::get<mpq_class>(value_) == 1;
}

void Scalar::check_same_field(const Scalar& rhs) const {
  if (value_.index() != rhs.value_.index()) throw FieldMismatch();
  if (const auto* r = std::get_if<Residue>(&value_)) {
    if (r->modulus != std::get<Residue>(rhs.value_).modulus) throw FieldMismatch();
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Scalar out = *this;
  if (auto* r = std::get_if<Residue>(&out.value_)) {
    r->value = static_cast<std::uint32_t>(mod_pow(r->value, r->modulus - 2, r->modulus));
  } else {
    auto& q = std::get<mpq_class>(out.value_);
    mpq_inv(q.get_mpq_t(), q.get_mpq_t());
  }
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (auto* r = std::get_if<Residue>(&out.value_)) {
    r->value = r->value == 0 ? 0 : r->modulus - r->value;
  } else {
    auto& q = std::get<mpq_class>(out.value_);
    q = -q;
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* r = std::get_if<Residue>(&value_)) {
    std::uint64_t s = std::uint64_t{r->value} + std::get<Residue>(rhs.value_).value;
    r->value = static_cast<std::uint32_t>(s % r->modulus);
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* r = std::get_if<Residue>(&value_)) {
    std::uint64_t s =
        std::uint64_t{r->value} + r->modulus - std::get<Residue>(rhs.value_).value;
    r->value = static_cast<std::uint32_t>(s % r->modulus);
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* r = std::get_if<Residue>(&value_)) {
    std::uint64_t s = std::uint64_t{r->value} * std::get<Residue>(rhs.value_).value;
    r->value = static_cast<std::uint32_t>(s % r->modulus);
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same_field(rhs);
  return *this *= rhs.inverse();
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  lhs.check_same_field(rhs);
  if (const auto* r = std::get_if<Scalar::Residue>(&lhs.value_)) {
    return r->value == std::get<Scalar::Residue>(rhs.value_).value;
  }
  return std::get<mpq_class>(lhs.value_) == std::get<mpq_class>(rhs.value_);
}

std::strong_ordering repr_compare(const Scalar& lhs, const Scalar& rhs) {
  lhs.check_same_field(rhs);
  if (const auto* r = std::get_if<Scalar::Residue>(&lhs.value_)) {
    return r->value <=> std::get<Scalar::Residue>(rhs.value_).value;
  }
  int c = cmp(std::get<mpq_class>(lhs.value_), std::get<mpq_class>(rhs.value_));
  return c <=> 0;
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
  return std::get<mpq_class>(value_).get_str(10);
}

Matrix::Matrix(FieldSpec field, std::size_t n)
    : field_(field), n_(n), a_(n * n, field.zero()) {}

Matrix::Matrix(FieldSpec field, std::size_t n, std::vector<Scalar> entries)
    : field_(field), n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) {
    throw LengthMismatch("matrix of order " + std::to_string(n) + " needs " +
                         std::to_string(n * n) + " entries, got " + std::to_string(a_.size()));
  }
  for (const auto& s : a_) {
    if (s.field() != field_) throw FieldMismatch();
  }
}

Matrix Matrix::transposed() const {
  Matrix t(field_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& indices) const {
  std::vector<Scalar> entries;
  entries.reserve(indices.size() * indices.size());
  for (auto i : indices) {
    if (i >= n_) throw IndexOutOfRange("index " + std::to_string(i) + " out of range");
    for (auto j : indices) {
      if (j >= n_) throw IndexOutOfRange("index " + std::to_string(j) + " out of range");
      entries.push_back((*this)(i, j));
    }
  }
  return Matrix(field_, indices.size(), std::move(entries));
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.field_ != rhs.field_) throw FieldMismatch();
  if (lhs.n_ != rhs.n_) throw LengthMismatch("matrix orders differ");
  const auto n = lhs.n_;
  Matrix out(lhs.field_, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar acc = lhs.field_.zero();
      for (std::size_t k = 0; k < n; ++k) acc += lhs(i, k) * rhs(k, j);
      out(i, j) = std::move(acc);
    }
  return out;
}

bool operator==(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.field_ != rhs.field_) throw FieldMismatch();
  return lhs.n_ == rhs.n_ && lhs.a_ == rhs.a_;
}

namespace {

Scalar rational_determinant(const Matrix& m) {
  const auto n = m.size();
  std::vector<mpz_class> a(n * n);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class row_lcm = 1;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(),
              m(i, j).rational().get_den_mpz_t());
    }
    scale *= row_lcm;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& q = m(i, j).rational();
      a[i * n + j] = q.get_num() * (row_lcm / q.get_den());
    }
  }

  // Bareiss: every intermediate is a minor of the integer matrix, so the
  // division by the previous pivot is exact.
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && a[pivot * n + k] == 0) ++pivot;
      if (pivot == n) return Scalar(mpq_class(0));
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[pivot * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k * n + k];
  }
  mpz_class det = sign * prev;
  return Scalar(mpq_class(det, scale));
}

Scalar prime_determinant(const Matrix& m) {
  const auto n = m.size();
  const std::uint64_t p = m.field().modulus();
  std::vector<std::uint64_t> a(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = m.data()[i].residue();

  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot * n + k] == 0) ++pivot;
    if (pivot == n) return Scalar(m.field(), 0);
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[pivot * n + j]);
      det = (p - det) % p;
    }
    const std::uint64_t pv = a[k * n + k];
    det = det * pv % p;
    const std::uint64_t inv = mod_pow(pv, p - 2, p);
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::uint64_t f = a[i * n + k] * inv % p;
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] + (p - f) * a[k * n + j]) % p;
      }
    }
  }
  return Scalar(m.field(), det);
}

}  // namespace

Scalar determinant(const Matrix& m) {
  if (m.size() == 0) return m.field().one();
  return m.field().is_rational() ? rational_determinant(m) : prime_determinant(m);
}

}  // namespace detequiv
