#include <random>

#include "doctest.h"

#include "detequiv/oracle.hpp"
#include "detequiv/recovery.hpp"
#include "oracles.hpp"

using namespace detequiv;

namespace {
const auto Q = FieldSpec::rationals();

Kernel with_both_zero(Kernel k, std::size_t x, std::size_t y) {
  return k.with_entry(x, y, k.field().zero()).with_entry(y, x, k.field().zero());
}

bool ratio_constant(const Gauge& a, const Gauge& b) {
  for (std::size_t i = 1; i < a.size(); ++i)
    if (!(a[i] / b[i] == a[0] / b[0])) return false;
  return true;
}
}  // namespace

TEST_CASE("case-1 cocycle branches") {
  std::mt19937_64 rng(50);
  const auto k = oracle::random_kernel(Q, 5, rng);
  const auto same = build_cocycle_case1(k, k, build_case_table(k, k));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(same(i, j).is_one());

  const auto g = oracle::random_gauge(Q, 5, rng);
  const auto q = conjugate(k, g);
  const auto s = build_cocycle_case1(k, q, build_case_table(k, q));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(s(i, j) == g[i] / g[j]);

  const auto kz = with_both_zero(k, 0, 1);
  const auto qz = conjugate(kz, g);
  const auto sz = build_cocycle_case1(kz, qz, build_case_table(kz, qz));
  CHECK(sz(0, 1) == qz(0, 2) * qz(2, 1) / (kz(0, 2) * kz(2, 1)));
  CHECK(sz(0, 1) == g[0] / g[1]);
  CHECK(sz(1, 0) == g[1] / g[0]);

  const auto k1 = k.with_entry(2, 3, Q.zero());
  const auto q1 = conjugate(k1, g);
  CHECK(build_cocycle_case1(k1, q1, build_case_table(k1, q1))(2, 3) == g[2] / g[3]);
}

TEST_CASE("case-2 cocycle branches") {
  std::mt19937_64 rng(51);
  const auto k = oracle::random_kernel(Q, 5, rng);
  const auto t = transpose(k);
  const auto ones = build_cocycle_case2(k, t, build_case_table(k, t));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(ones(i, j).is_one());

  const auto g = oracle::random_gauge(Q, 5, rng);
  const auto kz = with_both_zero(k, 1, 3).with_entry(0, 4, Q.zero());
  const auto q = conjugate(transpose(kz), g);
  const auto s = build_cocycle_case2(kz, q, build_case_table(kz, q));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(s(i, j) == g[i] / g[j]);
  CHECK_THROWS_AS(build_cocycle_case1(kz, q, build_case_table(kz, q)), PreconditionError);
}

TEST_CASE("cocycle verification and gauge extraction") {
  std::mt19937_64 rng(52);
  Matrix ones(Q, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) ones(i, j) = Q.one();
  CHECK_FALSE(verify_cocycle(CocycleFn(ones)).has_value());
  const auto g1 = extract_gauge(CocycleFn(ones), 0);
  for (std::size_t i = 0; i < 4; ++i) CHECK(g1[i].is_one());

  const auto g = oracle::random_gauge(Q, 5, rng);
  const auto c = CocycleFn::from_gauge(g);
  CHECK_FALSE(verify_cocycle(c).has_value());
  const auto e = extract_gauge(c, 2);
  for (std::size_t i = 0; i < 5; ++i) CHECK(e[i] == g[i] / g[2]);

  auto table = c.table();
  table(1, 3) = table(1, 3) * Q.from_int(2);
  const auto bad = verify_cocycle(CocycleFn(table));
  REQUIRE(bad.has_value());
  CHECK(bad->order == 2);
  CHECK(bad->vertices == std::vector<std::size_t>{1, 3});
  table = c.table();
  table(2, 2) = Q.from_int(3);
  CHECK(verify_cocycle(CocycleFn(table))->order == 1);
}

TEST_CASE("consistency audit") {
  InstanceSpec spec;
  spec.n = 5;
  spec.zero_edges = 2;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    spec.seed = seed;
    const auto inst = gen_instance(spec);
    for (std::size_t x = 0; x < 5; ++x)
      for (std::size_t y = 0; y < 5; ++y) {
        if (x == y || !inst.k(x, y).is_zero() || !inst.k(y, x).is_zero()) continue;
        const auto& g = inst.truth.gauge;
        CHECK(consistency_audit(inst.k, inst.q, x, y) == g[x] / g[y]);
        const std::size_t z = x != 0 && y != 0 ? 0 : (x != 1 && y != 1 ? 1 : 2);
        const auto bad = inst.q.with_entry(x, z, inst.q(x, z) * Q.from_int(2));
        CHECK_THROWS_AS(consistency_audit(inst.k, bad, x, y), Inconsistent);
      }
  }
  std::mt19937_64 rng(53);
  const auto s = oracle::random_kernel(Q, 4, rng);
  CHECK_THROWS_AS(consistency_audit(s, s, 0, 1), PreconditionError);
}

TEST_CASE("recover on generated instances") {
  for (bool transposed : {false, true}) {
    InstanceSpec spec;
    spec.field = FieldSpec::prime(11);
    spec.n = 6;
    spec.transpose = transposed;
    spec.seed = 7;
    const auto inst = gen_instance(spec);
    const auto r = recover(inst.k, inst.q);
    CHECK(r.transposed == transposed);
    CHECK(r.verification.passed);
    CHECK_FALSE(r.small_n_fallback);
    CHECK(r.base_label == "x0");
    CHECK(ratio_constant(r.gauge, inst.truth.gauge));
    CHECK_FALSE(first_conjugation_mismatch(inst.k, inst.q, r.gauge, transposed).has_value());
  }
}

TEST_CASE("two doubly-zero pairs on four points leave every cycle in both Cases") {
  const auto f = FieldSpec::rationals();
  const auto k = oracle::from_ints(f, {{2, 3, 0, 5}, {7, 1, 11, 0}, {0, 13, 4, 17}, {19, 0, 23, 6}});
  REQUIRE(check_class_d(k).holds);
  std::mt19937_64 rng(55);
  const auto g = oracle::random_gauge(f, 4, rng);
  for (bool transposed : {false, true}) {
    const auto q = conjugate(transposed ? transpose(k) : k, g);
    const auto table = build_case_table(k, q);
    for (const auto& e : table.entries()) CHECK(e.label == CaseLabel::Both);
    const auto r = recover(k, q, RecoveryOptions{std::nullopt, true});
    CHECK(r.transposed == transposed);
    CHECK(ratio_constant(r.gauge, g));
    if (transposed) CHECK_THROWS_AS(consistency_audit(k, q, 0, 2, GlobalCase::Case1), Inconsistent);
  }
}

TEST_CASE("recover rejects non-equivalent and non class D pairs") {
  InstanceSpec spec;
  spec.n = 5;
  spec.seed = 3;
  const auto inst = gen_instance(spec);
  const auto doubled = inst.q.with_entry(1, 2, inst.q(1, 2) * Q.from_int(2));
  try {
    recover(inst.k, doubled);
    FAIL("expected NotEquivalent");
  } catch (const NotEquivalent& e) {
    CHECK(e.witness.subset == *oracle::first_minor_mismatch(inst.k, doubled));
  }
  const auto ones = oracle::from_ints(Q, {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}});
  try {
    recover(ones, ones);
    FAIL("expected ClassDViolation");
  } catch (const ClassDViolation& e) {
    CHECK(e.which == 'k');
  }
}

TEST_CASE("small ground sets are solved directly") {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 3;
    const auto f = FieldSpec::prime(3);
    std::vector<Scalar> a;
    std::vector<Scalar> b;
    for (std::size_t i = 0; i < n * n; ++i) {
      a.push_back(oracle::random_scalar(f, rng, false));
      b.push_back(oracle::random_scalar(f, rng, false));
    }
    const Kernel k(oracle::labels(n), Matrix(f, n, a));
    Kernel q(oracle::labels(n), Matrix(f, n, b));
    if (t % 2) q = conjugate(t % 4 == 1 ? k : transpose(k), oracle::random_gauge(f, n, rng));
    const auto truth = brute_force_diagonal_similar(k, q);
    try {
      const auto r = recover(k, q);
      CHECK(r.small_n_fallback);
      REQUIRE(truth.has_value());
      CHECK(r.transposed == truth->transposed);
    } catch (const NotEquivalent&) {
      CHECK_FALSE(truth.has_value());
    } catch (const NotRecoverable&) {
      CHECK_FALSE(truth.has_value());
    }
  }
}
