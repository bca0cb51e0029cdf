#include <random>

#include "doctest.h"

#include "detequiv/kernel.hpp"
#include "oracles.hpp"

using namespace detequiv;

namespace {
const auto Q = FieldSpec::rationals();
}

TEST_CASE("kernel construction validates labels and size") {
  CHECK_THROWS_AS(Kernel({"a", "a"}, Matrix(Q, 2)), Error);
  CHECK_THROWS_AS(Kernel({"a"}, Matrix(Q, 2)), Error);
  CHECK_THROWS_AS(Kernel({}, Matrix(Q, 0)), Error);
  Kernel k({"a", "b"}, Matrix(Q, 2));
  CHECK(k.index_of("b") == 1u);
  CHECK_FALSE(k.index_of("c").has_value());
}

TEST_CASE("principal minors of small subsets") {
  std::mt19937_64 rng(10);
  const auto k = oracle::random_kernel(Q, 5, rng);
  CHECK(principal_minor(k, {}).is_one());
  CHECK(principal_minor(k, {2}) == k(2, 2));
  CHECK(principal_minor(k, {1, 3}) == k(1, 1) * k(3, 3) - k(1, 3) * k(3, 1));
  CHECK(principal_minor(k, {0, 2, 4}) == oracle::minor_of(k, {0, 2, 4}));
  CHECK_THROWS_AS(principal_minor(k, {2, 1}), Error);
  CHECK_THROWS_AS(principal_minor(k, {5}), IndexOutOfRange);
}

TEST_CASE("cycle normalization and products") {
  Cycle c({2, 0, 1});
  CHECK(c.vertices() == std::vector<std::size_t>{0, 1, 2});
  CHECK(c.reversed().vertices() == std::vector<std::size_t>{0, 2, 1});
  CHECK_THROWS(Cycle({1, 1, 2}));

  std::mt19937_64 rng(11);
  const auto k = oracle::random_kernel(Q, 4, rng);
  const auto ones = oracle::from_ints(Q, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  CHECK(cycle_product(ones, Cycle({0, 2, 1})).is_one());
  CHECK(cycle_product(k, Cycle({0, 1, 2, 3})) == k(0, 1) * k(1, 2) * k(2, 3) * k(3, 0));
  CHECK(reversed_cycle_product(k, Cycle({0, 1, 2})) == k(1, 0) * k(2, 1) * k(0, 2));
  CHECK(cycle_product(k, Cycle({3})) == k(3, 3));
  for (const auto& p : enumerate_3cycles(4)) {
    CHECK(reversed_cycle_product(k, p) == cycle_product(transpose(k), p));
    CHECK(reversed_cycle_product(k, p) == cycle_product(k, p.reversed()));
    CHECK(cycle_product(k, p) == oracle::product_along(k, p.vertices()));
  }
  const auto sym = oracle::from_ints(Q, {{1, 2, 3}, {2, 5, 7}, {3, 7, 0}});
  CHECK(cycle_product(sym, Cycle({0, 1, 2})) == reversed_cycle_product(sym, Cycle({0, 1, 2})));
}

TEST_CASE("3-cycle enumeration") {
  auto three = enumerate_3cycles(3);
  REQUIRE(three.size() == 2);
  CHECK(three[0].vertices() == std::vector<std::size_t>{0, 1, 2});
  CHECK(three[1].vertices() == std::vector<std::size_t>{0, 2, 1});
  CHECK(enumerate_3cycles(4).size() == 8);
  auto six = enumerate_3cycles(6);
  CHECK(six.size() == 40);
  CHECK(std::is_sorted(six.begin(), six.end()));
  CHECK(subsets_of_size(5, 2).size() == 10);
}

TEST_CASE("transpose and conjugate") {
  std::mt19937_64 rng(12);
  const auto k = oracle::random_kernel(Q, 4, rng);
  const auto diag = oracle::from_ints(Q, {{3, 0}, {0, 4}});
  CHECK(transpose(diag) == diag);
  CHECK(transpose(transpose(k)) == k);

  const auto g = oracle::random_gauge(Q, 4, rng);
  CHECK(conjugate(k, Gauge(std::vector<Scalar>(4, Q.one()))) == k);
  CHECK(conjugate(conjugate(k, g), g.inverse()) == k);
  const auto c = conjugate(k, g);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(c(i, i) == k(i, i));
    for (std::size_t j = 0; j < 4; ++j) CHECK(c(i, j) == g[i] * k(i, j) / g[j]);
  }
  CHECK_THROWS_AS(Gauge({Q.one(), Q.zero()}), GaugeZero);
  CHECK_THROWS_AS(conjugate(k, Gauge({Q.one()})), LengthMismatch);
}

TEST_CASE("cocycle application") {
  std::mt19937_64 rng(13);
  const auto k = oracle::random_kernel(Q, 4, rng);
  Matrix ones(Q, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) ones(i, j) = Q.one();
  CHECK(apply_cocycle(k, CocycleFn(ones)) == k);
  const auto g = oracle::random_gauge(Q, 4, rng);
  CHECK(apply_cocycle(k, CocycleFn::from_gauge(g)) == conjugate(k, g));
}

TEST_CASE("minors are invariant under conjugation, transposition and gauge cocycles") {
  std::mt19937_64 rng(14);
  for (auto f : {Q, FieldSpec::prime(13)}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto k = oracle::random_kernel(f, n, rng);
      const auto g = oracle::random_gauge(f, n, rng);
      const auto c = conjugate(k, g);
      const auto t = transpose(k);
      const auto a = apply_cocycle(k, CocycleFn::from_gauge(g));
      for (std::size_t size = 0; size <= n; ++size)
        for (const auto& s : subsets_of_size(n, size)) {
          const auto m = principal_minor(k, s);
          CHECK(principal_minor(c, s) == m);
          CHECK(principal_minor(t, s) == m);
          CHECK(principal_minor(a, s) == m);
        }
    }
  }
}

TEST_CASE("permutation relabels points") {
  std::mt19937_64 rng(15);
  const auto k = oracle::random_kernel(Q, 4, rng);
  const auto p = permute(k, {2, 0, 3, 1});
  CHECK(p(0, 1) == k(2, 0));
  CHECK(p.label(0) == "c");
  CHECK_THROWS(permute(k, {0, 0, 1, 2}));
}

TEST_CASE("4-cycle identities with a one-sided zero") {
  std::mt19937_64 rng(16);
  // 0-based: vertices 1..4 are 0..3.
  const Cycle q1({0, 1, 2, 3});
  const Cycle p1({0, 1, 2});
  const Cycle p2({0, 1, 3});
  const Cycle p3({0, 3, 2});
  const Cycle p4({1, 2, 3});
  for (int t = 0; t < 50; ++t) {
    auto h = oracle::random_kernel(Q, 4, rng);
    auto z = Q.zero();
    auto k1 = h.with_entry(0, 2, z);
    CHECK(cycle_product(k1, q1) == k1(2, 3) * k1(3, 2) * k1(3, 0) * k1(0, 3) *
                                       cycle_product(k1, p1) / cycle_product(k1, p3));
    auto k2 = h.with_entry(2, 0, z);
    CHECK(reversed_cycle_product(k2, q1) == k2(2, 3) * k2(3, 2) * k2(3, 0) * k2(0, 3) *
                                                reversed_cycle_product(k2, p1) /
                                                reversed_cycle_product(k2, p3));
    auto k3 = h.with_entry(1, 3, z);
    CHECK(cycle_product(k3, q1) == k3(3, 0) * k3(0, 3) * k3(0, 1) * k3(1, 0) *
                                       cycle_product(k3, p4) / reversed_cycle_product(k3, p2));
    auto k4 = h.with_entry(3, 1, z);
    CHECK(reversed_cycle_product(k4, q1) == k4(3, 0) * k4(0, 3) * k4(0, 1) * k4(1, 0) *
                                                reversed_cycle_product(k4, p4) /
                                                cycle_product(k4, p2));
  }
}

TEST_CASE("five-vertex star decomposition of a 4-cycle") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    auto h = oracle::random_kernel(FieldSpec::prime(101), 5, rng);
    Scalar rhs = cycle_product(h, Cycle({0, 1, 4})) * cycle_product(h, Cycle({1, 2, 4})) *
                 cycle_product(h, Cycle({2, 3, 4})) * cycle_product(h, Cycle({3, 0, 4}));
    for (std::size_t i = 0; i < 4; ++i) rhs /= h(i, 4) * h(4, i);
    CHECK(cycle_product(h, Cycle({0, 1, 2, 3})) == rhs);
  }
}
