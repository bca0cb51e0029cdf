#include <random>

#include "doctest.h"

#include "detequiv/class_d.hpp"
#include "detequiv/equivalence.hpp"
#include "detequiv/io.hpp"
#include "detequiv/oracle.hpp"
#include "detequiv/recovery.hpp"
#include "oracles.hpp"

using namespace detequiv;

TEST_CASE("generated instances satisfy their contract") {
  for (auto f : {FieldSpec::rationals(), FieldSpec::prime(7), FieldSpec::prime(11),
                 FieldSpec::prime(101)}) {
    for (std::size_t n = 4; n <= 8; n += 2) {
      for (std::size_t zeros = 0; zeros <= 2; ++zeros) {
        InstanceSpec spec{f, n, zeros % 2 == 1, zeros, 100 + n};
        const auto inst = gen_instance(spec);
        CHECK(check_class_d(inst.k).holds);
        CHECK(oracle::class_d_sweep(inst.q) == std::nullopt);
        CHECK(check_equivalence(inst.k, inst.q).verdict == Verdict::Equivalent);
        CHECK(inst.q == conjugate(spec.transpose ? transpose(inst.k) : inst.k, inst.truth.gauge));
        std::size_t zero_count = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) zero_count += i != j && inst.k(i, j).is_zero();
        CHECK(zero_count >= zeros);
        CHECK(zero_count <= 2 * zeros);
      }
    }
  }
}

TEST_CASE("generation is deterministic in the seed") {
  InstanceSpec spec{FieldSpec::prime(11), 6, true, 1, 42};
  const auto a = gen_instance(spec);
  const auto b = gen_instance(spec);
  CHECK(instance_to_json(a).dump() == instance_to_json(b).dump());
  spec.seed = 43;
  CHECK_FALSE(instance_to_json(gen_instance(spec)).dump() == instance_to_json(a).dump());
}

TEST_CASE("generation preconditions and methods") {
  InstanceSpec spec;
  spec.n = 4;
  spec.zero_edges = 3;
  CHECK_THROWS_AS(gen_instance(spec), PreconditionError);

  spec = InstanceSpec{FieldSpec::prime(7), 8, false, 2, 5};
  spec.method = GenMethod::Structured;
  const auto s = gen_instance(spec);
  CHECK(s.structured);
  CHECK(check_class_d(s.k).holds);

  spec = InstanceSpec{FieldSpec::prime(3), 6, false, 0, 1};
  spec.max_attempts = 3;
  CHECK_THROWS_AS(gen_instance(spec), GenerationBudgetExceeded);

  spec = InstanceSpec{FieldSpec::prime(3), 4, false, 0, 1};
  CHECK(check_class_d(gen_instance(spec).k).holds);
}

TEST_CASE("perturbation changes one entry and a small minor") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    InstanceSpec spec{seed % 2 ? FieldSpec::rationals() : FieldSpec::prime(7), 5, false, 1, seed};
    const auto inst = gen_instance(spec);
    const auto p = perturb(inst.k, inst.q, seed);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) changed += !(p(i, j) == inst.q(i, j));
    CHECK(changed == 1);
    const auto w = oracle::first_minor_mismatch(inst.k, p);
    REQUIRE(w.has_value());
    CHECK(w->size() <= 3);
    CHECK(perturb(inst.k, inst.q, seed) == p);
  }
}

TEST_CASE("brute-force diagonal similarity") {
  std::mt19937_64 rng(60);
  const auto f = FieldSpec::prime(3);
  const auto k = oracle::random_kernel(f, 4, rng);
  const auto g = oracle::random_gauge(f, 4, rng);
  const auto found = brute_force_diagonal_similar(k, conjugate(k, g));
  REQUIRE(found.has_value());
  CHECK_FALSE(found->transposed);
  CHECK(conjugate(k, found->gauge) == conjugate(k, g));
  const auto t = brute_force_diagonal_similar(k, conjugate(transpose(k), g), true);
  REQUIRE(t.has_value());
  CHECK(t->transposed);
  const auto self = brute_force_diagonal_similar(k, k);
  REQUIRE(self.has_value());
  for (const auto& v : self->gauge.values()) CHECK(v.is_one());
  const auto q = conjugate(k, g);
  CHECK_FALSE(brute_force_diagonal_similar(k, perturb(k, q, 1)).has_value());

  const auto r = oracle::random_kernel(FieldSpec::rationals(), 5, rng);
  const auto rg = oracle::random_gauge(FieldSpec::rationals(), 5, rng);
  const auto rr = brute_force_diagonal_similar(r, conjugate(transpose(r), rg));
  REQUIRE(rr.has_value());
  CHECK(rr->transposed);
  CHECK_THROWS_AS(brute_force_diagonal_similar(oracle::random_kernel(FieldSpec::prime(101), 8, rng),
                                               oracle::random_kernel(FieldSpec::prime(101), 8, rng)),
                  PreconditionError);
}

TEST_CASE("counterexample search") {
  CHECK(search_counterexample(FieldSpec::prime(3), 4, 0, 1).empty());
  const auto a = search_counterexample(FieldSpec::prime(2), 4, 20000, 9, 16);
  const auto b = search_counterexample(FieldSpec::prime(2), 4, 20000, 9, 16);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].k == b[i].k);
    CHECK(a[i].q == b[i].q);
    CHECK(check_equivalence(a[i].k, a[i].q).verdict == Verdict::Equivalent);
    CHECK_FALSE(brute_force_diagonal_similar(a[i].k, a[i].q).has_value());
    CHECK_FALSE((check_class_d(a[i].k).holds && check_class_d(a[i].q).holds));
  }
  CHECK_THROWS_AS(search_counterexample(FieldSpec::rationals(), 4, 10, 1), PreconditionError);
}
