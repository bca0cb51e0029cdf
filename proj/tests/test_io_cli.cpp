#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"

#include "detequiv/cli.hpp"
#include "detequiv/io.hpp"
#include "oracles.hpp"

using namespace detequiv;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("detequiv-test-" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(cli::Command cmd) {
  std::ostringstream out;
  std::ostringstream err;
  return cli::run(cmd, out, err);
}

}  // namespace

TEST_CASE("kernel documents round trip") {
  const auto doc = Json::parse(R"({"field":{"kind":"rational"},"labels":["a","b"],
                                   "entries":[["1/2","0"],[-3,"4/6"]]})");
  const auto k = kernel_from_json(doc);
  CHECK(k(0, 0).to_string() == "1/2");
  CHECK(k(1, 0).to_string() == "-3");
  CHECK(k(1, 1).to_string() == "2/3");
  CHECK(kernel_from_json(kernel_to_json(k)) == k);
  CHECK(kernel_to_json(k).dump() ==
        R"({"field":{"kind":"rational"},"labels":["a","b"],"entries":[["1/2","0"],["-3","2/3"]]})");

  const auto p = kernel_from_json(Json::parse(
      R"({"field":{"kind":"prime","p":7},"labels":["u"],"entries":[["9"]]})"));
  CHECK(p(0, 0).to_string() == "2");
  CHECK(kernel_to_json(p)["field"].dump() == R"({"kind":"prime","p":7})");

  CHECK_THROWS_AS(kernel_from_json(Json::parse(R"({"labels":["a"],"entries":[["1"]]})")), ParseError);
  CHECK_THROWS_AS(kernel_from_json(Json::parse(
                      R"({"field":{"kind":"prime","p":8},"labels":["a"],"entries":[["1"]]})")),
                  ParseError);
  CHECK_THROWS_AS(kernel_from_json(Json::parse(
                      R"({"field":{"kind":"rational"},"labels":["a","b"],"entries":[["1"]]})")),
                  LengthMismatch);
}

TEST_CASE("instance bundles round trip") {
  const auto inst = gen_instance(InstanceSpec{FieldSpec::prime(11), 5, true, 1, 8});
  const auto doc = instance_to_json(inst);
  const auto back = instance_from_json(doc);
  CHECK(back.k == inst.k);
  CHECK(back.q == inst.q);
  CHECK(back.truth.transposed);
  CHECK(back.seed == 8);
  CHECK(instance_to_json(back).dump() == doc.dump());
}

TEST_CASE("command line exit codes and reports") {
  TempDir dir;
  cli::Command gen;
  gen.subcommand = "gen";
  gen.field = FieldSpec::prime(11);
  gen.n = 6;
  gen.transpose = true;
  gen.zeros = 1;
  gen.seed = 4;
  gen.out = dir / "inst.json";
  REQUIRE(run(gen) == cli::kPositive);

  cli::Command rec;
  rec.subcommand = "recover";
  rec.k = dir / "inst.json";
  rec.out = dir / "cert.json";
  rec.audit_consistency = true;
  CHECK(run(rec) == cli::kPositive);
  const auto cert = read_json_file(dir / "cert.json");
  CHECK(cert["transposed"] == true);
  CHECK(cert["verified"] == true);
  CHECK(cert["base"] == "x0");
  CHECK(cert["global_case"] == "case2");
  const auto first = slurp(dir / "cert.json");
  CHECK(run(rec) == cli::kPositive);
  CHECK(slurp(dir / "cert.json") == first);

  cli::Command pert;
  pert.subcommand = "perturb";
  pert.k = dir / "inst.json";
  pert.seed = 2;
  pert.out = dir / "q2.json";
  REQUIRE(run(pert) == cli::kPositive);

  cli::Command neg = rec;
  neg.q = dir / "q2.json";
  neg.out = dir / "neg.json";
  CHECK(run(neg) == cli::kNegative);
  const auto report = read_json_file(dir / "neg.json");
  CHECK(report["verdict"] == "not_equivalent");
  const auto inst = instance_from_json(read_json_file(dir / "inst.json"));
  const auto q2 = kernel_from_json(read_json_file(dir / "q2.json"));
  std::vector<std::size_t> subset;
  for (const auto& label : report["witness"]["subset"]) subset.push_back(*inst.k.index_of(label));
  CHECK_FALSE(oracle::minor_of(inst.k, subset) == oracle::minor_of(q2, subset));

  cli::Command eq;
  eq.subcommand = "check-equiv";
  eq.k = dir / "inst.json";
  eq.q = dir / "q2.json";
  eq.out = dir / "eq.json";
  CHECK(run(eq) == cli::kNegative);

  cli::Command orc;
  orc.subcommand = "oracle";
  orc.k = dir / "inst.json";
  orc.out = dir / "orc.json";
  CHECK(run(orc) == cli::kPositive);
  CHECK(read_json_file(dir / "orc.json")["similar"] == true);

  write_json_file(dir / "ones.json",
                  kernel_to_json(oracle::from_ints(FieldSpec::rationals(),
                                                   {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}})));
  cli::Command cd;
  cd.subcommand = "check-classd";
  cd.k = dir / "ones.json";
  cd.out = dir / "cd.json";
  CHECK(run(cd) == cli::kNegative);
  const auto w = read_json_file(dir / "cd.json")["witness"];
  CHECK(w["x"] == "a");
  CHECK(w["y"] == "b");
  CHECK(w["z"] == "c");
  CHECK(w["w"] == "d");

  cli::Command cls;
  cls.subcommand = "classify";
  cls.k = dir / "inst.json";
  cls.out = dir / "cls.json";
  CHECK(run(cls) == cli::kPositive);
  const auto table = read_json_file(dir / "cls.json");
  CHECK(table.size() == 20);
  CHECK(table[0]["cycle"].size() == 3);

  cli::Command bad = rec;
  bad.k = dir / "missing.json";
  CHECK(run(bad) == cli::kInputError);
  cli::Command mismatch = eq;
  mismatch.q = dir / "ones.json";
  CHECK(run(mismatch) == cli::kInputError);
  cli::Command unknown;
  unknown.subcommand = "frobnicate";
  CHECK(run(unknown) == cli::kInputError);
}

TEST_CASE("order-capped equivalence is reported") {
  TempDir dir;
  const auto f = FieldSpec::rationals();
  write_json_file(dir / "k.json", kernel_to_json(oracle::from_ints(f, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})));
  write_json_file(dir / "q.json", kernel_to_json(oracle::from_ints(f, {{0, 1, -1}, {1, 0, 1}, {-1, 1, 0}})));
  cli::Command eq;
  eq.subcommand = "check-equiv";
  eq.k = dir / "k.json";
  eq.q = dir / "q.json";
  eq.out = dir / "r.json";
  eq.max_order = 2;
  CHECK(run(eq) == cli::kPositive);
  const auto r = read_json_file(dir / "r.json");
  CHECK(r["checked_order_max"] == 2);
  CHECK(r["verdict"] == "equivalent");
  eq.max_order.reset();
  CHECK(run(eq) == cli::kNegative);
}
