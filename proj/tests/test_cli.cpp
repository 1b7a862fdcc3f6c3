#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "riccikit/cli.hpp"
#include "riccikit/warped.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = riccikit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("catalog list prints one name per line") {
  const auto r = run({"catalog", "list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cigar\n") != std::string::npos);
  CHECK(r.out.find("euclidean_schwarzschild\n") != std::string::npos);
}

TEST_CASE("verify on the cigar: energy four everywhere, exit zero") {
  const auto r = run({"verify", "--catalog", "cigar", "--samples", "12", "--seed", "7", "--no-meta"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["summary"]["verdicts"]["is_soliton"].get<bool>());
  CHECK(doc["summary"]["verdicts"]["energy_constant"].get<bool>());
  for (const auto& p : doc["points"])
    CHECK(std::abs(p["hamilton_energy"].get<double>() - 4.0) < 1e-8);
  CHECK(doc.count("meta") == 0);
}

TEST_CASE("verify is byte-deterministic under a fixed seed") {
  const std::vector<std::string> args = {"verify", "--catalog", "product_line_cross_fiber",
                                         "--samples", "6",      "--seed",    "42",
                                         "--no-meta"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("verify flags the perturbed control with exit one") {
  const auto r = run({"verify", "--catalog", "perturbed_non_soliton", "--samples", "10", "--no-meta"});
  CHECK(r.code == 1);
  const json doc = json::parse(r.out);
  CHECK_FALSE(doc["summary"]["verdicts"]["is_soliton"].get<bool>());
}

TEST_CASE("verify accepts explicit points") {
  const auto r = run({"verify", "--catalog", "cigar", "--point", "1.0,1.0", "--point", "0.5,-0.25",
                      "--no-meta"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["points"].size() == 2);
}

TEST_CASE("tensors dump carries curvature and conformal blocks") {
  const auto r = run({"tensors", "--catalog", "euclidean_schwarzschild", "--samples", "2", "--seed", "3",
                      "--no-meta"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["points"].size() == 2);
  for (const auto& p : doc["points"]) {
    CHECK(p.contains("ricci"));
    CHECK(p.contains("weyl_norm"));
    CHECK(p["weyl_norm"].get<double>() > 1e-3);
    CHECK(p.contains("bach"));
  }
}

TEST_CASE("bryant subcommand emits a profile CSV plus asymptotics JSON") {
  const std::string csv = "/tmp/riccikit_cli_bryant.csv";
  const auto r = run({"bryant", "--n", "4", "--rmax", "300", "--out", csv, "--no-meta"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(std::abs(doc["asymptotics"]["volume_growth_exponent"].get<double>() - 2.5) < 0.1);
  CHECK(std::abs(doc["asymptotics"]["curvature_decay_exponent"].get<double>() + 1.0) < 0.05);
  CHECK(doc["checks"]["energy_conserved"].get<bool>());
  CHECK(doc["checks"]["scalar_nonnegative"].get<bool>());

  const riccikit::WarpedProfile p = riccikit::read_profile_csv(csv);
  CHECK(p.n == 4);
  CHECK(p.size() > 100);

  SUBCASE("the emitted profile verifies as a steady soliton") {
    const auto v = run({"verify", "--profile", csv, "--samples", "8", "--seed", "2", "--no-meta"});
    CHECK(v.code == 0);
    const json vdoc = json::parse(v.out);
    CHECK(vdoc["summary"]["verdicts"]["is_soliton"].get<bool>());
    for (const auto& pt : vdoc["points"])
      CHECK(std::abs(pt["hamilton_energy"].get<double>() - 1.0) < 1e-5);
  }

  SUBCASE("the emitted profile classifies as bryant") {
    const auto c = run({"classify", "--profile", csv, "--no-meta"});
    CHECK(c.code == 0);
    const json cdoc = json::parse(c.out);
    CHECK(cdoc["branch"] == "bryant");
  }
  std::remove(csv.c_str());
}

TEST_CASE("classify the catalog fixtures through the CLI") {
  const auto flat = run({"classify", "--catalog", "flat", "--param", "n=5", "--no-meta"});
  CHECK(flat.code == 0);
  CHECK(json::parse(flat.out)["branch"] == "ricci_flat_constant_potential");

  const auto prod = run({"classify", "--catalog", "product_line_cross_fiber", "--no-meta"});
  CHECK(prod.code == 0);
  CHECK(json::parse(prod.out)["branch"] == "product_ricci_flat_fiber");

  const auto pert = run({"classify", "--catalog", "perturbed_non_soliton", "--no-meta"});
  CHECK(pert.code == 1);
  CHECK(json::parse(pert.out)["branch"] == "not_a_soliton");
}

TEST_CASE("usage errors exit with code two") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify"}).code == 2);                                   // no input
  CHECK(run({"verify", "--catalog", "nonsense"}).code == 2);          // unknown-name
  CHECK(run({"classify", "--profile", "/nonexistent.csv"}).code == 2);  // unreadable input
  CHECK(run({"catalog", "dance"}).code == 2);
}

TEST_CASE("verify writes to a file when asked") {
  const std::string path = "/tmp/riccikit_cli_verify.json";
  const auto r = run({"verify", "--catalog", "cigar", "--samples", "4", "--out", path, "--no-meta"});
  CHECK(r.code == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  const json doc = json::parse(f);
  CHECK(doc["input"] == "catalog:cigar");
  std::remove(path.c_str());
}

TEST_CASE("csv format emits a plottable table") {
  const auto r = run({"verify", "--catalog", "cigar", "--samples", "3", "--format", "csv", "--no-meta"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("soliton_residual,", 0) == 0);
}
