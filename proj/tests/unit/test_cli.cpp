#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "qhopf/cli.hpp"
#include "qhopf/io.hpp"
#include "qhopf/errors.hpp"
#include "support/temp_dir.hpp"

using namespace qhopf;
using qhopf::testing::slurp;
using qhopf::testing::TempDir;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"qhopf"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string value_of(const std::string& report, const std::string& key) {
  std::istringstream is(report);
  for (std::string line; std::getline(is, line);)
    if (line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
  return {};
}

}  // namespace

TEST_CASE("parse_axis") {
  const Axis a = parse_axis("lambda:0:1:201");
  CHECK(a.name == Parameter::Lambda);
  CHECK(a.min == 0.0);
  CHECK(a.max == 1.0);
  CHECK(a.count == 201);
  CHECK_THROWS_AS(parse_axis("lambda:0:1"), InvalidSpec);
  CHECK_THROWS_AS(parse_axis("theta:0:1:3"), InvalidSpec);
  CHECK_THROWS_AS(parse_axis("gamma:a:1:3"), InvalidSpec);
  CHECK_THROWS_AS(parse_axis("gamma:0:1:2.5"), InvalidSpec);
}

TEST_CASE("spectrum") {
  SUBCASE("reference couplings") {
    const Run r = run({"--gamma", "0.5", "--jz", "0.15", "--dz", "0.2", "--lambda", "0", "--bz", "0.1", "spectrum"});
    CHECK(r.code == kExitOk);
    CHECK(value_of(r.out, "ground.sector") == "odd");
    CHECK(std::stod(value_of(r.out, "ground.energy")) == doctest::Approx(0.15 - std::sqrt(1.05)).epsilon(1e-12));
    CHECK(std::stod(value_of(r.out, "concurrence")) == doctest::Approx(std::sqrt(1.04 / 1.05)).epsilon(1e-11));
    CHECK(std::stod(value_of(r.out, "berry.closed")) == 0.0);
  }
  SUBCASE("pure anisotropy") {
    const Run r = run({"--gamma", "1", "spectrum"});
    CHECK(r.code == kExitOk);
    CHECK(value_of(r.out, "ground.sector") == "even");
    CHECK(std::stod(value_of(r.out, "concurrence")) == doctest::Approx(1.0));
  }
  SUBCASE("json record") {
    TempDir dir;
    const auto path = dir / "spec.json";
    const Run r = run({"--gamma", "0.5", "spectrum", "--json", path.string()});
    CHECK(r.code == kExitOk);
    const std::string json = slurp(path);
    CHECK(json == spectrum_json([] {
            ModelParams p;
            p.gamma = 0.5;
            return p;
          }()));
    CHECK(json.find("\"concurrence\"") != std::string::npos);
  }
  SUBCASE("malformed value names the flag and writes nothing") {
    TempDir dir;
    const auto path = dir / "spec.json";
    const Run r = run({"--gamma", "abc", "spectrum", "--json", path.string()});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("--gamma") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(path));
  }
  SUBCASE("missing subcommand") { CHECK(run({"--gamma", "0.5"}).code == kExitUsage); }
  SUBCASE("non-finite parameter") { CHECK(run({"--gamma", "nan", "spectrum"}).code == kExitUsage); }
}

TEST_CASE("sweep") {
  TempDir dir;
  const auto out = dir / "nested" / "grid.csv";
  SUBCASE("2 x 2 grid") {
    const Run r = run({"--jz", "0.15", "--dz", "0.2", "--bz", "0.1", "sweep", "--x", "gamma:0:1:2", "--y",
                       "lambda:0:1:2", "--out", out.string(), "--svg", "energy,concurrence"});
    REQUIRE(r.code == kExitOk);
    const std::string csv = slurp(out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(std::filesystem::exists(locus_path(out)));
    CHECK(std::filesystem::exists(out.string() + ".energy.svg"));
    CHECK(std::filesystem::exists(out.string() + ".concurrence.svg"));
    CHECK(r.out.find("locus_points = ") != std::string::npos);
    CHECK(r.out.find("energy: min = ") != std::string::npos);
  }
  SUBCASE("quantity selection") {
    const Run r = run({"sweep", "--x", "gamma:0:1:3", "--quantities", "concurrence", "--out", out.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(slurp(out).rfind("gamma,concurrence\n", 0) == 0);
  }
  SUBCASE("identical flags give identical bytes") {
    const auto other = dir / "other.csv";
    const Run a = run({"--jz", "0.15", "--dz", "0.2", "--bz", "0.1", "sweep", "--x", "gamma:0:1:31", "--y",
                       "lambda:0:1:31", "--out", out.string(), "--svg", "gap", "--workers", "1"});
    const Run b = run({"--jz", "0.15", "--dz", "0.2", "--bz", "0.1", "sweep", "--x", "gamma:0:1:31", "--y",
                       "lambda:0:1:31", "--out", other.string(), "--svg", "gap", "--workers", "5"});
    REQUIRE(a.code == kExitOk);
    REQUIRE(b.code == kExitOk);
    CHECK(slurp(out) == slurp(other));
    CHECK(slurp(locus_path(out)) == slurp(locus_path(other)));
    CHECK(slurp(out.string() + ".gap.svg") == slurp(other.string() + ".gap.svg"));
  }
  SUBCASE("verify") {
    const Run r = run({"--jz", "0.15", "--dz", "0.2", "--bz", "0.1", "sweep", "--x", "gamma:0:1:5", "--y",
                       "lambda:0:1:5", "--out", out.string(), "--verify", "--steps", "512"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("verify") != std::string::npos);
  }
  SUBCASE("invalid specs") {
    CHECK(run({"sweep", "--x", "gamma:0:1:3", "--y", "gamma:0:1:3", "--out", out.string()}).code == kExitUsage);
    CHECK(run({"sweep", "--x", "gamma:1:0:3", "--out", out.string()}).code == kExitUsage);
    CHECK(run({"sweep", "--x", "gamma:0:1:3", "--quantities", "entropy", "--out", out.string()}).code ==
          kExitUsage);
    CHECK(run({"sweep", "--x", "gamma:0:1:3"}).code == kExitUsage);
    CHECK(run({"sweep", "--x", "gamma:0:1:3", "--out", out.string(), "--verify", "--steps", "8"}).code ==
          kExitUsage);
    CHECK_FALSE(std::filesystem::exists(out));
  }
  SUBCASE("unwritable output") {
    std::ofstream(dir / "blocker") << "x";
    const Run r = run({"sweep", "--x", "gamma:0:1:3", "--out", (dir / "blocker" / "grid.csv").string()});
    CHECK(r.code == kExitFailure);
    CHECK(r.err.find("blocker") != std::string::npos);
  }
}

TEST_CASE("crossing") {
  SUBCASE("reference couplings along gamma") {
    const Run r = run({"--jz", "0.15", "--dz", "0.2", "--bz", "0.1", "crossing", "--axis", "gamma", "--lo", "0",
                       "--hi", "2"});
    REQUIRE(r.code == kExitOk);
    CHECK(std::abs(std::stod(value_of(r.out, "root")) - (std::sqrt(1.05) - 0.3)) <= 1e-9);
    CHECK(!value_of(r.out, "gap(lo)").empty());
    CHECK(!value_of(r.out, "gap(hi)").empty());
  }
  SUBCASE("second reference set") {
    const Run r = run({"--jz", "0.1", "--dz", "0.4", "--lambda", "0.85", "crossing", "--axis", "gamma"});
    REQUIRE(r.code == kExitOk);
    const double expected = std::sqrt(std::pow(std::sqrt(1.16) - 0.2, 2) - 0.7225);
    CHECK(std::abs(std::stod(value_of(r.out, "root")) - expected) <= 1e-9);
  }
  SUBCASE("no sign change") {
    const Run r = run({"--jz", "2", "crossing", "--axis", "gamma", "--lo", "0", "--hi", "1"});
    CHECK(r.code == kExitNoCrossing);
    CHECK(r.err.find("gap") != std::string::npos);
  }
  SUBCASE("unknown axis") { CHECK(run({"crossing", "--axis", "theta"}).code == kExitUsage); }
}

TEST_CASE("berry") {
  SUBCASE("odd regime is zero throughout") {
    const Run r = run({"--gamma", "0.5", "--jz", "0.15", "--dz", "0.2", "--bz", "0.1", "berry"});
    REQUIRE(r.code == kExitOk);
    CHECK(std::stod(value_of(r.out, "closed_form")) == 0.0);
    CHECK(std::stod(value_of(r.out, "principal")) == 0.0);
    CHECK(std::abs(std::stod(value_of(r.out, "numeric"))) <= 1e-9);
  }
  SUBCASE("lambda = 0 even regime") {
    const Run r = run({"--gamma", "0.4", "--jz", "0.5", "berry"});
    REQUIRE(r.code == kExitOk);
    CHECK(std::stod(value_of(r.out, "closed_form")) == doctest::Approx(-2.0 * std::numbers::pi));
    CHECK(std::abs(std::stod(value_of(r.out, "principal"))) <= 1e-12);
    CHECK(std::abs(std::stod(value_of(r.out, "numeric"))) <= 1e-3);
  }
  SUBCASE("verify prints the halving ratio") {
    const Run r = run({"--gamma", "0.4", "--lambda", "0.3", "--jz", "0.3", "berry", "--steps", "1024", "--verify"});
    REQUIRE(r.code == kExitOk);
    CHECK(std::stod(value_of(r.out, "verify.ratio")) == doctest::Approx(4.0).epsilon(0.02));
  }
  SUBCASE("crossing is a warning") {
    const Run r = run({"--gamma", "0.5", "--jz", "0.25", "berry"});
    CHECK(r.code == kExitOk);
    CHECK(r.err.find("warning") != std::string::npos);
  }
  SUBCASE("too few steps") { CHECK(run({"berry", "--steps", "15"}).code == kExitUsage); }
}

TEST_CASE("config file supplies defaults, flags override") {
  TempDir dir;
  const auto cfg = dir / "run.ini";
  std::ofstream(cfg) << "gamma = 0.5\njz = 0.15\ndz = 0.2\nbz = 0.1\n";
  const Run from_file = run({"--config", cfg.string(), "spectrum"});
  REQUIRE(from_file.code == kExitOk);
  CHECK(value_of(from_file.out, "ground.sector") == "odd");
  const Run overridden = run({"--config", cfg.string(), "--gamma", "2", "spectrum"});
  REQUIRE(overridden.code == kExitOk);
  CHECK(value_of(overridden.out, "gamma") == "2");
  CHECK(value_of(overridden.out, "jz") == "0.15");
  CHECK(value_of(overridden.out, "ground.sector") == "even");
  CHECK(run({"--config", (dir / "absent.ini").string(), "spectrum"}).code == kExitUsage);
}
