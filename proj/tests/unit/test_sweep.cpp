#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "qhopf/errors.hpp"
#include "qhopf/geometry.hpp"
#include "qhopf/sweep.hpp"

using namespace qhopf;

namespace {

ModelParams reference_fixed() {
  ModelParams p;
  p.jz = 0.15;
  p.dz = 0.2;
  p.bz = 0.1;
  return p;
}

GridSpec reference_grid(int count) {
  GridSpec spec;
  spec.x = {Parameter::Gamma, 0.0, 1.0, count};
  spec.y = Axis{Parameter::Lambda, 0.0, 1.0, count};
  spec.fixed = reference_fixed();
  return spec;
}

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0 || (std::isnan(a) && std::isnan(b)); }

bool same_cells(const SweepResult& a, const SweepResult& b) {
  if (a.cells.size() != b.cells.size() || a.crossing_locus.size() != b.crossing_locus.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const CellRecord &u = a.cells[i], &v = b.cells[i];
    if (!bitwise_equal(u.x, v.x) || !bitwise_equal(u.y, v.y) || !bitwise_equal(u.energy, v.energy) ||
        u.sector != v.sector || u.label != v.label || !bitwise_equal(u.gap, v.gap) ||
        !bitwise_equal(u.concurrence, v.concurrence) || !bitwise_equal(u.berry_closed, v.berry_closed) ||
        !bitwise_equal(u.berry_principal, v.berry_principal))
      return false;
  }
  for (std::size_t i = 0; i < a.crossing_locus.size(); ++i)
    if (!bitwise_equal(a.crossing_locus[i].x, b.crossing_locus[i].x) ||
        !bitwise_equal(a.crossing_locus[i].y, b.crossing_locus[i].y))
      return false;
  return true;
}

ModelParams at_locus(const GridSpec& spec, const LocusPoint& pt) {
  ModelParams p = spec.fixed.with(spec.x.name, pt.x);
  if (spec.y) p = p.with(spec.y->name, pt.y);
  return p;
}

}  // namespace

TEST_CASE("Axis") {
  const Axis a{Parameter::Gamma, 0.0, 1.0, 201};
  CHECK(a.at(0) == 0.0);
  CHECK(a.at(200) == 1.0);
  CHECK(a.at(100) == doctest::Approx(0.5));
  CHECK(a.spacing() == doctest::Approx(0.005));
}

TEST_CASE("quantity names") {
  for (Quantity q : all_quantities()) CHECK(parse_quantity(to_string(q)) == q);
  CHECK_FALSE(parse_quantity("entropy"));
  CHECK(all_quantities().size() == 6);
}

TEST_CASE("GridSpec validation") {
  GridSpec spec = reference_grid(3);
  CHECK_NOTHROW(spec.validate());

  GridSpec same = spec;
  same.y->name = Parameter::Gamma;
  CHECK_THROWS_AS(same.validate(), InvalidSpec);

  GridSpec reversed = spec;
  reversed.x.max = -1.0;
  CHECK_THROWS_AS(reversed.validate(), InvalidSpec);

  GridSpec small = spec;
  small.y->count = 1;
  CHECK_THROWS_AS(small.validate(), InvalidSpec);

  GridSpec none = spec;
  none.quantities.clear();
  CHECK_THROWS_AS(none.validate(), InvalidSpec);

  GridSpec nan = spec;
  nan.x.min = std::nan("");
  CHECK_THROWS_AS(nan.validate(), InvalidSpec);

  CHECK_THROWS_AS(run_sweep_2d(same), InvalidSpec);
}

TEST_CASE("run_sweep_2d on the reference couplings") {
  const GridSpec spec = reference_grid(201);
  const SweepResult r = run_sweep_2d(spec);
  REQUIRE(r.cells.size() == 201u * 201u);
  const double radius = std::sqrt(1.05) - 0.3;
  const double diagonal = std::hypot(spec.x.spacing(), spec.y->spacing());

  SUBCASE("layout is row-major with x fastest") {
    CHECK(r.at(3, 0).x == spec.x.at(3));
    CHECK(r.at(0, 7).y == spec.y->at(7));
    CHECK(&r.at(1, 0) == &r.cells[1]);
  }
  SUBCASE("locus lies on the analytic circle") {
    REQUIRE(!r.crossing_locus.empty());
    for (const LocusPoint& pt : r.crossing_locus) {
      CHECK(std::abs(std::hypot(pt.x, pt.y) - radius) <= diagonal);
      CHECK(std::abs(crossing_gap(at_locus(spec, pt))) <= 1e-8);
    }
    // every row with lambda below the radius crosses once
    std::size_t rows = 0;
    for (int iy = 0; iy < spec.ny(); ++iy) rows += spec.y->at(iy) < radius ? 1 : 0;
    CHECK(r.crossing_locus.size() == rows);
  }
  SUBCASE("labels follow the gap; values stay in range") {
    for (const CellRecord& c : r.cells) {
      if (std::abs(c.gap) <= kCrossingTolerance) {
        CHECK(c.label == PhaseLabel::F);
      } else {
        CHECK(c.label == (c.gap < 0.0 ? PhaseLabel::P : PhaseLabel::O));
        CHECK(c.sector == (c.gap < 0.0 ? Sector::Even : Sector::Odd));
      }
      CHECK(c.concurrence >= 0.0);
      CHECK(c.concurrence <= 1.0);
      CHECK(c.berry_principal > -std::numbers::pi);
      CHECK(c.berry_principal <= std::numbers::pi);
      if (c.sector == Sector::Odd) CHECK(c.berry_closed == 0.0);
    }
  }
  SUBCASE("concurrence is 1 on the lambda = 0 even side and jumps across the locus") {
    int first_even = -1;
    for (int ix = 0; ix < spec.nx(); ++ix) {
      const CellRecord& c = r.at(ix, 0);
      if (c.sector == Sector::Even) {
        CHECK(c.concurrence == doctest::Approx(1.0).epsilon(1e-14));
        if (first_even < 0) first_even = ix;
      }
    }
    REQUIRE(first_even > 0);
    CHECK(std::abs(r.at(first_even, 0).x - radius) <= spec.x.spacing());
    CHECK(r.at(first_even - 1, 0).sector == Sector::Odd);
    CHECK(r.at(first_even - 1, 0).concurrence < 1.0 - 1e-3);
    CHECK(std::abs(r.at(first_even, 0).berry_closed - r.at(first_even - 1, 0).berry_closed) > 1.0);
  }
}

TEST_CASE("run_sweep_2d with no crossing") {
  GridSpec spec;
  spec.x = {Parameter::Gamma, 0.0, 0.1, 2};
  spec.y = Axis{Parameter::Lambda, 0.0, 0.1, 2};
  spec.fixed = reference_fixed();
  const SweepResult r = run_sweep_2d(spec);
  CHECK(r.cells.size() == 4);
  CHECK(r.crossing_locus.empty());
}

TEST_CASE("locus point on a grid node") {
  // gamma = 0.5 is both a node and the root at jz = 0.25
  GridSpec spec;
  spec.x = {Parameter::Gamma, 0.0, 1.0, 5};
  spec.y = Axis{Parameter::Jz, 0.25, 0.5, 2};
  const SweepResult r = run_sweep_2d(spec);
  CHECK(r.at(2, 0).label == PhaseLabel::F);
  REQUIRE(!r.crossing_locus.empty());
  CHECK(r.crossing_locus.front().x == doctest::Approx(0.5));
  CHECK(r.crossing_locus.front().y == 0.25);
}

TEST_CASE("determinism across worker counts") {
  const GridSpec spec = reference_grid(41);
  const SweepResult one = run_sweep_2d(spec, 1);
  for (unsigned w : {2u, 3u, 8u, 0u}) CHECK(same_cells(one, run_sweep_2d(spec, w)));
  CHECK(same_cells(one, run_sweep_2d(spec, 1)));
}

TEST_CASE("run_sweep_1d") {
  const Axis gamma{Parameter::Gamma, 0.0, 2.0, 401};

  SUBCASE("jz = 0.1, bz = 0.2 set crosses once") {
    ModelParams p;
    p.jz = 0.1;
    p.dz = 0.2;
    p.bz = 0.2;
    p.lambda = 0.1;
    const SweepResult r = run_sweep_1d(gamma, p);
    CHECK(r.cells.size() == 401);
    CHECK(!r.spec.y);
    REQUIRE(r.crossing_locus.size() == 1);
    const double expected = std::sqrt(std::pow(std::sqrt(1.08) - 0.2, 2) - 0.01);
    CHECK(std::abs(r.crossing_locus[0].x - expected) <= 1e-9);
    CHECK(std::isnan(r.cells[0].y));
  }
  SUBCASE("jz = 0.5 set: dz = 0.4 stays even, larger dz crosses") {
    ModelParams p;
    p.jz = 0.5;
    p.lambda = 0.1;
    p.bz = 0.1;
    p.dz = 0.4;
    CHECK(run_sweep_1d(gamma, p).crossing_locus.empty());
    CHECK(crossing_gap(p) < 0.0);
    for (double dz : {0.6, 0.8, 1.2}) {
      p.dz = dz;
      const SweepResult r = run_sweep_1d(gamma, p);
      REQUIRE(r.crossing_locus.size() == 1);
      const double radius = std::sqrt(1.0 + dz * dz + 0.01) - 1.0;
      const double expected = std::sqrt(radius * radius - 0.01);
      CHECK(std::abs(r.crossing_locus[0].x - expected) <= 1e-9);
    }
  }
  SUBCASE("two-node range without a crossing") {
    const SweepResult r = run_sweep_1d({Parameter::Gamma, 0.0, 0.1, 2}, reference_fixed());
    CHECK(r.cells.size() == 2);
    CHECK(r.crossing_locus.empty());
  }
}

TEST_CASE("verify_berry") {
  const SweepResult r = run_sweep_2d(reference_grid(21));
  const BerryCheck check = verify_berry(r, 1024, 10);
  CHECK(check.samples > 0);
  CHECK(check.samples <= 10);
  CHECK(check.max_wrap_error <= 1e-3);
}
