#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "ogpf/errors.hpp"
#include "ogpf/pwa.hpp"

using namespace ogpf;

namespace {

const SparseRow& find_row(const MldBlock& blk, const std::string& tail) {
  for (const auto* rows : {&blk.inequalities, &blk.equalities, &blk.coupled_equalities}) {
    for (const SparseRow& r : *rows) {
      if (r.label == blk.pipe + ":" + tail) return r;
    }
  }
  FAIL("no row " << tail);
  throw std::logic_error("unreachable");
}

MldPipeBounds unit_box() { return MldPipeBounds{0.0, 1.0, 0.0, 1.0}; }

}  // namespace

TEST_CASE("two regions on the unit span") {
  PwaCurve c = fit_pwa(1.0, 1.0, PwaConfig{2, 1e-6});
  REQUIRE(c.r() == 2);
  CHECK(c.segments[0].lo == -1.0);
  CHECK(c.segments[0].hi == 0.0);
  CHECK(c.segments[0].a == doctest::Approx(-1.0));
  CHECK(c.segments[0].b == doctest::Approx(0.0));
  CHECK(c.segments[1].a == doctest::Approx(1.0));
  CHECK(c.segments[1].b == doctest::Approx(0.0));
}

TEST_CASE("chord coefficients on [1,2] and with c_f = 2") {
  PwaCurve c = fit_pwa(1.0, 2.0, PwaConfig{4, 1e-6});
  CHECK(c.segments[3].lo == doctest::Approx(1.0));
  CHECK(c.segments[3].hi == doctest::Approx(2.0));
  CHECK(c.segments[3].a == doctest::Approx(3.0));
  CHECK(c.segments[3].b == doctest::Approx(-2.0));

  PwaCurve d = fit_pwa(2.0, 2.0, PwaConfig{2, 1e-6});
  CHECK(d.segments[1].a == doctest::Approx(0.5));
  CHECK(d.segments[1].b == doctest::Approx(0.0));
}

TEST_CASE("segments tile the span with zero as a breakpoint") {
  for (int r : {2, 4, 6, 10}) {
    PwaCurve c = fit_pwa(1.3, 3.7, PwaConfig{r, 1e-6});
    CHECK(c.segments.front().lo == -3.7);
    CHECK(c.segments.back().hi == 3.7);
    for (int m = 0; m + 1 < r; ++m) CHECK(c.segments[m].hi == c.segments[m + 1].lo);
    CHECK(c.segments[r / 2].lo == 0.0);
    for (int m = 0; m < r; ++m) CHECK(c.segments[m].m == m + 1);
  }
}

TEST_CASE("max region error") {
  CHECK(max_region_error(PwaSegment{1, 0.0, 1.0, 1.0, 0.0}, 1.0) == doctest::Approx(0.25));
  CHECK(max_region_error(PwaSegment{1, 0.7, 0.7, 1.4, -0.49}, 1.0) == 0.0);
  CHECK(max_region_error(PwaSegment{1, 0.0, 2.0, 0.5, 0.0}, 2.0) == doctest::Approx(0.25));
}

TEST_CASE("doubling r quarters the worst error") {
  for (int r : {2, 4, 8}) {
    PwaCurve a = fit_pwa(1.1, 2.5, PwaConfig{r, 1e-6});
    PwaCurve b = fit_pwa(1.1, 2.5, PwaConfig{2 * r, 1e-6});
    const double ea = max_region_error(a.segments[0], 1.1);
    const double eb = max_region_error(b.segments[0], 1.1);
    CHECK(eb == doctest::Approx(ea / 4.0));
  }
}

TEST_CASE("region lookup breaks ties away from zero") {
  PwaCurve c = fit_pwa(1.0, 1.0, PwaConfig{4, 1e-6});
  CHECK(c.region_of(0.0) == 2);
  CHECK(c.region_of(0.5) == 3);
  CHECK(c.region_of(-0.5) == 0);
  CHECK(c.region_of(0.25) == 2);
  CHECK(c.region_of(-0.25) == 1);
  CHECK(c.region_of(1.0) == 3);
  CHECK(c.region_of(-1.0) == 0);
  CHECK(c.region_of(7.0) == 3);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(PwaConfig({3, 1e-6}).validate(), ConfigError);
  CHECK_THROWS_AS(PwaConfig({0, 1e-6}).validate(), ConfigError);
  CHECK_THROWS_AS(PwaConfig({4, 0.0}).validate(), ConfigError);
  CHECK_NOTHROW(PwaConfig({2, 1e-6}).validate());
}

TEST_CASE("block sizes") {
  for (int r : {2, 4, 6}) {
    PwaCurve c = fit_pwa(1.0, 1.0, PwaConfig{r, 1e-6});
    MldBlock blk = emit_mld("p", unit_box(), c, PwaConfig{r, 1e-6});
    CHECK(blk.num_binaries() == 1 + 3 * r);
    CHECK(blk.num_extra_continuous() == 1 + r);
    int binaries = 0;
    for (int k = 0; k < blk.layout.size(); ++k) binaries += blk.layout.is_binary(k);
    CHECK(binaries == 1 + 3 * r);
    CHECK(blk.inequalities.size() == static_cast<std::size_t>(8 + 11 * r));
    CHECK(blk.equalities.size() == 1);
    CHECK(blk.coupled_equalities.size() == 3);
  }
}

TEST_CASE("a region selected without its alpha violates the logic row") {
  PwaCurve c = fit_pwa(1.0, 1.0, PwaConfig{2, 1e-6});
  MldBlock blk = emit_mld("p", unit_box(), c, PwaConfig{2, 1e-6});
  std::vector<double> x(blk.layout.size(), 0.0);
  x[blk.layout.delta(1)] = 1.0;
  x[blk.layout.alpha(1)] = 0.0;
  const SparseRow& row = find_row(blk, "logic_alpha[2]");
  CHECK(row.dot(x) == 1.0);
  CHECK(row.dot(x) > row.rhs);
}

TEST_CASE("truth-table point satisfies the logic rows of its block") {
  PwaCurve c = fit_pwa(1.0, 1.0, PwaConfig{2, 1e-6});
  MldBlock blk = emit_mld("p", unit_box(), c, PwaConfig{2, 1e-6});
  const MldLayout& L = blk.layout;
  std::vector<double> x(L.size(), 0.0);
  x[L.psi_from()] = 0.5;
  x[L.psi_to()] = 0.25;
  x[L.flow()] = 0.5;
  x[L.delta_psi()] = 1;
  x[L.aux_psi()] = 0.5;
  x[L.delta(1)] = 1;
  x[L.aux_flow(1)] = 0.5;
  x[L.alpha(1)] = 1;
  x[L.beta(0)] = 1;
  x[L.beta(1)] = 1;
  x[L.partner_flow()] = -0.5;
  CHECK(blk.max_violation(x, false) <= 1e-12);
  // The point is on the Weymouth curve (0.5^2 = 0.5 - 0.25) rather than on
  // the chord, so the PWA flow equality is off by exactly the chord error.
  const SparseRow& flow = find_row(blk, "pwa_flow");
  CHECK(std::abs(flow.dot(x) - flow.rhs) == doctest::Approx(max_region_error(c.segments[1], 1.0)));
  CHECK(find_row(blk, "reciprocity").dot(x) == 0.0);
  CHECK(find_row(blk, "delta_psi_link").dot(x) == 1.0);
}

TEST_CASE("unbounded pressures cannot produce big-M constants") {
  PwaCurve c = fit_pwa(1.0, 1.0, PwaConfig{2, 1e-6});
  MldPipeBounds bd = unit_box();
  bd.psi_to_max = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(emit_mld("p", bd, c, PwaConfig{2, 1e-6}), MissingBounds);
}
