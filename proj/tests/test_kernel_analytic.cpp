#include "viab/kernel_analytic.hpp"

#include <random>

#include "doctest.h"
#include "viab/model.hpp"

using namespace viab;

namespace {

LotkaVolterraParams peru_params() {
  return LotkaVolterraParams::from_kappa(2.25, 0.945, 1.220e-6, 4.845e-8,
                                         67113e3);
}

Thresholds peru_thresholds() { return {7e6, 2e5, 2e6, 5e3}; }

}  // namespace

TEST_CASE("floor conditions for the reference fishery") {
  const auto rep =
      check_conditions_generic(lv_model(peru_params()), peru_thresholds());
  CHECK(rep.r1_at_floor == doctest::Approx(1.4856068890208625).epsilon(1e-12));
  CHECK(rep.r2_at_floor == doctest::Approx(1.25915).epsilon(1e-12));
  CHECK(rep.satisfied);
}

TEST_CASE("floor conditions fail when the hake catch floor is too greedy") {
  auto th = peru_thresholds();
  th.catch2_min = 6e4;  // above the maximal 56 830 t
  const auto rep = check_conditions_generic(lv_model(peru_params()), th);
  CHECK(rep.r2_at_floor == doctest::Approx(0.98415).epsilon(1e-12));
  CHECK_FALSE(rep.satisfied);
}

TEST_CASE("a zero biomass floor imposes no growth condition") {
  // All-zero thresholds always pass (nothing is required of the floors).
  CHECK(check_conditions_generic(identity_model(), Thresholds{}).satisfied);
  // A positive hake requirement with y pinned to 0 still gets evaluated.
  const Thresholds th{0.0, 2e5, 0.0, 5e3};
  const auto rep = check_conditions_generic(lv_model(peru_params()), th);
  CHECK(rep.r2_at_floor == doctest::Approx(0.92).epsilon(1e-12));
  CHECK_FALSE(rep.satisfied);
}

TEST_CASE("a positive catch floor needs a positive biomass floor") {
  const Thresholds th{0.0, 2e5, 2e6, 5e3};  // anchovy floor 0 but catch 2e6
  CHECK_THROWS_AS(check_conditions_generic(lv_model(peru_params()), th),
                  ValidationError);
}

TEST_CASE("generic kernel membership at hand-picked states") {
  const auto model = lv_model(peru_params());
  const auto th = peru_thresholds();
  CHECK(kernel_member_generic(model, th, {7e6, 2e5}));
  CHECK(kernel_member_generic(model, th, {1e7, 3e5}));
  CHECK(kernel_member_generic(model, th, {5.4e7, 2e5}));
  CHECK_FALSE(kernel_member_generic(model, th, {6.9e6, 2e5}));   // below floor
  CHECK_FALSE(kernel_member_generic(model, th, {7e6, 1.9e5}));   // below floor
  CHECK_FALSE(kernel_member_generic(model, th, {7e6, 6.5e5}));   // above bound
  CHECK_FALSE(kernel_member_generic(model, th, {5.5e7, 2e5}));   // prey crash
}

TEST_CASE("ecosystem threshold conditions") {
  const auto p = peru_params();
  CHECK(lv_threshold_conditions(p, 7e6, 2e5));
  // (1-L)/beta = 1 135 190.9...: anything below fails the prey-floor side.
  CHECK_FALSE(lv_threshold_conditions(p, 1.1e6, 2e5));
  CHECK(lv_threshold_conditions(p, 1.14e6, 2e5));
  // z cap at (R-1)/alpha - R(1-L)/(alpha beta kappa) = 993 395.17
  CHECK_FALSE(lv_threshold_conditions(p, 7e6, 9.94e5));
  CHECK(lv_threshold_conditions(p, 7e6, 9.93e5));
}

TEST_CASE("maximal catches at the biomass floors") {
  const auto stars = lv_max_catch_thresholds(peru_params(), 7e6, 2e5);
  CHECK(stars.c1_star == doctest::Approx(5399248.223146038).epsilon(1e-12));
  CHECK(stars.c2_star == doctest::Approx(56830.0).epsilon(1e-9));
  CHECK_THROWS_AS(lv_max_catch_thresholds(peru_params(), 1e6, 2e5),
                  PreconditionError);
}

TEST_CASE("closed-form predator bound") {
  const auto p = peru_params();
  const auto th = peru_thresholds();
  CHECK(lv_kernel_z_bound(p, th, 7e6) ==
        doctest::Approx(598038.4336236578).epsilon(1e-12));
  CHECK(lv_kernel_z_bound(p, th, 1e7) ==
        doctest::Approx(831757.8158491198).epsilon(1e-12));
  CHECK(lv_kernel_z_bound(p, th, 5.4e7) ==
        doctest::Approx(223732.64274371607).epsilon(1e-12));
}

TEST_CASE("closed-form kernel membership") {
  const auto p = peru_params();
  const auto th = peru_thresholds();
  CHECK(lv_kernel_member(p, th, {7e6, 2e5}));
  CHECK(lv_kernel_member(p, th, {7e6, 5.9e5}));
  CHECK(lv_kernel_member(p, th, {1e7, 8.3e5}));
  CHECK_FALSE(lv_kernel_member(p, th, {7e6, 5.99e5}));  // above 598 038 t
  CHECK_FALSE(lv_kernel_member(p, th, {6.9e6, 2e5}));
  CHECK_FALSE(lv_kernel_member(p, th, {5.5e7, 2e5}));

  auto greedy = th;
  greedy.catch1_min = 5.4e6;  // above the 5 399 248 t maximum
  CHECK_THROWS_AS(lv_kernel_member(p, greedy, {7e6, 2e5}), PreconditionError);
}

TEST_CASE("closed form and one-step test agree across the state box") {
  const auto p = peru_params();
  const auto th = peru_thresholds();
  const auto model = lv_model(p);
  std::mt19937_64 rng(23);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  };
  int members = 0;
  for (int i = 0; i < 10000; ++i) {
    const State s{uniform(6e6, 6e7), uniform(1e5, 1.2e6)};
    const bool closed = lv_kernel_member(p, th, s);
    CHECK(closed == kernel_member_generic(model, th, s));
    members += closed;
  }
  CHECK(members > 1000);  // the draw box straddles the kernel
  CHECK(members < 9000);
}

TEST_CASE("reduced membership test without predator density dependence") {
  const auto p = peru_params();
  const auto th = peru_thresholds();
  const auto model = lv_model(p);
  std::mt19937_64 rng(29);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  };
  for (int i = 0; i < 10000; ++i) {
    const State s{uniform(7e6, 6e7), uniform(2e5, 1.2e6)};  // inside V0
    CHECK(kernel_member_no_dd(model, th, s) ==
          kernel_member_generic(model, th, s));
  }
  // The reduced test demands the declared model shape.
  auto wrong = model;
  wrong.r2_depends_on_z = true;
  CHECK_THROWS_AS(kernel_member_no_dd(wrong, th, {7e6, 2e5}),
                  PreconditionError);
}

TEST_CASE("largest sustainable prey catch this season") {
  const auto p = peru_params();
  const auto th = peru_thresholds();
  // Near the floors the cap is the long-run maximum itself.
  CHECK(lv_sustainable_catch_bound(p, th, {7e6, 2e5}) ==
        doctest::Approx(5399248.223146038).epsilon(1e-12));
  CHECK(lv_sustainable_catch_bound(p, th, {1e7, 3e5}) ==
        doctest::Approx(5399248.223146038).epsilon(1e-12));
  // Mid-kernel the one-step headroom binds instead.
  CHECK(lv_sustainable_catch_bound(p, th, {1e7, 5.8e5}) ==
        doctest::Approx(5071445.35335926).epsilon(1e-12));
  // Deep in violation there is nothing sustainable to take.
  CHECK(lv_sustainable_catch_bound(p, th, {7e6, 9e5}) == 0.0);
}

TEST_CASE("boundary sampling walks the bound down to the predator floor") {
  const auto p = peru_params();
  const auto th = peru_thresholds();
  const auto pts = lv_kernel_boundary(p, th, 129);
  REQUIRE(pts.size() == 129);
  CHECK(pts.front().y == 7e6);
  CHECK(pts.front().z == doctest::Approx(598038.4336236578).epsilon(1e-12));
  CHECK(pts.back().y == doctest::Approx(54949539.895266294).epsilon(2e-8));
  CHECK(pts.back().z == doctest::Approx(2e5).epsilon(1e-7));
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].y > pts[i - 1].y);         // strictly increasing prey axis
    CHECK(pts[i].z >= th.z_min);            // clamped to the predator floor
  }
  CHECK_THROWS_AS(lv_kernel_boundary(p, th, 1), ValidationError);

  // Raising the predator floor above the bound leaves nothing to sample.
  auto empty = th;
  empty.z_min = 9.9e5;
  CHECK(lv_kernel_boundary(p, empty, 16).empty());
}
