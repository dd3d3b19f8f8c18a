#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "endslab/errors.hpp"
#include "endslab/quadrature.hpp"
#include "endslab/solitons.hpp"

using namespace endslab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("catalog ships the named examples") {
  CHECK(soliton_catalog().size() >= 5);
  CHECK(find_soliton("gaussian3") != nullptr);
  CHECK(find_soliton("cylinder4") != nullptr);
  CHECK(find_soliton("conical_toy4") != nullptr);
  CHECK(find_soliton("nope") == nullptr);
}

TEST_CASE("the potential identity holds exactly on every shipped example") {
  for (const auto& ex : soliton_catalog()) {
    CAPTURE(ex.name);
    CHECK(soliton_identity_residual(ex) <= 1e-12);
  }
}

TEST_CASE("negative control: shifting f by 0.1 shows up as the residual") {
  const auto* g3 = find_soliton("gaussian3");
  REQUIRE(g3);
  const auto shifted = with_f_shifted(*g3, 0.1);
  CHECK(soliton_identity_residual(shifted) == doctest::Approx(0.1).epsilon(1e-12));
  const auto* cyl = find_soliton("cylinder4");
  REQUIRE(cyl);
  CHECK(soliton_identity_residual(with_f_shifted(*cyl, 0.1)) ==
        doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("cylinder closed forms: f - |grad f|^2 = (n-1)/2 = S") {
  for (const int n : {3, 4}) {
    const auto* cyl = find_soliton("cylinder" + std::to_string(n));
    REQUIRE(cyl);
    for (const double t : {0.0, 1.0, 2.5, 10.0}) {
      CHECK(cyl->f(t) - cyl->grad_f_sq(t) == doctest::Approx(0.5 * (n - 1)));
      CHECK(cyl->S(t) == doctest::Approx(0.5 * (n - 1)));
    }
  }
}

TEST_CASE("f bounds: fitted constants match the closed forms") {
  SUBCASE("gaussian needs no correction") {
    const auto rep = f_bounds_check(*find_soliton("gaussian3"));
    CHECK(rep.c1 == 0.0);
    CHECK(rep.c2 <= 1e-12);
    CHECK(rep.volume_c > 0.0);
    // V(r) = omega_3 r^3; c(n) fitted on the grid equals the ball volume
    CHECK(rep.volume_c == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-3));
  }
  SUBCASE("cylinder: c1 = 0, c2 = (n-1)/2") {
    const auto rep = f_bounds_check(*find_soliton("cylinder4"));
    CHECK(rep.c1 == 0.0);
    CHECK(rep.c2 == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(std::isfinite(rep.volume_c));
  }
  SUBCASE("conical toy: finite constants exist") {
    const auto rep = f_bounds_check(*find_soliton("conical_toy4"));
    CHECK(std::isfinite(rep.c1));
    CHECK(rep.c2 <= 0.5 + 1e-9);  // f - r^2/4 = c/r^2 <= 1/2 on r >= 1
    CHECK(std::isfinite(rep.volume_c));
  }
}

TEST_CASE("entropy: gaussian integral oracle and shift linearity") {
  SUBCASE("gaussian entropy vanishes in every shipped dimension") {
    for (const int n : {2, 3, 4}) {
      const auto* g = find_soliton("gaussian" + std::to_string(n));
      REQUIRE(g);
      const auto ent = entropy(*g, 1e-9);
      CHECK(std::abs(ent.mu) <= 1e-8);
      // the integral itself matches (4 pi)^{n/2}
      CHECK(ent.integral == doctest::Approx(std::pow(4.0 * kPi, 0.5 * n)).epsilon(1e-9));
    }
  }
  SUBCASE("cylinder entropy matches its closed form") {
    // integral = 2 cross_area sqrt(pi) e^{-(n-1)/2}; for n = 4 the cross
    // section is S^3(2) with area 2 pi^2 * 8
    const auto ent = entropy(*find_soliton("cylinder4"), 1e-9);
    const double cross = 2.0 * kPi * kPi * 8.0;
    const double expected = std::log(cross * 2.0 * std::sqrt(kPi) * std::exp(-1.5) /
                                     std::pow(4.0 * kPi, 2.0));
    CHECK(ent.mu == doctest::Approx(expected).epsilon(1e-10));
  }
  SUBCASE("shifting f by c shifts mu by -c") {
    const auto* g3 = find_soliton("gaussian3");
    const auto base = entropy(*g3, 1e-9);
    const auto shifted = entropy(with_f_shifted(*g3, 0.7), 1e-9);
    CHECK(shifted.mu == doctest::Approx(base.mu - 0.7).epsilon(1e-9));
  }
  SUBCASE("quadrature refinement stays within 10 quad_tol") {
    const auto* g3 = find_soliton("gaussian3");
    const auto integrand = [&](double r) { return std::exp(-g3->f(r)) * g3->area(r); };
    const double coarse = composite_simpson(integrand, 0.0, g3->r_quad_max, 2000);
    const double fine = composite_simpson(integrand, 0.0, g3->r_quad_max, 4000);
    CHECK(std::abs(fine - coarse) < 10.0 * 1e-9);
    const auto ent = entropy(*g3, 1e-9);
    CHECK(std::abs(ent.integral - fine) < 10.0 * 1e-9);
  }
  SUBCASE("a fat tail is rejected") {
    auto ex = *find_soliton("gaussian3");
    ex.r_quad_max = 4.0;  // e^{-4} tail mass is far above 1e-9
    CHECK_THROWS_AS(entropy(ex, 1e-9), Error);
  }
}

TEST_CASE("soliton alpha functional") {
  SUBCASE("gaussian: S = 0 so alpha = 0, in every dimension") {
    for (const int n : {2, 3, 4}) {
      const auto a = soliton_alpha(*find_soliton("gaussian" + std::to_string(n)));
      CHECK(a.value == 0.0);
      CHECK_FALSE(a.diverged);
    }
  }
  SUBCASE("cylinder: integrand ~ r^{n-1} against V ~ r diverges") {
    const auto a = soliton_alpha(*find_soliton("cylinder4"));
    CHECK(a.diverged);
  }
  SUBCASE("conical toy: S r^2 -> 3c gives alpha = (3c)^{(n-1)/2}") {
    const auto* toy = find_soliton("conical_toy4");
    REQUIRE(toy);
    const auto a = soliton_alpha(*toy);
    CHECK_FALSE(a.diverged);
    CHECK(a.value == doctest::Approx(std::pow(1.5, 1.5)).epsilon(1e-2));
  }
}
