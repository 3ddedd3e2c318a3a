#include "obbkit/losses.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

using namespace obbkit;

TEST_CASE("sp_l1 basic values") {
  CHECK(sp_l1(0.7, 0.7) == 0.0);
  CHECK(sp_l1(0.0, kPi / 2) == doctest::Approx(kPi / 2).epsilon(1e-13));
  // brute-force minimum over the two arcs
  CHECK(oracles::sp_l1_twoarc(0.05, kPi - 0.05) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(sp_l1(0.05, kPi - 0.05) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(sp_l1(std::nan(""), 0.0), std::domain_error);
}

TEST_CASE("sp_l1 is pi-periodic and never exceeds the Euclidean distance") {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 5000; ++trial) {
    const double a = oracles::uniform(gen, 0.0, kPi);
    const double b = oracles::uniform(gen, 0.0, kPi);
    const int k = static_cast<int>(gen() % 21) - 10;
    CHECK(std::abs(sp_l1(a + k * kPi, b) - sp_l1(a, b)) <= 1e-12);
    CHECK(sp_l1(a, b) <= std::abs(a - b) + 1e-15);
    CHECK(sp_l1(a, b) <= kPi / 2 + 1e-15);
  }
}

TEST_CASE("sp_l1_grad values and the seam direction") {
  CHECK(sp_l1_grad(0.5, 0.5) == 0.0);

  // central finite difference at a smooth point
  auto loss_at = [](double tgt) {
    return [tgt](double x) { return sp_l1(x, tgt); };
  };
  CHECK(sp_l1_grad(0.3, 0.1) ==
        doctest::Approx(oracles::central_diff(loss_at(0.1), 0.3)).epsilon(1e-4));
  CHECK(sp_l1_grad(0.3, 0.1) == 1.0);

  // across the seam: increasing theta_pred toward pi shortens the wrap arc
  CHECK(sp_l1_grad(kPi - 0.05, 0.05) ==
        doctest::Approx(oracles::central_diff(loss_at(0.05), kPi - 0.05)).epsilon(1e-4));
  CHECK(sp_l1_grad(kPi - 0.05, 0.05) == -1.0);

  // fixed one-sided convention on the ridge
  CHECK(sp_l1_grad(0.0, kPi / 2) == 1.0);
}

TEST_CASE("sp_l1_grad matches central finite differences off the ridge") {
  std::mt19937_64 gen(22);
  int checked = 0;
  while (checked < 10000) {
    const double p = oracles::uniform(gen, 0.0, kPi);
    const double t = oracles::uniform(gen, 0.0, kPi);
    const double d = std::abs(delta_pi(p, t));
    if (d < 1e-4 || std::abs(d - kPi / 2) < 1e-4) continue;
    const double fd =
        oracles::central_diff([t](double x) { return sp_l1(x, t); }, p);
    CHECK(std::abs(sp_l1_grad(p, t) - fd) <= 1e-4);
    ++checked;
  }
}

TEST_CASE("kld_gauss closed form") {
  const Gauss2 unit{};
  CHECK(kld_gauss(unit, unit) == 0.0);

  Gauss2 shifted = unit;
  shifted.mu = Vec2{1.0, 0.0};
  CHECK(kld_gauss(shifted, unit) == doctest::Approx(0.5).epsilon(1e-13));

  // hand evaluation: tr(diag(1, 1/4) diag(4, 1)) = 4.25, dets equal
  Gauss2 p{Vec2{0, 0}, 4.0, 0.0, 1.0};
  Gauss2 t{Vec2{0, 0}, 1.0, 0.0, 4.0};
  const double expect = 0.5 * (4.25 - 2.0);
  CHECK(kld_gauss(p, t) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(oracles::mc_kld(p, t, 1000000, 99) == doctest::Approx(expect).epsilon(1e-2));
}

TEST_CASE("kld_gauss reports singular targets with a condition number") {
  Gauss2 p{};
  Gauss2 singular{Vec2{0, 0}, 1.0, 1.0, 1.0};  // rank 1
  CHECK_THROWS_WITH_AS(kld_gauss(p, singular),
                       doctest::Contains("condition"), std::runtime_error);
}

TEST_CASE("kld_gauss is non-negative on random positive-definite pairs") {
  std::mt19937_64 gen(23);
  auto random_gauss = [&gen]() {
    // random box embedding plus jitter keeps sigma positive definite
    const Obb5 b{oracles::uniform(gen, -3, 3), oracles::uniform(gen, -3, 3),
                 oracles::uniform(gen, 0.2, 6), oracles::uniform(gen, 0.2, 6),
                 oracles::uniform(gen, 0.0, kPi)};
    return obb_to_gauss(b);
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const Gauss2 p = random_gauss();
    const Gauss2 t = random_gauss();
    CHECK(kld_gauss(p, t) >= 0.0);
    CHECK(kld_gauss(p, t) > 0.0);  // zero only on the diagonal
  }
  const Gauss2 same = random_gauss();
  CHECK(kld_gauss(same, same) <= 1e-12);
}

TEST_CASE("kld_loss bounded transform") {
  const Obb5 a{0, 0, 2, 2, 0};
  CHECK(kld_loss(a, a) == 0.0);

  // unit covariance, mean shift of one: D = 0.5
  const Obb5 b{1, 0, 2, 2, 0};
  CHECK(kld_loss(a, b) == doctest::Approx(1.0 - 1.0 / (1.0 + std::sqrt(0.5))).epsilon(1e-13));

  // same box rotated 45 degrees: closed form gives D = 0.5625, loss = 3/7
  const Obb5 u{0, 0, 4, 2, 0};
  const Obb5 v{0, 0, 4, 2, kPi / 4};
  CHECK(kld_loss(u, v) == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
  const double mc = oracles::mc_kld(obb_to_gauss(u), obb_to_gauss(v), 1000000, 7);
  CHECK(1.0 - 1.0 / (1.0 + std::sqrt(mc)) == doctest::Approx(3.0 / 7.0).epsilon(1e-2));
}

TEST_CASE("kld_loss invariant under the equivalent parameterization") {
  std::mt19937_64 gen(24);
  for (int trial = 0; trial < 300; ++trial) {
    const Obb5 a{oracles::uniform(gen, -2, 2), oracles::uniform(gen, -2, 2),
                 oracles::uniform(gen, 0.3, 5), oracles::uniform(gen, 0.3, 5),
                 oracles::uniform(gen, 0.0, kPi)};
    const Obb5 b{oracles::uniform(gen, -2, 2), oracles::uniform(gen, -2, 2),
                 oracles::uniform(gen, 0.3, 5), oracles::uniform(gen, 0.3, 5),
                 oracles::uniform(gen, 0.0, kPi)};
    const Obb5 b_swap{b.cx, b.cy, b.h, b.w, wrap_pi(b.theta + kPi / 2)};
    const Obb5 a_swap{a.cx, a.cy, a.h, a.w, wrap_pi(a.theta + kPi / 2)};
    CHECK(std::abs(kld_loss(a, b) - kld_loss(a, b_swap)) <= 1e-10);
    CHECK(std::abs(kld_loss(a, b) - kld_loss(a_swap, b)) <= 1e-10);
  }
}

TEST_CASE("focal cost arithmetic and monotonicity") {
  // 0.25 * 0.25 * ln2 - 0.75 * 0.25 * ln2 = -0.125 * ln2, each term checked
  const double pos = 0.25 * std::pow(0.5, 2.0) * (-std::log(0.5));
  const double neg = 0.75 * std::pow(0.5, 2.0) * (-std::log(0.5));
  CHECK(pos == doctest::Approx(0.25 * 0.25 * std::log(2.0)).epsilon(1e-14));
  CHECK(neg == doctest::Approx(0.75 * 0.25 * std::log(2.0)).epsilon(1e-14));
  CHECK(focal_cost(0.5, true, 0.25, 2.0) ==
        doctest::Approx(-0.125 * std::log(2.0)).epsilon(1e-13));

  // monotonically decreasing in p on a grid
  double prev = focal_cost(0.01, true, 0.25, 2.0);
  for (double p = 0.02; p < 1.0; p += 0.01) {
    const double cur = focal_cost(p, true, 0.25, 2.0);
    CHECK(cur < prev);
    prev = cur;
  }

  // degenerate parameters reduce to the antisymmetric log-odds form
  for (double p : {0.1, 0.25, 0.4}) {
    CHECK(focal_cost(p, true, 0.5, 0.0) ==
          doctest::Approx(0.5 * (std::log(1.0 - p) - std::log(p))).epsilon(1e-13));
    CHECK(focal_cost(p, true, 0.5, 0.0) ==
          doctest::Approx(-focal_cost(1.0 - p, true, 0.5, 0.0)).epsilon(1e-12));
  }
  CHECK(focal_cost(0.5, true, 0.5, 0.0) == doctest::Approx(0.0).epsilon(1e-14));

  // out-of-range probabilities clamp instead of blowing up
  CHECK(std::isfinite(focal_cost(0.0, true)));
  CHECK(std::isfinite(focal_cost(1.0, true)));
  CHECK(focal_cost(0.3, false) == doctest::Approx(-focal_cost(0.3, true)).epsilon(1e-14));
}

TEST_CASE("total_box_loss composition") {
  const LossWeights w{};
  const Obb5 a{0.2, 0.3, 0.4, 0.2, 0.5};
  CHECK(total_box_loss(a, a, w) == 0.0);

  const LossWeights zero{0, 0, 0, 0, 0};
  const Obb5 b{0.6, 0.1, 0.3, 0.25, 1.9};
  CHECK(total_box_loss(a, b, zero) == 0.0);

  // unit center offset at the regression defaults: each term verified alone
  const Obb5 p{1, 0, 2, 2, 0};
  const Obb5 t{0, 0, 2, 2, 0};
  const double l1_term = 5.0 * 1.0;
  const double kld_term = 5.0 * kld_loss(p, t);
  CHECK(kld_loss(p, t) == doctest::Approx(1.0 - 1.0 / (1.0 + std::sqrt(0.5))).epsilon(1e-13));
  CHECK(sp_l1(p.theta, t.theta) == 0.0);
  CHECK(total_box_loss(p, t, w) == doctest::Approx(l1_term + kld_term).epsilon(1e-13));
}
