#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bernopt/kinematics.hpp"
#include "test_util.hpp"

using namespace bernopt;

namespace {

const Mat kTraj1 = Mat::from_rows({{0, 2, 4, 6, 8, 10}, {5, 0, 2, 3, 10, 3}});
const Mat kTraj2 = Mat::from_rows({{1, 3, 6, 8, 10, 12}, {6, 9, 10, 11, 8, 8}});

BernsteinPoly traj2d(const Mat& m) { return BernsteinPoly(m, 10.0, 20.0); }

double norm2_at(const BernsteinPoly& p, double t) {
  double s = 0.0;
  for (double v : p.value(t)) s += v * v;
  return s;
}

}  // namespace

TEST_CASE("speed squared") {
  Mat line = Mat::from_rows({{0, 1, 2}, {0, 0, 0}});
  BernsteinPoly straight(line, 0.0, 1.0);
  BernsteinPoly ss = speed_squared(straight);
  CHECK(ss.dimension() == 1);
  CHECK(ss.degree() == 2);
  for (double t : {0.0, 0.5, 1.0}) CHECK(ss.value1(t) == doctest::Approx(4.0));

  BernsteinPoly still = BernsteinPoly::constant({1.0, 2.0}, 3, 0.0, 1.0);
  for (double t : {0.0, 0.5, 1.0}) CHECK(speed_squared(still).value1(t) == 0.0);

  BernsteinPoly c1 = traj2d(kTraj1);
  BernsteinPoly s1 = speed_squared(c1);
  CHECK(s1.degree() == 8);
  auto pos_x = [&](double t) { return c1.value(t)[0]; };
  auto pos_y = [&](double t) { return c1.value(t)[1]; };
  for (int k = 1; k < 30; ++k) {
    const double t = 10.0 + 10.0 * k / 30.0;
    const double vx = oracle::central_diff(pos_x, t, 1e-5);
    const double vy = oracle::central_diff(pos_y, t, 1e-5);
    const double expect = vx * vx + vy * vy;
    CHECK(s1.value1(t) == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("acceleration squared") {
  Mat line = Mat::from_rows({{0, 1, 2}, {0, 0, 0}});
  BernsteinPoly straight(BernsteinPoly(line, 0.0, 1.0));
  for (double t : {0.0, 0.5, 1.0})
    CHECK(accel_squared(straight).value1(t) == doctest::Approx(0.0));

  // x(t) = t^2 on [0,1]: xddot = 2 everywhere.
  Mat par = Mat::from_rows({{0, 0, 1}, {0, 0, 0}});
  BernsteinPoly parabola(par, 0.0, 1.0);
  for (double t : {0.0, 0.5, 1.0})
    CHECK(accel_squared(parabola).value1(t) == doctest::Approx(4.0));

  std::mt19937 gen(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    Mat m(2, 4);
    for (double& v : m.data()) v = u(gen);
    BernsteinPoly cubic(m, 0.0, 1.0);
    BernsteinPoly as = accel_squared(cubic);
    BernsteinPoly vel = derivative(cubic);
    auto vx = [&](double t) { return vel.value(t)[0]; };
    auto vy = [&](double t) { return vel.value(t)[1]; };
    for (int k = 1; k < 10; ++k) {
      const double t = static_cast<double>(k) / 10.0;
      const double ax = oracle::central_diff(vx, t, 1e-5);
      const double ay = oracle::central_diff(vy, t, 1e-5);
      CHECK(as.value1(t) ==
            doctest::Approx(ax * ax + ay * ay).epsilon(1e-5).scale(1.0 + ax * ax + ay * ay));
    }
  }
}

TEST_CASE("heading tangent") {
  Mat diag = Mat::from_rows({{0, 1, 2}, {0, 1, 2}});
  RationalBernsteinPoly t45 = heading_tangent(BernsteinPoly(diag, 0.0, 1.0));
  for (double t : {0.0, 0.5, 1.0}) CHECK(t45.value1(t) == doctest::Approx(1.0));

  Mat flat = Mat::from_rows({{0, 1, 2}, {3, 3, 3}});
  RationalBernsteinPoly t0 = heading_tangent(BernsteinPoly(flat, 0.0, 1.0));
  for (double t : {0.0, 0.5, 1.0}) CHECK(t0.value1(t) == doctest::Approx(0.0));

  // Sign-indefinite xdot is rejected.
  Mat wobble = Mat::from_rows({{0, 2, 0}, {0, 1, 2}});
  CHECK_THROWS_AS(heading_tangent(BernsteinPoly(wobble, 0.0, 1.0)), std::domain_error);

  // Monotone-x random trajectories match tan(atan2).
  std::mt19937 gen(37);
  std::uniform_real_distribution<double> dx(0.5, 2.0);
  std::uniform_real_distribution<double> dy(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Mat m(2, 5);
    double x = 0.0, y = 0.0;
    for (int c = 0; c < 5; ++c) {
      m(0, c) = x;
      m(1, c) = y;
      x += dx(gen);
      y += dy(gen);
    }
    BernsteinPoly traj(m, 0.0, 2.0);
    RationalBernsteinPoly ht = heading_tangent(traj);
    BernsteinPoly vel = derivative(traj);
    for (int k = 0; k <= 20; ++k) {
      const double t = 2.0 * k / 20.0;
      const auto v = vel.value(t);
      CHECK(ht.value1(t) == doctest::Approx(v[1] / v[0]).epsilon(1e-9));
    }
  }

  // Reversed traversal (xdot < 0 throughout) is accepted.
  Mat rev = Mat::from_rows({{4, 3, 2, 1, 0}, {0, 1, 0, 1, 0}});
  BernsteinPoly back(rev, 0.0, 1.0);
  RationalBernsteinPoly hb = heading_tangent(back);
  BernsteinPoly vel = derivative(back);
  for (int k = 0; k <= 10; ++k) {
    const double t = k / 10.0;
    const auto v = vel.value(t);
    CHECK(hb.value1(t) == doctest::Approx(v[1] / v[0]).epsilon(1e-9));
  }
}

TEST_CASE("angular rate") {
  Mat line = Mat::from_rows({{0, 1, 2}, {0, 2, 4}});
  RationalBernsteinPoly w0 = angular_rate(BernsteinPoly(line, 0.0, 1.0));
  for (double t : {0.0, 0.5, 1.0}) CHECK(w0.value1(t) == doctest::Approx(0.0));

  Mat m = Mat::from_rows({{0, 1, 1}, {0, 0, 1}});
  RationalBernsteinPoly w = angular_rate(BernsteinPoly(m, 0.0, 1.0));
  CHECK(w.value1(0.0) == doctest::Approx(1.0));

  // Mirror the trajectory across the x axis: the rate flips sign.
  Mat mm = Mat::from_rows({{0, 1, 1}, {0, 0, -1}});
  RationalBernsteinPoly wm = angular_rate(BernsteinPoly(mm, 0.0, 1.0));
  for (int k = 0; k <= 10; ++k) {
    const double t = k / 10.0;
    CHECK(wm.value1(t) == doctest::Approx(-w.value1(t)).epsilon(1e-12));
  }

  // Matches the derivative of the unwrapped atan2 heading. Increments are
  // kept x-dominant so the squared-speed coefficients stay positive (the
  // sufficient hull condition the library checks).
  std::mt19937 gen(41);
  std::uniform_real_distribution<double> dx(1.0, 2.0);
  std::uniform_real_distribution<double> dy(-0.3, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    Mat t(2, 6);
    double x = 0.0, y = 0.0;
    for (int c = 0; c < 6; ++c) {
      t(0, c) = x;
      t(1, c) = y;
      x += dx(gen);
      y += dy(gen);
    }
    BernsteinPoly traj(t, 0.0, 3.0);
    RationalBernsteinPoly rate = angular_rate(traj);
    BernsteinPoly vel = derivative(traj);
    auto heading = [&](double s) {
      const auto v = vel.value(s);
      return std::atan2(v[1], v[0]);
    };
    for (int k = 1; k < 15; ++k) {
      const double s = 3.0 * k / 15.0;
      const double fd = oracle::central_diff(heading, s, 1e-5);
      CHECK(rate.value1(s) == doctest::Approx(fd).epsilon(1e-5).scale(1.0 + std::abs(fd)));
    }
  }

  // Degenerate speed rejected for the rational form.
  Mat stopgo = Mat::from_rows({{0, 0, 1}, {0, 0, 1}});
  CHECK_THROWS_AS(angular_rate(BernsteinPoly(stopgo, 0.0, 1.0)), std::domain_error);
}

TEST_CASE("squared distance") {
  BernsteinPoly a = traj2d(kTraj1);
  CHECK(squared_distance(a, a).value1(15.0) == doctest::Approx(0.0));

  BernsteinPoly p = BernsteinPoly::constant({0.0, 0.0}, 3, 0.0, 1.0);
  BernsteinPoly q = BernsteinPoly::constant({3.0, 4.0}, 3, 0.0, 1.0);
  for (double t : {0.0, 0.5, 1.0})
    CHECK(squared_distance(p, q).value1(t) == doctest::Approx(25.0));

  BernsteinPoly b = traj2d(kTraj2);
  BernsteinPoly d2 = squared_distance(a, b);
  CHECK(d2.degree() == 10);
  for (int k = 0; k <= 40; ++k) {
    const double t = 10.0 + 10.0 * k / 40.0;
    const auto pa = a.value(t);
    const auto pb = b.value(t);
    const double expect =
        (pa[0] - pb[0]) * (pa[0] - pb[0]) + (pa[1] - pb[1]) * (pa[1] - pb[1]);
    CHECK(d2.value1(t) == doctest::Approx(expect).epsilon(1e-9));
  }

  CHECK_THROWS_AS(squared_distance(a, BernsteinPoly(kTraj2, 0.0, 1.0)), std::domain_error);
  CHECK_THROWS_AS(squared_distance(a, BernsteinPoly::constant({1.0}, 2, 10.0, 20.0)),
                  std::domain_error);
}

TEST_CASE("nonnegativity of derived squares despite negative coefficients") {
  std::mt19937 gen(43);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    Mat m(2, 6);
    for (double& v : m.data()) v = u(gen);
    BernsteinPoly traj(m, 0.0, 1.0);
    BernsteinPoly ss = speed_squared(traj);
    bool has_negative_coeff = false;
    for (double c : ss.coeffs().data()) has_negative_coeff |= c < 0.0;
    (void)has_negative_coeff;  // negative coefficients are allowed...
    for (int k = 0; k <= 50; ++k) CHECK(ss.value1(k / 50.0) >= -1e-9);  // ...the curve is not
    BernsteinPoly as = accel_squared(traj);
    for (int k = 0; k <= 50; ++k) CHECK(as.value1(k / 50.0) >= -1e-9);
  }
}

TEST_CASE("obstacle polynomial") {
  BernsteinPoly obs = obstacle_poly({3.0, 4.0}, 5, 10.0, 20.0);
  CHECK(obs.degree() == 5);
  for (int c = 0; c <= 5; ++c) {
    CHECK(obs.coeffs()(0, c) == 3.0);
    CHECK(obs.coeffs()(1, c) == 4.0);
  }
  for (double t : {10.0, 14.2, 20.0}) {
    CHECK(obs.value(t)[0] == 3.0);
    CHECK(obs.value(t)[1] == 4.0);
  }

  BernsteinPoly a = traj2d(kTraj1);
  BernsteinPoly d2 = squared_distance(a, obs);
  for (int k = 0; k <= 20; ++k) {
    const double t = 10.0 + 10.0 * k / 20.0;
    const auto p = a.value(t);
    const double expect = (p[0] - 3.0) * (p[0] - 3.0) + (p[1] - 4.0) * (p[1] - 4.0);
    CHECK(d2.value1(t) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("trajectory quantity bundle") {
  Mat m(2, 6);
  double x = 0.0, y = 0.0;
  std::mt19937 gen(47);
  std::uniform_real_distribution<double> dx(0.5, 1.5), dy(-0.5, 0.8);
  for (int c = 0; c < 6; ++c) {
    m(0, c) = x;
    m(1, c) = y;
    x += dx(gen);
    y += dy(gen);
  }
  BernsteinPoly traj(m, 0.0, 4.0);
  TrajectoryQuantities tq = trajectory_quantities(traj);
  CHECK(tq.speed_sq.t0() == 0.0);
  CHECK(tq.speed_sq.tf() == 4.0);
  CHECK(tq.accel_sq.tf() == 4.0);
  CHECK(tq.heading_tan.tf() == 4.0);
  CHECK(tq.ang_rate.tf() == 4.0);
}
