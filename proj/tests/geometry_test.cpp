#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "bargmann/geometry.hpp"
#include "bargmann/invariants.hpp"
#include "support.hpp"

namespace bargmann {
namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
void expect_error(Errc code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code);
  }
}

TEST(BoundaryRadius, Examples) {
  EXPECT_NEAR(boundary_radius(3, kPi), 0.125, 1e-15);
  EXPECT_NEAR(boundary_radius(3, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(boundary_radius(4, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(boundary_radius(4, 2 * kPi), 1.0, 1e-15);
  expect_error(Errc::invalid_order, [] { boundary_radius(2, 1.0); });
}

TEST(BoundaryRadius, SymmetricAboutRealAxis) {
  for (int n = 3; n <= 12; ++n)
    for (int k = 0; k <= 720; ++k) {
      const double th = 2 * kPi * k / 720.0;
      EXPECT_NEAR(boundary_radius(n, 2 * kPi - th), boundary_radius(n, th), 1e-12);
    }
}

TEST(BoundaryCurve, SamplesHitPiExactly) {
  const auto curve = boundary_curve(3, 360);
  ASSERT_EQ(curve.size(), 360u);
  EXPECT_EQ(curve[180].theta, kPi);
  EXPECT_NEAR(curve[180].radius, 0.125, 1e-15);
  EXPECT_EQ(curve[0].radius, 1.0);
}

TEST(RegionContains, Examples) {
  EXPECT_TRUE(region_contains({3, 0.0}, 1e-9));
  EXPECT_FALSE(region_contains({3, -0.2}, 1e-9));
  EXPECT_TRUE(region_contains({3, -0.125}, 1e-9));
  EXPECT_TRUE(region_contains({5, 1.0}, 1e-9));
  EXPECT_FALSE(region_contains({5, Complex(1.0, 1e-3)}, 1e-9));
  EXPECT_TRUE(region_contains({4, Complex(1.0, -1e-14)}, 1e-9));
}

TEST(RegionContains, RandomTuplesAcrossDimensions) {
  Rng rng(1);
  for (int n : {3, 4, 5})
    for (int d : {2, 3, 4, 5}) {
      const RegionSweep s = sweep_random_tuples(n, d, 2500, rng.split(static_cast<std::uint64_t>(10 * n + d)), 1e-9);
      const RegionBounds b = region_bounds(n);
      EXPECT_EQ(s.outside, 0u) << n << ' ' << d;
      EXPECT_GE(s.min_real, b.min_real - 1e-9);
      EXPECT_LE(s.max_abs_imag, b.tau + 1e-9);
    }
}

TEST(RegionContains, ConvexOnSampledPairs) {
  Rng rng(2);
  for (int n : {3, 4, 6}) {
    for (int i = 0; i < 1000; ++i) {
      auto point = [&] {
        const double th = 2 * kPi * rng.uniform();
        return std::sqrt(rng.uniform()) * boundary_radius(n, th) * std::polar(1.0, th);
      };
      const Complex a = i % 10 == 0 ? boundary_radius(n, 1.0) * std::polar(1.0, 1.0) : point();
      const Complex b = point();
      EXPECT_TRUE(region_contains({n, (a + b) / 2.0}, 1e-12)) << n << ' ' << a << ' ' << b;
    }
  }
}

TEST(RegionBounds, Examples) {
  const RegionBounds b3 = region_bounds(3);
  EXPECT_NEAR(b3.min_real, -0.125, 1e-15);
  EXPECT_NEAR(b3.tau, 0.25, 1e-15);
  const RegionBounds b4 = region_bounds(4);
  EXPECT_NEAR(b4.min_real, -0.25, 1e-15);
  EXPECT_NEAR(b4.tau, 2.0 / (3.0 * std::sqrt(3.0)), 1e-15);
}

TEST(RegionBounds, TauIsTheMaximalImaginaryPart) {
  for (int n = 3; n <= 12; ++n) {
    auto neg_im = [n](double th) { return -boundary_radius(n, th) * std::sin(th); };
    const auto [arg, val] = boost::math::tools::brent_find_minima(neg_im, 0.0, kPi, 50);
    EXPECT_NEAR(region_bounds(n).tau, -val, 1e-10) << n;
    EXPECT_NEAR(arg, (n - 2.0) / (n - 1.0) * kPi / 2.0, 1e-6) << n;
    EXPECT_LT(region_bounds(n).tau, 1.0);
  }
}

TEST(Obg, Examples) {
  for (int n = 3; n <= 7; ++n) {
    EXPECT_NEAR(std::abs(obg_invariant(n, 1.0) - Complex(1, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(obg_invariant(n, 0.0) - Complex(1, 0)), 0.0, 1e-12);
  }
  EXPECT_NEAR(std::abs(obg_invariant(3, 0.5) - Complex(-0.125, 0)), 0.0, 1e-12);
  expect_error(Errc::invalid_parameter, [] { obg_invariant(3, 1.5); });
}

TEST(Obg, TracesTheBoundary) {
  for (int n = 3; n <= 9; ++n)
    for (int k = 0; k < 720; ++k) {
      const double th = 2 * kPi * k / 720.0;
      const Complex z = obg_invariant(n, theta_to_t(n, th));
      EXPECT_NEAR(std::abs(z), boundary_radius(n, th), 1e-9);
      if (k > 0) EXPECT_NEAR(polar_angle(z), th, 1e-9) << n << ' ' << k;
    }
}

TEST(ThetaToT, ExamplesAndMonotonicity) {
  for (int n = 3; n <= 8; ++n) EXPECT_NEAR(theta_to_t(n, kPi), 0.5, 1e-15);
  EXPECT_NEAR(theta_to_t(3, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(theta_to_t(3, 2 * kPi), 0.0, 1e-15);
  for (int n = 3; n <= 8; ++n) {
    double prev = 2.0;
    for (int k = 0; k <= 360; ++k) {
      const double t = theta_to_t(n, 2 * kPi * k / 360.0);
      EXPECT_LT(t, prev);
      prev = t;
    }
  }
}

TEST(Ngon, Examples) {
  for (int n = 3; n <= 8; ++n) {
    EXPECT_TRUE(ngon_contains(n, 0.0, 1e-12));
    EXPECT_TRUE(ngon_contains(n, 1.0, 1e-12));
    EXPECT_FALSE(ngon_contains(n, 1.0 + 1e-6, 1e-12));
    const Complex w = std::polar(1.0, 2 * kPi / n);
    for (double t : {0.0, 0.3, 0.7, 1.0}) {
      const Complex p = t + (1 - t) * w;
      EXPECT_TRUE(ngon_contains(n, p, 1e-12));
      const Complex z = std::pow(p, n);
      EXPECT_NEAR(std::abs(z), boundary_radius(n, polar_angle(z)), 1e-12);
    }
    const Complex edge_normal = std::polar(1.0, kPi / n);
    EXPECT_TRUE(ngon_contains(n, (std::cos(kPi / n) - 1e-9) * edge_normal, 0.0));
    EXPECT_FALSE(ngon_contains(n, (std::cos(kPi / n) + 1e-9) * edge_normal, 0.0));
  }
}

TEST(Ngon, PowersOfInteriorPointsStayInTheRegion) {
  Rng rng(3);
  for (int n : {3, 4, 5}) {
    const Complex w = std::polar(1.0, 2 * kPi / n);
    for (int i = 0; i < 2000; ++i) {
      // Random convex combination of the vertices 1, ω, …, ω^{n−1}.
      std::vector<double> c(static_cast<std::size_t>(n));
      double s = 0.0;
      for (auto& x : c) s += (x = -std::log(1.0 - rng.uniform()));
      Complex p = 0.0;
      for (int k = 0; k < n; ++k) p += c[static_cast<std::size_t>(k)] / s * std::pow(w, k);
      EXPECT_TRUE(ngon_contains(n, p, 1e-12));
      EXPECT_TRUE(region_contains({n, std::pow(p, n)}, 1e-12));
    }
  }
}

TEST(Envelope, ResidualsVanishAtBoundaryPoints) {
  for (int n : {3, 4}) {
    for (int k = 0; k < 360; ++k) {
      const double th = 2 * kPi * k / 360.0;
      const EnvelopeContact c = locate_envelope_parameter(n, th);
      EXPECT_LE(std::abs(c.residual.f), 1e-8) << n << ' ' << th;
      EXPECT_LE(std::abs(c.residual.df_dt), 1e-8) << n << ' ' << th;
      EXPECT_GE(c.t, 0.0);
      EXPECT_LE(c.t, 1.0);
    }
  }
}

TEST(Envelope, BoundaryPointIsATangentialMinimum) {
  // Along t the family is nonnegative at a boundary point and touches zero at t*.
  for (int n : {3, 4}) {
    for (double th : {0.5, 2.0, kPi, 4.0, 5.9}) {
      const double r = boundary_radius(n, th);
      const double phi = envelope_angle(n, th);
      double lowest = INFINITY;
      for (int i = 0; i <= 20000; ++i) lowest = std::min(lowest, envelope_residual(n, phi, r, i / 20000.0).f);
      EXPECT_GE(lowest, -1e-12) << n << ' ' << th;
      EXPECT_LE(lowest, 1e-8) << n << ' ' << th;
    }
  }
}

TEST(Envelope, Examples) {
  const EnvelopeContact c3 = locate_envelope_parameter(3, kPi);
  EXPECT_LT(std::abs(c3.residual.f), 1e-8);
  EXPECT_LT(std::abs(c3.residual.df_dt), 1e-8);
  EXPECT_LT(std::abs(cubic_boundary_residual(kPi, 0.125)), 1e-8);
  const EnvelopeContact c4 = locate_envelope_parameter(4, 2 * kPi);
  EXPECT_LT(std::abs(c4.residual.f), 1e-8);
  EXPECT_LT(std::abs(c4.residual.df_dt), 1e-8);
  expect_error(Errc::unsupported_order, [] { envelope_residual(5, 0.0, 1.0, 0.5); });
}

TEST(Envelope, DerivativeMatchesFiniteDifference) {
  for (int n : {3, 4})
    for (double th : {0.3, 1.7, 3.3, 6.0})
      for (double t : {0.1, 0.5, 0.83}) {
        const double h = 1e-6;
        const double fd = (envelope_residual(n, th, 0.4, t + h).f - envelope_residual(n, th, 0.4, t - h).f) / (2 * h);
        EXPECT_NEAR(envelope_residual(n, th, 0.4, t).df_dt, fd, 1e-8);
      }
}

TEST(Envelope, CubicHoldsOnTheOrderThreeBoundary) {
  for (int k = 0; k < 360; ++k) {
    const double th = 2 * kPi * k / 360.0;
    EXPECT_LE(std::abs(cubic_boundary_residual(th, boundary_radius(3, th))), 1e-8) << th;
  }
}

}  // namespace
}  // namespace bargmann
