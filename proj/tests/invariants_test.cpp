#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bargmann/geometry.hpp"
#include "bargmann/invariants.hpp"
#include "support.hpp"

namespace bargmann {
namespace {

using testing::ket;
using testing::random_mixed_tuple;
using testing::random_pure_tuple;
using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;

TEST(Bargmann, RepeatedPureStateGivesOne) {
  const auto psi = ket({0.3, Complex(0.4, -0.2), 0.5});
  EXPECT_NEAR(std::abs(bargmann(StateTuple::from_vectors({psi, psi, psi})).value - Complex(1, 0)), 0.0, 1e-15);
}

TEST(Bargmann, OrthogonalNeighboursKillTheCycle) {
  const auto t = StateTuple::from_vectors({ket({1, 0}), ket({0, 1}), ket({0.6, 0.8})});
  EXPECT_EQ(std::abs(bargmann(t).value), 0.0);
}

TEST(Bargmann, ObgTripleAtHalf) {
  const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
  std::vector<UnitVector> vs;
  for (int k = 0; k < 3; ++k) vs.push_back(ket({std::sqrt(0.5), std::pow(w, k) * std::sqrt(0.5)}));
  EXPECT_NEAR(std::abs(bargmann(StateTuple::from_vectors(vs)).value - Complex(-0.125, 0)), 0.0, 1e-12);
}

TEST(Bargmann, OverlapAndDenseRoutesAgree) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto t = random_pure_tuple(2 + static_cast<std::size_t>(i % 6), 2 + i % 4, rng);
    EXPECT_LT(std::abs(bargmann_overlaps(t) - bargmann_dense(t)), 1e-12);
  }
}

TEST(Bargmann, SingleStateIsTrace) {
  Rng rng(2);
  EXPECT_NEAR(bargmann(random_mixed_tuple(1, 3, rng)).value.real(), 1.0, 1e-12);
}

TEST(Bargmann, GaugeInvariant) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto t = random_pure_tuple(4, 3, rng);
    const auto shifted = testing::with_phases(t, {0.3, -1.2, 2.5, 0.7 * i});
    EXPECT_LT(std::abs(bargmann(t).value - bargmann(shifted).value), 1e-12);
  }
}

TEST(Bargmann, UnitaryInvariantOnMixedTuples) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto t = random_mixed_tuple(3 + static_cast<std::size_t>(i % 3), 3, rng);
    const Matrix u = haar_unitary(3, rng);
    EXPECT_LT(std::abs(bargmann(t).value - bargmann(testing::rotate(t, u)).value), 1e-10);
  }
}

TEST(Bargmann, MixedInvariantsStayInUnitDisk) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) EXPECT_LE(std::abs(bargmann(random_mixed_tuple(4, 2, rng)).value), 1.0 + 1e-10);
}

TEST(NProduct, RepeatedIndexOnPureTuple) {
  Rng rng(6);
  const auto t = random_pure_tuple(3, 3, rng);
  const std::array<std::size_t, 2> w{1, 1};
  EXPECT_NEAR(std::abs(n_product(t, w).value - Complex(1, 0)), 0.0, 1e-12);
}

TEST(NProduct, AlternatingWordIsFourthPowerOfOverlap) {
  Rng rng(7);
  const auto t = random_pure_tuple(3, 3, rng);
  const std::array<std::size_t, 4> w{0, 2, 0, 2};
  const Complex v = n_product(t, w).value;
  const double overlap = std::abs(t[0].vector().amplitudes().dot(t[2].vector().amplitudes()));
  EXPECT_NEAR(v.real(), std::pow(overlap, 4), 1e-12);
  EXPECT_NEAR(v.imag(), 0.0, 1e-14);
}

TEST(NProduct, ReversalConjugatesAndRotationPreserves) {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto t = random_mixed_tuple(4, 2, rng);
    const std::array<std::size_t, 5> w{0, 3, 1, 1, 2};
    const std::array<std::size_t, 5> rev{2, 1, 1, 3, 0};
    const std::array<std::size_t, 5> rot{1, 1, 2, 0, 3};
    const Complex a = n_product(t, w).value;
    EXPECT_LT(std::abs(n_product(t, rev).value - std::conj(a)), 1e-12);
    EXPECT_LT(std::abs(n_product(t, rot).value - a), 1e-12);
  }
}

TEST(NProduct, RejectsOutOfRangeIndex) {
  Rng rng(9);
  const auto t = random_pure_tuple(3, 2, rng);
  const std::array<std::size_t, 2> w{0, 3};
  try {
    n_product(t, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_index);
  }
}

TEST(InnerProductDensity, QubitIsUniformOnDisk) {
  EXPECT_NEAR(inner_product_density(2, 0.0), 1.0 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(inner_product_density(2, Complex(0.3, -0.6)), 1.0 / std::numbers::pi, 1e-15);
  EXPECT_EQ(inner_product_density(3, 1.0), 0.0);
  EXPECT_EQ(inner_product_density(3, Complex(1.0, 0.1)), 0.0);
  EXPECT_THROW(inner_product_density(1, 0.0), Error);
}

TEST(InnerProductDensity, NormalizedWithSecondMomentOneOverD) {
  for (int d = 2; d <= 6; ++d) {
    auto radial = [d](double r) { return 2 * std::numbers::pi * r * inner_product_density(d, r); };
    auto second = [d](double r) { return 2 * std::numbers::pi * r * r * r * inner_product_density(d, r); };
    EXPECT_NEAR(Quad::integrate(radial, 0.0, 1.0), 1.0, 1e-10) << d;
    EXPECT_NEAR(Quad::integrate(second, 0.0, 1.0), 1.0 / d, 1e-10) << d;
  }
}

TEST(MarginalDensity, IntegratesToOneAndIsEven) {
  for (int d = 2; d <= 6; ++d) {
    auto p = [d](double t) { return marginal_density(d, t); };
    EXPECT_NEAR(Quad::integrate(p, -1.0, 1.0), 1.0, 1e-6) << d;
    for (double t : {0.1, 0.45, 0.9}) EXPECT_EQ(marginal_density(d, t), marginal_density(d, -t));
  }
  EXPECT_NEAR(marginal_density(2, 0.0), 2.0 / std::numbers::pi, 1e-14);
}

TEST(MarginalDensity, MatchesProjectionOfDiskDensity) {
  for (int d : {2, 3, 5}) {
    for (double x : {-0.7, 0.0, 0.35}) {
      const double half = std::sqrt(1 - x * x);
      auto slice = [d, x](double y) { return inner_product_density(d, Complex(x, y)); };
      EXPECT_NEAR(Quad::integrate(slice, -half, half), marginal_density(d, x), 1e-9) << d << ' ' << x;
    }
  }
}

TEST(PolarHistogram, BinsPartitionTheDisk) {
  EXPECT_EQ(PolarHistogram::bin(0.0), 0);
  EXPECT_EQ(PolarHistogram::bin(Complex(0.999, -1e-9)), 99);
  EXPECT_EQ(PolarHistogram::bin(std::polar(std::sqrt(0.55), 1.0)), 51);
  double total = 0.0;
  for (int b = 0; b < 100; ++b) total += polar_bin_probability(3, b);
  EXPECT_NEAR(total, 1.0, 1e-14);
  for (int b = 0; b < 100; ++b) EXPECT_NEAR(polar_bin_probability(2, b), 0.01, 1e-15);
}

TEST(OverlapStatistics, MeanSquaredModulusIsOneOverD) {
  for (int d : {2, 3, 5}) {
    const OverlapStatistics s = sample_overlap_statistics(d, 100000, Rng(100 + d));
    EXPECT_NEAR(s.mean_abs2, 1.0 / d, 0.01) << d;
    EXPECT_LE(s.max_abs, 1.0 + 1e-12);
    EXPECT_EQ(s.histogram.total(), 100000u);
  }
}

}  // namespace
}  // namespace bargmann
