#include <gtest/gtest.h>

#include <random>

#include "apspectra/diffraction/bridge.hpp"
#include "apspectra/diffraction/density.hpp"
#include "apspectra/spectral/fourier_bohr.hpp"
#include "oracle.hpp"

using namespace apspectra;

namespace {

const Complex I{0.0, 1.0};

WeightedComb ab_comb() { return WeightedComb(PointGen::periodic("AB"), {{'A', 1.0}, {'B', 0.0}}); }

WeightedComb fib_comb() { return WeightedComb(PointGen::fibonacci(), {{'a', Complex(0.8, -0.3)}, {'b', -0.5}}); }

// Direct (1/|B|) sum_{t in B} w(t) conj(w(t - k)).
Complex eta_oracle(const WeightedComb& c, const Window& b, std::int64_t k) {
  Complex s{};
  for (std::int64_t t = b.start; t < b.end(); ++t) s += c(t) * std::conj(c(t - k));
  return s / static_cast<double>(b.length);
}

}  // namespace

TEST(Comb, WeightsAndErrors) {
  const auto c = fib_comb();
  EXPECT_EQ(c(0), Complex(0.8, -0.3));
  EXPECT_EQ(c(1), Complex(-0.5));
  EXPECT_NEAR(c.max_weight(), std::abs(Complex(0.8, -0.3)), 1e-15);
  EXPECT_EQ(c.shifted(1)(0), c(1));
  EXPECT_THROW(WeightedComb(PointGen::fibonacci(), {{'a', std::nan("")}}), InvalidArgument);
  EXPECT_THROW(WeightedComb(PointGen::fibonacci(), {{'z', 1.0}}), InvalidArgument);
}

TEST(Autocorrelation, ConstantComb) {
  const WeightedComb one(PointGen::periodic("A"), {{'A', 1.0}});
  const auto eta = autocorrelation(one, 5, FolnerSchedule::intervals(10, 4));
  for (std::int64_t k = -5; k <= 5; ++k) EXPECT_EQ(eta.eta(k), Complex(1.0));
}

TEST(Autocorrelation, PeriodicComb) {
  const auto eta = autocorrelation(ab_comb(), 4, FolnerSchedule::intervals(10, 10));
  for (std::int64_t k = -4; k <= 4; ++k) EXPECT_NEAR(std::abs(eta.eta(k) - (k % 2 == 0 ? 0.5 : 0.0)), 0.0, 1e-15);
  EXPECT_EQ(eta.values().size(), 9u);
  EXPECT_EQ(eta.window_length, 100);
}

TEST(Autocorrelation, BernoulliComb) {
  const WeightedComb c(PointGen::bernoulli(0.5, 42), {{'1', 1.0}});
  const auto eta = autocorrelation(c, 6, FolnerSchedule::intervals(10000, 10));
  EXPECT_NEAR(eta.eta(0).real(), 0.5, 0.02);
  for (std::int64_t k = 1; k <= 6; ++k) EXPECT_NEAR(eta.eta(k).real(), 0.25, 0.02);
}

TEST(Autocorrelation, MatchesOracleAndSymmetries) {
  const auto c = fib_comb();
  const auto s = FolnerSchedule::custom({{-40, 90}, {-100, 333}, {-500, 1200}});
  const std::size_t K = 12;
  const auto eta = autocorrelation(c, K, s);
  const double m2 = c.max_weight() * c.max_weight();
  for (std::size_t n = 1; n <= s.size(); ++n) {
    const double L = static_cast<double>(s.window(n).length);
    for (std::int64_t k = -12; k <= 12; ++k) {
      // Negative lags are conjugates of the computed ones, so they match the direct sum up to boundary terms.
      const double tol = k >= 0 ? 1e-13 : 2.0 * std::abs(k) * m2 / L;
      EXPECT_NEAR(std::abs(eta.eta(k, n) - eta_oracle(c, s.window(n), k)), 0.0, tol);
      EXPECT_EQ(eta.eta(-k, n), std::conj(eta.eta(k, n)));
      EXPECT_LE(std::abs(eta.eta(k, n)), eta.eta(0, n).real() + std::abs(k) * m2 / L + 1e-12);
    }
  }
  // eta(0) is the orbit mean of |w|^2.
  const auto h = observable_track(Observable::from_function(
                                      c.base().alphabet(), {0},
                                      [&](std::span<const Letter> p) { return Complex(std::norm(c.weight(p[0]))); },
                                      "abs2"),
                                  c.base(), s.hull());
  const auto m = partial_means(h, s);
  for (std::size_t n = 1; n <= s.size(); ++n) EXPECT_NEAR(eta.eta(0, n).real(), m.partials[n - 1].value.real(), 1e-14);
}

TEST(Density, FejerOutputIsNonnegative) {
  // Periodic combs on whole periods give an exactly positive-definite eta.
  const auto ab = autocorrelation(ab_comb(), 32, FolnerSchedule::intervals(64, 6));
  EXPECT_GE(diffraction_density(ab, Taper::Triangular, 128).min_value, -1e-9);

  // Otherwise eta differs from a positive-definite sequence by at most |k| max|w|^2 / |B| per lag.
  for (const auto& c : {WeightedComb(PointGen::bernoulli(0.5, 9), {{'0', -1.0}, {'1', 1.0}}), fib_comb()}) {
    const std::size_t K = 24;
    const auto eta = autocorrelation(c, K, FolnerSchedule::intervals(5000, 4));
    const double slack = static_cast<double>(K * K) * c.max_weight() * c.max_weight() / 20000.0;
    const auto d = diffraction_density(eta, Taper::Triangular, 256);
    EXPECT_GE(d.min_value, -slack);
    EXPECT_FALSE(d.negative_density);
  }
}

TEST(Density, MassEqualsEtaZero) {
  const auto eta = autocorrelation(fib_comb(), 20, FolnerSchedule::intervals(1000, 4));
  for (Taper taper : {Taper::None, Taper::Triangular}) {
    for (std::size_t M : {40u, 41u, 512u}) {
      const auto d = diffraction_density(eta, taper, M);
      double mass = 0.0;
      for (double v : d.values) mass += v;
      EXPECT_NEAR(mass / static_cast<double>(M), eta.eta(0).real(), 1e-12);
    }
  }
  EXPECT_THROW(diffraction_density(eta, Taper::None, 39), InvalidArgument);
}

TEST(Density, PeriodicPeaks) {
  const auto eta = autocorrelation(ab_comb(), 64, FolnerSchedule::intervals(64, 4));
  const auto d = diffraction_density(eta, Taper::Triangular, 256);
  const double peak = d.values[0];
  EXPECT_NEAR(d.values[128], peak, 1e-12);
  EXPECT_EQ(*std::max_element(d.values.begin(), d.values.end()), peak);
  // Outside the main lobes (width M / K_max bins) only small sidelobes remain.
  for (std::size_t j = 0; j < 256; ++j) {
    const std::size_t off = std::min(j % 128, 128 - j % 128);
    if (off < 8) continue;
    EXPECT_LT(d.values[j], 0.05 * peak) << j;
  }
}

TEST(Density, BernoulliIsFlat) {
  const WeightedComb c(PointGen::bernoulli(0.5, 77), {{'0', -1.0}, {'1', 1.0}});
  const auto eta = autocorrelation(c, 16, FolnerSchedule::intervals(10000, 10));
  const auto d = diffraction_density(eta, Taper::Triangular, 64);
  for (double v : d.values) EXPECT_NEAR(v, 1.0, 0.1);
}

TEST(Density, UntaperedNegativeFlag) {
  // Truncating eta(k) = 1 without a taper gives a Dirichlet kernel with negative lobes.
  const WeightedComb one(PointGen::periodic("A"), {{'A', 1.0}});
  const auto eta = autocorrelation(one, 8, FolnerSchedule::intervals(4, 2));
  const auto raw = diffraction_density(eta, Taper::None, 64);
  EXPECT_TRUE(raw.negative_density);
  EXPECT_FALSE(diffraction_density(eta, Taper::Triangular, 64).negative_density);
}

TEST(BombieriTaylor, PeriodicAtoms) {
  const auto half = bombieri_taylor_atom(ab_comb(), 0.5, FolnerSchedule::intervals(10, 8));
  ASSERT_TRUE(half.converged());
  EXPECT_NEAR(std::get<Converged>(half.verdict).limit.real(), 0.25, 1e-14);
  const auto third = bombieri_taylor_atom(ab_comb(), 1.0 / 3.0, FolnerSchedule::intervals(6, 8));
  ASSERT_TRUE(third.converged());
  EXPECT_NEAR(std::get<Converged>(third.verdict).limit.real(), 0.0, 1e-14);
}

TEST(BombieriTaylor, IdentityWithFourierBohr) {
  const auto c = fib_comb();
  const auto s = FolnerSchedule::intervals(777, 6);
  for (double theta : {0.0, 0.1, static_cast<double>(PointGen::golden_alpha()), 0.5}) {
    const auto atom = bombieri_taylor_atom(c, theta, s);
    const auto fb = fourier_bohr(c.observable(), c.base(), theta, s);
    for (std::size_t i = 0; i < s.size(); ++i)
      EXPECT_NEAR(atom.partials[i].value.real(), std::norm(fb.partials[i].value), 1e-12);
  }
}

TEST(BombieriTaylor, ShiftCovariance) {
  const auto c = fib_comb();
  const auto s = FolnerSchedule::intervals(500, 6);
  const double m2 = c.max_weight() * c.max_weight();
  for (std::int64_t r : {-13, 5, 200}) {
    const auto a = bombieri_taylor_atom(c, 0.2, s), b = bombieri_taylor_atom(c.shifted(r), 0.2, s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double L = static_cast<double>(s.window(i + 1).length);
      EXPECT_LE(std::abs(a.partials[i].value.real() - b.partials[i].value.real()), 4.0 * std::abs(r) * m2 / L + 1e-12);
    }
  }
}

TEST(PurePointFraction, Examples) {
  const std::vector<std::pair<double, double>> two{{0.0, 0.25}, {0.5, 0.25}};
  EXPECT_DOUBLE_EQ(pure_point_fraction(two, 0.5), 1.0);
  const std::vector<std::pair<double, double>> slightly_over{{0.0, 0.52}};
  EXPECT_NEAR(pure_point_fraction(slightly_over, 0.5), 1.04, 1e-12);
  const std::vector<std::pair<double, double>> over{{0.0, 0.6}};
  EXPECT_THROW(pure_point_fraction(over, 0.5), FractionExceedsOne);
  EXPECT_THROW(pure_point_fraction(two, 0.0), InvalidArgument);
  EXPECT_EQ(pure_point_fraction({}, 1.0), 0.0);
}

TEST(Bridge, Examples) {
  const auto c = ab_comb();
  const auto id = nphi_bridge(c, {{0, 1.0}}, -5, 5);
  for (std::int64_t t = -5; t <= 5; ++t) EXPECT_EQ(id.track(t), c(t));
  const auto two = nphi_bridge(c, {{0, 1.0}, {1, I}}, 0, 9);
  for (std::int64_t t = 0; t <= 9; ++t) EXPECT_EQ(two.track(t), c(t) - I * c(t + 1));
  EXPECT_THROW(nphi_bridge(c, {}, 0, 1), InvalidArgument);
}

TEST(Bridge, RandomKernelsAgree) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> off(-6, 6);
  const auto re = oracle::random_values(rng, 50, -1, 1);
  const auto c = fib_comb();
  for (int trial = 0; trial < 10; ++trial) {
    Kernel phi;
    for (int i = 0; i < 5; ++i) phi.emplace_back(off(rng), Complex(re[5 * trial + i], re[49 - 5 * trial - i]));
    const auto r = nphi_bridge(c, phi, -300, 300);
    EXPECT_LT(r.residual, 1e-12);
    for (std::int64_t t : {-300, 0, 299}) {
      Complex s{};
      for (const auto& [k, v] : phi) s += c(t + k) * std::conj(v);
      EXPECT_NEAR(std::abs(r.track(t) - s), 0.0, 1e-14);
    }
  }
}
