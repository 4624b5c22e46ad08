#include <gtest/gtest.h>

#include <random>

#include "apspectra/apspectra.hpp"
#include "oracle.hpp"

using namespace apspectra;

namespace {

struct RandomPeriodic {
  PointGen x;
  std::size_t p;
  std::map<char, Complex> weights;
};

// Random pattern over "ABC" with random complex weights per letter.
RandomPeriodic random_periodic(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(1, 12);
  std::uniform_int_distribution<int> letter(0, 2);
  std::string pattern(len(rng), 'A');
  for (auto& c : pattern) c = static_cast<char>('A' + letter(rng));
  const auto v = oracle::random_values(rng, 6, -1, 1);
  return {PointGen::periodic(pattern), pattern.size(),
          {{'A', Complex(v[0], v[1])}, {'B', Complex(v[2], v[3])}, {'C', Complex(v[4], v[5])}}};
}

Observable weight_of(const RandomPeriodic& r) {
  std::map<char, Complex> w;
  for (const auto& [c, v] : r.weights)
    if (r.x.alphabet().contains(c)) w[c] = v;
  return Observable::letter_values(r.x.alphabet(), w, 0, "w");
}

}  // namespace

TEST(Properties, FourierBohrIsLinear) {
  std::mt19937_64 rng(1);
  const auto x = PointGen::fibonacci();
  const auto s = FolnerSchedule::intervals(97, 5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = oracle::random_values(rng, 5, -2, 2);
    const auto f = Observable::letter_values(x.alphabet(), {{'a', v[0]}, {'b', v[1]}}, 0, "f");
    const auto g = Observable::letter_values(x.alphabet(), {{'a', v[2]}, {'b', v[3]}}, 1, "g");
    const auto sum = Observable::from_function(
        x.alphabet(), {0, 1}, [&](std::span<const Letter> p) { return Complex(v[p[0]] + v[2 + p[1]]); }, "f+g");
    const double theta = (v[4] + 2) / 4;
    const auto a = fourier_bohr(f, x, theta, s), b = fourier_bohr(g, x, theta, s), c = fourier_bohr(sum, x, theta, s);
    for (std::size_t i = 0; i < s.size(); ++i)
      EXPECT_NEAR(std::abs(c.partials[i].value - a.partials[i].value - b.partials[i].value), 0.0, 1e-13);
  }
}

TEST(Properties, PeriodicParsevalIsExact) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random_periodic(rng);
    const auto f = weight_of(r);
    const auto s = FolnerSchedule::intervals(static_cast<std::int64_t>(r.p), 6);
    std::vector<double> thetas;
    for (std::size_t j = 0; j < r.p; ++j) thetas.push_back(static_cast<double>(j) / static_cast<double>(r.p));
    for (double d : parseval_defect(f, r.x, thetas, s)) EXPECT_NEAR(d, 0.0, 1e-12);
  }
}

TEST(Properties, PeriodicGridMatchesWienerAutocorrelation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random_periodic(rng);
    std::map<char, Complex> w;
    for (const auto& [c, v] : r.weights)
      if (r.x.alphabet().contains(c)) w[c] = v;
    const WeightedComb c(r.x, w);
    const std::size_t N = 2 * r.p;  // grid sizes start at 2
    const auto g = fourier_bohr_grid(c.observable(), r.x, N);
    const auto eta = autocorrelation(c, 6, FolnerSchedule::intervals(static_cast<std::int64_t>(r.p), 4));
    for (std::int64_t k = -6; k <= 6; ++k) {
      Complex wiener{};
      for (std::size_t j = 0; j < N; ++j) wiener += std::norm(g.amplitudes[j]) * Character(g.theta(j))(k);
      EXPECT_NEAR(std::abs(eta.eta(k) - wiener), 0.0, 1e-12) << k;
    }
    // Every atom sits on the grid and together they carry eta(0).
    std::vector<std::pair<double, double>> atoms;
    for (std::size_t j = 0; j < N; ++j) {
      const auto atom = bombieri_taylor_atom(c, g.theta(j), FolnerSchedule::intervals(static_cast<std::int64_t>(N), 4));
      EXPECT_NEAR(atom.last().real(), std::norm(g.amplitudes[j]), 1e-12);
      atoms.emplace_back(g.theta(j), atom.last().real());
    }
    if (eta.eta(0).real() < 1e-9) continue;
    EXPECT_NEAR(pure_point_fraction(atoms, eta.eta(0).real()), 1.0, 1e-9);
  }
}

TEST(Properties, PeriodicEigenfunctionsAreExact) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto r = random_periodic(rng);
    const auto f = weight_of(r);
    const auto s = FolnerSchedule::intervals(static_cast<std::int64_t>(r.p), 4);
    std::vector<PointGen> pts;
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(r.p); ++t) pts.push_back(shift(r.x, t));
    const double theta = 1.0 / static_cast<double>(r.p);
    const auto rep = eigenfunction_sample(f, theta, pts, s, EigenOptions{{1, 2, 3, 7}, {}});
    EXPECT_LT(rep.eigen_residual, 1e-12);
    EXPECT_LT(rep.modulus_spread, 1e-12);
    EXPECT_EQ(rep.excluded, 0u);
  }
}

TEST(Properties, VarianceIsTheZeroLineDefect) {
  std::mt19937_64 rng(5);
  const auto s = FolnerSchedule::intervals(64, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexTrack h = to_complex(RealTrack{0, oracle::random_values(rng, 512, -1, 1)});
    const std::vector<double> zero{0.0};
    const auto d = parseval_defect(h, zero, s);
    const auto m = partial_means(h, s);
    const auto e = energy(h, s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_NEAR(d[i], e.partials[i].value.real() - std::norm(m.partials[i].value), 1e-12);
      EXPECT_GE(d[i], -1e-12);
    }
  }
}

TEST(Properties, ClassificationIsShiftInvariant) {
  std::mt19937_64 rng(6);
  ClassifyBudget b;
  b.range = 60;
  b.scan = classify_scan_budget();
  b.scan.schedule = FolnerSchedule::intervals(120, 6);
  for (int trial = 0; trial < 5; ++trial) {
    const auto r = random_periodic(rng);
    const auto base = classify_point(r.x, default_eps_grid(), b);
    const auto moved = classify_point(shift(r.x, static_cast<std::int64_t>(rng() % 1000)), default_eps_grid(), b);
    for (const auto* k : {&base.mean, &base.weyl, &base.bohr}) EXPECT_EQ(k->verdict, Evidence::For);
    EXPECT_EQ(moved.mean.verdict, base.mean.verdict);
    EXPECT_EQ(moved.weyl.verdict, base.weyl.verdict);
    EXPECT_EQ(moved.bohr.verdict, base.bohr.verdict);
  }
}

TEST(Properties, PeriodsGiveZeroObservableMismatch) {
  std::mt19937_64 rng(7);
  const auto s = FolnerSchedule::intervals(60, 5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = random_periodic(rng);
    const auto f = weight_of(r);
    const auto p = static_cast<std::int64_t>(r.p);
    EXPECT_EQ(averaged_D(r.x, p, s).last(), Complex(0.0));
    const auto h = observable_track(f, r.x, 0, 299 + p);
    const RealTrack diff = tabulate(0, 299, [&](std::int64_t t) { return std::abs(h(t + p) - h(t)); });
    EXPECT_EQ(seminorm_eval(AdmissibleSeminorm::mean_bar(s), diff), 0.0);
  }
}
