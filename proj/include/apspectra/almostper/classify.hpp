#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "apspectra/almostper/scan.hpp"

namespace apspectra {

enum class Evidence { For, Against, Undecided };

inline const char* to_string(Evidence e) {
  switch (e) {
    case Evidence::For: return "evidence-for";
    case Evidence::Against: return "evidence-against";
    case Evidence::Undecided: return "undecided";
  }
  return "?";
}

/// Scan budget used by the classifier. Mismatch averages of random points
/// fluctuate by about 1/sqrt(|B_n|), so the convergence tolerance is 1e-2.
inline ScanBudget classify_scan_budget() {
  ScanBudget b;
  b.mean.convergence_rel = 1e-2;
  return b;
}

struct ClassifyBudget {
  ScanBudget scan = classify_scan_budget();
  std::int64_t range = 500;
  double gap_threshold = 0.2;  // Evidence-For needs max_gap <= gap_threshold * 2T
  std::size_t weyl_n_index = 0;
  std::int64_t bohr_horizon = 1000;
};

struct KindClassification {
  ScanKind kind;
  std::vector<AlmostPeriodScan> scans;  // one per epsilon, same order as the grid
  Evidence verdict = Evidence::Undecided;
  bool converged_majority = true;  // Mean only: most scanned t had a Converged estimate
  bool downgraded = false;         // set when the hierarchy forced Evidence-For down to Undecided
};

/// Finite-scale evidence per almost-periodicity kind; never a proof.
struct ClassificationReport {
  std::vector<double> eps_grid;
  std::int64_t range = 0;
  double gap_threshold = 0.2;
  KindClassification mean;
  KindClassification weyl;
  KindClassification bohr;
};

inline const std::vector<double>& default_eps_grid() {
  static const std::vector<double> grid{0.01, 0.05, 0.1, 0.2};
  return grid;
}

namespace detail {

inline KindClassification classify_kind(const PointGen& x, const ScanKind& kind, const std::vector<double>& eps,
                                        const ClassifyBudget& budget) {
  const ScanValues values = scan_values(x, kind, budget.range, budget.scan);
  KindClassification out{kind, {}, Evidence::Undecided, true, false};
  if (std::holds_alternative<MeanScan>(kind)) {
    std::size_t converged = 0;
    for (const auto& r : values.rows) converged += r.mean_verdict == VerdictKind::Converged ? 1 : 0;
    out.converged_majority = 2 * converged > values.rows.size();
  }

  const double gap_limit = budget.gap_threshold * static_cast<double>(2 * budget.range);
  bool all_dense = true;
  for (double e : eps) {
    out.scans.push_back(periods_below(values, e));
    if (static_cast<double>(out.scans.back().max_gap) > gap_limit) all_dense = false;
  }
  // The budget counts as saturated when even the loosest epsilon leaves only t = 0.
  const double loosest = *std::max_element(eps.begin(), eps.end());
  const bool saturated_trivial = periods_below(values, loosest).periods.size() == 1;
  if (all_dense)
    out.verdict = Evidence::For;
  else if (saturated_trivial && out.converged_majority)
    out.verdict = Evidence::Against;
  return out;
}

}  // namespace detail

/**
 * Runs the Mean, Weyl and Bohr scans over the epsilon grid.
 *
 * Evidence-For: max_gap <= gap_threshold * 2T for every epsilon.
 * Evidence-Against: the loosest epsilon of the grid still leaves only t = 0,
 * and (Mean kind) a majority of the scanned averages converged.
 * A stronger kind may only be For when the weaker one is; otherwise it is
 * downgraded to Undecided.
 */
inline ClassificationReport classify_point(const PointGen& x, const std::vector<double>& eps_grid,
                                           const ClassifyBudget& budget = {}) {
  if (eps_grid.empty()) throw InvalidArgument("eps_grid", "must not be empty");
  for (double e : eps_grid)
    if (!(e > 0.0)) throw InvalidArgument("eps_grid", "entries must be positive");
  ClassificationReport rep;
  rep.eps_grid = eps_grid;
  rep.range = budget.range;
  rep.gap_threshold = budget.gap_threshold;
  rep.mean = detail::classify_kind(x, MeanScan{}, eps_grid, budget);
  rep.weyl = detail::classify_kind(x, WeylScan{budget.weyl_n_index}, eps_grid, budget);
  rep.bohr = detail::classify_kind(x, BohrScan{budget.bohr_horizon}, eps_grid, budget);

  if (rep.weyl.verdict == Evidence::For && rep.mean.verdict != Evidence::For) {
    rep.weyl.verdict = Evidence::Undecided;
    rep.weyl.downgraded = true;
  }
  if (rep.bohr.verdict == Evidence::For && rep.weyl.verdict != Evidence::For) {
    rep.bohr.verdict = Evidence::Undecided;
    rep.bohr.downgraded = true;
  }
  return rep;
}

}  // namespace apspectra
