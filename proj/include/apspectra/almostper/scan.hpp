#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "apspectra/almostper/averaged_metric.hpp"
#include "apspectra/core/parallel.hpp"

namespace apspectra {

struct MeanScan {};
struct WeylScan {
  std::size_t n_index = 0;  // 0 selects the last window of the schedule
};
struct BohrScan {
  std::int64_t horizon = 1000;
};

using ScanKind = std::variant<MeanScan, WeylScan, BohrScan>;

inline const char* kind_name(const ScanKind& k) {
  switch (k.index()) {
    case 0: return "mean";
    case 1: return "weyl";
    default: return "bohr";
  }
}

struct ScanBudget {
  FolnerSchedule schedule = FolnerSchedule::intervals(1000, 10);
  MeanOptions mean;
  CylinderMetric metric;
  std::optional<std::int64_t> weyl_shift_budget;  // default 4 |B_n|
  std::int64_t eval_limit = std::int64_t{1} << 40;
};

/// What a scan actually evaluated; embedded in every output row set.
struct BudgetReport {
  std::string schedule;
  std::size_t n_max = 0;
  std::size_t tail = 0;
  int K = 0;
  std::optional<Window> weyl_window;
  std::optional<ShiftRange> weyl_shifts;
  std::optional<std::int64_t> bohr_horizon;
  std::int64_t eval_extent = 0;

  std::string fingerprint() const {
    std::string s = schedule + ";tail=" + std::to_string(tail) + ";K=" + std::to_string(K);
    if (weyl_window)
      s += ";weyl=[" + std::to_string(weyl_window->start) + "," + std::to_string(weyl_window->end()) + ")";
    if (weyl_shifts) s += ";shifts=" + std::to_string(weyl_shifts->lo) + ".." + std::to_string(weyl_shifts->hi);
    if (bohr_horizon) s += ";horizon=" + std::to_string(*bohr_horizon);
    s += ";extent=" + std::to_string(eval_extent);
    return s;
  }
};

struct ScanRow {
  std::int64_t t = 0;
  double value = 0.0;
  VerdictKind mean_verdict = VerdictKind::Undecided;  // Mean scans only
};

/// Per-t values of one kind over [-T, T], independent of epsilon.
struct ScanValues {
  ScanKind kind;
  std::int64_t range = 0;
  std::vector<ScanRow> rows;
  BudgetReport budget;
};

struct AlmostPeriodScan {
  double epsilon = 0.0;
  ScanKind kind;
  std::int64_t range = 0;
  std::vector<std::int64_t> periods;
  std::int64_t max_gap = 0;
  BudgetReport budget;
  std::vector<ScanRow> rows;
};

/// Largest gap between consecutive periods, with -T and T as sentinels.
inline std::int64_t max_gap(const std::vector<std::int64_t>& periods, std::int64_t range) {
  std::set<std::int64_t> pts(periods.begin(), periods.end());
  pts.insert(-range);
  pts.insert(range);
  std::int64_t gap = 0, prev = -range;
  for (std::int64_t p : pts) {
    gap = std::max(gap, p - prev);
    prev = p;
  }
  return gap;
}

inline ScanValues scan_values(const PointGen& x, const ScanKind& kind, std::int64_t range, const ScanBudget& budget) {
  if (range < 0) throw InvalidArgument("range", "scan range must be nonnegative");
  ScanValues out{kind, range, {}, {}};
  const CylinderMetric& metric = budget.metric;
  BudgetReport& rep = out.budget;
  rep.schedule = budget.schedule.fingerprint();
  rep.n_max = budget.schedule.size();
  rep.tail = budget.mean.tail;
  rep.K = metric.K;

  // s-range whose mismatch values each kind needs.
  std::int64_t lo = 0, hi = 0;
  Window weyl_window{};
  ShiftRange weyl_shifts{};
  if (std::holds_alternative<MeanScan>(kind)) {
    const Window h = budget.schedule.hull();
    lo = h.start;
    hi = h.last();
  } else if (const auto* w = std::get_if<WeylScan>(&kind)) {
    const std::size_t n = w->n_index == 0 ? budget.schedule.size() : w->n_index;
    weyl_window = budget.schedule.window(n);
    weyl_shifts = ShiftRange::symmetric(budget.weyl_shift_budget.value_or(4 * weyl_window.length));
    lo = weyl_window.start + weyl_shifts.lo;
    hi = weyl_window.last() + weyl_shifts.hi;
    rep.weyl_window = weyl_window;
    rep.weyl_shifts = weyl_shifts;
  } else {
    const auto& b = std::get<BohrScan>(kind);
    if (b.horizon < 0) throw InvalidArgument("horizon", "must be nonnegative");
    lo = -b.horizon;
    hi = b.horizon;
    rep.bohr_horizon = b.horizon;
  }
  rep.eval_extent = std::max(std::abs(lo), std::abs(hi)) + metric.K + range;
  if (rep.eval_extent > budget.eval_limit) throw BudgetTooSmall(rep.eval_extent, budget.eval_limit);

  const LetterWindow letters = orbit_letters(x, range, metric, lo, hi);
  out.rows.resize(static_cast<std::size_t>(2 * range + 1));
  parallel_for(out.rows.size(), [&](std::size_t i) {
    const std::int64_t t = static_cast<std::int64_t>(i) - range;
    ScanRow& row = out.rows[i];
    row.t = t;
    const RealTrack m = orbit_mismatch(letters, t, metric, lo, hi);
    if (std::holds_alternative<MeanScan>(kind)) {
      const MeanEstimate est = partial_means(m, budget.schedule, budget.mean);
      row.value = est.tail_max();
      row.mean_verdict = est.verdict_kind();
    } else if (std::holds_alternative<WeylScan>(kind)) {
      row.value = uniform_mean(m, weyl_window, weyl_shifts).value;
    } else {
      row.value = *std::max_element(m.values.begin(), m.values.end());
    }
  });
  return out;
}

inline AlmostPeriodScan periods_below(const ScanValues& v, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon", "must be positive");
  AlmostPeriodScan s{epsilon, v.kind, v.range, {}, 0, v.budget, v.rows};
  for (const auto& r : v.rows)
    if (r.value < epsilon || r.t == 0) s.periods.push_back(r.t);
  s.max_gap = max_gap(s.periods, v.range);
  return s;
}

/**
 * All t in [-T, T] that pass the kind's test at the recorded budget:
 *   Mean   tail max of the averaged_D partials < epsilon
 *   Weyl   D_n(x, t.x) < epsilon on the chosen window and shift budget
 *   Bohr   sup_metric_lb(x, t.x, horizon) < epsilon
 */
inline AlmostPeriodScan almost_period_scan(const PointGen& x, double epsilon, const ScanKind& kind,
                                           std::int64_t range, const ScanBudget& budget = {}) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon", "must be positive");
  return periods_below(scan_values(x, kind, range, budget), epsilon);
}

}  // namespace apspectra
