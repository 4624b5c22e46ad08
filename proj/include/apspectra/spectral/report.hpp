#pragma once

#include <optional>
#include <vector>

#include "apspectra/spectral/detect.hpp"
#include "apspectra/spectral/parseval.hpp"

namespace apspectra {

enum class Purity { EvidencePurePoint, EvidenceNotPurePoint, Undecided };

inline const char* to_string(Purity p) {
  switch (p) {
    case Purity::EvidencePurePoint: return "evidence-pure-point";
    case Purity::EvidenceNotPurePoint: return "evidence-not-pure-point";
    case Purity::Undecided: return "undecided";
  }
  return "?";
}

struct SpectralOptions {
  std::vector<std::size_t> stages{1u << 15, 1u << 16, 1u << 17};
  DetectOptions detect;
  std::optional<FolnerSchedule> schedule;  // default: 8 intervals up to the largest stage
  MeanOptions mean;
  TransformMethod method = TransformMethod::FastTransform;
  double pure_fraction = 0.05;    // defect below this fraction of the energy counts toward pure point
  double impure_fraction = 0.5;   // defect above this fraction counts against
  double monotone_slack = 1e-3;   // relative slack when checking the defect decreases
};

struct SpectralLine {
  DetectedFrequency frequency;
  MeanEstimate trajectory;  // Fourier-Bohr partials at the refined theta along the schedule
};

struct SpectralReport {
  std::vector<SpectralLine> lines;
  MeanEstimate energy;
  std::vector<double> parseval_defect;
  Purity purity = Purity::Undecided;
  std::vector<double> stage_max_amplitude;
  std::string schedule;
};

/**
 * Pure point evidence: the last defect is below pure_fraction * energy and
 * the last three defects do not increase (up to monotone_slack * energy).
 * Against: the last defect exceeds impure_fraction * energy while the energy
 * average has converged.
 */
inline Purity purity_verdict(const std::vector<double>& defect, const MeanEstimate& energy_est,
                             const SpectralOptions& opts = {}) {
  if (defect.empty()) return Purity::Undecided;
  const double e = energy_est.last().real();
  if (e <= 0.0) return Purity::EvidencePurePoint;
  const double last = defect.back();
  bool nonincreasing = true;
  const std::size_t k = std::min<std::size_t>(3, defect.size());
  for (std::size_t i = defect.size() - k + 1; i < defect.size(); ++i)
    if (defect[i] > defect[i - 1] + opts.monotone_slack * e) nonincreasing = false;
  if (last < opts.pure_fraction * e && nonincreasing) return Purity::EvidencePurePoint;
  if (last > opts.impure_fraction * e && energy_est.converged()) return Purity::EvidenceNotPurePoint;
  return Purity::Undecided;
}

inline SpectralReport spectral_report(const Observable& f, const PointGen& x, const SpectralOptions& opts = {}) {
  if (opts.stages.size() < 2) throw InvalidArgument("stages", "need at least two grid stages");
  const std::size_t n_max = opts.stages.back();
  const FolnerSchedule schedule =
      opts.schedule ? *opts.schedule : FolnerSchedule::intervals(static_cast<std::int64_t>(n_max / 8), 8);
  const Window hull = schedule.hull();
  const std::int64_t hi = std::max<std::int64_t>(hull.last(), static_cast<std::int64_t>(n_max) - 1);
  const std::int64_t lo = std::min<std::int64_t>(hull.start, 0);
  const ComplexTrack h = observable_track(f, x, lo, hi);

  std::vector<FourierBohrGrid> grids;
  for (std::size_t N : opts.stages) {
    ComplexTrack part{0, std::vector<Complex>(h.view(0, static_cast<std::int64_t>(N) - 1).begin(),
                                              h.view(0, static_cast<std::int64_t>(N) - 1).end())};
    grids.push_back(fourier_bohr_grid(std::move(part), N, opts.method));
  }

  SpectralReport rep;
  rep.schedule = schedule.fingerprint();
  for (const auto& g : grids) rep.stage_max_amplitude.push_back(g.max_amplitude());
  std::vector<double> thetas;
  for (auto& d : detect_frequencies(grids, opts.detect)) {
    thetas.push_back(d.theta);
    MeanEstimate traj = fourier_bohr(h, d.theta, schedule, opts.mean);
    rep.lines.push_back({std::move(d), std::move(traj)});
  }
  rep.energy = energy(h, schedule, opts.mean);
  rep.parseval_defect = parseval_defect(h, thetas, schedule);
  rep.purity = purity_verdict(rep.parseval_defect, rep.energy, opts);
  return rep;
}

}  // namespace apspectra
