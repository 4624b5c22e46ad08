// apspectra-cli: batch runs of the library from a JSON config.
//
//   apspectra-cli <command> --config <path> [--out <dir>] [--threads <n>] [--seed-override <u64>]
//
// Exit codes: 0 success, 2 invalid config or arguments, 1 anything else.

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"

namespace fs = std::filesystem;
using namespace cli;

namespace {

const std::vector<std::string> kCommands{"generate", "scan", "classify", "spectrum", "parseval", "eigen", "diffract"};

struct Output {
  std::string name;
  std::string content;
};

/// Everything a command needs, resolved from the config.
struct Run {
  std::string command;
  json config;  // as given, plus expanded point and observable
  std::string hash;
  PointSpec point;
  ObservableSpec observable;
  Section root;
  std::optional<std::uint64_t> seed_override;
  std::vector<Output> outputs;

  json header() const {
    return json{{"tool", "apspectra"}, {"command", command}, {"config_hash", hash}, {"config", config}};
  }
  void emit_json(const std::string& name, const json& j) { outputs.push_back({name, j.dump(2) + "\n"}); }
  void emit_csv(const std::string& name, const std::string& body) {
    outputs.push_back({name, "# config_hash=" + hash + "\n" + body});
  }
};

class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<std::string> header) {
    bool first = true;
    for (const auto& h : header) {
      out_ += (first ? "" : ",") + h;
      first = false;
    }
    out_ += "\n";
  }
  CsvWriter& cell(const std::string& v) {
    out_ += (row_started_ ? "," : "") + v;
    row_started_ = true;
    return *this;
  }
  CsvWriter& cell(double v) { return cell(fmt(v)); }
  CsvWriter& cell(std::int64_t v) { return cell(std::to_string(v)); }
  void end() {
    out_ += "\n";
    row_started_ = false;
  }
  const std::string& str() const { return out_; }

 private:
  std::string out_;
  bool row_started_ = false;
};

json estimate_json(const MeanEstimate& e) {
  json partials = json::array();
  for (const auto& p : e.partials) partials.push_back(complex_json(p.value));
  json j{{"partials", partials}, {"verdict", to_string(e.verdict_kind())}, {"tail_spread", e.tail_spread}};
  if (const auto* c = std::get_if<Converged>(&e.verdict)) j["limit"] = complex_json(c->limit);
  if (const auto* o = std::get_if<Oscillating>(&e.verdict)) {
    j["liminf"] = o->liminf;
    j["limsup"] = o->limsup;
  }
  return j;
}

FolnerSchedule schedule_or(const Run& r, const FolnerSchedule& fallback) {
  return parse_schedule(r.root.sub("schedule"), fallback);
}

CylinderMetric metric_of(const Section& s) {
  const auto K = s.integer("K", 16);
  if (K < 1 || K > 40) throw ConfigError(s.field("K"), "must lie in [1, 40]");
  return CylinderMetric{static_cast<int>(K)};
}

// ---------------------------------------------------------------------------

void cmd_generate(Run& r) {
  const Section s = r.root.sub("generate");
  s.allow({"from", "to"});
  const std::int64_t a = s.integer("from", -20), b = s.integer("to", 20);
  if (b < a) throw ConfigError("generate.to", "must be at least generate.from");
  if (b - a > 10'000'000) throw ConfigError("generate.to", "range exceeds 10^7 sites");
  const LetterWindow w = r.point.point.window(a, b);
  const ComplexTrack h = observable_track(r.observable.observable, r.point.point, a, b);
  CsvWriter csv({"t", "symbol", "re", "im"});
  for (std::int64_t t = a; t <= b; ++t) {
    csv.cell(t).cell(std::string(1, r.point.point.alphabet().symbol(w(t)))).cell(h(t).real()).cell(h(t).imag());
    csv.end();
  }
  json j = r.header();
  j["from"] = a;
  j["to"] = b;
  j["symbols"] = w.text(r.point.point.alphabet());
  r.emit_json("generate.json", j);
  r.emit_csv("generate.csv", csv.str());
}

ScanKind kind_from(const std::string& name, const Section& s, std::size_t weyl_n, std::int64_t horizon) {
  if (name == "mean") return MeanScan{};
  if (name == "weyl") return WeylScan{weyl_n};
  if (name == "bohr") return BohrScan{horizon};
  throw ConfigError(s.field("kinds"), "unknown kind '" + name + "'");
}

json scan_json(const AlmostPeriodScan& a) {
  return json{{"epsilon", a.epsilon},       {"periods", a.periods}, {"max_gap", a.max_gap},
              {"period_count", a.periods.size()}, {"budget", a.budget.fingerprint()}};
}

void cmd_scan(Run& r) {
  const Section s = r.root.sub("scan");
  s.allow({"epsilon", "range", "kinds", "K", "bohr_horizon", "weyl_n_index"});
  const double eps = s.number("epsilon", 0.1);
  if (!(eps > 0.0)) throw ConfigError("scan.epsilon", "must be positive");
  const std::int64_t range = nonnegative(s, "range", 500);
  ScanBudget budget;
  budget.schedule = schedule_or(r, budget.schedule);
  budget.metric = metric_of(s);
  const auto weyl_n = static_cast<std::size_t>(nonnegative(s, "weyl_n_index", 0));
  if (weyl_n > budget.schedule.size()) throw ConfigError("scan.weyl_n_index", "exceeds the schedule length");
  const std::int64_t horizon = nonnegative(s, "bohr_horizon", 1000);
  std::vector<std::string> kinds{"mean", "weyl", "bohr"};
  if (s.has("kinds")) {
    kinds.clear();
    if (!s.raw("kinds").is_array()) throw ConfigError("scan.kinds", "must be an array of strings");
    for (const auto& k : s.raw("kinds")) {
      if (!k.is_string()) throw ConfigError("scan.kinds", "must be an array of strings");
      kinds.push_back(k.get<std::string>());
    }
    if (kinds.empty()) throw ConfigError("scan.kinds", "must not be empty");
  }

  json j = r.header();
  std::vector<ScanValues> values;
  for (const auto& k : kinds) {
    values.push_back(scan_values(r.point.point, kind_from(k, s, weyl_n, horizon), range, budget));
    j["kinds"][k] = scan_json(periods_below(values.back(), eps));
  }
  std::string header = "t";
  for (const auto& k : kinds) header += "," + k;
  header += ",mean_verdict\n";
  std::string body = header;
  for (std::size_t i = 0; i < values.front().rows.size(); ++i) {
    body += std::to_string(values.front().rows[i].t);
    std::string verdict;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      body += "," + fmt(values[k].rows[i].value);
      if (kinds[k] == "mean") verdict = to_string(values[k].rows[i].mean_verdict);
    }
    body += "," + verdict + "\n";
  }
  r.emit_json("scan.json", j);
  r.emit_csv("scan.csv", body);
}

json kind_json(const KindClassification& k) {
  json scans = json::array();
  for (const auto& sc : k.scans) scans.push_back(scan_json(sc));
  return json{{"kind", kind_name(k.kind)},
              {"verdict", to_string(k.verdict)},
              {"converged_majority", k.converged_majority},
              {"downgraded", k.downgraded},
              {"scans", scans}};
}

void cmd_classify(Run& r) {
  const Section s = r.root.sub("classify");
  s.allow({"eps_grid", "range", "gap_threshold", "bohr_horizon", "weyl_n_index", "K"});
  ClassifyBudget b;
  b.scan.schedule = schedule_or(r, b.scan.schedule);
  b.scan.metric = metric_of(s);
  b.range = nonnegative(s, "range", b.range);
  b.gap_threshold = s.number("gap_threshold", b.gap_threshold);
  if (!(b.gap_threshold > 0.0)) throw ConfigError("classify.gap_threshold", "must be positive");
  b.bohr_horizon = nonnegative(s, "bohr_horizon", b.bohr_horizon);
  b.weyl_n_index = static_cast<std::size_t>(nonnegative(s, "weyl_n_index", 0));
  const auto grid = s.numbers("eps_grid", default_eps_grid());
  if (grid.empty()) throw ConfigError("classify.eps_grid", "must not be empty");
  for (double e : grid)
    if (!(e > 0.0)) throw ConfigError("classify.eps_grid", "entries must be positive");

  const auto rep = classify_point(r.point.point, grid, b);
  json j = r.header();
  j["eps_grid"] = rep.eps_grid;
  j["range"] = rep.range;
  j["gap_threshold"] = rep.gap_threshold;
  j["mean"] = kind_json(rep.mean);
  j["weyl"] = kind_json(rep.weyl);
  j["bohr"] = kind_json(rep.bohr);
  r.emit_json("classify.json", j);
}

SpectralOptions spectral_options(const Run& r, const Section& s) {
  SpectralOptions o;
  std::vector<std::int64_t> sizes(o.stages.begin(), o.stages.end());
  sizes = s.integers("grid_sizes", sizes);
  if (sizes.size() < 2) throw ConfigError(s.field("grid_sizes"), "needs at least two sizes");
  o.stages.clear();
  for (auto n : sizes) {
    if (n < 2 || (!o.stages.empty() && static_cast<std::size_t>(n) <= o.stages.back()))
      throw ConfigError(s.field("grid_sizes"), "must be increasing sizes of at least 2");
    o.stages.push_back(static_cast<std::size_t>(n));
  }
  o.detect.threshold_rel = s.number("threshold_rel", o.detect.threshold_rel);
  if (!(o.detect.threshold_rel > 0.0)) throw ConfigError(s.field("threshold_rel"), "must be positive");
  const std::string method = s.text("method", "fft");
  if (method != "fft" && method != "direct") throw ConfigError(s.field("method"), "must be 'fft' or 'direct'");
  o.method = method == "fft" ? TransformMethod::FastTransform : TransformMethod::Direct;
  o.schedule =
      schedule_or(r, FolnerSchedule::intervals(static_cast<std::int64_t>(o.stages.back() / 8), 8));
  return o;
}

json line_json(const SpectralLine& l) {
  return json{{"grid_theta", l.frequency.grid_theta},
              {"theta", l.frequency.theta},
              {"amplitude", complex_json(l.frequency.amplitude)},
              {"modulus", std::abs(l.frequency.amplitude)},
              {"stage_moduli", l.frequency.stage_moduli},
              {"trajectory", estimate_json(l.trajectory)}};
}

void cmd_spectrum(Run& r) {
  const Section s = r.root.sub("spectrum");
  s.allow({"grid_sizes", "threshold_rel", "method"});
  const SpectralOptions o = spectral_options(r, s);
  const auto rep = spectral_report(r.observable.observable, r.point.point, o);
  json j = r.header();
  j["grid_sizes"] = o.stages;
  j["method"] = to_string(o.method);
  j["schedule"] = rep.schedule;
  j["lines"] = json::array();
  for (const auto& l : rep.lines) j["lines"].push_back(line_json(l));
  j["energy"] = estimate_json(rep.energy);
  j["parseval_defect"] = rep.parseval_defect;
  j["purity"] = to_string(rep.purity);
  j["stage_max_amplitude"] = rep.stage_max_amplitude;
  r.emit_json("spectrum.json", j);

  const auto g = fourier_bohr_grid(r.observable.observable, r.point.point, o.stages.back(), o.method);
  CsvWriter csv({"j", "theta", "re", "im", "modulus"});
  for (std::size_t i = 0; i < g.amplitudes.size(); ++i) {
    csv.cell(static_cast<std::int64_t>(i)).cell(g.theta(i)).cell(g.amplitudes[i].real()).cell(g.amplitudes[i].imag());
    csv.cell(std::abs(g.amplitudes[i])).end();
  }
  r.emit_csv("spectrum.csv", csv.str());
}

void cmd_parseval(Run& r) {
  const Section s = r.root.sub("parseval");
  s.allow({"thetas", "grid_sizes", "threshold_rel", "method"});
  const SpectralOptions o = spectral_options(r, s);
  std::vector<double> thetas;
  if (s.has("thetas")) {
    thetas = s.numbers("thetas", {});
  } else {
    for (const auto& l : spectral_report(r.observable.observable, r.point.point, o).lines)
      thetas.push_back(l.frequency.theta);
  }
  const FolnerSchedule& sched = *o.schedule;
  const ComplexTrack h = observable_track(r.observable.observable, r.point.point, sched.hull());
  const auto defect = parseval_defect(h, thetas, sched);
  const auto e = energy(h, sched);
  json j = r.header();
  j["thetas"] = thetas;
  j["schedule"] = sched.fingerprint();
  j["energy"] = estimate_json(e);
  j["parseval_defect"] = defect;
  r.emit_json("parseval.json", j);
  CsvWriter csv({"n", "window_length", "energy", "defect"});
  for (std::size_t n = 1; n <= sched.size(); ++n)
    csv.cell(static_cast<std::int64_t>(n)).cell(sched.window(n).length).cell(e.partials[n - 1].value.real())
        .cell(defect[n - 1]).end();
  r.emit_csv("parseval.csv", csv.str());
}

void cmd_eigen(Run& r) {
  const Section s = r.root.sub("eigen");
  s.allow({"theta", "shifts", "sample_points", "sample_range", "sample_seed", "residual_shifts", "convergence_rel"});
  const double theta = s.number("theta");
  std::vector<std::int64_t> shifts = s.integers("shifts", {});
  if (shifts.empty()) {
    const auto count = positive(s, "sample_points", 5);
    const auto range = positive(s, "sample_range", 1'000'000);
    std::mt19937_64 rng(r.seed_override ? *r.seed_override : s.unsigned_integer("sample_seed", 2024));
    std::uniform_int_distribution<std::int64_t> u(-range, range);
    for (std::int64_t i = 0; i < count; ++i) shifts.push_back(u(rng));
  }
  std::vector<PointGen> pts;
  for (auto t : shifts) pts.push_back(shift(r.point.point, t));
  EigenOptions eo;
  eo.shifts = s.integers("residual_shifts", eo.shifts);
  eo.mean.convergence_rel = s.number("convergence_rel", 1e-2);
  const FolnerSchedule sched = schedule_or(r, FolnerSchedule::intervals(12500, 8));
  const auto rep = eigenfunction_sample(r.observable.observable, theta, pts, sched, eo);
  json j = r.header();
  j["theta"] = rep.theta;
  j["schedule"] = sched.fingerprint();
  j["sample_shifts"] = shifts;
  j["samples"] = json::array();
  for (const auto& smp : rep.samples)
    j["samples"].push_back(json{{"value", complex_json(smp.value)},
                                {"modulus", std::abs(smp.value)},
                                {"verdict", to_string(smp.verdict)},
                                {"flagged", smp.flagged}});
  j["eigen_residual"] = rep.eigen_residual;
  j["modulus_spread"] = rep.modulus_spread;
  j["excluded"] = rep.excluded;
  r.emit_json("eigen.json", j);
}

void cmd_diffract(Run& r) {
  const Section s = r.root.sub("diffract");
  s.allow({"weights", "K_max", "M", "taper", "atoms"});
  const auto& alphabet = r.point.point.alphabet();
  std::map<char, Complex> weights;
  if (s.has("weights")) {
    weights = letter_map(s, "weights", alphabet);
  } else {
    weights[alphabet.symbol(0)] = 1.0;
  }
  const auto K = static_cast<std::size_t>(nonnegative(s, "K_max", 64));
  const auto M = static_cast<std::size_t>(positive(s, "M", static_cast<std::int64_t>(std::max<std::size_t>(8 * K, 2))));
  const std::string taper_name = s.text("taper", "triangular");
  if (taper_name != "triangular" && taper_name != "none") throw ConfigError("diffract.taper", "must be 'triangular' or 'none'");
  const Taper taper = taper_name == "none" ? Taper::None : Taper::Triangular;
  const FolnerSchedule sched = schedule_or(r, FolnerSchedule::intervals(12500, 8));

  WeightedComb comb(r.point.point, weights);
  const auto eta = autocorrelation(comb, K, sched);
  DensityEstimate d;
  try {
    d = diffraction_density(eta, taper, M);
  } catch (const InvalidArgument& e) {
    throw ConfigError("diffract.M", reason(e));
  }
  json j = r.header();
  json w = json::object();
  for (const auto& [c, z] : comb.weights()) w[std::string(1, c)] = complex_json(z);
  j["weights"] = w;
  j["K_max"] = K;
  j["M"] = M;
  j["taper"] = taper_name;
  j["schedule"] = eta.schedule;
  j["density_min"] = d.min_value;
  j["negative_density"] = d.negative_density;
  j["eta0"] = eta.eta(0).real();

  const auto atom_thetas = s.numbers("atoms", {});
  if (!atom_thetas.empty()) {
    std::vector<std::pair<double, double>> atoms;
    j["atoms"] = json::array();
    for (double th : atom_thetas) {
      const auto est = bombieri_taylor_atom(comb, th, sched);
      atoms.emplace_back(th, est.last().real());
      j["atoms"].push_back(json{{"theta", th}, {"mass", est.last().real()}, {"verdict", to_string(est.verdict_kind())}});
    }
    try {
      j["pure_point_fraction"] = pure_point_fraction(atoms, eta.eta(0).real());
    } catch (const FractionExceedsOne& e) {
      j["pure_point_fraction"] = e.fraction();
      j["warning"] = e.what();
    } catch (const InvalidArgument& e) {
      j["warning"] = e.what();
    }
  }
  r.emit_json("diffract.json", j);

  CsvWriter eta_csv({"k", "re", "im"});
  const auto K64 = static_cast<std::int64_t>(K);
  for (std::int64_t k = -K64; k <= K64; ++k) eta_csv.cell(k).cell(eta.eta(k).real()).cell(eta.eta(k).imag()).end();
  r.emit_csv("autocorrelation.csv", eta_csv.str());
  CsvWriter csv({"theta", "density"});
  for (std::size_t i = 0; i < d.values.size(); ++i) csv.cell(d.thetas[i]).cell(d.values[i]).end();
  r.emit_csv("diffraction.csv", csv.str());
}

// ---------------------------------------------------------------------------

/// Exclusive lock on the output directory, released on scope exit.
class DirectoryLock {
 public:
  explicit DirectoryLock(const fs::path& dir) : path_(dir / ".apspectra.lock") {
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0) {
      if (errno == EEXIST) throw std::runtime_error("output directory is locked by another run: " + path_.string());
      throw std::runtime_error("cannot create lock file " + path_.string());
    }
  }
  ~DirectoryLock() {
    ::close(fd_);
    std::error_code ec;
    fs::remove(path_, ec);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  fs::path path_;
  int fd_ = -1;
};

void write_outputs(const fs::path& dir, const std::vector<Output>& outputs) {
  std::vector<std::pair<fs::path, fs::path>> staged;
  for (const auto& o : outputs) {
    const fs::path final_path = dir / o.name;
    const fs::path tmp = dir / (o.name + ".tmp");
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << o.content;
    f.close();
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    staged.emplace_back(tmp, final_path);
  }
  for (const auto& [tmp, final_path] : staged) fs::rename(tmp, final_path);
}

unsigned parse_threads(const std::string& text, const std::string& field) {
  unsigned n = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), n);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size() || n == 0 || n > 1024)
    throw ConfigError(field, "must be an integer in [1, 1024]");
  return n;
}

int execute(const std::string& command, const std::string& config_path, std::string out_dir,
            std::optional<std::string> threads, std::optional<std::uint64_t> seed_override) {
  if (threads) {
    set_thread_count(parse_threads(*threads, "threads"));
  } else if (const char* env = std::getenv("APSPECTRA_THREADS")) {
    set_thread_count(parse_threads(env, "APSPECTRA_THREADS"));
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot read '" + config_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json given;
  try {
    given = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
  if (!given.is_object()) throw ConfigError("config", "must be a JSON object");

  const Section root(given, "");
  root.allow({"point", "observable", "schedule", "seed", "out", "generate", "scan", "classify", "spectrum", "parseval",
              "eigen", "diffract"});
  if (!root.has("point")) throw ConfigError("point", "is required");
  if (out_dir.empty()) out_dir = root.text("out", "");
  if (out_dir.empty()) throw ConfigError("out", "no output directory (use --out or the 'out' key)");
  if (!seed_override && root.has("seed")) seed_override = root.unsigned_integer("seed", 0);

  PointSpec point = parse_point_spec(given.at("point"), seed_override);
  ObservableSpec observable = parse_observable(root.sub("observable"), point.point.alphabet());
  Run r{command, given, "", std::move(point), std::move(observable), root, seed_override, {}};
  r.config["point"] = r.point.expanded;
  r.config["observable"] = r.observable.expanded;
  if (seed_override) r.config["seed"] = *seed_override;
  r.config.erase("out");
  r.hash = fnv1a(r.config.dump());

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const DirectoryLock lock(dir);

  if (command == "generate") cmd_generate(r);
  if (command == "scan") cmd_scan(r);
  if (command == "classify") cmd_classify(r);
  if (command == "spectrum") cmd_spectrum(r);
  if (command == "parseval") cmd_parseval(r);
  if (command == "eigen") cmd_eigen(r);
  if (command == "diffract") cmd_diffract(r);
  write_outputs(dir, r.outputs);
  for (const auto& o : r.outputs) std::cout << (dir / o.name).string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Almost periodicity and spectral diagnostics for symbolic points"};
  std::string command, config, out;
  std::optional<std::string> threads;
  std::optional<std::uint64_t> seed_override;
  app.add_option("command", command, "generate | scan | classify | spectrum | parseval | eigen | diffract")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--config", config, "JSON experiment config")->required();
  app.add_option("--out", out, "output directory (overrides the config's 'out')");
  app.add_option("--threads", threads, "worker threads (fallback: APSPECTRA_THREADS)");
  app.add_option("--seed-override", seed_override, "replaces every seed in the config");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    return execute(command, config, out, threads, seed_override);
  } catch (const ConfigError& e) {
    std::cerr << "error: invalid config field '" << e.field() << "': " << reason(e) << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: invalid config field '" << e.field() << "': " << reason(e) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
