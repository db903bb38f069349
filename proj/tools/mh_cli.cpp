// Command-line front end: evaluation sweeps, classification queries and
// verification runs, emitted as CSV or JSON for scripts and plots.
//
// Identical configs (including seeds) produce byte-identical artifacts; every
// numeric row carries its error estimate, and the fully resolved config is
// recorded in the output header.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mh/mh.hpp"

namespace {

using nlohmann::ordered_json;

struct OutputSink {
  std::string path;  // empty = stdout
  std::string format = "csv";

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path '" + path + "'");
    out << text;
    if (!out) throw std::invalid_argument("write failed for '" + path + "'");
  }
};

using Config = std::vector<std::pair<std::string, std::string>>;

std::string csv_document(const Config& config, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (const auto& [k, v] : config) os << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < header.size(); ++i) {
    os << header[i] << (i + 1 < header.size() ? "," : "");
  }
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << row[i] << (i + 1 < row.size() ? "," : "");
    }
    os << "\n";
  }
  return os.str();
}

ordered_json config_json(const Config& config) {
  ordered_json j;
  for (const auto& [k, v] : config) j[k] = v;
  return j;
}

std::string json_document(ordered_json j) { return j.dump(2) + "\n"; }

std::string fmt(double v) { return mh::format_double(v); }

// "re,im[;re,im...]" -> spectral parameter
mh::SpectralParam parse_lambda(const std::string& text) {
  mh::SpectralParam lam;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto semi = text.find(';', pos);
    const std::string part =
        (semi == std::string::npos) ? text.substr(pos) : text.substr(pos, semi - pos);
    lam.components.push_back(mh::parse_complex(part));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  if (lam.components.empty()) throw std::invalid_argument("empty lambda");
  return lam;
}

// "rank1:<n>[:<group>]" or "slflat:<n>"
mh::MotionModel parse_model(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const auto colon = text.find(':', pos);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(pos));
      break;
    }
    parts.push_back(text.substr(pos, colon - pos));
    pos = colon + 1;
  }
  if (parts.size() < 2) throw std::invalid_argument("model must be rank1:<n>[:<group>] or slflat:<n>");
  const int n = std::stoi(parts[1]);
  if (parts[0] == "rank1") {
    const std::string group = (parts.size() > 2) ? parts[2] : ("SO(" + parts[1] + ")");
    return mh::rank_one_model(n, mh::samplable_spec(group, n));
  }
  if (parts[0] == "slflat") return mh::sl_flat_model(n);
  throw std::invalid_argument("unknown model kind '" + parts[0] + "'");
}

struct CommonOpts {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
  long samples = 100000;
  int nodes = 0;
  double tol = 1e-9;
  bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  cmd->add_option("--nodes", o.nodes, "quadrature nodes (0 = automatic)");
  cmd->add_option("--tol", o.tol, "tolerance knob for verification commands");
  cmd->add_flag("--strict", o.strict, "exit 1 on Inconclusive or failed checks");
}

int run_eval_phi(int n, const std::string& s_text, const std::string& r_text,
                 const CommonOpts& opts) {
  const std::complex<double> s = mh::parse_complex(s_text);
  std::vector<double> rs;
  if (r_text.find(':') == std::string::npos) {
    rs.push_back(std::stod(r_text));
  } else {
    rs = mh::parse_grid(r_text).points();
  }

  Config config{{"command", "eval-phi"},
                {"n", std::to_string(n)},
                {"s", fmt(s.real()) + "," + fmt(s.imag())},
                {"r", r_text},
                {"nodes", std::to_string(opts.nodes)},
                {"format", opts.format}};

  std::vector<std::vector<std::string>> rows;
  ordered_json jrows = ordered_json::array();
  for (double r : rs) {
    mh::LogComplex value;
    std::string branch;
    double err = 0.0;
    if (opts.nodes > 0) {
      mh::RadialStatus st;
      value = mh::phi_radial(n, s, r, opts.nodes, &st);
      branch = st.under_resolved ? "quadrature-underresolved" : "quadrature-fixed";
      err = st.under_resolved ? 1.0 : 0.0;
    } else {
      const mh::PhiResult res = mh::phi_eval(n, s, r);
      value = res.value;
      branch = mh::to_string(res.branch);
      err = res.err_est;
    }
    rows.push_back({std::to_string(n), fmt(s.real()), fmt(s.imag()), fmt(r),
                    fmt(value.log_magnitude()), fmt(value.phase()), branch, fmt(err)});
    ordered_json jr;
    jr["n"] = n;
    jr["re_s"] = s.real();
    jr["im_s"] = s.imag();
    jr["r"] = r;
    jr["log_mag"] = value.log_magnitude();
    jr["phase"] = value.phase();
    jr["branch"] = branch;
    jr["err_est"] = err;
    jrows.push_back(jr);
  }

  OutputSink sink{opts.out, opts.format};
  if (opts.format == "csv") {
    sink.write(csv_document(config, {"n", "re_s", "im_s", "r", "log_mag", "phase", "branch", "err_est"},
                            rows));
  } else {
    ordered_json doc;
    doc["config"] = config_json(config);
    doc["rows"] = jrows;
    sink.write(json_document(doc));
  }
  return 0;
}

int run_asym_compare(int n, const std::string& s_text, const std::string& sr_text,
                     const CommonOpts& opts) {
  const std::complex<double> s = mh::parse_complex(s_text);
  if (!(s.real() > 0.0)) throw std::invalid_argument("asym-compare needs Re s > 0");
  const std::vector<double> srs = mh::parse_grid(sr_text).points();

  Config config{{"command", "asym-compare"},
                {"n", std::to_string(n)},
                {"s", fmt(s.real()) + "," + fmt(s.imag())},
                {"sr", sr_text},
                {"format", opts.format}};

  std::vector<std::vector<std::string>> rows;
  ordered_json jrows = ordered_json::array();
  for (double sr : srs) {
    const double r = sr / std::abs(s);
    mh::RadialStatus st;
    const mh::LogComplex quad = mh::phi_radial(n, s, r, 0, &st);
    const mh::LogComplex asym = mh::phi_asymptotic(n, s, r);
    const double dev = std::abs(mh::LogComplex::ratio(quad, asym) - std::complex<double>(1.0, 0.0));
    rows.push_back({std::to_string(n), fmt(s.real()), fmt(s.imag()), fmt(sr),
                    fmt(quad.log_magnitude()), fmt(quad.phase()), fmt(asym.log_magnitude()),
                    fmt(asym.phase()), fmt(dev), fmt(st.agreement)});
    ordered_json jr;
    jr["n"] = n;
    jr["re_s"] = s.real();
    jr["im_s"] = s.imag();
    jr["sr"] = sr;
    jr["quad_log_mag"] = quad.log_magnitude();
    jr["quad_phase"] = quad.phase();
    jr["asym_log_mag"] = asym.log_magnitude();
    jr["asym_phase"] = asym.phase();
    jr["abs_ratio_minus_1"] = dev;
    jr["err_est"] = st.agreement;
    jrows.push_back(jr);
  }

  OutputSink sink{opts.out, opts.format};
  if (opts.format == "csv") {
    sink.write(csv_document(config,
                            {"n", "re_s", "im_s", "sr", "quad_log_mag", "quad_phase",
                             "asym_log_mag", "asym_phase", "abs_ratio_minus_1", "err_est"},
                            rows));
  } else {
    ordered_json doc;
    doc["config"] = config_json(config);
    doc["rows"] = jrows;
    sink.write(json_document(doc));
  }
  return 0;
}

int run_sweep_bounded(const std::string& model_text, const std::string& lambda_text,
                      const std::string& grid_text, double threshold, const CommonOpts& opts) {
  const mh::MotionModel model = parse_model(model_text);
  const mh::SpectralParam lambda = parse_lambda(lambda_text);
  const std::vector<double> grid =
      grid_text.empty() ? mh::default_boundedness_grid() : mh::parse_grid(grid_text).points();

  const mh::BoundednessReport report =
      mh::boundedness_classify(model, lambda, grid, threshold, opts.samples, opts.seed);

  Config config{{"command", "sweep-bounded"},
                {"model", model.name},
                {"lambda", lambda_text},
                {"grid", grid_text.empty() ? "1:1024:11:geom" : grid_text},
                {"threshold", fmt(threshold)},
                {"samples", std::to_string(opts.samples)},
                {"seed", std::to_string(opts.seed)},
                {"format", opts.format},
                {"verdict", mh::to_string(report.verdict)}};

  std::vector<std::vector<std::string>> rows;
  ordered_json jrows = ordered_json::array();
  for (const auto& ev : report.evaluations) {
    const bool is_witness = report.witness && report.witness->direction == ev.direction &&
                            report.witness->t == ev.t;
    rows.push_back({std::to_string(ev.direction), fmt(ev.t), fmt(ev.abs_value),
                    fmt(ev.std_error), is_witness ? "1" : "0"});
    ordered_json jr;
    jr["direction"] = ev.direction;
    jr["t"] = ev.t;
    jr["abs_value"] = ev.abs_value;
    jr["std_error"] = ev.std_error;
    jr["witness"] = is_witness;
    jrows.push_back(jr);
  }

  OutputSink sink{opts.out, opts.format};
  if (opts.format == "csv") {
    sink.write(csv_document(config, {"direction", "t", "abs_value", "std_error", "witness"}, rows));
  } else {
    ordered_json doc;
    doc["config"] = config_json(config);
    doc["verdict"] = mh::to_string(report.verdict);
    doc["rows"] = jrows;
    sink.write(json_document(doc));
  }
  return (opts.strict && report.verdict == mh::Verdict::Inconclusive) ? 1 : 0;
}

int run_bochner(const std::string& model_text, const std::string& lambda_text, int trials, int m,
                const CommonOpts& opts) {
  const mh::MotionModel model = parse_model(model_text);
  const mh::SpectralParam lambda = parse_lambda(lambda_text);

  mh::EvalSettings settings;
  settings.mc_samples = opts.samples;
  const mh::BochnerResult result = mh::bochner_test(model, lambda, trials, m, opts.seed, settings);

  Config config{{"command", "bochner"},       {"model", model.name},
                {"lambda", lambda_text},      {"trials", std::to_string(trials)},
                {"m", std::to_string(m)},     {"samples", std::to_string(opts.samples)},
                {"seed", std::to_string(opts.seed)}, {"format", opts.format},
                {"verdict", mh::to_string(result.verdict)}};

  OutputSink sink{opts.out, opts.format};
  if (opts.format == "csv") {
    std::vector<std::vector<std::string>> rows{{mh::to_string(result.verdict),
                                                fmt(result.worst.min_eigenvalue),
                                                fmt(result.worst.max_eigenvalue),
                                                fmt(result.worst.tolerance_used), result.reason}};
    sink.write(csv_document(config,
                            {"verdict", "min_eigenvalue", "max_eigenvalue", "tolerance_used",
                             "reason"},
                            rows));
  } else {
    ordered_json doc;
    doc["config"] = config_json(config);
    doc["verdict"] = mh::to_string(result.verdict);
    doc["reason"] = result.reason;
    doc["worst_gram"] = result.worst.to_json();
    sink.write(json_document(doc));
  }
  return (opts.strict && result.verdict == mh::PdVerdict::Inconclusive) ? 1 : 0;
}

int run_eigen_check(int n, const std::string& lambda_text, int count, const CommonOpts& opts) {
  const std::complex<double> lambda = mh::parse_complex(lambda_text);
  if (lambda == std::complex<double>(0.0, 0.0)) {
    throw std::invalid_argument("eigen-check needs lambda != 0");
  }

  Config config{{"command", "eigen-check"}, {"n", std::to_string(n)},
                {"lambda", lambda_text},    {"count", std::to_string(count)},
                {"seed", std::to_string(opts.seed)}, {"format", opts.format}};

  const std::vector<double> steps{1e-2, 5e-3, 2.5e-3, 1e-3};
  std::vector<std::vector<std::string>> rows;
  ordered_json jrows = ordered_json::array();
  bool all_ok = true;

  for (int trip = 0; trip < count; ++trip) {
    const std::uint64_t sub = mh::split_seed(opts.seed, static_cast<std::uint64_t>(trip));
    mh::EigenFunctionHandle handle{lambda, mh::make_random_density(n, sub)};
    mh::Rng rng(mh::split_seed(sub, 1));
    Eigen::VectorXd x(n);
    for (int d = 0; d < n; ++d) x(d) = 1.2 * rng.gaussian();

    const std::complex<double> f = mh::synthesize(handle, x);
    std::vector<double> residuals;
    for (double h : steps) {
      const double res = mh::laplacian_residual(handle, x, h);
      residuals.push_back(res);
      const double rel = res / std::max(1e-300, std::abs(lambda * lambda * f));
      rows.push_back({std::to_string(trip), fmt(h), fmt(res), fmt(std::abs(f)), fmt(rel)});
      ordered_json jr;
      jr["triple"] = trip;
      jr["h"] = h;
      jr["residual"] = res;
      jr["abs_f"] = std::abs(f);
      jr["rel_residual"] = rel;
      jrows.push_back(jr);
      if (h == 1e-3 && std::abs(f) >= 0.1 && rel > 1e-4) all_ok = false;
    }
    const double slope = std::log(residuals[0] / residuals[2]) / std::log(steps[0] / steps[2]);
    rows.push_back({std::to_string(trip), "slope", fmt(slope), fmt(std::abs(f)), "0"});
    ordered_json js;
    js["triple"] = trip;
    js["slope"] = slope;
    jrows.push_back(js);
    if (std::abs(slope - 2.0) > 0.2) all_ok = false;
  }

  config.emplace_back("pass", all_ok ? "1" : "0");

  OutputSink sink{opts.out, opts.format};
  if (opts.format == "csv") {
    sink.write(csv_document(config, {"triple", "h", "residual", "abs_f", "rel_residual"}, rows));
  } else {
    ordered_json doc;
    doc["config"] = config_json(config);
    doc["pass"] = all_ok;
    doc["rows"] = jrows;
    sink.write(json_document(doc));
  }
  return (opts.strict && !all_ok) ? 1 : 0;
}

int run_classify(int n, const CommonOpts& opts) {
  const auto entries = mh::transitive_groups(n);
  Config config{{"command", "classify-groups"}, {"n", std::to_string(n)}, {"format", opts.format}};

  OutputSink sink{opts.out, opts.format};
  if (opts.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : entries) {
      std::string exts;
      for (std::size_t i = 0; i < e.extensions.size(); ++i) {
        exts += e.extensions[i];
        if (i + 1 < e.extensions.size()) exts += "|";
      }
      rows.push_back({e.case_id, e.n_predicate, e.k0, exts, e.sampler_available ? "1" : "0"});
    }
    sink.write(csv_document(config, {"case", "n_predicate", "K0", "extensions", "sampler"}, rows));
  } else {
    ordered_json doc;
    doc["config"] = config_json(config);
    doc["entries"] = mh::classification_to_json(entries);
    sink.write(json_document(doc));
  }
  return 0;
}

int run_psi_mc(const std::string& model_text, const std::string& lambda_text,
               const std::string& y_text, std::uint64_t y_seed, const CommonOpts& opts) {
  const mh::MotionModel model = parse_model(model_text);
  const mh::SpectralParam lambda = parse_lambda(lambda_text);

  mh::PVector y(model.dim_p);
  if (!y_text.empty()) {
    std::size_t pos = 0;
    int idx = 0;
    while (pos <= y_text.size() && idx < model.dim_p) {
      const auto comma = y_text.find(',', pos);
      const std::string part =
          (comma == std::string::npos) ? y_text.substr(pos) : y_text.substr(pos, comma - pos);
      y(idx++) = std::stod(part);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (idx != model.dim_p) {
      throw std::invalid_argument("--y needs " + std::to_string(model.dim_p) + " coordinates");
    }
  } else {
    mh::Rng rng(y_seed);
    for (int d = 0; d < model.dim_p; ++d) y(d) = rng.gaussian();
  }

  const mh::MCEstimate est = mh::psi_monte_carlo(model, lambda, y, opts.samples, opts.seed);

  Config config{{"command", "psi-mc"},
                {"model", model.name},
                {"lambda", lambda_text},
                {"y", y_text.empty() ? ("seeded:" + std::to_string(y_seed)) : y_text},
                {"samples", std::to_string(opts.samples)},
                {"seed", std::to_string(opts.seed)},
                {"format", opts.format}};

  OutputSink sink{opts.out, opts.format};
  if (opts.format == "csv") {
    std::vector<std::vector<std::string>> rows{{fmt(est.value.real()), fmt(est.value.imag()),
                                                fmt(est.std_error), std::to_string(est.samples)}};
    sink.write(csv_document(config, {"re", "im", "std_error", "samples"}, rows));
  } else {
    ordered_json doc;
    doc["config"] = config_json(config);
    doc["re"] = est.value.real();
    doc["im"] = est.value.imag();
    doc["std_error"] = est.std_error;
    doc["samples"] = est.samples;
    sink.write(json_document(doc));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical functions on Euclidean motion groups"};
  app.require_subcommand(1);

  CommonOpts opts;

  // eval-phi
  auto* eval_phi = app.add_subcommand("eval-phi", "evaluate phi(r, s)");
  int ep_n = 3;
  std::string ep_s = "1,0", ep_r = "1";
  eval_phi->add_option("--n", ep_n, "ambient dimension")->check(CLI::Range(2, 1000));
  eval_phi->add_option("--s", ep_s, "complex s as re,im");
  eval_phi->add_option("--r", ep_r, "radius or grid start:stop:count:{lin|geom}");
  add_common(eval_phi, opts);

  // asym-compare
  auto* asym = app.add_subcommand("asym-compare", "quadrature vs asymptotic ratio sweep");
  int ac_n = 3;
  std::string ac_s = "1,0", ac_sr = "200:2000:4:geom";
  asym->add_option("--n", ac_n)->check(CLI::Range(2, 1000));
  asym->add_option("--s", ac_s, "complex s as re,im (Re s > 0)");
  asym->add_option("--sr", ac_sr, "|s| r grid");
  add_common(asym, opts);

  // sweep-bounded
  auto* sweep = app.add_subcommand("sweep-bounded", "boundedness classifier along slice rays");
  std::string sb_model = "rank1:2", sb_lambda = "1,0", sb_grid;
  double sb_threshold = 1.05;
  sweep->add_option("--model", sb_model, "rank1:<n>[:<group>] or slflat:<n>");
  sweep->add_option("--lambda", sb_lambda, "components re,im separated by ';'");
  sweep->add_option("--grid", sb_grid, "t grid (default 1:1024:11:geom)");
  sweep->add_option("--threshold", sb_threshold)->check(CLI::Range(1.0, 1e9));
  add_common(sweep, opts);

  // bochner
  auto* bochner = app.add_subcommand("bochner", "positive-definiteness test");
  std::string bo_model = "rank1:2", bo_lambda = "1,0";
  int bo_trials = 8, bo_m = 8;
  bochner->add_option("--model", bo_model);
  bochner->add_option("--lambda", bo_lambda);
  bochner->add_option("--trials", bo_trials)->check(CLI::PositiveNumber);
  bochner->add_option("--m", bo_m)->check(CLI::Range(2, 64));
  add_common(bochner, opts);

  // eigen-check
  auto* eigen = app.add_subcommand("eigen-check", "Laplacian eigen-equation residuals");
  int ec_n = 2, ec_count = 10;
  std::string ec_lambda = "1,0";
  eigen->add_option("--n", ec_n)->check(CLI::IsMember({2, 3}));
  eigen->add_option("--lambda", ec_lambda, "complex eigenvalue parameter re,im");
  eigen->add_option("--count", ec_count, "number of seeded (F, x) pairs")->check(CLI::PositiveNumber);
  add_common(eigen, opts);

  // classify-groups
  auto* classify = app.add_subcommand("classify-groups", "sphere-transitive subgroups of O(n)");
  int cg_n = 2;
  classify->add_option("--n", cg_n)->check(CLI::Range(2, 1000000));
  add_common(classify, opts);

  // psi-mc
  auto* psi = app.add_subcommand("psi-mc", "Monte Carlo spherical function value");
  std::string pm_model = "rank1:3", pm_lambda = "1,0", pm_y;
  std::uint64_t pm_yseed = 1;
  psi->add_option("--model", pm_model);
  psi->add_option("--lambda", pm_lambda);
  psi->add_option("--y", pm_y, "explicit coordinates v1,v2,...");
  psi->add_option("--y-seed", pm_yseed, "seed for a random Y when --y is omitted");
  add_common(psi, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (eval_phi->parsed()) return run_eval_phi(ep_n, ep_s, ep_r, opts);
    if (asym->parsed()) return run_asym_compare(ac_n, ac_s, ac_sr, opts);
    if (sweep->parsed()) return run_sweep_bounded(sb_model, sb_lambda, sb_grid, sb_threshold, opts);
    if (bochner->parsed()) return run_bochner(bo_model, bo_lambda, bo_trials, bo_m, opts);
    if (eigen->parsed()) return run_eigen_check(ec_n, ec_lambda, ec_count, opts);
    if (classify->parsed()) return run_classify(cg_n, opts);
    if (psi->parsed()) return run_psi_mc(pm_model, pm_lambda, pm_y, pm_yseed, opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
