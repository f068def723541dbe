#include "nenkf/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "nenkf/augmented_enkf.hpp"
#include "nenkf/enkf.hpp"
#include "nenkf/errors.hpp"
#include "nenkf/kalman.hpp"
#include "nenkf/mcmc.hpp"
#include "nenkf/models/lorenz96.hpp"
#include "nenkf/models/lotka_volterra.hpp"
#include "nenkf/models/ou.hpp"
#include "nenkf/models/simulate.hpp"
#include "nenkf/models/sir_two_node.hpp"
#include "nenkf/nested_filters.hpp"
#include "nenkf/particle_filter.hpp"
#include "nenkf/penkf.hpp"
#include "nenkf/rb_particle_filter.hpp"

namespace nenkf {

namespace {

using json = nlohmann::ordered_json;

constexpr double kNormalQ975 = 1.9599639845400545;
const char* kVersion = "0.1.0";

// --------------------------------------------------------------------------
// CSV plumbing
// --------------------------------------------------------------------------

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw PreconditionError("cannot open for writing: " + path);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    throw PreconditionError("missing CSV column: " + name);
  }
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open: " + path);
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.push_back("");
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

std::string fmt_int(long v) { return std::to_string(v); }

// --------------------------------------------------------------------------
// Timing
// --------------------------------------------------------------------------

struct Stopwatch {
  std::chrono::steady_clock::time_point wall_start =
      std::chrono::steady_clock::now();
  std::clock_t cpu_start = std::clock();

  double wall_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         wall_start)
        .count();
  }
  double cpu_seconds() const {
    return static_cast<double>(std::clock() - cpu_start) / CLOCKS_PER_SEC;
  }
};

json conventions_json() {
  json c;
  c["parameter_scale"] =
      "proposals, Liu-West moves and reported summaries act on log(theta); "
      "prior densities include the change-of-variables Jacobian";
  c["sigma2_estimate"] =
      "sample variance of the log-likelihood estimates, evaluated at the "
      "weighted posterior mean of log(theta)";
  c["surrogate"] =
      "k-NN store built from the unique resampled particles, frozen for the "
      "whole sweep; standardised Euclidean distance on log(theta)";
  c["rb_weighting"] =
      "likelihood increments and the weight's g use the uninflated R; the "
      "inflation factor applies to the EnKF proposal/update only";
  return c;
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["model"] = cfg.model_id;
  j["lorenz_dim"] = cfg.lorenz_dim;
  j["algorithm"] = cfg.algorithm;
  j["theta"] = cfg.theta;
  j["m_particles"] = cfg.m_particles;
  j["n_members"] = cfg.n_members;
  j["ess_fraction"] = cfg.ess_fraction;
  j["delta"] = cfg.delta;
  j["zeta"] = cfg.zeta;
  j["leave_one_out"] = cfg.leave_one_out;
  j["move_iterations"] = cfg.move_iterations;
  j["delayed_acceptance"] = cfg.delayed_acceptance;
  j["knn_k"] = cfg.knn_k;
  j["adapt_n"] = cfg.adapt_n;
  j["sigma2_threshold"] = cfg.sigma2_threshold;
  j["var_runs"] = cfg.var_runs;
  j["n_max"] = cfg.n_max;
  j["adapt_by_accept_rate"] = cfg.adapt_by_accept_rate;
  j["accept_rate_threshold"] = cfg.accept_rate_threshold;
  j["inflation"] = cfg.inflation;
  j["iterations"] = cfg.iterations;
  j["burn_frac"] = cfg.burn_frac;
  j["n_obs"] = cfg.n_obs;
  j["replicates"] = cfg.replicates;
  j["threads"] = cfg.threads;
  j["seed"] = cfg.seed;
  return j;
}

void write_meta(const std::string& path, const ExperimentConfig& cfg,
                const Stopwatch& watch, json extra) {
  json j;
  j["version"] = kVersion;
  j["config"] = config_json(cfg);
  j["conventions"] = conventions_json();
  j["timing"]["wall_s"] = watch.wall_seconds();
  j["timing"]["cpu_s"] = watch.cpu_seconds();
  for (auto& [k, v] : extra.items()) j[k] = v;
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

OuterConfig outer_config(const ExperimentConfig& cfg) {
  OuterConfig oc;
  oc.m_particles = cfg.m_particles;
  oc.n_members = cfg.n_members;
  oc.ess_fraction = cfg.ess_fraction;
  oc.proposal.zeta = cfg.zeta;
  oc.proposal.leave_one_out = cfg.leave_one_out;
  oc.proposal.iterations = cfg.move_iterations;
  oc.delayed_acceptance = cfg.delayed_acceptance;
  oc.knn_k = cfg.knn_k;
  oc.adapt.enabled = cfg.adapt_n;
  oc.adapt.sigma2_threshold = cfg.sigma2_threshold;
  oc.adapt.var_runs = cfg.var_runs;
  oc.adapt.n_max = cfg.n_max;
  oc.adapt.use_accept_rate = cfg.adapt_by_accept_rate;
  oc.adapt.accept_rate_threshold = cfg.accept_rate_threshold;
  oc.threads = cfg.threads;
  oc.seed = cfg.seed;
  return oc;
}

Eigen::VectorXd config_theta(const ExperimentConfig& cfg) {
  if (cfg.theta.empty()) return default_true_theta(cfg.model_id);
  return Eigen::Map<const Eigen::VectorXd>(cfg.theta.data(),
                                           cfg.theta.size());
}

// --------------------------------------------------------------------------
// Per-step output writers
// --------------------------------------------------------------------------

std::vector<std::string> param_summary_header(int d) {
  std::vector<std::string> h{"t", "ess"};
  for (int i = 1; i <= d; ++i) {
    h.push_back("mean_log_theta_" + std::to_string(i));
    h.push_back("q025_log_theta_" + std::to_string(i));
    h.push_back("q975_log_theta_" + std::to_string(i));
  }
  return h;
}

void param_summary_row(CsvWriter& w, int t, double ess,
                       const Eigen::MatrixXd& phi,
                       const Eigen::VectorXd& weights) {
  std::vector<std::string> cells{fmt_int(t), format_double(ess)};
  for (Eigen::Index i = 0; i < phi.rows(); ++i) {
    const Eigen::VectorXd row = phi.row(i).transpose();
    cells.push_back(format_double(row.dot(weights)));
    cells.push_back(format_double(weighted_quantile(row, weights, 0.025)));
    cells.push_back(format_double(weighted_quantile(row, weights, 0.975)));
  }
  w.row(cells);
}

const std::vector<std::string> kRunRecordHeader{
    "t",      "ess",          "resampled",    "moved",    "accept_rate",
    "stage1_evals", "stage2_evals", "n_members", "sigma2_n"};

void runrecord_row(CsvWriter& w, const RunRecord& r) {
  w.row({fmt_int(r.t), format_double(r.ess), r.resampled ? "1" : "0",
         r.moved ? "1" : "0",
         r.moved ? format_double(r.accept_rate) : std::string(),
         fmt_int(r.stage1_evals), fmt_int(r.stage2_evals),
         fmt_int(r.n_members),
         r.sigma2 ? format_double(*r.sigma2) : std::string()});
}

void write_param_cloud(const std::string& path, const Eigen::MatrixXd& phi,
                       const Eigen::VectorXd& weights,
                       const Eigen::VectorXd& cum_loglik) {
  CsvWriter w(path);
  std::vector<std::string> header;
  for (Eigen::Index i = 1; i <= phi.rows(); ++i)
    header.push_back("log_theta_" + std::to_string(i));
  header.push_back("weight");
  header.push_back("cum_loglik");
  w.row(header);
  for (Eigen::Index j = 0; j < phi.cols(); ++j) {
    std::vector<std::string> cells;
    for (Eigen::Index i = 0; i < phi.rows(); ++i)
      cells.push_back(format_double(phi(i, j)));
    cells.push_back(format_double(weights(j)));
    cells.push_back(format_double(cum_loglik.size() > 0 ? cum_loglik(j) : 0.0));
    w.row(cells);
  }
}

// Runs the configured parameter-filtering algorithm with a per-step summary
// callback; returns (final phi cloud, weights, cum logliks, records,
// terminal N, warnings).
struct ParamRunOutput {
  Eigen::MatrixXd phi;
  Eigen::VectorXd weights;
  Eigen::VectorXd cum_loglik;
  std::vector<RunRecord> records;
  int n_terminal = 0;
  std::vector<std::string> warnings;
};

template <class Filter>
ParamRunOutput collect_param_filter(Filter& filter, CsvWriter* summary) {
  ParamRunOutput out;
  filter.run([&](int t, const typename Filter::System& sys,
                 const RunRecord& rec) {
    if (summary)
      param_summary_row(*summary, t, rec.ess, sys.phi,
                        sys.normalized_weights());
  });
  out.phi = filter.system().phi;
  out.weights = filter.system().normalized_weights();
  out.cum_loglik = filter.system().cum_loglik;
  out.records = filter.records();
  out.n_terminal = filter.system().n_members;
  out.warnings = filter.warnings();
  return out;
}

ParamRunOutput run_param_algorithm(const ExperimentConfig& cfg,
                                   const Model& model,
                                   const Eigen::MatrixXd& y,
                                   CsvWriter* summary) {
  if (cfg.algorithm == "nenkf") {
    auto f = make_nenkf(model, y, outer_config(cfg));
    return collect_param_filter(f, summary);
  }
  if (cfg.algorithm == "smc2") {
    auto f = make_smc2(model, y, outer_config(cfg));
    return collect_param_filter(f, summary);
  }
  if (cfg.algorithm == "rbsmc2") {
    auto f = make_rbsmc2(model, y, ObsApproxConfig{cfg.inflation},
                         outer_config(cfg));
    return collect_param_filter(f, summary);
  }
  if (cfg.algorithm == "penkf") {
    PenkfConfig pc;
    pc.m_particles = cfg.m_particles;
    pc.n_members = cfg.n_members;
    pc.ess_fraction = cfg.ess_fraction;
    pc.liu_west.delta = cfg.delta;
    pc.threads = cfg.threads;
    pc.seed = cfg.seed;
    ParamRunOutput out;
    PenkfResult res = penkf_run(
        model, y, pc,
        [&](int t, const PenkfSystem& sys, const RunRecord& rec) {
          if (summary)
            param_summary_row(*summary, t, rec.ess, sys.phi,
                              sys.normalized_weights());
        });
    out.phi = res.system.phi;
    out.weights = res.system.normalized_weights();
    out.cum_loglik = res.system.cum_loglik;
    out.records = std::move(res.records);
    out.n_terminal = res.system.n_members;
    return out;
  }
  if (cfg.algorithm == "aenkf") {
    LiuWestConfig lw{cfg.delta};
    RngStream root(cfg.seed);
    ParamRunOutput out;
    AugmentedEnsemble ens = aenkf_init(model, cfg.n_members,
                                       y.row(0).transpose(), root.substream(0));
    const int n = cfg.n_members;
    const Eigen::VectorXd uniform =
        Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    for (int t = 0; t < static_cast<int>(y.rows()); ++t) {
      if (t > 0)
        ens = aenkf_step(model, ens, y.row(t).transpose(), lw,
                         root.substream(t));
      RunRecord rec;
      rec.t = t;
      rec.ess = static_cast<double>(n);
      rec.n_members = n;
      out.records.push_back(rec);
      if (summary)
        param_summary_row(*summary, t, rec.ess, ens.log_params(), uniform);
    }
    out.phi = ens.log_params();
    out.weights = uniform;
    out.cum_loglik = Eigen::VectorXd::Zero(n);
    out.n_terminal = n;
    return out;
  }
  throw PreconditionError("not a parameter-filtering algorithm: " +
                          cfg.algorithm);
}

// --------------------------------------------------------------------------
// Fixed-theta state filtering (pf / enkf / kf-exact)
// --------------------------------------------------------------------------

std::vector<std::string> state_summary_header(int d) {
  std::vector<std::string> h{"t", "log_lik_increment", "cum_loglik"};
  for (int i = 1; i <= d; ++i) {
    h.push_back("mean_x_" + std::to_string(i));
    h.push_back("q025_x_" + std::to_string(i));
    h.push_back("q975_x_" + std::to_string(i));
  }
  return h;
}

void run_state_algorithm(const ExperimentConfig& cfg, const Model& model,
                         const Eigen::MatrixXd& y, const std::string& out_stem,
                         std::vector<RunRecord>& records) {
  const Eigen::VectorXd theta = config_theta(cfg);
  CsvWriter summary(out_stem + "_summary.csv");
  summary.row(state_summary_header(model.state_dim()));

  auto emit = [&](int t, double inc, double cum, const Eigen::MatrixXd& cloud,
                  const Eigen::VectorXd& weights, double ess, int n) {
    std::vector<std::string> cells{fmt_int(t), format_double(inc),
                                   format_double(cum)};
    for (Eigen::Index i = 0; i < cloud.rows(); ++i) {
      const Eigen::VectorXd row = cloud.row(i).transpose();
      cells.push_back(format_double(row.dot(weights)));
      cells.push_back(format_double(weighted_quantile(row, weights, 0.025)));
      cells.push_back(format_double(weighted_quantile(row, weights, 0.975)));
    }
    summary.row(cells);
    RunRecord rec;
    rec.t = t;
    rec.ess = ess;
    rec.n_members = n;
    records.push_back(rec);
  };

  if (cfg.algorithm == "kf-exact") {
    const KalmanResult res = kalman_filter_exact(model, theta, y);
    CsvWriter state(out_stem + "_state.csv");
    std::vector<std::string> h;
    for (int i = 1; i <= model.state_dim(); ++i)
      h.push_back("mean_x_" + std::to_string(i));
    state.row(h);
    double cum = 0.0;
    for (std::size_t t = 0; t < res.increments.size(); ++t) {
      cum += res.increments[t];
      std::vector<std::string> cells{
          fmt_int(static_cast<long>(t)), format_double(res.increments[t]),
          format_double(cum)};
      for (int i = 0; i < model.state_dim(); ++i) {
        const double m = res.filter_means[t](i);
        const double sd = std::sqrt(res.filter_covs[t](i, i));
        cells.push_back(format_double(m));
        cells.push_back(format_double(m - kNormalQ975 * sd));
        cells.push_back(format_double(m + kNormalQ975 * sd));
      }
      summary.row(cells);
      RunRecord rec;
      rec.t = static_cast<int>(t);
      rec.ess = 0.0;
      records.push_back(rec);
    }
    std::vector<std::string> cells;
    for (int i = 0; i < model.state_dim(); ++i)
      cells.push_back(format_double(res.filter_means.back()(i)));
    state.row(cells);
    return;
  }

  RngStream root(cfg.seed);
  if (cfg.algorithm == "pf") {
    double cum = 0.0;
    PfOutput step =
        pf_init(model, theta, cfg.n_members, y.row(0).transpose(),
                root.substream(0));
    cum += step.log_lik_increment;
    emit(0, step.log_lik_increment, cum, step.particles.particles,
         step.particles.weights(),
         effective_sample_size(step.particles.weights()), cfg.n_members);
    for (Eigen::Index t = 1; t < y.rows(); ++t) {
      step = pf_step(model, theta, step.particles, y.row(t).transpose(),
                     static_cast<int>(t), nullptr, root.substream(t));
      cum += step.log_lik_increment;
      emit(static_cast<int>(t), step.log_lik_increment, cum,
           step.particles.particles, step.particles.weights(),
           effective_sample_size(step.particles.weights()), cfg.n_members);
    }
    write_param_cloud(out_stem + "_state.csv", step.particles.particles,
                      step.particles.weights(), Eigen::VectorXd());
    return;
  }

  // enkf
  double cum = 0.0;
  const int n = cfg.n_members;
  const Eigen::VectorXd uniform =
      Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  EnkfStepOutput step =
      enkf_init(model, theta, n, y.row(0).transpose(), root.substream(0));
  cum += step.log_lik_increment;
  emit(0, step.log_lik_increment, cum, step.ensemble, uniform,
       static_cast<double>(n), n);
  for (Eigen::Index t = 1; t < y.rows(); ++t) {
    step = enkf_step(model, theta, step.ensemble, y.row(t).transpose(),
                     root.substream(t));
    cum += step.log_lik_increment;
    emit(static_cast<int>(t), step.log_lik_increment, cum, step.ensemble,
         uniform, static_cast<double>(n), n);
  }
  write_param_cloud(out_stem + "_state.csv", step.ensemble, uniform,
                    Eigen::VectorXd());
}

bool is_param_algorithm(const std::string& a) {
  return a == "nenkf" || a == "smc2" || a == "rbsmc2" || a == "penkf" ||
         a == "aenkf";
}

bool is_state_algorithm(const std::string& a) {
  return a == "pf" || a == "enkf" || a == "kf-exact";
}

bool is_reference_algorithm(const std::string& a) {
  return a == "kf-exact" || a == "pmmh" || a == "emcmc";
}

}  // namespace

// --------------------------------------------------------------------------
// Helpers
// --------------------------------------------------------------------------

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double weighted_quantile(const Eigen::VectorXd& values,
                         const Eigen::VectorXd& weights, double q) {
  if (values.size() != weights.size() || values.size() == 0)
    throw PreconditionError("weighted_quantile: bad inputs");
  if (q < 0.0 || q > 1.0)
    throw PreconditionError("weighted_quantile: q outside [0, 1]");
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return values(a) != values(b) ? values(a) < values(b) : a < b;
  });
  double acc = 0.0;
  for (int idx : order) {
    acc += weights(idx);
    if (acc >= q) return values(idx);
  }
  return values(order.back());
}

Eigen::VectorXd weighted_sd(const Eigen::MatrixXd& cloud,
                            const Eigen::VectorXd& weights) {
  Eigen::VectorXd mean = cloud * weights;
  Eigen::VectorXd sd(cloud.rows());
  for (Eigen::Index i = 0; i < cloud.rows(); ++i) {
    const Eigen::ArrayXd dev = cloud.row(i).transpose().array() - mean(i);
    sd(i) = std::sqrt((dev.square() * weights.array()).sum());
  }
  return sd;
}

// --------------------------------------------------------------------------
// Dataset IO
// --------------------------------------------------------------------------

void write_dataset(const Dataset& data, const std::string& stem) {
  {
    CsvWriter w(stem + ".csv");
    std::vector<std::string> header{"t"};
    for (Eigen::Index i = 1; i <= data.y.cols(); ++i)
      header.push_back("y_" + std::to_string(i));
    w.row(header);
    for (Eigen::Index r = 0; r < data.y.rows(); ++r) {
      std::vector<std::string> cells{format_double(data.times(r))};
      for (Eigen::Index i = 0; i < data.y.cols(); ++i)
        cells.push_back(format_double(data.y(r, i)));
      w.row(cells);
    }
  }
  if (data.x_true.size() > 0) {
    CsvWriter w(stem + "_latent.csv");
    std::vector<std::string> header{"t"};
    for (Eigen::Index i = 1; i <= data.x_true.cols(); ++i)
      header.push_back("x_" + std::to_string(i));
    w.row(header);
    for (Eigen::Index r = 0; r < data.x_true.rows(); ++r) {
      std::vector<std::string> cells{format_double(data.times(r))};
      for (Eigen::Index i = 0; i < data.x_true.cols(); ++i)
        cells.push_back(format_double(data.x_true(r, i)));
      w.row(cells);
    }
  }
  json j;
  j["model"] = data.meta.model_id;
  j["theta_true"] = std::vector<double>(
      data.meta.theta_true.data(),
      data.meta.theta_true.data() + data.meta.theta_true.size());
  j["x0"] = std::vector<double>(data.meta.x0.data(),
                                data.meta.x0.data() + data.meta.x0.size());
  j["seed"] = data.meta.seed;
  j["spacing"] = data.meta.spacing;
  j["obs_at_t0"] = data.meta.obs_at_t0;
  j["lorenz_dim"] = data.meta.lorenz_dim;
  std::ofstream out(stem + "_meta.json");
  if (!out) throw PreconditionError("cannot write " + stem + "_meta.json");
  out << j.dump(2) << '\n';
}

Dataset load_dataset(const std::string& stem) {
  Dataset data;
  const CsvTable obs = read_csv(stem + ".csv");
  const int rows = static_cast<int>(obs.rows.size());
  const int dy = static_cast<int>(obs.header.size()) - 1;
  if (rows < 1 || dy < 1)
    throw PreconditionError("empty observation file: " + stem + ".csv");
  data.times.resize(rows);
  data.y.resize(rows, dy);
  for (int r = 0; r < rows; ++r) {
    data.times(r) = std::stod(obs.rows[r][0]);
    for (int i = 0; i < dy; ++i) data.y(r, i) = std::stod(obs.rows[r][i + 1]);
  }

  std::ifstream latent(stem + "_latent.csv");
  if (latent.good()) {
    latent.close();
    const CsvTable lat = read_csv(stem + "_latent.csv");
    const int dx = static_cast<int>(lat.header.size()) - 1;
    data.x_true.resize(lat.rows.size(), dx);
    for (std::size_t r = 0; r < lat.rows.size(); ++r)
      for (int i = 0; i < dx; ++i)
        data.x_true(r, i) = std::stod(lat.rows[r][i + 1]);
  }

  std::ifstream meta(stem + "_meta.json");
  if (meta.good()) {
    json j = json::parse(meta);
    data.meta.model_id = j.value("model", "");
    if (j.contains("theta_true")) {
      const auto v = j["theta_true"].get<std::vector<double>>();
      data.meta.theta_true =
          Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
    }
    if (j.contains("x0")) {
      const auto v = j["x0"].get<std::vector<double>>();
      data.meta.x0 = Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
    }
    data.meta.seed = j.value("seed", 0ull);
    data.meta.spacing = j.value("spacing", 1.0);
    data.meta.obs_at_t0 = j.value("obs_at_t0", true);
    data.meta.lorenz_dim = j.value("lorenz_dim", 5);
  }
  return data;
}

// --------------------------------------------------------------------------
// Model registry
// --------------------------------------------------------------------------

std::unique_ptr<Model> make_model(const std::string& id,
                                  const ModelOptions& opts) {
  if (id == "ou") return std::make_unique<OuModel>();
  if (id == "lv") return std::make_unique<LvModel>();
  if (id == "sir2") return std::make_unique<SirTwoNodeModel>();
  if (id == "lorenz96") return std::make_unique<Lorenz96Model>(opts.lorenz_dim);
  throw PreconditionError("unknown model id: " + id);
}

Eigen::VectorXd default_true_theta(const std::string& id) {
  if (id == "ou") {
    Eigen::VectorXd t(3);
    t << 1.0, 2.0, 1.0;
    return t;
  }
  if (id == "lv") {
    Eigen::VectorXd t(3);
    t << 0.5, 0.0025, 0.3;
    return t;
  }
  if (id == "sir2") {
    // Synthetic stand-in: prior means.
    Eigen::VectorXd t(5);
    t << 1.0, 1.0, 1.0, 0.2, 1.0;
    return t;
  }
  if (id == "lorenz96") {
    Eigen::VectorXd t(4);
    t << 1.0, 1.0, 8.0, std::sqrt(10.0);
    return t;
  }
  throw PreconditionError("unknown model id: " + id);
}

// --------------------------------------------------------------------------
// Validation
// --------------------------------------------------------------------------

void validate_config(const ExperimentConfig& cfg, const std::string& command) {
  make_model(cfg.model_id, {cfg.lorenz_dim});  // throws on bad id
  if (cfg.m_particles < 1)
    throw PreconditionError("m_particles must be >= 1");
  if (cfg.n_members < 1) throw PreconditionError("n_members must be >= 1");
  if (cfg.ess_fraction <= 0.0 || cfg.ess_fraction >= 1.0)
    throw PreconditionError("ess_fraction must lie in (0, 1)");
  if (cfg.delta <= 1.0 / 3.0 || cfg.delta > 1.0)
    throw PreconditionError("delta must lie in (1/3, 1]");
  if (cfg.inflation < 1.0)
    throw PreconditionError("inflation must be >= 1");
  if (cfg.knn_k < 1) throw PreconditionError("knn_k must be >= 1");
  if (cfg.move_iterations < 1)
    throw PreconditionError("move_iterations must be >= 1");
  if (cfg.var_runs < 2) throw PreconditionError("var_runs must be >= 2");
  if (cfg.threads < 0) throw PreconditionError("threads must be >= 0");
  if (!cfg.theta.empty()) {
    const auto model = make_model(cfg.model_id, {cfg.lorenz_dim});
    if (static_cast<int>(cfg.theta.size()) != model->param_dim())
      throw PreconditionError("theta has wrong dimension for model " +
                              cfg.model_id);
    for (double v : cfg.theta)
      if (v <= 0.0) throw PreconditionError("theta must be positive");
  }

  if (command == "filter") {
    if (!is_param_algorithm(cfg.algorithm) &&
        !is_state_algorithm(cfg.algorithm))
      throw PreconditionError("filter: unsupported algorithm " +
                              cfg.algorithm);
    if (cfg.algorithm == "kf-exact" && cfg.model_id != "ou")
      throw PreconditionError("kf-exact requires the ou model");
  } else if (command == "reference") {
    if (!is_reference_algorithm(cfg.algorithm))
      throw PreconditionError("reference: unsupported algorithm " +
                              cfg.algorithm);
    if (cfg.algorithm == "kf-exact" && cfg.model_id != "ou")
      throw PreconditionError("kf-exact requires the ou model");
    if (cfg.iterations < 100)
      throw PreconditionError("reference: iterations too small");
  } else if (command == "benchmark") {
    if (!is_param_algorithm(cfg.algorithm))
      throw PreconditionError("benchmark: unsupported algorithm " +
                              cfg.algorithm);
    if (cfg.replicates < 2)
      throw PreconditionError("benchmark: at least 2 replicates");
  } else if (command == "simulate") {
    if (cfg.n_obs == 0 || cfg.n_obs < -1)
      throw PreconditionError("simulate: invalid n_obs");
  }
}

// --------------------------------------------------------------------------
// Commands
// --------------------------------------------------------------------------

void cmd_simulate(const ExperimentConfig& cfg, const std::string& out_stem) {
  validate_config(cfg, "simulate");
  Stopwatch watch;
  const auto model = make_model(cfg.model_id, {cfg.lorenz_dim});
  const Eigen::VectorXd theta = config_theta(cfg);

  SimulationRecipe recipe;
  if (cfg.model_id == "ou") {
    const auto& ou = static_cast<const OuModel&>(*model);
    recipe = ou_recipe(ou, cfg.n_obs > 0 ? cfg.n_obs - 1 : 50);
  } else if (cfg.model_id == "lv") {
    const auto& lv = static_cast<const LvModel&>(*model);
    recipe = lv_recipe(lv, cfg.n_obs > 0 ? cfg.n_obs : 20);
  } else if (cfg.model_id == "sir2") {
    const auto& sir = static_cast<const SirTwoNodeModel&>(*model);
    recipe = sir_recipe(sir, cfg.n_obs > 0 ? cfg.n_obs : 12);
  } else {
    const auto& lorenz = static_cast<const Lorenz96Model&>(*model);
    recipe = lorenz_recipe(lorenz, cfg.n_obs > 0 ? cfg.n_obs : 30);
  }

  const SimulatedData sim = simulate_dataset(*model, theta, recipe, cfg.seed);
  Dataset data;
  data.times = sim.times;
  data.y = sim.y;
  data.x_true = sim.x_true;
  data.meta.model_id = cfg.model_id;
  data.meta.theta_true = theta;
  data.meta.x0 = recipe.x0;
  data.meta.seed = cfg.seed;
  data.meta.spacing = recipe.spacing;
  data.meta.obs_at_t0 = recipe.obs_at_t0;
  data.meta.lorenz_dim = cfg.lorenz_dim;
  write_dataset(data, out_stem);

  json extra;
  extra["outputs"] = {out_stem + ".csv", out_stem + "_latent.csv"};
  write_meta(out_stem + "_run_meta.json", cfg, watch, extra);
}

void cmd_filter(const ExperimentConfig& cfg, const std::string& data_stem,
                const std::string& out_stem) {
  validate_config(cfg, "filter");
  Stopwatch watch;
  const Dataset data = load_dataset(data_stem);
  const auto model = make_model(cfg.model_id, {cfg.lorenz_dim});
  if (model->obs_dim() != data.y.cols())
    throw PreconditionError("dataset width does not match the model");

  std::vector<RunRecord> records;
  std::vector<std::string> warnings;
  if (is_param_algorithm(cfg.algorithm)) {
    CsvWriter summary(out_stem + "_summary.csv");
    summary.row(param_summary_header(model->param_dim()));
    ParamRunOutput out = run_param_algorithm(cfg, *model, data.y, &summary);
    write_param_cloud(out_stem + "_cloud.csv", out.phi, out.weights,
                      out.cum_loglik);
    records = std::move(out.records);
    warnings = std::move(out.warnings);
  } else {
    run_state_algorithm(cfg, *model, data.y, out_stem, records);
  }

  {
    CsvWriter rr(out_stem + "_runrecord.csv");
    rr.row(kRunRecordHeader);
    for (const RunRecord& r : records) runrecord_row(rr, r);
  }

  json extra;
  extra["data"] = data_stem;
  extra["warnings"] = warnings;
  json wall = json::array();
  for (const RunRecord& r : records) wall.push_back(r.wall_ms);
  extra["step_wall_ms"] = wall;
  write_meta(out_stem + "_meta.json", cfg, watch, extra);
}

void cmd_reference(const ExperimentConfig& cfg, const std::string& data_stem,
                   const std::string& out_stem, bool save_chain) {
  validate_config(cfg, "reference");
  Stopwatch watch;
  const Dataset data = load_dataset(data_stem);
  const auto model = make_model(cfg.model_id, {cfg.lorenz_dim});
  if (model->obs_dim() != data.y.cols())
    throw PreconditionError("dataset width does not match the model");

  const LogDensityFn prior = [&](const Eigen::VectorXd& phi) {
    return model->log_prior_logpdf(phi);
  };
  LoglikEvaluator loglik;
  if (cfg.algorithm == "kf-exact") {
    loglik = [&](const Eigen::VectorXd& phi, RngStream) {
      return kalman_filter_exact(*model, phi.array().exp(), data.y).loglik;
    };
  } else if (cfg.algorithm == "emcmc") {
    loglik = [&](const Eigen::VectorXd& phi, RngStream rng) {
      return enkf_run(*model, phi.array().exp(), cfg.n_members, data.y,
                      std::move(rng))
          .loglik;
    };
  } else {
    loglik = [&](const Eigen::VectorXd& phi, RngStream rng) {
      return pf_run(*model, phi.array().exp(), cfg.n_members, data.y,
                    std::move(rng))
          .loglik;
    };
  }

  Eigen::VectorXd phi0(model->param_dim());
  for (int i = 0; i < model->param_dim(); ++i)
    phi0(i) = std::log(model->priors()[i].mean());

  const ReferenceResult ref = reference_chain(
      prior, loglik, phi0, cfg.iterations, RngStream(cfg.seed), cfg.burn_frac);

  if (ref.chain.accept_rate <= 0.0)
    throw NumericalError("reference: degenerate chain (acceptance rate 0)");

  {
    CsvWriter w(out_stem + "_reference.csv");
    w.row({"param", "mean_log", "sd_log", "mcse_mean", "mcse_sd", "n_kept"});
    for (int i = 0; i < model->param_dim(); ++i) {
      w.row({"log_theta_" + std::to_string(i + 1),
             format_double(ref.summary.mean(i)), format_double(ref.summary.sd(i)),
             format_double(ref.summary.mcse_mean(i)),
             format_double(ref.summary.mcse_sd(i)),
             fmt_int(ref.summary.n_kept)});
    }
  }
  if (save_chain) {
    CsvWriter w(out_stem + "_chain.csv");
    std::vector<std::string> header;
    for (int i = 1; i <= model->param_dim(); ++i)
      header.push_back("log_theta_" + std::to_string(i));
    header.push_back("loglik");
    w.row(header);
    const int thin = std::max(1, cfg.iterations / 10000);
    for (int k = 0; k < ref.chain.phis.rows(); k += thin) {
      std::vector<std::string> cells;
      for (int i = 0; i < model->param_dim(); ++i)
        cells.push_back(format_double(ref.chain.phis(k, i)));
      cells.push_back(format_double(ref.chain.logliks(k)));
      w.row(cells);
    }
  }

  json extra;
  extra["data"] = data_stem;
  extra["accept_rate"] = ref.chain.accept_rate;
  write_meta(out_stem + "_meta.json", cfg, watch, extra);
}

ReferenceMoments load_reference(const std::string& reference_csv) {
  const CsvTable t = read_csv(reference_csv);
  const int mean_col = t.column("mean_log");
  const int sd_col = t.column("sd_log");
  ReferenceMoments ref;
  ref.mean_log.resize(t.rows.size());
  ref.sd_log.resize(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    ref.mean_log(r) = std::stod(t.rows[r][mean_col]);
    ref.sd_log(r) = std::stod(t.rows[r][sd_col]);
  }
  return ref;
}

void cmd_benchmark(const ExperimentConfig& cfg, const std::string& data_stem,
                   const std::string& reference_csv,
                   const std::string& out_stem) {
  validate_config(cfg, "benchmark");
  Stopwatch watch;
  const Dataset data = load_dataset(data_stem);
  const auto model = make_model(cfg.model_id, {cfg.lorenz_dim});
  const ReferenceMoments ref = load_reference(reference_csv);
  if (ref.mean_log.size() != model->param_dim())
    throw PreconditionError("reference file does not match the model");

  const int d = model->param_dim();
  const int reps = cfg.replicates;
  Eigen::MatrixXd est_mean(reps, d), est_sd(reps, d);
  Eigen::VectorXd rep_wall(reps);
  std::vector<int> n_terminal(reps, 0);
  std::vector<int> failed;

  CsvWriter repw(out_stem + "_replicates.csv");
  {
    std::vector<std::string> header{"replicate", "seed", "n_terminal"};
    for (int i = 1; i <= d; ++i)
      header.push_back("e_log_theta_" + std::to_string(i));
    for (int i = 1; i <= d; ++i)
      header.push_back("sd_log_theta_" + std::to_string(i));
    repw.row(header);
  }

  for (int r = 0; r < reps; ++r) {
    ExperimentConfig rep_cfg = cfg;
    rep_cfg.seed = cfg.seed + static_cast<std::uint64_t>(r);
    Stopwatch rep_watch;
    try {
      ParamRunOutput out =
          run_param_algorithm(rep_cfg, *model, data.y, nullptr);
      est_mean.row(r) = (out.phi * out.weights).transpose();
      est_sd.row(r) = weighted_sd(out.phi, out.weights).transpose();
      n_terminal[r] = out.n_terminal;
    } catch (const NumericalError&) {
      failed.push_back(r);
      est_mean.row(r).setConstant(std::numeric_limits<double>::quiet_NaN());
      est_sd.row(r).setConstant(std::numeric_limits<double>::quiet_NaN());
    }
    rep_wall(r) = rep_watch.wall_seconds();

    std::vector<std::string> cells{fmt_int(r), fmt_int(rep_cfg.seed),
                                   fmt_int(n_terminal[r])};
    for (int i = 0; i < d; ++i) cells.push_back(format_double(est_mean(r, i)));
    for (int i = 0; i < d; ++i) cells.push_back(format_double(est_sd(r, i)));
    repw.row(cells);
  }

  // Bias and RMSE of the replicate estimators against the reference.
  const int ok = reps - static_cast<int>(failed.size());
  if (ok < 1) throw NumericalError("benchmark: every replicate failed");
  Eigen::VectorXd bias_e(d), rmse_e(d), bias_sd(d), rmse_sd(d);
  for (int i = 0; i < d; ++i) {
    double be = 0, se = 0, bs = 0, ss = 0;
    for (int r = 0; r < reps; ++r) {
      if (std::isnan(est_mean(r, i))) continue;
      const double de = est_mean(r, i) - ref.mean_log(i);
      const double ds = est_sd(r, i) - ref.sd_log(i);
      be += de;
      se += de * de;
      bs += ds;
      ss += ds * ds;
    }
    bias_e(i) = be / ok;
    rmse_e(i) = std::sqrt(se / ok);
    bias_sd(i) = bs / ok;
    rmse_sd(i) = std::sqrt(ss / ok);
  }

  double n_term_mean = 0.0;
  for (int r = 0; r < reps; ++r) n_term_mean += n_terminal[r];
  n_term_mean /= reps;

  {
    CsvWriter w(out_stem + "_table.csv");
    std::vector<std::string> header{"scheme",     "model",       "m_particles",
                                    "n_terminal", "replicates",  "failed",
                                    "cpu_wall_s", "cpu_total_s"};
    for (int i = 1; i <= d; ++i) {
      header.push_back("bias_e_log_theta_" + std::to_string(i));
      header.push_back("rmse_e_log_theta_" + std::to_string(i));
    }
    for (int i = 1; i <= d; ++i) {
      header.push_back("bias_sd_log_theta_" + std::to_string(i));
      header.push_back("rmse_sd_log_theta_" + std::to_string(i));
    }
    w.row(header);
    std::vector<std::string> cells{
        cfg.algorithm,          cfg.model_id,
        fmt_int(cfg.m_particles), format_double(n_term_mean),
        fmt_int(reps),          fmt_int(static_cast<long>(failed.size())),
        format_double(watch.wall_seconds()),
        format_double(watch.cpu_seconds())};
    for (int i = 0; i < d; ++i) {
      cells.push_back(format_double(bias_e(i)));
      cells.push_back(format_double(rmse_e(i)));
    }
    for (int i = 0; i < d; ++i) {
      cells.push_back(format_double(bias_sd(i)));
      cells.push_back(format_double(rmse_sd(i)));
    }
    w.row(cells);
  }

  json extra;
  extra["data"] = data_stem;
  extra["reference"] = reference_csv;
  extra["failed_replicates"] = failed;
  json rw = json::array();
  for (int r = 0; r < reps; ++r) rw.push_back(rep_wall(r));
  extra["replicate_wall_s"] = rw;
  write_meta(out_stem + "_meta.json", cfg, watch, extra);
}

}  // namespace nenkf
