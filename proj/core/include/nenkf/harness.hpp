#ifndef NENKF_HARNESS_HPP
#define NENKF_HARNESS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nenkf/model.hpp"

namespace nenkf {

// ---------------------------------------------------------------------------
// Datasets on disk: <stem>.csv (t, y_1..y_dy), <stem>_latent.csv
// (t, x_1..x_dx) and <stem>_meta.json (theta_true, seed, schedule).
// ---------------------------------------------------------------------------

struct DatasetMeta {
  std::string model_id;
  Eigen::VectorXd theta_true;
  Eigen::VectorXd x0;
  std::uint64_t seed = 0;
  double spacing = 1.0;
  bool obs_at_t0 = true;
  int lorenz_dim = 5;
};

struct Dataset {
  Eigen::VectorXd times;
  Eigen::MatrixXd y;       // (T+1) x d_y
  Eigen::MatrixXd x_true;  // (T+1) x d_x; may be empty when not persisted
  DatasetMeta meta;

  int time_count() const { return static_cast<int>(y.rows()); }
};

void write_dataset(const Dataset& data, const std::string& stem);
Dataset load_dataset(const std::string& stem);

// ---------------------------------------------------------------------------
// Model registry
// ---------------------------------------------------------------------------

struct ModelOptions {
  int lorenz_dim = 5;
};

std::unique_ptr<Model> make_model(const std::string& id,
                                  const ModelOptions& opts = {});
// The twin-experiment ground-truth parameters for each model.
Eigen::VectorXd default_true_theta(const std::string& id);

// ---------------------------------------------------------------------------
// Experiment configuration (mirrors the CLI flags)
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::string model_id = "ou";
  int lorenz_dim = 5;
  std::string algorithm = "nenkf";
  std::vector<double> theta;  // fixed-theta algorithms; empty = model default

  int m_particles = 1000;
  int n_members = 10;
  double ess_fraction = 0.4;

  double delta = 0.97;  // Liu-West discount (penkf, aenkf)
  double zeta = 0.0;    // 0 selects the default scaling rule
  bool leave_one_out = true;
  int move_iterations = 1;
  bool delayed_acceptance = true;
  int knn_k = 3;

  bool adapt_n = true;
  double sigma2_threshold = 1.5;
  int var_runs = 10;
  int n_max = 100000;
  bool adapt_by_accept_rate = false;
  double accept_rate_threshold = 0.10;

  double inflation = 1.0;  // proposal R inflation (rbsmc2)

  int iterations = 100000;  // reference chains
  double burn_frac = 0.1;

  int n_obs = -1;  // simulate: -1 keeps the model's recipe
  int replicates = 20;
  int threads = 1;
  std::uint64_t seed = 1;
};

// Throws PreconditionError on invalid or incompatible settings.
void validate_config(const ExperimentConfig& cfg, const std::string& command);

// ---------------------------------------------------------------------------
// Commands (the CLI is a thin wrapper over these)
// ---------------------------------------------------------------------------

void cmd_simulate(const ExperimentConfig& cfg, const std::string& out_stem);

// Writes <out>_summary.csv, <out>_cloud.csv / <out>_state.csv,
// <out>_runrecord.csv and <out>_meta.json.
void cmd_filter(const ExperimentConfig& cfg, const std::string& data_stem,
                const std::string& out_stem);

// Writes <out>_reference.csv (+ optional <out>_chain.csv) and
// <out>_meta.json.
void cmd_reference(const ExperimentConfig& cfg, const std::string& data_stem,
                   const std::string& out_stem, bool save_chain = false);

// Writes <out>_replicates.csv, <out>_table.csv and <out>_meta.json.
void cmd_benchmark(const ExperimentConfig& cfg, const std::string& data_stem,
                   const std::string& reference_csv,
                   const std::string& out_stem);

// ---------------------------------------------------------------------------
// Small helpers shared with the tests
// ---------------------------------------------------------------------------

// Smallest value whose cumulative weight reaches q; weights normalised.
double weighted_quantile(const Eigen::VectorXd& values,
                         const Eigen::VectorXd& weights, double q);

Eigen::VectorXd weighted_sd(const Eigen::MatrixXd& cloud,
                            const Eigen::VectorXd& weights);

// Fixed "%.17g" rendering so reruns are byte-identical.
std::string format_double(double v);

struct ReferenceMoments {
  Eigen::VectorXd mean_log;
  Eigen::VectorXd sd_log;
};
ReferenceMoments load_reference(const std::string& reference_csv);

}  // namespace nenkf

#endif  // NENKF_HARNESS_HPP
