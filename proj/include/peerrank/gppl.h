// Copyright 2026 The PeerRank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PEERRANK_GPPL_H_
#define PEERRANK_GPPL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "peerrank/features.h"
#include "peerrank/kernel.h"
#include "peerrank/preferences.h"
#include "peerrank/ranking.h"

namespace peerrank {

// Gaussian-process preference learning with a probit pairwise likelihood
//
//   p(a ≻ b | f) = Φ((f(a) - f(b)) / (√2 σ))
//
// and a sparse variational posterior over the latent utilities at a set of
// inducing inputs Z. The posterior is kept in whitened form: with
// K_zz = L Lᵀ, the inducing values are u = L v and q(v) = N(mean, cov).
// Fitting runs natural-gradient stochastic variational inference on the
// evidence lower bound
//
//   ELBO = Σ_i w_i E_q[log Φ(d_i / (√2 σ))] - KL(q(v) || N(0, I)),
//
// where d_i = f(a_i) - f(b_i) and w_i is the observation weight. Expectations
// over the one-dimensional Gaussian q(d_i) use Gauss-Hermite quadrature.
struct GpplConfig {
  KernelSpec kernel;
  // Capped at the number of distinct feature vectors.
  int inducing_count = 500;
  // Observations per stochastic step; full batch when there are fewer.
  int batch_size = 2000;
  int max_iterations = 500;
  // Stop once the relative ELBO change stays below this for
  // `convergence_window` consecutive steps.
  double convergence_tol = 1e-4;
  int convergence_window = 5;
  // σ in the likelihood above.
  double noise_scale = 1.0;
  // Step size ρ_t = (t + delay)^(-forgetting_rate).
  double forgetting_rate = 0.7;
  double learning_rate_delay = 1.0;
  int quadrature_points = 32;
  uint64_t seed = 0;

  void Validate() const;  // throws ConfigError
  nlohmann::json ToJson() const;
  static GpplConfig FromJson(const nlohmann::json& j);
};

// Weighted observation "features row `first` ≻ features row `second`".
struct PairObservation {
  size_t first = 0;
  size_t second = 0;
  double weight = 1.0;
};

// Strict pairs map to weight-1 observations. A tie becomes two opposing
// observations of weight 1/2. Identical observations are merged by summing
// weights. Throws CoverageError if a paper has no feature row.
std::vector<PairObservation> BuildObservations(
    const FeatureSet& features, const std::vector<PreferencePair>& pairs);

struct CholeskyResult {
  Eigen::MatrixXd lower;
  double jitter = 0.0;
};

// Cholesky factor of k + jitter·I, escalating jitter from 1e-6 by factors of
// ten up to 1e-2. Throws ComputationError if every rung fails.
CholeskyResult CholeskyWithJitter(const Eigen::MatrixXd& k);

// Distinct rows of `x`, reduced to `count` by k-means++ seeding when there
// are more. Deterministic per seed.
Eigen::MatrixXd SelectInducingPoints(const Eigen::MatrixXd& x, int count,
                                     uint64_t seed);

// E[log Φ(d/s)] for d ~ N(mu, var), plus its derivative in mu and the
// quantity ½E[∂²/∂d² log Φ(d/s)] used for the covariance update.
class ProbitQuadrature {
 public:
  explicit ProbitQuadrature(int points);

  struct Terms {
    double value;
    double d_mean;
    double half_curvature;
  };
  Terms Evaluate(double mu, double var, double scale) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;  // normalized to sum to one
};

// ELBO over the whitened inducing posterior for a fixed set of observations.
// Row i of `projections` is L⁻¹(k_z(a_i) - k_z(b_i)); `residual_var[i]` is the
// prior variance of d_i not explained by the inducing values.
class ElboObjective {
 public:
  ElboObjective(Eigen::MatrixXd projections, Eigen::VectorXd residual_var,
                Eigen::VectorXd weights, double noise_scale,
                int quadrature_points);

  struct Moments {
    Eigen::VectorXd mean;
    Eigen::VectorXd var;
  };
  Moments ObservationMoments(const Eigen::VectorXd& mean,
                             const Eigen::MatrixXd& cov) const;

  double Value(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) const;
  double Value(const Moments& m, const Eigen::VectorXd& mean,
               const Eigen::MatrixXd& cov) const;
  static double KlFromPrior(const Eigen::VectorXd& mean,
                            const Eigen::MatrixXd& cov);

  // Exact gradient of Value() with respect to the variational mean.
  Eigen::VectorXd MeanGradient(const Eigen::VectorXd& mean,
                               const Eigen::MatrixXd& cov) const;

  // Likelihood gradients over a batch, each term multiplied by `scale`:
  // g_mean = ∂E/∂mean and g_cov = ∂E/∂cov.
  struct LikelihoodGradients {
    Eigen::VectorXd g_mean;
    Eigen::MatrixXd g_cov;
  };
  LikelihoodGradients Gradients(const Moments& m, std::span<const size_t> batch,
                                double scale) const;

  size_t size() const { return static_cast<size_t>(weights_.size()); }
  Eigen::Index dimension() const { return projections_.cols(); }

 private:
  Eigen::MatrixXd projections_;
  Eigen::VectorXd residual_var_;
  Eigen::VectorXd weights_;
  double scale_;
  ProbitQuadrature quadrature_;
};

// Everything needed to optimize: inducing inputs, their Cholesky factor,
// and the objective built from the observations.
struct GpplProblem {
  Eigen::MatrixXd inducing_inputs;
  CholeskyResult chol;
  std::vector<PairObservation> observations;
  ElboObjective objective;
};

GpplProblem PrepareGpplProblem(const FeatureSet& features,
                               const std::vector<PreferencePair>& pairs,
                               const GpplConfig& cfg);

class GpplModel {
 public:
  GpplModel(GpplConfig config, FeatureLayout layout,
            Eigen::MatrixXd inducing_inputs, double jitter,
            Eigen::VectorXd mean, Eigen::MatrixXd cov);

  const GpplConfig& config() const { return config_; }
  const FeatureLayout& layout() const { return layout_; }
  const Eigen::MatrixXd& inducing_inputs() const { return inducing_inputs_; }
  double jitter() const { return jitter_; }
  // Whitened variational parameters.
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }
  // Posterior over the inducing utilities u = L v.
  Eigen::VectorXd InducingMean() const;
  Eigen::MatrixXd InducingCovariance() const;

  Eigen::VectorXd PosteriorMean(const Eigen::MatrixXd& x) const;
  Eigen::VectorXd PosteriorVariance(const Eigen::MatrixXd& x) const;

  // Fit diagnostics.
  const std::vector<double>& elbo_trace() const { return elbo_trace_; }
  bool converged() const { return converged_; }
  const RankingResult& training_ranking() const { return training_ranking_; }

  nlohmann::json ToJson() const;
  static GpplModel FromJson(const nlohmann::json& j);
  void Save(const std::string& path) const;
  static GpplModel Load(const std::string& path);

 private:
  friend GpplModel FitGppl(const FeatureSet&, const std::vector<PreferencePair>&,
                           const GpplConfig&);

  GpplConfig config_;
  FeatureLayout layout_;
  Eigen::MatrixXd inducing_inputs_;
  double jitter_;
  Eigen::MatrixXd chol_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
  std::vector<double> elbo_trace_;
  bool converged_ = false;
  RankingResult training_ranking_;
};

// Trains on every paper in `features`; pairs may reference any subset.
// Throws ComputationError when there are no pairs.
GpplModel FitGppl(const FeatureSet& features,
                  const std::vector<PreferencePair>& pairs,
                  const GpplConfig& cfg);

// Posterior mean utility for every paper in `features`, including papers
// that never occurred in a training pair. Throws SchemaError on a layout
// mismatch.
RankingResult PredictUtilities(const GpplModel& model,
                               const FeatureSet& features);

}  // namespace peerrank

#endif  // PEERRANK_GPPL_H_
