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

#include "peerrank/gppl.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <spdlog/spdlog.h>

#include "peerrank/errors.h"
#include "peerrank/random.h"

namespace peerrank {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using nlohmann::json;

constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr int kModelFormatVersion = 1;

double LogNormPdf(double z) { return -0.5 * z * z - kLogSqrt2Pi; }

// log Φ(z). erfc underflows near z = -37, so the far tail uses the
// asymptotic series.
double LogNormCdf(double z) {
  if (z > -30.0) return std::log(0.5 * std::erfc(-z / std::sqrt(2.0)));
  const double z2 = z * z;
  return -0.5 * z2 - std::log(-z) - kLogSqrt2Pi +
         std::log(1.0 - 1.0 / z2 + 3.0 / (z2 * z2));
}

json MatrixToJson(const MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd MatrixFromJson(const json& j, Eigen::Index cols) {
  MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const json& row = j.at(i);
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw SchemaError("model matrix row has wrong width");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row.at(c).get<double>();
  }
  return m;
}

json VectorToJson(const VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

VectorXd VectorFromJson(const json& j) {
  auto v = j.get<std::vector<double>>();
  return Eigen::Map<VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json LayoutToJson(const FeatureLayout& layout) {
  json blocks = json::array();
  for (const auto& b : layout.blocks) {
    blocks.push_back({{"block", BlockName(b.kind)}, {"columns", b.columns}});
  }
  return blocks;
}

FeatureLayout LayoutFromJson(const json& j) {
  FeatureLayout layout;
  for (const auto& b : j) {
    layout.blocks.push_back(
        {ParseFeatureBlock(b.at("block").get<std::string>()),
         b.at("columns").get<std::vector<std::string>>()});
  }
  return layout;
}

// L⁻¹ K(Z, x): the whitened projections of the rows of x.
MatrixXd WhitenedCrossCovariance(const KernelSpec& kernel,
                                 const MatrixXd& inducing,
                                 const MatrixXd& chol, const MatrixXd& x) {
  MatrixXd kzx = KernelMatrix(kernel, inducing, x);
  chol.triangularView<Eigen::Lower>().solveInPlace(kzx);
  return kzx;
}

}  // namespace

void GpplConfig::Validate() const {
  if (!(kernel.length_scale > 0.0)) throw ConfigError("length_scale must be > 0");
  if (inducing_count <= 0) throw ConfigError("inducing_count must be > 0");
  if (batch_size <= 0) throw ConfigError("batch_size must be > 0");
  if (max_iterations <= 0) throw ConfigError("max_iterations must be > 0");
  if (!(convergence_tol > 0.0)) throw ConfigError("convergence_tol must be > 0");
  if (convergence_window <= 0) throw ConfigError("convergence_window must be > 0");
  if (!(noise_scale > 0.0)) throw ConfigError("noise_scale must be > 0");
  if (!(forgetting_rate > 0.5 && forgetting_rate <= 1.0)) {
    throw ConfigError("forgetting_rate must lie in (0.5, 1]");
  }
  if (!(learning_rate_delay >= 1.0)) {
    throw ConfigError("learning_rate_delay must be >= 1");
  }
  if (quadrature_points < 2) throw ConfigError("quadrature_points must be >= 2");
}

json GpplConfig::ToJson() const {
  return {{"kernel", KernelName(kernel.type)},
          {"length_scale", kernel.length_scale},
          {"inducing_count", inducing_count},
          {"batch_size", batch_size},
          {"max_iterations", max_iterations},
          {"convergence_tol", convergence_tol},
          {"convergence_window", convergence_window},
          {"noise_scale", noise_scale},
          {"forgetting_rate", forgetting_rate},
          {"learning_rate_delay", learning_rate_delay},
          {"quadrature_points", quadrature_points},
          {"seed", seed}};
}

GpplConfig GpplConfig::FromJson(const json& j) {
  GpplConfig c;
  try {
    if (j.contains("kernel")) {
      c.kernel.type = ParseKernelType(j.at("kernel").get<std::string>());
    }
    c.kernel.length_scale = j.value("length_scale", c.kernel.length_scale);
    c.inducing_count = j.value("inducing_count", c.inducing_count);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.max_iterations = j.value("max_iterations", c.max_iterations);
    c.convergence_tol = j.value("convergence_tol", c.convergence_tol);
    c.convergence_window = j.value("convergence_window", c.convergence_window);
    c.noise_scale = j.value("noise_scale", c.noise_scale);
    c.forgetting_rate = j.value("forgetting_rate", c.forgetting_rate);
    c.learning_rate_delay = j.value("learning_rate_delay", c.learning_rate_delay);
    c.quadrature_points = j.value("quadrature_points", c.quadrature_points);
    c.seed = j.value("seed", c.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed gppl config: ") + e.what());
  }
  c.Validate();
  return c;
}

std::vector<PairObservation> BuildObservations(
    const FeatureSet& features, const std::vector<PreferencePair>& pairs) {
  std::map<std::pair<size_t, size_t>, double> merged;
  auto row_of = [&](const std::string& id) {
    auto row = features.Row(id);
    if (!row) throw CoverageError("no feature vector for paper '" + id + "'");
    return *row;
  };
  for (const auto& p : pairs) {
    const size_t a = row_of(p.better);
    const size_t b = row_of(p.worse);
    if (a == b) throw ValidationError("preference pair compares a paper to itself");
    if (p.relation == Relation::kStrict) {
      merged[{a, b}] += 1.0;
    } else {
      merged[{a, b}] += 0.5;
      merged[{b, a}] += 0.5;
    }
  }
  std::vector<PairObservation> out;
  out.reserve(merged.size());
  for (const auto& [key, w] : merged) out.push_back({key.first, key.second, w});
  return out;
}

CholeskyResult CholeskyWithJitter(const MatrixXd& k) {
  const MatrixXd eye = MatrixXd::Identity(k.rows(), k.cols());
  for (double jitter = 1e-6; jitter <= 1e-2 * (1.0 + 1e-9); jitter *= 10.0) {
    Eigen::LLT<MatrixXd> llt(k + jitter * eye);
    if (llt.info() == Eigen::Success) {
      if (jitter > 1e-6) spdlog::warn("kernel matrix needed jitter {}", jitter);
      return {llt.matrixL(), jitter};
    }
  }
  throw ComputationError(
      "kernel matrix is not positive definite even with jitter 1e-2");
}

MatrixXd SelectInducingPoints(const MatrixXd& x, int count, uint64_t seed) {
  const Eigen::Index n = x.rows();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row_less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (x(a, c) != x(b, c)) return x(a, c) < x(b, c);
    }
    return a < b;
  };
  std::sort(order.begin(), order.end(), row_less);
  std::vector<Eigen::Index> distinct;
  for (size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || x.row(order[i]) != x.row(order[i - 1])) {
      distinct.push_back(order[i]);
    }
  }
  std::sort(distinct.begin(), distinct.end());

  std::vector<Eigen::Index> chosen;
  if (static_cast<int>(distinct.size()) <= count) {
    chosen = distinct;
  } else {
    Rng rng = MakeRng(seed, "inducing");
    std::uniform_int_distribution<size_t> first(0, distinct.size() - 1);
    chosen.push_back(distinct[first(rng)]);
    std::vector<double> d2(distinct.size());
    for (size_t i = 0; i < distinct.size(); ++i) {
      d2[i] = (x.row(distinct[i]) - x.row(chosen[0])).squaredNorm();
    }
    while (static_cast<int>(chosen.size()) < count) {
      const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      size_t pick = 0;
      for (; pick + 1 < d2.size(); ++pick) {
        if (d2[pick] <= 0.0) continue;
        if (target < d2[pick]) break;
        target -= d2[pick];
      }
      while (d2[pick] <= 0.0) pick = (pick + d2.size() - 1) % d2.size();
      chosen.push_back(distinct[pick]);
      for (size_t i = 0; i < distinct.size(); ++i) {
        d2[i] = std::min(d2[i],
                         (x.row(distinct[i]) - x.row(distinct[pick])).squaredNorm());
      }
    }
  }
  MatrixXd z(chosen.size(), x.cols());
  for (size_t i = 0; i < chosen.size(); ++i) z.row(i) = x.row(chosen[i]);
  return z;
}

ProbitQuadrature::ProbitQuadrature(int points) {
  // Golub-Welsch for the Hermite weight exp(-x²).
  MatrixXd jacobi = MatrixXd::Zero(points, points);
  for (int i = 0; i + 1 < points; ++i) {
    jacobi(i, i + 1) = jacobi(i + 1, i) = std::sqrt((i + 1) / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(jacobi);
  for (int i = 0; i < points; ++i) {
    nodes_.push_back(eig.eigenvalues()(i));
    const double v0 = eig.eigenvectors()(0, i);
    weights_.push_back(v0 * v0);
  }
}

ProbitQuadrature::Terms ProbitQuadrature::Evaluate(double mu, double var,
                                                    double scale) const {
  const double spread = std::sqrt(2.0 * std::max(var, 0.0));
  Terms t{0.0, 0.0, 0.0};
  for (size_t k = 0; k < nodes_.size(); ++k) {
    const double z = (mu + spread * nodes_[k]) / scale;
    const double log_cdf = LogNormCdf(z);
    const double mills = std::exp(LogNormPdf(z) - log_cdf);
    t.value += weights_[k] * log_cdf;
    t.d_mean += weights_[k] * mills / scale;
    t.half_curvature += weights_[k] * (-mills * (mills + z)) / (scale * scale);
  }
  t.half_curvature *= 0.5;
  return t;
}

ElboObjective::ElboObjective(MatrixXd projections, VectorXd residual_var,
                             VectorXd weights, double noise_scale,
                             int quadrature_points)
    : projections_(std::move(projections)),
      residual_var_(std::move(residual_var)),
      weights_(std::move(weights)),
      scale_(std::sqrt(2.0) * noise_scale),
      quadrature_(quadrature_points) {}

ElboObjective::Moments ElboObjective::ObservationMoments(
    const VectorXd& mean, const MatrixXd& cov) const {
  Moments m;
  m.mean = projections_ * mean;
  const MatrixXd pc = projections_ * cov;
  m.var = pc.cwiseProduct(projections_).rowwise().sum() + residual_var_;
  return m;
}

double ElboObjective::KlFromPrior(const VectorXd& mean, const MatrixXd& cov) {
  Eigen::LLT<MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw ComputationError("variational covariance is not positive definite");
  }
  const double log_det =
      2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return 0.5 * (cov.trace() + mean.squaredNorm() -
                static_cast<double>(mean.size()) - log_det);
}

double ElboObjective::Value(const Moments& m, const VectorXd& mean,
                            const MatrixXd& cov) const {
  double expected = 0.0;
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    expected +=
        weights_(i) * quadrature_.Evaluate(m.mean(i), m.var(i), scale_).value;
  }
  return expected - KlFromPrior(mean, cov);
}

double ElboObjective::Value(const VectorXd& mean, const MatrixXd& cov) const {
  return Value(ObservationMoments(mean, cov), mean, cov);
}

VectorXd ElboObjective::MeanGradient(const VectorXd& mean,
                                     const MatrixXd& cov) const {
  const Moments m = ObservationMoments(mean, cov);
  VectorXd coeff(weights_.size());
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    coeff(i) =
        weights_(i) * quadrature_.Evaluate(m.mean(i), m.var(i), scale_).d_mean;
  }
  return projections_.transpose() * coeff - mean;
}

ElboObjective::LikelihoodGradients ElboObjective::Gradients(
    const Moments& m, std::span<const size_t> batch, double scale) const {
  const Eigen::Index dim = projections_.cols();
  LikelihoodGradients g{VectorXd::Zero(dim), MatrixXd::Zero(dim, dim)};
  // Curvature terms are non-positive; accumulate -g_cov = BᵀB with rows of B
  // scaled by sqrt(-curvature).
  MatrixXd b(batch.size(), dim);
  for (size_t r = 0; r < batch.size(); ++r) {
    const size_t i = batch[r];
    const auto t = quadrature_.Evaluate(m.mean(i), m.var(i), scale_);
    const double w = scale * weights_(i);
    g.g_mean.noalias() += (w * t.d_mean) * projections_.row(i).transpose();
    b.row(r) = std::sqrt(std::max(-w * t.half_curvature, 0.0)) *
               projections_.row(i);
  }
  g.g_cov.selfadjointView<Eigen::Lower>().rankUpdate(b.transpose(), -1.0);
  g.g_cov.triangularView<Eigen::StrictlyUpper>() =
      g.g_cov.transpose().triangularView<Eigen::StrictlyUpper>();
  return g;
}

GpplProblem PrepareGpplProblem(const FeatureSet& features,
                               const std::vector<PreferencePair>& pairs,
                               const GpplConfig& cfg) {
  cfg.Validate();
  auto observations = BuildObservations(features, pairs);
  if (observations.empty()) {
    throw ComputationError("gppl: no preference pairs to train on");
  }
  const MatrixXd& x = features.values();
  MatrixXd inducing = SelectInducingPoints(
      x, std::min<int>(cfg.inducing_count, static_cast<int>(x.rows())),
      cfg.seed);
  CholeskyResult chol =
      CholeskyWithJitter(KernelMatrix(cfg.kernel, inducing, inducing));
  const MatrixXd w =
      WhitenedCrossCovariance(cfg.kernel, inducing, chol.lower, x);

  const auto n_obs = static_cast<Eigen::Index>(observations.size());
  MatrixXd projections(n_obs, inducing.rows());
  VectorXd residual(n_obs);
  VectorXd weights(n_obs);
  for (Eigen::Index i = 0; i < n_obs; ++i) {
    const auto& o = observations[i];
    projections.row(i) = (w.col(o.first) - w.col(o.second)).transpose();
    const double k_ab =
        cfg.kernel.FromDistance((x.row(o.first) - x.row(o.second)).norm());
    residual(i) = std::max(2.0 - 2.0 * k_ab - projections.row(i).squaredNorm(),
                           0.0);
    weights(i) = o.weight;
  }
  ElboObjective objective(std::move(projections), std::move(residual),
                          std::move(weights), cfg.noise_scale,
                          cfg.quadrature_points);
  return GpplProblem{std::move(inducing), std::move(chol),
                     std::move(observations), std::move(objective)};
}

GpplModel::GpplModel(GpplConfig config, FeatureLayout layout,
                     MatrixXd inducing_inputs, double jitter, VectorXd mean,
                     MatrixXd cov)
    : config_(std::move(config)),
      layout_(std::move(layout)),
      inducing_inputs_(std::move(inducing_inputs)),
      jitter_(jitter),
      mean_(std::move(mean)),
      cov_(std::move(cov)) {
  const Eigen::Index m = inducing_inputs_.rows();
  if (mean_.size() != m || cov_.rows() != m || cov_.cols() != m) {
    throw SchemaError("gppl model: parameter shapes do not match inducing set");
  }
  if (inducing_inputs_.cols() != static_cast<Eigen::Index>(layout_.Dimension())) {
    throw SchemaError("gppl model: inducing inputs do not match layout");
  }
  Eigen::LLT<MatrixXd> llt(
      KernelMatrix(config_.kernel, inducing_inputs_, inducing_inputs_) +
      jitter_ * MatrixXd::Identity(m, m));
  if (llt.info() != Eigen::Success) {
    throw ComputationError("gppl model: inducing kernel matrix not PD");
  }
  chol_ = llt.matrixL();
}

VectorXd GpplModel::InducingMean() const { return chol_ * mean_; }

MatrixXd GpplModel::InducingCovariance() const {
  return chol_ * cov_ * chol_.transpose();
}

VectorXd GpplModel::PosteriorMean(const MatrixXd& x) const {
  return WhitenedCrossCovariance(config_.kernel, inducing_inputs_, chol_, x)
             .transpose() *
         mean_;
}

VectorXd GpplModel::PosteriorVariance(const MatrixXd& x) const {
  const MatrixXd w =
      WhitenedCrossCovariance(config_.kernel, inducing_inputs_, chol_, x);
  const MatrixXd cw = cov_ * w;
  VectorXd var(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    var(i) = 1.0 - w.col(i).squaredNorm() + w.col(i).dot(cw.col(i));
  }
  return var;
}

json GpplModel::ToJson() const {
  return {{"format", "peerrank-gppl"},
          {"version", kModelFormatVersion},
          {"config", config_.ToJson()},
          {"layout", LayoutToJson(layout_)},
          {"inducing_inputs", MatrixToJson(inducing_inputs_)},
          {"jitter", jitter_},
          {"mean", VectorToJson(mean_)},
          {"cov", MatrixToJson(cov_)},
          {"elbo_trace", elbo_trace_},
          {"converged", converged_}};
}

GpplModel GpplModel::FromJson(const json& j) {
  try {
    if (j.at("format") != "peerrank-gppl") {
      throw SchemaError("not a gppl model snapshot");
    }
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw SchemaError("unsupported gppl model version " +
                        j.at("version").dump());
    }
    FeatureLayout layout = LayoutFromJson(j.at("layout"));
    const auto dim = static_cast<Eigen::Index>(layout.Dimension());
    MatrixXd inducing = MatrixFromJson(j.at("inducing_inputs"), dim);
    VectorXd mean = VectorFromJson(j.at("mean"));
    MatrixXd cov = MatrixFromJson(j.at("cov"), mean.size());
    GpplModel model(GpplConfig::FromJson(j.at("config")), std::move(layout),
                    std::move(inducing), j.at("jitter").get<double>(),
                    std::move(mean), std::move(cov));
    model.elbo_trace_ = j.value("elbo_trace", std::vector<double>{});
    model.converged_ = j.value("converged", false);
    return model;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed gppl model: ") + e.what());
  }
}

void GpplModel::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << ToJson().dump() << '\n';
}

GpplModel GpplModel::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return FromJson(json::parse(in));
  } catch (const json::parse_error& e) {
    throw SchemaError("malformed gppl model " + path + ": " + e.what());
  }
}

GpplModel FitGppl(const FeatureSet& features,
                  const std::vector<PreferencePair>& pairs,
                  const GpplConfig& cfg) {
  GpplProblem problem = PrepareGpplProblem(features, pairs, cfg);
  const ElboObjective& objective = problem.objective;
  const Eigen::Index m = problem.inducing_inputs.rows();
  const MatrixXd eye = MatrixXd::Identity(m, m);

  // Natural parameters of q(v): precision and precision-times-mean.
  MatrixXd precision = eye;
  VectorXd shift = VectorXd::Zero(m);
  VectorXd mean = VectorXd::Zero(m);
  MatrixXd cov = eye;

  const size_t n_obs = objective.size();
  std::vector<size_t> all(n_obs);
  std::iota(all.begin(), all.end(), 0);
  const bool full_batch = n_obs <= static_cast<size_t>(cfg.batch_size);
  Rng rng = MakeRng(cfg.seed, "gppl-batches");

  std::vector<double> trace;
  bool converged = false;
  ElboObjective::Moments moments = objective.ObservationMoments(mean, cov);
  trace.push_back(objective.Value(moments, mean, cov));
  int stable_steps = 0;
  for (int t = 0; t < cfg.max_iterations; ++t) {
    std::span<const size_t> batch(all);
    if (!full_batch) {
      for (int i = 0; i < cfg.batch_size; ++i) {
        std::uniform_int_distribution<size_t> pick(i, n_obs - 1);
        std::swap(all[i], all[pick(rng)]);
      }
      batch = std::span<const size_t>(all.data(), cfg.batch_size);
    }
    const double scale =
        static_cast<double>(n_obs) / static_cast<double>(batch.size());
    const auto grads = objective.Gradients(moments, batch, scale);

    const double rho =
        std::pow(t + cfg.learning_rate_delay, -cfg.forgetting_rate);
    const MatrixXd target_precision = eye - 2.0 * grads.g_cov;
    const VectorXd target_shift = grads.g_mean - 2.0 * grads.g_cov * mean;
    precision = (1.0 - rho) * precision + rho * target_precision;
    precision = 0.5 * (precision + precision.transpose());
    shift = (1.0 - rho) * shift + rho * target_shift;

    Eigen::LLT<MatrixXd> llt(precision);
    if (llt.info() != Eigen::Success) {
      throw ComputationError("gppl: variational precision lost definiteness");
    }
    cov = llt.solve(eye);
    cov = 0.5 * (cov + cov.transpose());
    mean = llt.solve(shift);

    moments = objective.ObservationMoments(mean, cov);
    const double elbo = objective.Value(moments, mean, cov);
    if (!std::isfinite(elbo)) throw ComputationError("gppl: ELBO is not finite");
    const double prev = trace.back();
    trace.push_back(elbo);
    const double rel = std::abs(elbo - prev) / std::max(std::abs(elbo), 1e-12);
    stable_steps = rel < cfg.convergence_tol ? stable_steps + 1 : 0;
    if (stable_steps >= cfg.convergence_window) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    spdlog::warn("gppl: stopped after {} iterations without converging",
                 cfg.max_iterations);
  }
  spdlog::debug("gppl: {} observations, {} inducing points, {} steps, ELBO {}",
                n_obs, m, trace.size() - 1, trace.back());

  GpplModel model(cfg, features.layout(), std::move(problem.inducing_inputs),
                  problem.chol.jitter, std::move(mean), std::move(cov));
  model.elbo_trace_ = std::move(trace);
  model.converged_ = converged;
  model.training_ranking_ = PredictUtilities(model, features);
  return model;
}

RankingResult PredictUtilities(const GpplModel& model,
                               const FeatureSet& features) {
  if (!(features.layout() == model.layout())) {
    throw SchemaError("feature layout does not match the trained gppl model");
  }
  const VectorXd mu = model.PosteriorMean(features.values());
  return MakeRanking("gppl", features.paper_ids(),
                     std::vector<double>(mu.data(), mu.data() + mu.size()),
                     model.config().ToJson());
}

}  // namespace peerrank
