#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "tvwalk/exact_group.hpp"
#include "tvwalk/random.hpp"

namespace tvwalk {

namespace {

void apply_p(const TransitionStructure& ts, const std::vector<double>& in, std::vector<double>& out) {
  const double p = ts.step_probability();
  for (std::size_t y = 0; y < ts.size(); ++y) {
    double acc = 0;
    for (std::uint32_t x : ts.neighbors_of(y)) acc += in[x];
    out[y] = acc * p;
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void remove_mean(std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

std::vector<double> dense_spectrum(const TransitionStructure& ts) {
  const auto size = static_cast<Eigen::Index>(ts.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size, size);
  const double prob = ts.step_probability();
  for (std::size_t x = 0; x < ts.size(); ++x) {
    for (std::uint32_t y : ts.neighbors_of(x)) {
      p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) += prob;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(p, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolve failed");
  const Eigen::VectorXd& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

}  // namespace

ExtremalPair lanczos_extremal(const TransitionStructure& ts, const SpectralOptions& options) {
  const std::size_t size = ts.size();
  if (size < 3) throw std::invalid_argument("Lanczos needs at least 3 states");
  const std::size_t max_steps = std::min(options.max_iterations, size - 1);

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha;
  std::vector<double> beta;

  std::vector<double> q(size);
  Rng rng = make_rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (double& v : q) v = unit(rng);
  remove_mean(q);
  const double q_norm = std::sqrt(dot(q, q));
  for (double& v : q) v /= q_norm;
  basis.push_back(q);

  std::vector<double> w(size);
  for (std::size_t j = 0; j < max_steps; ++j) {
    apply_p(ts, basis[j], w);
    const double a = dot(w, basis[j]);
    alpha.push_back(a);
    // Full reorthogonalization, twice, against the basis and the constant
    // vector (the deflated top eigenvector).
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& v : basis) axpy(-dot(w, v), v, w);
      remove_mean(w);
    }
    const double b = std::sqrt(dot(w, w));

    const bool invariant = b < 1e-12;
    const bool check = invariant || j + 1 == max_steps || ((j + 1) % 10 == 0 && j + 1 >= 20);
    if (check) {
      const auto m = static_cast<Eigen::Index>(alpha.size());
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
      for (Eigen::Index i = 0; i + 1 < m; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      if (tri.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolve failed");
      const auto& values = tri.eigenvalues();
      const auto& vectors = tri.eigenvectors();
      const double res_min = b * std::abs(vectors(m - 1, 0));
      const double res_max = b * std::abs(vectors(m - 1, m - 1));
      if (invariant || (res_min <= options.tolerance && res_max <= options.tolerance)) {
        return {values(0), values(m - 1), alpha.size()};
      }
    }
    if (j + 1 == max_steps) break;
    beta.push_back(b);
    for (double& v : w) v /= b;
    basis.push_back(w);
  }
  throw std::runtime_error("Lanczos did not converge within the iteration limit");
}

SpectralReport spectral_report(const TransitionStructure& ts, const SpectralOptions& options) {
  SpectralReport report;
  if (ts.size() <= options.dense_threshold) {
    report.eigenvalues = dense_spectrum(ts);
    report.full_spectrum = true;
    const std::size_t m = report.eigenvalues.size();
    report.lambda_min = report.eigenvalues.front();
    report.lambda_second = m >= 2 ? report.eigenvalues[m - 2] : report.eigenvalues.front();
  } else {
    const ExtremalPair pair = lanczos_extremal(ts, options);
    report.lambda_min = pair.lambda_min;
    report.lambda_second = pair.lambda_max;
    report.eigenvalues = {pair.lambda_min, pair.lambda_max, 1.0};
    report.full_spectrum = false;
  }
  report.gap = 1.0 - report.lambda_second;
  report.absolute_gap = 1.0 - std::max(std::abs(report.lambda_second), std::abs(report.lambda_min));
  report.period = detect_period(ts);

  const bool minus_one = std::abs(report.lambda_min + 1.0) < 1e-8;
  if (minus_one != (report.period == 2)) {
    throw std::runtime_error("bipartiteness and the eigenvalue -1 disagree");
  }
  return report;
}

}  // namespace tvwalk
