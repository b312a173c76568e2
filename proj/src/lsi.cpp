#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "summation.hpp"
#include "tvwalk/funineq.hpp"
#include "tvwalk/parallel.hpp"
#include "tvwalk/random.hpp"

namespace tvwalk {

double lsi_ratio(const FunctionOnGroup& f, const TransitionStructure& ts, const GroupTable& gt) {
  const double e = dirichlet_form(f, ts, gt);
  if (!(e > 0)) throw std::invalid_argument("Dirichlet form vanishes: f is constant");
  return entropy_sq(f, gt) / e;
}

namespace {

struct Ascent {
  std::vector<double> f;
  double ratio = 0;
};

double norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

bool is_constant(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi));
}

// Ratio and its Euclidean gradient. With m = E_pi[f^2]:
//   d ent / d f_x = 2 pi f_x (log f_x^2 - log m)
//   d E   / d f_x = 2 pi (f_x - (P f)_x)
double ratio_and_gradient(const std::vector<double>& f, const TransitionStructure& ts, double pi,
                          std::vector<double>* grad) {
  detail::CompensatedSum second;
  detail::CompensatedSum xlx;
  detail::CompensatedSum dir;
  std::vector<double> laplacian(f.size());
  const double p = ts.step_probability();
  for (std::size_t x = 0; x < f.size(); ++x) {
    const double sq = f[x] * f[x];
    second.add(sq);
    xlx.add(detail::xlogx(sq));
    double pf = 0;
    for (std::uint32_t y : ts.neighbors_of(x)) {
      pf += f[y];
      const double diff = f[x] - f[y];
      dir.add(diff * diff);
    }
    laplacian[x] = f[x] - p * pf;
  }
  const double m = second.value() * pi;
  const double ent = std::max(0.0, xlx.value() * pi - detail::xlogx(m));
  const double e = 0.5 * dir.value() * pi * p;
  if (!(e > 0)) return 0.0;
  const double ratio = ent / e;
  if (grad != nullptr) {
    grad->resize(f.size());
    const double log_m = std::log(m);
    for (std::size_t x = 0; x < f.size(); ++x) {
      const double sq = f[x] * f[x];
      const double d_ent = sq > 0 ? 2.0 * pi * f[x] * (std::log(sq) - log_m) : 0.0;
      const double d_e = 2.0 * pi * laplacian[x];
      (*grad)[x] = (d_ent - ratio * d_e) / e;
    }
  }
  return ratio;
}

Ascent ascend(std::vector<double> f, const TransitionStructure& ts, double pi, std::size_t iterations) {
  const double f_norm = norm(f);
  for (double& v : f) v /= f_norm;
  std::vector<double> grad;
  std::vector<double> trial(f.size());
  double ratio = ratio_and_gradient(f, ts, pi, &grad);
  double step = 0.1;
  for (std::size_t it = 0; it < iterations; ++it) {
    // Project onto the tangent space of the sphere at f.
    const double radial = std::inner_product(grad.begin(), grad.end(), f.begin(), 0.0);
    for (std::size_t x = 0; x < f.size(); ++x) grad[x] -= radial * f[x];
    const double g_norm = norm(grad);
    if (!(g_norm > 1e-14)) break;

    bool improved = false;
    step = std::min(1.0, step * 2.0);
    while (step > 1e-12) {
      for (std::size_t x = 0; x < f.size(); ++x) trial[x] = f[x] + step * grad[x] / g_norm;
      const double t_norm = norm(trial);
      for (double& v : trial) v /= t_norm;
      const double r = ratio_and_gradient(trial, ts, pi, nullptr);
      if (r > ratio) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    f.swap(trial);
    ratio = ratio_and_gradient(f, ts, pi, &grad);
  }
  return {std::move(f), ratio};
}

// Eigenvector of P for lambda_2, from a dense eigensolve.
std::vector<double> slowest_eigenvector(const TransitionStructure& ts) {
  const auto size = static_cast<Eigen::Index>(ts.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size, size);
  for (std::size_t x = 0; x < ts.size(); ++x) {
    for (std::uint32_t y : ts.neighbors_of(x)) {
      p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) += ts.step_probability();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(p);
  const Eigen::VectorXd v = solver.eigenvectors().col(size - 2);
  return {v.data(), v.data() + v.size()};
}

}  // namespace

LsiEstimate estimate_lsi_constant(const TransitionStructure& ts, const GroupTable& gt,
                                  const LsiOptions& options) {
  if (gt.n() < 2 || gt.n() > kMaxLsiDim) throw std::invalid_argument("LSI estimation needs 2 <= n <= 3");
  const double pi = gt.pi();
  const std::size_t starts = options.restarts + 2;

  std::vector<Ascent> results(starts);
  parallel_for_blocks(starts, options.threads, [&](std::size_t s) {
    std::vector<double> f(gt.size(), 0.0);
    if (s == 0) {
      f[0] = 1.0;
    } else if (s == 1) {
      const std::vector<double> v = slowest_eigenvector(ts);
      const double scale = 0.05 / *std::max_element(v.begin(), v.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
      });
      for (std::size_t x = 0; x < f.size(); ++x) f[x] = 1.0 + scale * v[x];
    } else {
      Rng rng = make_rng(options.seed, s);
      std::normal_distribution<double> normal;
      do {
        for (double& v : f) v = normal(rng);
      } while (is_constant(f));
    }
    results[s] = ascend(std::move(f), ts, pi, options.iterations);
  });

  LsiEstimate estimate;
  for (std::size_t s = 0; s < starts; ++s) {
    if (s == 0 || results[s].ratio > estimate.witness_ratio) {
      estimate.witness_ratio = results[s].ratio;
      estimate.best_start = s;
    }
  }
  estimate.argmax = FunctionOnGroup(results[estimate.best_start].f);

  const double gap = options.gap ? *options.gap : spectral_report(ts).gap;
  estimate.two_over_gap = 2.0 / gap;
  estimate.lower_bound = std::max(estimate.witness_ratio, estimate.two_over_gap);
  return estimate;
}

}  // namespace tvwalk
