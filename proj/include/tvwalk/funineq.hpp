#pragma once

// Functional inequalities on enumerated groups: entropy, variance and
// Dirichlet forms, numerical checks of each step of the log-Sobolev argument,
// log-Sobolev constant estimation, and the mixing-time bound calculators.
//
// Conventions: 0 log 0 = 0; logs are natural; pi is uniform on the group.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tvwalk/exact_group.hpp"

namespace tvwalk {

inline constexpr double kInequalityTolerance = 1e-9;

class FunctionOnGroup {
 public:
  FunctionOnGroup() = default;
  explicit FunctionOnGroup(std::vector<double> values);

  static FunctionOnGroup constant(const GroupTable& gt, double c);
  static FunctionOnGroup indicator(const GroupTable& gt, std::size_t index);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

// lhs <= rhs up to kInequalityTolerance * max(1, |rhs|).
struct BoundReport {
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
  bool satisfied = true;

  static BoundReport compare(double lhs, double rhs, double tol = kInequalityTolerance);
};

// Uniform-measure helpers over an arbitrary finite set.
double mean(std::span<const double> f);
double entropy_of_squares(std::span<const double> f);
// Average of t log(t/u) - t + u with t = f^2; minimized at u = E[f^2],
// where it equals entropy_of_squares(f).
double variational_entropy(std::span<const double> f, double u);

double expectation(const FunctionOnGroup& f, const GroupTable& gt);
double variance(const FunctionOnGroup& f, const GroupTable& gt);
double entropy_sq(const FunctionOnGroup& f, const GroupTable& gt);
double dirichlet_form(const FunctionOnGroup& f, const TransitionStructure& ts, const GroupTable& gt);

// ent_pi(f^2) <= n(n-1) E_P(f,f) + n var_pi(f)
BoundReport check_key_inequality(const FunctionOnGroup& f, const TransitionStructure& ts,
                                 const GroupTable& gt);

// g on all 2^{n^2} binary matrices, indexed by key: f on the group and
// E_pi[f] everywhere else.
struct ExtensionFunction {
  std::vector<double> values;
  double fill = 0;

  static ExtensionFunction build(const FunctionOnGroup& f, const GroupTable& gt);
};

inline constexpr std::size_t kMaxExtensionDim = 4;

// ent_pi(f^2) <= (2^{n^2} / |group|) ent_mu(g^2), mu uniform on all matrices.
BoundReport check_extension_inequality(const FunctionOnGroup& f, const GroupTable& gt);

inline constexpr std::size_t kMaxRowDecompositionDim = 3;

// The row-by-row argument on all n x n matrices: sub-additivity of entropy
// over independent rows, the hypercube log-Sobolev bound for each
// conditional law, the case analysis that collapses the hypercube terms to a
// Dirichlet part plus a variance part, and the transfer back to pi.
struct RowDecompositionReport {
  BoundReport subadditivity;   // ent_mu(g^2) <= sum_i E[ent_mu(g^2 | other rows)]
  BoundReport conditional_lsi;  // that sum <= sum_i E[hypercube Dirichlet terms]
  BoundReport consolidated;    // ent_mu(g^2) <= Dirichlet part + variance part
  double case_analysis_error = 0;  // |hypercube terms - consolidated rhs|
  BoundReport transfer;        // ent_pi(f^2) <= n(n-1) E_P + n var_pi
  double transfer_identity_error = 0;  // |scaled consolidated rhs - transfer rhs|
  std::size_t conditional_violations = 0;

  bool satisfied(double tol = kInequalityTolerance) const;
};

RowDecompositionReport check_row_decomposition(const FunctionOnGroup& f, const GroupTable& gt);

inline constexpr std::size_t kMaxHypercubeDim = 12;

// ent(f^2) <= d * E_cube(f,f) on {0,1}^d, E_cube for the walk flipping one
// uniform coordinate. f is indexed by the integer whose bits are the point.
BoundReport hypercube_lsi_check(std::size_t d, std::span<const double> f);

// 4 (31 sqrt(n) + 700)^2
double kassabov_constant(std::size_t n);
BoundReport kassabov_check(const FunctionOnGroup& f, const TransitionStructure& ts,
                           const GroupTable& gt);
// gap >= 1 / kassabov_constant(n)
BoundReport kassabov_spectral_check(const SpectralReport& spectrum, std::size_t n);

// ent_pi(f^2) / E_P(f,f); E must be positive.
double lsi_ratio(const FunctionOnGroup& f, const TransitionStructure& ts, const GroupTable& gt);

struct LsiOptions {
  std::size_t restarts = 16;
  std::size_t iterations = 400;
  std::uint64_t seed = 1;
  std::optional<double> gap;  // computed from the spectrum when absent
  std::size_t threads = 1;
};

struct LsiEstimate {
  // max(witness_ratio, two_over_gap); both sides are lower bounds on C_LS.
  double lower_bound = 0;
  double witness_ratio = 0;
  double two_over_gap = 0;
  FunctionOnGroup argmax;
  std::size_t best_start = 0;  // 0: indicator of identity, 1: eigenvector start, 2..: random
};

inline constexpr std::size_t kMaxLsiDim = 3;

// Projected gradient ascent of ent/E on the unit sphere from the indicator
// of the identity, a near-constant start along the slowest eigenvector, and
// `restarts` Gaussian starts. Ties go to the lowest start index.
LsiEstimate estimate_lsi_constant(const TransitionStructure& ts, const GroupTable& gt,
                                  const LsiOptions& options = {});

// log log (1 / pi_star) = log(log |GL_n(F_2)|)
double log_log_inverse_pi_star(std::size_t n);

// (cls/4) log log(1/pi_star) + inv_abs_gap * log(sqrt(1 + 2e^2) / eps) + 1
double mixing_bound(std::size_t n, double eps, double cls, double inv_abs_gap);

// Smallest t with (n(n-1))^t >= (1 - eps) |GL_n(F_2)|: before that the walk
// cannot cover enough of the group to be eps-close in total variation.
std::uint64_t counting_lower_bound(std::size_t n, double eps);

// ---------------------------------------------------------- randomized suites

enum class InequalitySuite { Key, Extension, RowDecomposition, Hypercube, Kassabov, KassabovSpectral };

std::string suite_name(InequalitySuite suite);
std::optional<InequalitySuite> parse_suite(const std::string& name);
std::vector<InequalitySuite> all_suites();

struct SuiteConfig {
  std::size_t n = 2;
  std::size_t hypercube_dim = 8;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
};

struct SuiteResult {
  std::string check_name;
  std::size_t n = 0;  // hypercube dimension for the hypercube suite
  std::size_t trials = 0;
  std::size_t violations = 0;
  double min_slack = 0;
};

// Test functions cycle through families by trial index: indicator of a
// random state, +1/-1 at two random states, near-constant perturbations,
// log-normal magnitudes, and i.i.d. standard Gaussians (the majority).
std::vector<double> random_test_function(std::size_t size, std::uint64_t seed, std::size_t trial);

SuiteResult run_inequality_suite(InequalitySuite suite, const SuiteConfig& config);

}  // namespace tvwalk
