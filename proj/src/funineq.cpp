#include "tvwalk/funineq.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "summation.hpp"

namespace tvwalk {

using detail::CompensatedSum;
using detail::xlogx;

FunctionOnGroup::FunctionOnGroup(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("function values must be finite");
  }
}

FunctionOnGroup FunctionOnGroup::constant(const GroupTable& gt, double c) {
  return FunctionOnGroup(std::vector<double>(gt.size(), c));
}

FunctionOnGroup FunctionOnGroup::indicator(const GroupTable& gt, std::size_t index) {
  std::vector<double> values(gt.size(), 0.0);
  values.at(index) = 1.0;
  return FunctionOnGroup(std::move(values));
}

BoundReport BoundReport::compare(double lhs, double rhs, double tol) {
  BoundReport r{lhs, rhs, rhs - lhs, true};
  r.satisfied = r.slack >= -tol * std::max(1.0, std::abs(rhs));
  return r;
}

namespace {

void require_aligned(const FunctionOnGroup& f, const GroupTable& gt) {
  if (f.size() != gt.size()) throw std::invalid_argument("function does not match the group table");
}

}  // namespace

double mean(std::span<const double> f) {
  CompensatedSum s;
  for (double v : f) s.add(v);
  return s.value() / static_cast<double>(f.size());
}

double entropy_of_squares(std::span<const double> f) {
  CompensatedSum second;
  CompensatedSum xlx;
  for (double v : f) {
    const double sq = v * v;
    second.add(sq);
    xlx.add(xlogx(sq));
  }
  const double size = static_cast<double>(f.size());
  const double m = second.value() / size;
  return std::max(0.0, xlx.value() / size - xlogx(m));
}

double variational_entropy(std::span<const double> f, double u) {
  if (!(u > 0)) throw std::invalid_argument("u must be positive");
  CompensatedSum s;
  for (double v : f) {
    const double t = v * v;
    s.add((t > 0 ? t * std::log(t / u) : 0.0) - t + u);
  }
  return s.value() / static_cast<double>(f.size());
}

double expectation(const FunctionOnGroup& f, const GroupTable& gt) {
  require_aligned(f, gt);
  return mean(f.values());
}

double variance(const FunctionOnGroup& f, const GroupTable& gt) {
  const double m = expectation(f, gt);
  CompensatedSum s;
  for (double v : f.values()) s.add((v - m) * (v - m));
  return s.value() / static_cast<double>(f.size());
}

double entropy_sq(const FunctionOnGroup& f, const GroupTable& gt) {
  require_aligned(f, gt);
  return entropy_of_squares(f.values());
}

double dirichlet_form(const FunctionOnGroup& f, const TransitionStructure& ts, const GroupTable& gt) {
  require_aligned(f, gt);
  if (ts.size() != gt.size()) throw std::invalid_argument("transition structure does not match");
  CompensatedSum s;
  for (std::size_t x = 0; x < ts.size(); ++x) {
    for (std::uint32_t y : ts.neighbors_of(x)) {
      const double diff = f[x] - f[y];
      s.add(diff * diff);
    }
  }
  // (1/2) sum_x pi(x) sum_y P(x,y) (f(x) - f(y))^2
  return 0.5 * s.value() * gt.pi() * ts.step_probability();
}

BoundReport check_key_inequality(const FunctionOnGroup& f, const TransitionStructure& ts,
                                 const GroupTable& gt) {
  const auto n = static_cast<double>(gt.n());
  const double lhs = entropy_sq(f, gt);
  const double rhs = n * (n - 1) * dirichlet_form(f, ts, gt) + n * variance(f, gt);
  return BoundReport::compare(lhs, rhs);
}

// ------------------------------------------------------------ extension

ExtensionFunction ExtensionFunction::build(const FunctionOnGroup& f, const GroupTable& gt) {
  require_aligned(f, gt);
  const std::size_t n = gt.n();
  if (n > kMaxExtensionDim) throw std::invalid_argument("extension needs n <= 4");
  ExtensionFunction g;
  g.fill = expectation(f, gt);
  g.values.assign(std::size_t{1} << (n * n), g.fill);
  for (std::size_t x = 0; x < gt.size(); ++x) g.values[gt.key(x)] = f[x];
  return g;
}

BoundReport check_extension_inequality(const FunctionOnGroup& f, const GroupTable& gt) {
  const ExtensionFunction g = ExtensionFunction::build(f, gt);
  const double scale = static_cast<double>(g.values.size()) / static_cast<double>(gt.size());
  return BoundReport::compare(entropy_sq(f, gt), scale * entropy_of_squares(g.values));
}

// ------------------------------------------------------- row decomposition

namespace {

// Rank of a set of n-bit row vectors.
std::size_t rank_of_rows(std::span<const std::uint64_t> rows) {
  std::vector<std::uint64_t> basis;  // reduced, distinct leading bits
  for (std::uint64_t v : rows) {
    for (std::uint64_t b : basis) v = std::min(v, v ^ b);
    if (v != 0) {
      basis.push_back(v);
      std::sort(basis.rbegin(), basis.rend());
    }
  }
  return basis.size();
}

std::uint64_t row_of(std::uint64_t key, std::size_t n, std::size_t i) {
  return (key >> (i * n)) & ((std::uint64_t{1} << n) - 1);
}

std::uint64_t with_row(std::uint64_t key, std::size_t n, std::size_t i, std::uint64_t row) {
  const std::uint64_t mask = ((std::uint64_t{1} << n) - 1) << (i * n);
  return (key & ~mask) | (row << (i * n));
}

// Dirichlet form computed straight from transvections on keys, without the
// transition structure.
double dirichlet_by_moves(const FunctionOnGroup& f, const GroupTable& gt) {
  const std::size_t n = gt.n();
  CompensatedSum s;
  for (std::size_t x = 0; x < gt.size(); ++x) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const Transvection t{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j)};
        const double diff = f[x] - f[gt.index_of(apply_transvection_key(gt.key(x), n, t))];
        s.add(diff * diff);
      }
    }
  }
  return 0.5 * s.value() / static_cast<double>(gt.size()) / static_cast<double>(n * (n - 1));
}

}  // namespace

bool RowDecompositionReport::satisfied(double tol) const {
  const auto close = [tol](double err, double scale) { return err <= tol * std::max(1.0, std::abs(scale)); };
  return subadditivity.satisfied && conditional_lsi.satisfied && consolidated.satisfied &&
         transfer.satisfied && conditional_violations == 0 &&
         close(case_analysis_error, consolidated.rhs) && close(transfer_identity_error, transfer.rhs);
}

RowDecompositionReport check_row_decomposition(const FunctionOnGroup& f, const GroupTable& gt) {
  const std::size_t n = gt.n();
  if (n < 2 || n > kMaxRowDecompositionDim) throw std::invalid_argument("row decomposition needs 2 <= n <= 3");
  const ExtensionFunction g = ExtensionFunction::build(f, gt);
  const std::size_t all = g.values.size();
  const std::size_t row_values = std::size_t{1} << n;
  const double f_mean = g.fill;

  RowDecompositionReport report;
  const double ent_mu = entropy_of_squares(g.values);

  // Conditional entropies and hypercube Dirichlet terms, one row at a time.
  // Conditionings are enumerated by the keys whose row i is zero.
  CompensatedSum cond_total;
  CompensatedSum hyper_total;
  std::vector<double> slice(row_values);
  std::vector<std::uint64_t> others;
  const double conditionings = static_cast<double>(all / row_values);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint64_t base = 0; base < all; ++base) {
      if (row_of(base, n, i) != 0) continue;
      for (std::uint64_t v = 0; v < row_values; ++v) slice[v] = g.values[with_row(base, n, i, v)];
      const double cond_ent = entropy_of_squares(slice);

      others.clear();
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) others.push_back(row_of(base, n, k));
      }
      double hyper = 0;
      if (rank_of_rows(others) == n - 1) {
        // Directions of the hypercube: the other rows plus a completion.
        std::vector<std::uint64_t> directions = others;
        for (std::uint64_t c = 1; c < row_values; ++c) {
          others.push_back(c);
          const bool completes = rank_of_rows(others) == n;
          others.pop_back();
          if (completes) {
            directions.push_back(c);
            break;
          }
        }
        CompensatedSum h;
        for (std::uint64_t dir : directions) {
          for (std::uint64_t v = 0; v < row_values; ++v) {
            const double diff = slice[v] - slice[v ^ dir];
            h.add(diff * diff);
          }
        }
        hyper = 0.5 * h.value() / static_cast<double>(row_values);
      }
      if (!BoundReport::compare(cond_ent, hyper).satisfied) ++report.conditional_violations;
      cond_total.add(cond_ent / conditionings);
      hyper_total.add(hyper / conditionings);
    }
  }

  // Consolidated right-hand side, evaluated directly over the group:
  // (1/2) sum_{i != j} E_mu[1_{X in group} (f(X) - f(X^{i<-j}))^2]
  //   + n E_mu[1_{X in group} (f(X) - E_pi f)^2]
  CompensatedSum dirichlet_part;
  CompensatedSum variance_part;
  for (std::size_t x = 0; x < gt.size(); ++x) {
    const std::uint64_t key = gt.key(x);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const Transvection t{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j)};
        const double diff = f[x] - g.values[apply_transvection_key(key, n, t)];
        dirichlet_part.add(0.5 * diff * diff);
      }
    }
    variance_part.add(static_cast<double>(n) * (f[x] - f_mean) * (f[x] - f_mean));
  }
  const double consolidated_rhs = (dirichlet_part.value() + variance_part.value()) / static_cast<double>(all);

  report.subadditivity = BoundReport::compare(ent_mu, cond_total.value());
  report.conditional_lsi = BoundReport::compare(cond_total.value(), hyper_total.value());
  report.consolidated = BoundReport::compare(ent_mu, consolidated_rhs);
  report.case_analysis_error = std::abs(hyper_total.value() - consolidated_rhs);

  const double nd = static_cast<double>(n);
  const double transfer_rhs = nd * (nd - 1) * dirichlet_by_moves(f, gt) + nd * variance(f, gt);
  const double scaled = static_cast<double>(all) / static_cast<double>(gt.size()) * consolidated_rhs;
  report.transfer = BoundReport::compare(entropy_sq(f, gt), transfer_rhs);
  report.transfer_identity_error = std::abs(scaled - transfer_rhs);
  return report;
}

// ------------------------------------------------------------- hypercube

BoundReport hypercube_lsi_check(std::size_t d, std::span<const double> f) {
  if (d < 1 || d > kMaxHypercubeDim) throw std::invalid_argument("hypercube dimension must be in [1, 12]");
  if (f.size() != (std::size_t{1} << d)) throw std::invalid_argument("function size must be 2^d");
  CompensatedSum s;
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = f[a] - f[a ^ (std::size_t{1} << j)];
      s.add(diff * diff);
    }
  }
  const double dd = static_cast<double>(d);
  const double cube_dirichlet = 0.5 * s.value() / static_cast<double>(f.size()) / dd;
  return BoundReport::compare(entropy_of_squares(f), dd * cube_dirichlet);
}

// ------------------------------------------------------------- Kassabov

double kassabov_constant(std::size_t n) {
  const double c = 31.0 * std::sqrt(static_cast<double>(n)) + 700.0;
  return 4.0 * c * c;
}

BoundReport kassabov_check(const FunctionOnGroup& f, const TransitionStructure& ts, const GroupTable& gt) {
  return BoundReport::compare(variance(f, gt), kassabov_constant(gt.n()) * dirichlet_form(f, ts, gt));
}

BoundReport kassabov_spectral_check(const SpectralReport& spectrum, std::size_t n) {
  // gap >= 1/K written as lhs <= rhs
  return BoundReport::compare(1.0 / kassabov_constant(n), spectrum.gap);
}

}  // namespace tvwalk
