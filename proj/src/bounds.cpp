#include <cmath>
#include <stdexcept>

#include "tvwalk/funineq.hpp"

namespace tvwalk {

double log_log_inverse_pi_star(std::size_t n) {
  if (n < 2) throw std::invalid_argument("needs n >= 2");
  return static_cast<double>(std::log(log_group_order(n)));
}

double mixing_bound(std::size_t n, double eps, double cls, double inv_abs_gap) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(cls > 0)) throw std::invalid_argument("log-Sobolev constant must be positive");
  if (!(inv_abs_gap > 0)) throw std::invalid_argument("inverse absolute gap must be positive");
  const double e2 = std::exp(2.0);
  return cls / 4.0 * log_log_inverse_pi_star(n) + inv_abs_gap * std::log(std::sqrt(1.0 + 2.0 * e2) / eps) +
         1.0;
}

std::uint64_t counting_lower_bound(std::size_t n, double eps) {
  if (n < 2) throw std::invalid_argument("needs n >= 2");
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
  const long double per_step = std::log(static_cast<long double>(n) * static_cast<long double>(n - 1));
  const long double target = std::log1p(-static_cast<long double>(eps)) + log_group_order(n);
  if (target <= 0) return 0;
  if (per_step <= 0) throw std::invalid_argument("a single move cannot cover the group");
  auto t = static_cast<std::uint64_t>(std::ceil(target / per_step));
  // Guard against the ceiling landing one step high through rounding.
  while (t > 0 && static_cast<long double>(t - 1) * per_step >= target) --t;
  return t;
}

}  // namespace tvwalk
