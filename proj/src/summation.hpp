#pragma once

#include <cmath>

namespace tvwalk::detail {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0;
  double carry_ = 0;
};

// t log t with 0 log 0 = 0.
inline double xlogx(double t) { return t > 0 ? t * std::log(t) : 0.0; }

}  // namespace tvwalk::detail
