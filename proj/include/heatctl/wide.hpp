#pragma once

// Extended-precision helpers for sums whose terms cancel by many orders of
// magnitude (Laguerre coefficients, d_k^N, flattened control levels).

#include <cmath>
#include <cstdlib>

namespace heatctl {

#if defined(__SIZEOF_FLOAT128__)
using wide_float = __float128;
#else
using wide_float = long double;
#endif

inline wide_float wide_pow(wide_float base, int exponent) {
  wide_float result = 1;
  wide_float factor = exponent < 0 ? wide_float(1) / base : base;
  for (unsigned e = static_cast<unsigned>(std::abs(exponent)); e != 0; e >>= 1) {
    if (e & 1u) result *= factor;
    factor *= factor;
  }
  return result;
}

inline wide_float wide_abs(wide_float x) { return x < 0 ? -x : x; }

/// Neumaier-compensated accumulator.
template <typename T>
class CompensatedSum {
 public:
  void add(T value) {
    const T t = sum_ + value;
    if (abs_(sum_) >= abs_(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + compensation_; }

 private:
  static T abs_(T x) { return x < 0 ? -x : x; }
  T sum_ = 0;
  T compensation_ = 0;
};

}  // namespace heatctl
