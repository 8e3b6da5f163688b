#include "hwm/errors.hpp"
#include "hwm/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hwm {

namespace {

// Hankel asymptotic expansion for J_0 / J_1, used for x >= 25 where the
// smallest term of the divergent series is below e^{-2x}.
double bessel_j01_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0;
  double qs = 0.0;
  double term = 1.0;
  double last = INFINITY;
  for (int k = 0; k < 200; ++k) {
    // term = a_k(nu) / x^k with sign folded in below
    const double mag = std::abs(term);
    if (mag > last)
      break;
    last = mag;
    switch (k % 4) {
    case 0: p += term; break;
    case 1: qs += term; break;
    case 2: p -= term; break;
    case 3: qs -= term; break;
    }
    if (mag < 1e-18)
      break;
    const double odd = 2.0 * k + 1.0;
    term *= (mu - odd * odd) / ((k + 1) * 8.0 * x);
  }
  const double c = std::cos(x);
  const double s = std::sin(x);
  // omega = x - pi/4 - nu pi/2, expanded to keep the argument of cos/sin exact
  double cw, sw;
  if (nu == 0) {
    cw = (c + s) * std::numbers::sqrt2 / 2.0;
    sw = (s - c) * std::numbers::sqrt2 / 2.0;
  } else {
    cw = (s - c) * std::numbers::sqrt2 / 2.0;
    sw = -(s + c) * std::numbers::sqrt2 / 2.0;
  }
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cw - qs * sw);
}

double bessel_j_series(int n, double x) {
  // (x/2)^n / n! * sum_k (-x^2/4)^k / (k! (n+1)_k)
  const double lead =
      std::exp(n * std::log(x / 2.0) - std::lgamma(n + 1.0));
  const double y = -x * x / 4.0;
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= y / (k * static_cast<double>(n + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum))
      break;
  }
  return lead * sum;
}

// Miller's backward recurrence normalized by J_0 + 2 sum J_2k = 1.
double bessel_j_miller(int n, double x) {
  const double top = std::max(static_cast<double>(n), x);
  int m = static_cast<int>(top) + 30 + static_cast<int>(std::sqrt(60.0 * top));
  m += m % 2;
  constexpr double big = 1e250;
  double next = 0.0; // J_{k+1}
  double cur = 1e-280;
  double sum = 0.0;
  double result = 0.0;
  for (int k = m; k > 0; --k) {
    // cur = J_k, compute J_{k-1}
    const double prev = (2.0 * k / x) * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > big) {
      cur /= big;
      next /= big;
      sum /= big;
      result /= big;
    }
    if (k - 1 == n)
      result = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0)
      sum += cur;
  }
  if (n == 0)
    result = cur;
  const double norm = cur + 2.0 * sum;
  return result / norm;
}

} // namespace

double bessel_j(int n, double x) {
  if (std::abs(n) > bessel_max_order)
    throw RangeError("bessel_j: order " + std::to_string(n) +
                     " outside |n| <= " + std::to_string(bessel_max_order));
  if (!std::isfinite(x) || std::abs(x) > bessel_max_argument)
    throw RangeError("bessel_j: argument " + std::to_string(x) +
                     " outside |x| <= 1e4");

  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2)
      sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2)
      sign = -sign;
  }
  if (x == 0.0)
    return n == 0 ? sign : 0.0;

  if (x * x < n + 1.0 || x < 1e-3)
    return sign * bessel_j_series(n, x);

  if (x > 25.0 && n < x) {
    double jm = bessel_j01_asymptotic(0, x);
    if (n == 0)
      return sign * jm;
    double j = bessel_j01_asymptotic(1, x);
    for (int k = 1; k < n; ++k) {
      const double jp = (2.0 * k / x) * j - jm;
      jm = j;
      j = jp;
    }
    return sign * j;
  }
  return sign * bessel_j_miller(n, x);
}

} // namespace hwm
