#include "hwm/errors.hpp"
#include "hwm/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hwm {

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> offdiag) {
  const std::size_t n = diag.size();
  if (n == 0)
    return {};
  if (offdiag.size() + 1 != n)
    throw RangeError("tridiagonal_eigenvalues: off-diagonal length mismatch");

  std::vector<double> d(diag.begin(), diag.end());
  // e[i] couples d[i] and d[i+1]; e[n-1] is a zero sentinel
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());

  constexpr int max_sweeps = 60;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd)
          break;
      }
      if (m != l) {
        if (iter++ == max_sweeps)
          throw NumericalError(
              "tridiagonal_eigenvalues: no convergence for eigenvalue " +
              std::to_string(l));
        // Wilkinson-style shift from the leading 2x2 block
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t ii = m; ii-- > l;) {
          double f = s * e[ii];
          const double b = c * e[ii];
          r = std::hypot(f, g);
          e[ii + 1] = r;
          if (r == 0.0) {
            d[ii + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2.0 * c * b;
          p = s * r;
          d[ii + 1] = g + p;
          g = c * r - b;
        }
        if (underflow)
          continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> tridiagonal_eigenvector(std::span<const double> diag,
                                            std::span<const double> offdiag,
                                            double eigenvalue) {
  const std::size_t n = diag.size();
  if (n == 0)
    return {};
  if (offdiag.size() + 1 != n)
    throw RangeError("tridiagonal_eigenvector: off-diagonal length mismatch");
  if (n == 1)
    return {1.0};

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max(scale, std::abs(diag[i]));
    if (i + 1 < n)
      scale = std::max(scale, std::abs(offdiag[i]));
  }
  if (scale == 0.0)
    scale = 1.0;
  const double tiny = std::numeric_limits<double>::epsilon() * scale;

  // LU of (T - lambda I) with partial pivoting. Row i of U holds
  // u0[i] (diagonal), u1[i] (first super), u2[i] (second super, fill-in).
  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), lmul(n, 0.0);
  std::vector<char> swapped(n, 0);
  {
    double cur_d = diag[0] - eigenvalue;
    double cur_s = offdiag[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double sub = offdiag[i];
      const double nd = diag[i + 1] - eigenvalue;
      const double ns = (i + 2 < n) ? offdiag[i + 1] : 0.0;
      if (std::abs(sub) > std::abs(cur_d)) {
        // pivot row i+1 up
        swapped[i] = 1;
        u0[i] = sub;
        u1[i] = nd;
        u2[i] = ns;
        const double mult = cur_d / sub;
        lmul[i] = mult;
        cur_d = cur_s - mult * nd;
        cur_s = -mult * ns;
      } else {
        if (cur_d == 0.0)
          cur_d = tiny;
        u0[i] = cur_d;
        u1[i] = cur_s;
        u2[i] = 0.0;
        const double mult = sub / cur_d;
        lmul[i] = mult;
        cur_d = nd - mult * cur_s;
        cur_s = ns;
      }
    }
    u0[n - 1] = (cur_d == 0.0) ? tiny : cur_d;
  }

  auto solve = [&](std::vector<double> &x) {
    // forward: apply the row operations recorded in lmul/swapped
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) {
        std::swap(x[i], x[i + 1]);
        x[i + 1] -= lmul[i] * x[i];
      } else {
        x[i + 1] -= lmul[i] * x[i];
      }
    }
    // back substitution
    for (std::size_t ii = n; ii-- > 0;) {
      double v = x[ii];
      if (ii + 1 < n)
        v -= u1[ii] * x[ii + 1];
      if (ii + 2 < n)
        v -= u2[ii] * x[ii + 2];
      double piv = u0[ii];
      if (std::abs(piv) < tiny)
        piv = std::copysign(tiny, piv == 0.0 ? 1.0 : piv);
      x[ii] = v / piv;
    }
    double norm = 0.0;
    for (double v : x)
      norm += v * v;
    norm = std::sqrt(norm);
    for (double &v : x)
      v /= norm;
  };

  std::vector<double> x(n);
  // deterministic start vector without symmetry that could hide components
  for (std::size_t i = 0; i < n; ++i)
    x[i] = 1.0 + 0.1 * std::sin(1.0 + static_cast<double>(i));
  for (int it = 0; it < 3; ++it)
    solve(x);
  return x;
}

} // namespace hwm
