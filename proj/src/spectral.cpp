#include "hwm/spectral.hpp"

#include "hwm/detail/format.hpp"
#include "hwm/detail/parallel.hpp"
#include "hwm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hwm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

void check_ring_size(int M) {
  if (M < min_ring_samples || (M & (M - 1)) != 0)
    throw RangeError("ring sample count must be a power of two >= 256 (got " +
                     std::to_string(M) + ")");
}

void check_cone(double k, double theta) {
  if (!(k > 0.0) || !std::isfinite(k) || !(theta > 0.0 && theta < pi))
    throw DomainError("cone metadata requires k > 0 and theta in (0, pi)");
}

bool same_value(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

template <class T> T pairwise_impl(std::span<const T> v) {
  if (v.size() <= 8) {
    T s{};
    for (const T &x : v)
      s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_impl(v.subspan(0, half)) + pairwise_impl(v.subspan(half));
}

// exp(-2 pi i j / M), j in [0, M)
std::vector<cplx> twiddles(int M) {
  std::vector<cplx> w(M);
  for (int j = 0; j < M; ++j)
    w[j] = std::polar(1.0, -two_pi * j / M);
  return w;
}

} // namespace

cplx pairwise_sum(std::span<const cplx> values) { return pairwise_impl(values); }
double pairwise_sum(std::span<const double> values) { return pairwise_impl(values); }

double RingSpectrum::azimuth(int m) const { return -pi + two_pi * m / M; }

RingSpectrum RingSpectrum::sampled(double k, double theta, int M,
                                   const std::function<cplx(double)> &fn) {
  check_ring_size(M);
  RingSpectrum r;
  r.k = k;
  r.theta = theta;
  r.M = M;
  r.samples.resize(M);
  for (int m = 0; m < M; ++m)
    r.samples[m] = fn(r.azimuth(m));
  return r;
}

std::string to_string(Window w) { return w == Window::hann ? "hann" : "none"; }

Window parse_window(const std::string &text) {
  if (text == "none")
    return Window::none;
  if (text == "hann")
    return Window::hann;
  throw DomainError("unknown window '" + text + "' (expected none|hann)");
}

FieldGrid apply_window(const FieldGrid &field, Window window) {
  validate(field);
  if (window == Window::none)
    return field;
  const double margin_x = 2.0 * field.dx;
  const double margin_y = 2.0 * field.dy;
  const double radius =
      std::min({-field.x(0) - margin_x, field.x(field.nx - 1) - margin_x,
                -field.y(0) - margin_y, field.y(field.ny - 1) - margin_y});
  if (!(radius > 4.0 * std::max(field.dx, field.dy)))
    throw RangeError("hann window: the z axis must lie well inside the lattice");
  FieldGrid out = field;
  for (int iy = 0; iy < field.ny; ++iy) {
    for (int ix = 0; ix < field.nx; ++ix) {
      const double r = std::hypot(field.x(ix), field.y(iy));
      double w = 0.0;
      if (r < radius) {
        const double c = std::cos(pi * r / (2.0 * radius));
        w = c * c;
      }
      out.at(ix, iy) *= w;
    }
  }
  return out;
}

RingSpectrum ring_spectrum_from_grid(const FieldGrid &input, int M, Window window) {
  check_ring_size(M);
  validate(input);
  check_cone(input.meta.k, input.meta.theta);
  const double kt = input.meta.k * std::sin(input.meta.theta);
  const double nyquist = pi / std::max(input.dx, input.dy);
  if (!(kt < nyquist))
    throw RangeError("ring_spectrum_from_grid: transverse wavenumber " +
                     detail::fmt17(kt) + " is not below the lattice Nyquist limit " +
                     detail::fmt17(nyquist));

  const FieldGrid field = apply_window(input, window);
  const int nx = field.nx;
  const int ny = field.ny;
  // split storage for a tight inner loop
  std::vector<double> re(field.values.size()), im(field.values.size());
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    re[i] = field.values[i].real();
    im[i] = field.values[i].imag();
  }

  RingSpectrum ring;
  ring.k = field.meta.k;
  ring.theta = field.meta.theta;
  ring.M = M;
  ring.samples.resize(M);
  const double weight = std::sqrt(std::sin(field.meta.theta)) * field.dx * field.dy;

  detail::parallel_for(static_cast<std::size_t>(M), [&](std::size_t mi) {
    const double phi = ring.azimuth(static_cast<int>(mi));
    const double kx = kt * std::cos(phi);
    const double ky = kt * std::sin(phi);
    std::vector<double> ex_re(nx), ex_im(nx);
    for (int ix = 0; ix < nx; ++ix) {
      const double a = -kx * field.x(ix);
      ex_re[ix] = std::cos(a);
      ex_im[ix] = std::sin(a);
    }
    std::vector<cplx> rows(ny);
    for (int iy = 0; iy < ny; ++iy) {
      const double *pr = re.data() + static_cast<std::size_t>(iy) * nx;
      const double *pi_ = im.data() + static_cast<std::size_t>(iy) * nx;
      double sr = 0.0;
      double si = 0.0;
      for (int ix = 0; ix < nx; ++ix) {
        sr += pr[ix] * ex_re[ix] - pi_[ix] * ex_im[ix];
        si += pr[ix] * ex_im[ix] + pi_[ix] * ex_re[ix];
      }
      rows[iy] = cplx(sr, si) * std::polar(1.0, -ky * field.y(iy));
    }
    ring.samples[mi] = weight * pairwise_sum(std::span<const cplx>(rows));
  });
  return ring;
}

OamSpectrum oam_spectrum(const RingSpectrum &ring, int n_min, int n_max) {
  check_ring_size(ring.M);
  if (ring.samples.size() != static_cast<std::size_t>(ring.M))
    throw RangeError("oam_spectrum: ring sample count does not match M");
  if (n_max < n_min)
    throw RangeError("oam_spectrum: empty charge range");
  if (static_cast<long long>(n_max) - n_min + 1 > ring.M)
    throw RangeError("oam_spectrum: charge range [" + std::to_string(n_min) + ", " +
                     std::to_string(n_max) + "] exceeds the " +
                     std::to_string(ring.M) + " ring samples");

  const int M = ring.M;
  const std::vector<cplx> w = twiddles(M);
  const double prefactor = std::sqrt(std::sin(ring.theta) / two_pi) * two_pi / M;

  OamSpectrum out;
  out.k = ring.k;
  out.theta = ring.theta;
  out.n_min = n_min;
  out.n_max = n_max;
  out.coeffs.resize(static_cast<std::size_t>(n_max - n_min + 1));
  detail::parallel_for(out.coeffs.size(), [&](std::size_t idx) {
    const int n = n_min + static_cast<int>(idx);
    const int step = ((n % M) + M) % M;
    std::vector<cplx> terms(M);
    int j = 0;
    for (int m = 0; m < M; ++m) {
      terms[m] = ring.samples[m] * w[j];
      j += step;
      if (j >= M)
        j -= M;
    }
    // exp(-i n phi_m) = (-1)^n exp(-2 pi i n m / M)
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    out.coeffs[idx] = sign * prefactor * pairwise_sum(std::span<const cplx>(terms));
  });
  std::vector<double> mags(out.coeffs.size());
  for (std::size_t i = 0; i < mags.size(); ++i)
    mags[i] = std::norm(out.coeffs[i]);
  out.norm = pairwise_sum(std::span<const double>(mags));
  return out;
}

RingSpectrum analytic_ft_plane(const LabelSetPlane &label, int M) {
  validate(label);
  check_ring_size(M);
  RingSpectrum r;
  r.k = label.k;
  r.theta = label.theta;
  r.M = M;
  r.samples.assign(M, cplx{});
  int node = static_cast<int>(std::lround((label.phi + pi) * M / two_pi));
  node = ((node % M) + M) % M;
  r.samples[node] = M / two_pi / std::sqrt(std::sin(label.theta));
  return r;
}

RingSpectrum analytic_ft_bessel(const LabelSetBessel &label, int M) {
  validate(label);
  const double amp = 1.0 / std::sqrt(two_pi * std::sin(label.theta));
  const int n = label.n;
  return RingSpectrum::sampled(label.k, label.theta, M, [&](double phi) {
    return amp * std::polar(1.0, n * phi);
  });
}

RingSpectrum analytic_ft_mathieu(const LabelSetMathieu &label, int M) {
  validate(label);
  const MathieuFunction fn(label.parity, label.n, label.q());
  const double amp = 1.0 / std::sqrt(pi * std::sin(label.theta));
  return RingSpectrum::sampled(label.k, label.theta, M, [&](double phi) {
    return cplx(amp * fn.angular(phi), 0.0);
  });
}

cplx plancherel_overlap(const RingSpectrum &a, const RingSpectrum &b) {
  if (a.M != b.M || a.samples.size() != b.samples.size())
    throw DomainError("plancherel_overlap: ring sample counts differ");
  if (!same_value(a.theta, b.theta) || !same_value(a.k, b.k))
    throw DomainError("plancherel_overlap: operands live on different cones "
                      "(theta " + detail::fmt17(a.theta) + " vs " +
                      detail::fmt17(b.theta) + ")");
  std::vector<cplx> terms(a.samples.size());
  for (std::size_t m = 0; m < terms.size(); ++m)
    terms[m] = std::conj(a.samples[m]) * b.samples[m];
  return (two_pi / a.M) * pairwise_sum(std::span<const cplx>(terms));
}

double parseval_norm(const RingSpectrum &ring) {
  std::vector<double> mags(ring.samples.size());
  for (std::size_t m = 0; m < mags.size(); ++m)
    mags[m] = std::norm(ring.samples[m]);
  return (two_pi / ring.M) * pairwise_sum(std::span<const double>(mags));
}

MathieuBesselCoefficients bessel_coeffs_of_mathieu(const MathieuEigen &eigen,
                                                   double k, double theta) {
  const int jmax = static_cast<int>(eigen.coeffs.size()) - 1;
  const double r2 = std::numbers::sqrt2;
  MathieuBesselCoefficients out;

  OamSpectrum &one = out.one_sided;
  one.k = k;
  one.theta = theta;
  one.n_min = 0;
  one.n_max = jmax;
  one.coeffs.assign(jmax + 1, cplx{});
  for (int j = 0; j <= jmax; ++j)
    one.coeffs[j] = eigen.coeffs[j] / r2;

  OamSpectrum &two = out.two_sided;
  two.k = k;
  two.theta = theta;
  two.n_min = -jmax;
  two.n_max = jmax;
  two.coeffs.assign(2 * jmax + 1, cplx{});
  for (int j = 0; j <= jmax; ++j) {
    const double c = eigen.coeffs[j];
    if (eigen.parity == Parity::even) {
      if (j == 0) {
        two.coeffs[jmax] = r2 * c;
      } else {
        two.coeffs[jmax + j] = c / r2;
        two.coeffs[jmax - j] = c / r2;
      }
    } else if (j > 0) {
      two.coeffs[jmax + j] = cplx(0.0, -c / r2);
      two.coeffs[jmax - j] = cplx(0.0, c / r2);
    }
  }

  for (OamSpectrum *s : {&one, &two}) {
    std::vector<double> mags(s->coeffs.size());
    for (std::size_t i = 0; i < mags.size(); ++i)
      mags[i] = std::norm(s->coeffs[i]);
    s->norm = pairwise_sum(std::span<const double>(mags));
  }
  return out;
}

} // namespace hwm
