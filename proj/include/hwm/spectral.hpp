#pragma once

#include "hwm/specfun.hpp"
#include "hwm/waves.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace hwm {

inline constexpr int default_ring_samples = 1024;
inline constexpr int min_ring_samples = 256;

/// Angular spectrum restricted to the cone |k_t| = k sin(theta), sampled at
/// azimuths phi_m = -pi + 2 pi m / M. Samples carry the (sin theta)^{1/2}
/// weight of the plane-wave basis.
struct RingSpectrum {
  static constexpr const char *weight_convention = "paper-(sinϑ)^{1/2}";

  double k = 0.0;
  double theta = 0.0;
  int M = 0;
  std::vector<cplx> samples;

  double azimuth(int m) const;

  /// Profile built by sampling fn(phi) at the M ring azimuths.
  static RingSpectrum sampled(double k, double theta, int M,
                              const std::function<cplx(double)> &fn);
};

/// Helmholtz-Bessel (orbital angular momentum) coefficients on one cone.
struct OamSpectrum {
  double k = 0.0;
  double theta = 0.0;
  int n_min = 0;
  int n_max = -1;
  std::vector<cplx> coeffs; ///< coeffs[n - n_min]
  double norm = 0.0;        ///< sum |c_n|^2 over the stored range

  cplx coeff(int n) const {
    return (n >= n_min && n <= n_max) ? coeffs[n - n_min] : cplx{};
  }
};

/// Spatial apodization applied before a transform. `hann` is a radial
/// raised-cosine cos^2(pi r / 2R) about the z axis; R is the largest radius
/// that stays two cells inside the lattice. Being rotationally symmetric it
/// commutes with l_z, so it does not mix topological charges.
enum class Window { none, hann };

std::string to_string(Window w);
Window parse_window(const std::string &text);

/// Copy of `field` multiplied by the window. RangeError if the z axis does
/// not lie well inside the lattice.
FieldGrid apply_window(const FieldGrid &field, Window window);

/// Riemann sum of the 2-D Fourier integral
///   s_m = (sin t)^{1/2} dx dy sum_j Phi(x_j) exp(-i k_t(m) . x_j)
/// evaluated directly at the M ring wavevectors (no FFT, no interpolation).
/// M must be a power of two >= 256. RangeError when k sin(theta) is at or
/// above the lattice Nyquist limit pi / max(dx, dy).
RingSpectrum ring_spectrum_from_grid(const FieldGrid &field,
                                     int M = default_ring_samples,
                                     Window window = Window::none);

/// c_n = (2 pi)^{-1/2} (sin t)^{1/2} (2 pi / M) sum_m s_m exp(-i n phi_m)
/// for n in [n_min, n_max]. RangeError when the range is empty or longer
/// than M. Over any M consecutive charges norm == sin(t) * parseval_norm(ring).
OamSpectrum oam_spectrum(const RingSpectrum &ring, int n_min, int n_max);

/// Plane-wave profile (sin t)^{-1/2} delta(phi - phi'): unit mass at the
/// azimuth node nearest phi', value M / (2 pi).
RingSpectrum analytic_ft_plane(const LabelSetPlane &label, int M = default_ring_samples);
/// (2 pi sin t)^{-1/2} exp(i n phi)
RingSpectrum analytic_ft_bessel(const LabelSetBessel &label, int M = default_ring_samples);
/// (pi sin t)^{-1/2} ce_n(phi, q) or se_n(phi, q)
RingSpectrum analytic_ft_mathieu(const LabelSetMathieu &label, int M = default_ring_samples);

/// (2 pi / M) sum conj(a_m) b_m. Both operands must share M and the cone
/// (k, theta); mixing cones is a DomainError rather than zero.
cplx plancherel_overlap(const RingSpectrum &a, const RingSpectrum &b);

/// (2 pi / M) sum |s_m|^2
double parseval_norm(const RingSpectrum &ring);

struct MathieuBesselCoefficients {
  /// 2^{-1/2} A_j (or B_j) at charge n = j >= 0, as in the closed form.
  OamSpectrum one_sided;
  /// cos / sin decomposition: A_j / sqrt2 at +-j (sqrt2 A_0 at 0) for even
  /// waves, -+ i B_j / sqrt2 at +-j for odd waves. Equals oam_spectrum of
  /// analytic_ft_mathieu.
  OamSpectrum two_sided;
};

MathieuBesselCoefficients bessel_coeffs_of_mathieu(const MathieuEigen &eigen,
                                                   double k, double theta);

/// Pairwise (cascade) sum in a fixed order.
cplx pairwise_sum(std::span<const cplx> values);
double pairwise_sum(std::span<const double> values);

} // namespace hwm
