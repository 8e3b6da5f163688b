#pragma once

#include "hwm/specfun.hpp"

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hwm {

using cplx = std::complex<double>;

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// ─────────────────────────────────────────────────────────────────────────────
// Characteristic label sets
// ─────────────────────────────────────────────────────────────────────────────

/// Plane wave {k, theta, phi}: wavevector k (sin t cos p, sin t sin p, cos t).
struct LabelSetPlane {
  double k = 1.0;
  double theta = 0.0; ///< polar angle in (0, pi)
  double phi = 0.0;   ///< azimuth in [-pi, pi)
};

/// Bessel wave {k, theta, n}; n is the topological charge.
struct LabelSetBessel {
  double k = 1.0;
  double theta = 0.0;
  int n = 0;
};

/// Mathieu wave {k, theta, n} in the elliptic system with semi-focal
/// distance f.
struct LabelSetMathieu {
  double k = 1.0;
  double theta = 0.0;
  int n = 0;
  Parity parity = Parity::even;
  double f = 1.0;

  /// Separation constant (f k sin(theta) / 2)^2.
  double q() const;
};

using WaveLabel = std::variant<LabelSetPlane, LabelSetBessel, LabelSetMathieu>;

/// DomainError when k <= 0, theta outside (0, pi), phi outside [-pi, pi),
/// f <= 0 or the Mathieu order is invalid for its parity.
void validate(const LabelSetPlane &label);
void validate(const LabelSetBessel &label);
void validate(const LabelSetMathieu &label);
void validate(const WaveLabel &label);

double label_k(const WaveLabel &label);
double label_theta(const WaveLabel &label);

/// Canonical one-line text form, e.g. "bessel k=1 theta=1.5707963267948966 n=2".
/// Stored in FieldGrid descriptions so downstream tools can recover the label.
std::string describe_label(const WaveLabel &label);
/// Inverse of describe_label; nullopt for any other text.
std::optional<WaveLabel> parse_label(const std::string &text);

// ─────────────────────────────────────────────────────────────────────────────
// Point evaluation
// ─────────────────────────────────────────────────────────────────────────────

/// (sin t)^{1/2} exp(i k (x sin t cos p + y sin t sin p + z cos t))
cplx eval_plane_wave(const LabelSetPlane &label, const Point3 &p);

/// i^n (2 pi sin t)^{1/2} J_n(k sin t r) exp(i (n phi + k z cos t))
cplx eval_bessel_wave(const LabelSetBessel &label, const Point3 &p);

/// (sin t)^{1/2} c_n Ce_n(xi) ce_n(eta) exp(i k z cos t), or the odd analogue
/// with s_n Se_n se_n. Solves the Mathieu eigensystem on every call; use
/// MathieuWave for repeated evaluation.
cplx eval_mathieu_wave(const LabelSetMathieu &label, const Point3 &p);

struct EllipticCoords {
  double xi = 0.0;  ///< >= 0
  double eta = 0.0; ///< in [-pi, pi), sign follows y
};

/// Inverse of x = f cosh(xi) cos(eta), y = f sinh(xi) sin(eta). Points on the
/// segment between the foci map to xi = 0; the origin maps to eta = pi/2.
EllipticCoords elliptic_coords(double x, double y, double f);

/// Mathieu wave with its eigensystem and normalization constant solved once.
class MathieuWave {
public:
  explicit MathieuWave(const LabelSetMathieu &label);

  const LabelSetMathieu &label() const { return label_; }
  const MathieuFunction &function() const { return fn_; }
  double norm_constant() const { return norm_; }

  cplx operator()(const Point3 &p) const;

private:
  LabelSetMathieu label_;
  MathieuFunction fn_;
  double norm_;
};

// ─────────────────────────────────────────────────────────────────────────────
// Sampled fields
// ─────────────────────────────────────────────────────────────────────────────

struct FieldMeta {
  double k = 0.0;
  double theta = 0.0;
  double z_plane = 0.0;
  std::string description;
};

/// Complex field on a uniform transverse lattice. Sample (ix, iy) sits at
/// (x0 + ix dx, y0 + iy dy); storage is row-major with y outer.
struct FieldGrid {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  std::vector<cplx> values;
  FieldMeta meta;

  double x(int ix) const { return x0 + ix * dx; }
  double y(int iy) const { return y0 + iy * dy; }
  cplx &at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  const cplx &at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * nx + ix];
  }
};

inline constexpr int min_grid_samples = 16;

/// RangeError unless nx, ny >= 16, dx, dy > 0, the payload size matches and
/// every sample is finite.
void validate(const FieldGrid &field);

struct GridSpec {
  int nx = 64;
  int ny = 64;
  double dx = 0.1;
  double dy = 0.1;
  double x0 = 0.0; ///< first sample coordinate
  double y0 = 0.0;
  double z = 0.0;

  /// Spec with the lattice centred on the z axis.
  static GridSpec centered(int nx, int ny, double dx, double dy, double z = 0.0);
};

/// Samples the wave on the lattice at z = spec.z. Meta k, theta come from the
/// label and the description is describe_label(label). Evaluation errors are
/// rethrown with the offending sample index.
FieldGrid sample_grid(const WaveLabel &label, const GridSpec &spec);

} // namespace hwm
