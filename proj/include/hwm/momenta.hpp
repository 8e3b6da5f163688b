#pragma once

#include "hwm/spectral.hpp"
#include "hwm/waves.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hwm {

enum class MomentumMethod { spectral, grid_oracle, paper_formula };

std::string to_string(MomentumMethod m);
MomentumMethod parse_method(const std::string &text);

/// Mean momenta of one field by one method. p-values are in units of length^-1
/// (same units as k); mean_lz is dimensionless.
struct MomentumReport {
  double mean_lz = 0.0;
  double mean_px = 0.0;
  double mean_py = 0.0;
  double mean_pz = 0.0;
  std::optional<double> elliptic_invariant; ///< <l_z^2 + f^2 p_x^2> when f is known
  MomentumMethod method = MomentumMethod::spectral;
  double norm_used = 0.0;
  std::string window = "none";
  std::vector<std::string> notes;
};

// ─────────────────────────────────────────────────────────────────────────────
// spectral means
// ─────────────────────────────────────────────────────────────────────────────

/// sum n |c_n|^2 / sum |c_n|^2. NumericalError when the norm is zero.
double mean_charge(const OamSpectrum &spec);

/// Mean l_z of a plane wave from its regularized ring profile over the
/// symmetric charge range [-n_range, n_range].
double oam_plane_wave(const LabelSetPlane &label, int n_range = 40,
                      int M = default_ring_samples);

/// The closed-form Mathieu-wave OAM sum
///   sum_m [m + (n mod 2)/2] |C_{2m + (n mod 2)}|^2 / sum_m |C_{2m + (n mod 2)}|^2
/// with C = A (even) or B (odd); the divergent delta(0)^2 factors cancel in
/// the ratio.
double oam_mathieu_paper(Parity parity, int n, double q,
                         const MathieuOptions &opts = {});

// ─────────────────────────────────────────────────────────────────────────────
// grid-operator oracle
// ─────────────────────────────────────────────────────────────────────────────

enum class GridOperator { lz, px, py, elliptic };

/// Half-open index box [ix0, ix1) x [iy0, iy1).
struct GridRegion {
  int ix0 = 0;
  int ix1 = 0;
  int iy0 = 0;
  int iy1 = 0;
};

struct GridMeanOptions {
  double f = 0.0;          ///< semi-focal distance, required for `elliptic`
  int stencil_order = 4;   ///< 2 or 4: accuracy order of the centred differences
  double imag_tolerance = 1e-6;
  std::optional<GridRegion> region; ///< clipped to the valid interior
};

struct GridQuotient {
  double value = 0.0;        ///< Re <Phi|O|Phi> / <Phi|Phi>
  double imag_residue = 0.0; ///< |Im <Phi|O|Phi>| / (||Phi|| ||O Phi||)
  double norm = 0.0;         ///< sum |Phi|^2 dx dy over the quadrature cells
  int cells = 0;
};

/// Rayleigh quotient of p_x = -i d/dx, p_y, l_z = -i(x d/dy - y d/dx) or
/// l_z^2 + f^2 p_x^2 (composed stencils) by centred finite differences. Cells
/// closer to the border than the stencil reach are excluded.
GridQuotient grid_quotient(const FieldGrid &field, GridOperator op,
                           const GridMeanOptions &opts = {});

/// grid_quotient(...).value; NumericalError when the imaginary residue exceeds
/// opts.imag_tolerance or the norm vanishes.
double grid_mean(const FieldGrid &field, GridOperator op,
                 const GridMeanOptions &opts = {});

/// Local quotients of l_z^2 + f^2 p_x^2 over a tiles x tiles partition of the
/// valid interior, used to check that the invariant is position independent.
struct EllipticSurvey {
  std::vector<double> tile_values;
  double mean = 0.0;
  double max_relative_deviation = 0.0;
};

EllipticSurvey elliptic_invariant_survey(const FieldGrid &field, double f,
                                         int tiles = 3,
                                         const GridMeanOptions &opts = {});

// ─────────────────────────────────────────────────────────────────────────────
// reports
// ─────────────────────────────────────────────────────────────────────────────

struct ReportOptions {
  bool spectral = true;
  bool grid = true;
  bool paper = true;
  std::optional<double> f; ///< enables the elliptic invariant
  Window window = Window::none;
  int ring_samples = default_ring_samples;
  /// Symmetric charge range; 0 selects M/2 - 1.
  int n_range = 0;
  int stencil_order = 4;
};

/// Spectral and grid-oracle reports for a sampled field, plus the closed-form
/// report when the field description names a wave label. Methods are never
/// averaged together.
std::vector<MomentumReport> report(const FieldGrid &field, const ReportOptions &opts);

/// Closed-form (paper-formula) report for a label set.
MomentumReport report(const WaveLabel &label);

} // namespace hwm
