#include "hwm/momenta.hpp"

#include "hwm/detail/format.hpp"
#include "hwm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hwm {

namespace {

using detail::fmt17;

struct Stencil {
  int reach;
  // weights for offsets 1..reach; antisymmetric about 0
  double w[2];
};

Stencil stencil_for(int order) {
  if (order == 2)
    return {1, {0.5, 0.0}};
  if (order == 4)
    return {2, {8.0 / 12.0, -1.0 / 12.0}};
  throw DomainError("stencil order must be 2 or 4 (got " + std::to_string(order) + ")");
}

// Centred first derivatives of `in` at cells with margin >= `margin` from the
// border (margin >= reach); other cells are left at zero.
struct Derivs {
  std::vector<cplx> dx, dy;
};

Derivs derivatives(const std::vector<cplx> &in, int nx, int ny, double hx, double hy,
                   const Stencil &s, int margin) {
  Derivs d{std::vector<cplx>(in.size()), std::vector<cplx>(in.size())};
  for (int iy = margin; iy < ny - margin; ++iy) {
    for (int ix = margin; ix < nx - margin; ++ix) {
      const std::size_t c = static_cast<std::size_t>(iy) * nx + ix;
      cplx gx{}, gy{};
      for (int o = 1; o <= s.reach; ++o) {
        gx += s.w[o - 1] * (in[c + o] - in[c - o]);
        gy += s.w[o - 1] * (in[c + static_cast<std::size_t>(o) * nx] -
                            in[c - static_cast<std::size_t>(o) * nx]);
      }
      d.dx[c] = gx / hx;
      d.dy[c] = gy / hy;
    }
  }
  return d;
}

// (x d/dy - y d/dx) applied at cells with the given margin
std::vector<cplx> rotation(const FieldGrid &g, const Derivs &d, int margin) {
  std::vector<cplx> out(d.dx.size());
  for (int iy = margin; iy < g.ny - margin; ++iy)
    for (int ix = margin; ix < g.nx - margin; ++ix) {
      const std::size_t c = static_cast<std::size_t>(iy) * g.nx + ix;
      out[c] = g.x(ix) * d.dy[c] - g.y(iy) * d.dx[c];
    }
  return out;
}

struct Box {
  int ix0, ix1, iy0, iy1;
};

Box quadrature_box(const FieldGrid &g, int reach, const std::optional<GridRegion> &region) {
  Box b{reach, g.nx - reach, reach, g.ny - reach};
  if (b.ix1 - b.ix0 < 8 || b.iy1 - b.iy0 < 8)
    throw RangeError("grid operator: interior smaller than 8 cells per axis");
  if (region) {
    b.ix0 = std::max(b.ix0, region->ix0);
    b.ix1 = std::min(b.ix1, region->ix1);
    b.iy0 = std::max(b.iy0, region->iy0);
    b.iy1 = std::min(b.iy1, region->iy1);
    if (b.ix1 <= b.ix0 || b.iy1 <= b.iy0)
      throw RangeError("grid operator: region does not intersect the valid interior");
  }
  return b;
}

double ratio_of(const std::vector<double> &num, const std::vector<double> &den) {
  const double d = pairwise_sum(std::span<const double>(den));
  if (!(d > 0.0))
    throw NumericalError("mean value undefined: zero norm");
  return pairwise_sum(std::span<const double>(num)) / d;
}

} // namespace

std::string to_string(MomentumMethod m) {
  switch (m) {
  case MomentumMethod::spectral: return "spectral";
  case MomentumMethod::grid_oracle: return "grid-oracle";
  default: return "paper-formula";
  }
}

MomentumMethod parse_method(const std::string &text) {
  if (text == "spectral")
    return MomentumMethod::spectral;
  if (text == "grid" || text == "grid-oracle")
    return MomentumMethod::grid_oracle;
  if (text == "paper" || text == "paper-formula")
    return MomentumMethod::paper_formula;
  throw DomainError("unknown method '" + text + "' (expected spectral|grid|paper)");
}

double mean_charge(const OamSpectrum &spec) {
  std::vector<double> num(spec.coeffs.size()), den(spec.coeffs.size());
  for (std::size_t i = 0; i < spec.coeffs.size(); ++i) {
    den[i] = std::norm(spec.coeffs[i]);
    num[i] = (spec.n_min + static_cast<int>(i)) * den[i];
  }
  return ratio_of(num, den);
}

double oam_plane_wave(const LabelSetPlane &label, int n_range, int M) {
  if (n_range < 0)
    throw RangeError("oam_plane_wave: n_range must be >= 0");
  return mean_charge(oam_spectrum(analytic_ft_plane(label, M), -n_range, n_range));
}

double oam_mathieu_paper(Parity parity, int n, double q, const MathieuOptions &opts) {
  const MathieuEigen e = mathieu_eigen(parity, n, q, opts);
  const int offset = ((n % 2) + 2) % 2;
  std::vector<double> num, den;
  for (int m = 0;; ++m) {
    const int j = 2 * m + offset;
    if (j >= static_cast<int>(e.coeffs.size()))
      break;
    const double w = e.coeffs[j] * e.coeffs[j];
    den.push_back(w);
    num.push_back((m + 0.5 * offset) * w);
  }
  return ratio_of(num, den);
}

GridQuotient grid_quotient(const FieldGrid &field, GridOperator op,
                           const GridMeanOptions &opts) {
  validate(field);
  const Stencil s = stencil_for(opts.stencil_order);
  const int reach = op == GridOperator::elliptic ? 2 * s.reach : s.reach;
  const Box box = quadrature_box(field, reach, opts.region);
  const int nx = field.nx;
  const int ny = field.ny;
  const std::vector<cplx> &phi = field.values;

  // action[c] = (O Phi)(c)
  std::vector<cplx> action;
  const Derivs d = derivatives(phi, nx, ny, field.dx, field.dy, s, s.reach);
  const cplx minus_i(0.0, -1.0);
  switch (op) {
  case GridOperator::px:
    action = d.dx;
    for (auto &v : action)
      v *= minus_i;
    break;
  case GridOperator::py:
    action = d.dy;
    for (auto &v : action)
      v *= minus_i;
    break;
  case GridOperator::lz:
    action = rotation(field, d, s.reach);
    for (auto &v : action)
      v *= minus_i;
    break;
  case GridOperator::elliptic: {
    if (!(opts.f > 0.0) || !std::isfinite(opts.f))
      throw DomainError("elliptic operator requires f > 0");
    // l_z^2 = -G G,  p_x^2 = -D_x D_x  with G = x d/dy - y d/dx
    const std::vector<cplx> g1 = rotation(field, d, s.reach);
    const Derivs dg = derivatives(g1, nx, ny, field.dx, field.dy, s, reach);
    const std::vector<cplx> g2 = rotation(field, dg, reach);
    const Derivs dxx = derivatives(d.dx, nx, ny, field.dx, field.dy, s, reach);
    const double f2 = opts.f * opts.f;
    action.resize(phi.size());
    for (std::size_t c = 0; c < phi.size(); ++c)
      action[c] = -g2[c] - f2 * dxx.dx[c];
    break;
  }
  }

  std::vector<cplx> num_rows;
  std::vector<double> den_rows, act_rows;
  for (int iy = box.iy0; iy < box.iy1; ++iy) {
    const std::size_t row = static_cast<std::size_t>(iy) * nx;
    std::vector<cplx> num(box.ix1 - box.ix0);
    std::vector<double> den(num.size()), act(num.size());
    for (int ix = box.ix0; ix < box.ix1; ++ix) {
      const std::size_t c = row + ix;
      num[ix - box.ix0] = std::conj(phi[c]) * action[c];
      den[ix - box.ix0] = std::norm(phi[c]);
      act[ix - box.ix0] = std::norm(action[c]);
    }
    num_rows.push_back(pairwise_sum(std::span<const cplx>(num)));
    den_rows.push_back(pairwise_sum(std::span<const double>(den)));
    act_rows.push_back(pairwise_sum(std::span<const double>(act)));
  }
  const cplx num = pairwise_sum(std::span<const cplx>(num_rows));
  const double den = pairwise_sum(std::span<const double>(den_rows));
  const double act = pairwise_sum(std::span<const double>(act_rows));

  GridQuotient out;
  out.cells = (box.ix1 - box.ix0) * (box.iy1 - box.iy0);
  out.norm = den * field.dx * field.dy;
  if (!(den > 0.0))
    throw NumericalError("grid operator: mean value undefined, field vanishes on the "
                         "quadrature region");
  out.value = num.real() / den;
  const double scale = std::sqrt(den * act);
  out.imag_residue = scale > 0.0 ? std::abs(num.imag()) / scale : 0.0;
  return out;
}

double grid_mean(const FieldGrid &field, GridOperator op, const GridMeanOptions &opts) {
  const GridQuotient g = grid_quotient(field, op, opts);
  if (!(g.imag_residue <= opts.imag_tolerance))
    throw NumericalError("grid operator: imaginary residue " + fmt17(g.imag_residue) +
                         " exceeds tolerance " + fmt17(opts.imag_tolerance) +
                         " (field not sampled finely enough or not negligible at the "
                         "border; try a window)");
  return g.value;
}

EllipticSurvey elliptic_invariant_survey(const FieldGrid &field, double f, int tiles,
                                         const GridMeanOptions &opts) {
  if (tiles < 1)
    throw RangeError("elliptic survey: tiles must be >= 1");
  const Stencil s = stencil_for(opts.stencil_order);
  const int reach = 2 * s.reach;
  const int wx = field.nx - 2 * reach;
  const int wy = field.ny - 2 * reach;
  EllipticSurvey out;
  for (int ty = 0; ty < tiles; ++ty) {
    for (int tx = 0; tx < tiles; ++tx) {
      GridMeanOptions o = opts;
      o.f = f;
      o.region = GridRegion{reach + tx * wx / tiles, reach + (tx + 1) * wx / tiles,
                            reach + ty * wy / tiles, reach + (ty + 1) * wy / tiles};
      out.tile_values.push_back(grid_quotient(field, GridOperator::elliptic, o).value);
    }
  }
  double sum = 0.0;
  for (double v : out.tile_values)
    sum += v;
  out.mean = sum / static_cast<double>(out.tile_values.size());
  for (double v : out.tile_values)
    out.max_relative_deviation =
        std::max(out.max_relative_deviation, std::abs(v - out.mean) / std::abs(out.mean));
  return out;
}

namespace {

MomentumReport spectral_report(const FieldGrid &field, const ReportOptions &opts) {
  const RingSpectrum ring = ring_spectrum_from_grid(field, opts.ring_samples, opts.window);
  const int nr = opts.n_range > 0 ? opts.n_range : ring.M / 2 - 1;
  const OamSpectrum oam = oam_spectrum(ring, -nr, nr);
  const double kt = field.meta.k * std::sin(field.meta.theta);

  std::vector<double> w(ring.M), wc(ring.M), ws(ring.M), wcc(ring.M);
  for (int m = 0; m < ring.M; ++m) {
    const double phi = ring.azimuth(m);
    w[m] = std::norm(ring.samples[m]);
    wc[m] = w[m] * std::cos(phi);
    ws[m] = w[m] * std::sin(phi);
    wcc[m] = wc[m] * std::cos(phi);
  }

  MomentumReport r;
  r.method = MomentumMethod::spectral;
  r.window = to_string(opts.window);
  r.mean_lz = mean_charge(oam);
  r.mean_px = kt * ratio_of(wc, w);
  r.mean_py = kt * ratio_of(ws, w);
  r.mean_pz = field.meta.k * std::cos(field.meta.theta);
  r.norm_used = oam.norm;
  if (opts.f) {
    std::vector<double> n2(oam.coeffs.size()), c2(oam.coeffs.size());
    for (std::size_t i = 0; i < c2.size(); ++i) {
      const double n = oam.n_min + static_cast<int>(i);
      c2[i] = std::norm(oam.coeffs[i]);
      n2[i] = n * n * c2[i];
    }
    const double f = *opts.f;
    r.elliptic_invariant = ratio_of(n2, c2) + f * f * kt * kt * ratio_of(wcc, w);
  }
  r.notes.push_back("ring samples M=" + std::to_string(ring.M) + ", charges [" +
                    std::to_string(-nr) + ", " + std::to_string(nr) + "]");
  r.notes.push_back("mean_pz from cone metadata k cos(theta)");
  return r;
}

MomentumReport grid_report(const FieldGrid &input, const ReportOptions &opts) {
  const FieldGrid field = apply_window(input, opts.window);
  GridMeanOptions g;
  g.stencil_order = opts.stencil_order;
  MomentumReport r;
  r.method = MomentumMethod::grid_oracle;
  r.window = to_string(opts.window);
  const GridQuotient lz = grid_quotient(field, GridOperator::lz, g);
  r.mean_lz = grid_mean(field, GridOperator::lz, g);
  r.mean_px = grid_mean(field, GridOperator::px, g);
  r.mean_py = grid_mean(field, GridOperator::py, g);
  r.mean_pz = field.meta.k * std::cos(field.meta.theta);
  r.norm_used = lz.norm;
  if (opts.f) {
    g.f = *opts.f;
    r.elliptic_invariant = grid_mean(field, GridOperator::elliptic, g);
  }
  r.notes.push_back("centred differences of order " + std::to_string(opts.stencil_order));
  r.notes.push_back("mean_pz from cone metadata k cos(theta)");
  return r;
}

} // namespace

std::vector<MomentumReport> report(const FieldGrid &field, const ReportOptions &opts) {
  validate(field);
  std::vector<MomentumReport> out;
  if (opts.spectral)
    out.push_back(spectral_report(field, opts));
  if (opts.grid)
    out.push_back(grid_report(field, opts));
  if (opts.paper) {
    if (const auto label = parse_label(field.meta.description)) {
      out.push_back(report(*label));
    }
  }
  return out;
}

MomentumReport report(const WaveLabel &label) {
  validate(label);
  MomentumReport r;
  r.method = MomentumMethod::paper_formula;
  const double k = label_k(label);
  const double theta = label_theta(label);
  const double kt = k * std::sin(theta);
  r.mean_pz = k * std::cos(theta);
  r.norm_used = 1.0;
  if (const auto *p = std::get_if<LabelSetPlane>(&label)) {
    r.mean_lz = oam_plane_wave(*p);
    r.mean_px = kt * std::cos(p->phi);
    r.mean_py = kt * std::sin(p->phi);
    r.notes.push_back("plane-wave eigenvalues; mean l_z over charges [-40, 40]");
  } else if (const auto *b = std::get_if<LabelSetBessel>(&label)) {
    r.mean_lz = b->n;
    r.notes.push_back("Bessel-wave eigenvalue of l_z");
  } else {
    const auto &m = std::get<LabelSetMathieu>(label);
    const MathieuEigen e = mathieu_eigen(m.parity, m.n, m.q());
    r.mean_lz = oam_mathieu_paper(m.parity, m.n, m.q());
    r.elliptic_invariant = e.char_value;
    r.notes.push_back("mean_lz: one-sided closed-form coefficient sum; the two-sided "
                      "spectral mean of a real Mathieu wave is 0");
    r.notes.push_back("elliptic_invariant: characteristic value as the closed-form "
                      "eigenvalue; for q = (f k sin(theta) / 2)^2 the operator "
                      "l_z^2 + f^2 p_x^2 measures characteristic value + 2q");
  }
  return r;
}

} // namespace hwm
