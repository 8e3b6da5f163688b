#include "hwm/waves.hpp"

#include "hwm/detail/format.hpp"
#include "hwm/detail/parallel.hpp"
#include "hwm/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string_view>

namespace hwm {

namespace {

constexpr double pi = std::numbers::pi;

void check_cone(double k, double theta, const char *what) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw DomainError(std::string(what) + ": k must be finite and > 0");
  if (!(theta > 0.0 && theta < pi))
    throw DomainError(std::string(what) + ": theta must lie in (0, pi)");
}

// i^n for any integer n
cplx i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
  case 0: return {1.0, 0.0};
  case 1: return {0.0, 1.0};
  case 2: return {-1.0, 0.0};
  default: return {0.0, -1.0};
  }
}

} // namespace

double LabelSetMathieu::q() const {
  const double h = f * k * std::sin(theta) / 2.0;
  return h * h;
}

void validate(const LabelSetPlane &label) {
  check_cone(label.k, label.theta, "plane wave");
  if (!(label.phi >= -pi && label.phi < pi))
    throw DomainError("plane wave: phi must lie in [-pi, pi)");
}

void validate(const LabelSetBessel &label) {
  check_cone(label.k, label.theta, "Bessel wave");
  if (std::abs(label.n) > bessel_max_order)
    throw DomainError("Bessel wave: |n| must not exceed 200");
}

void validate(const LabelSetMathieu &label) {
  check_cone(label.k, label.theta, "Mathieu wave");
  if (!(label.f > 0.0) || !std::isfinite(label.f))
    throw DomainError("Mathieu wave: f must be finite and > 0");
  if (!valid_mathieu_order(label.parity, label.n))
    throw DomainError("Mathieu wave: order " + std::to_string(label.n) +
                      " invalid for " + to_string(label.parity) + " parity");
}

void validate(const WaveLabel &label) {
  std::visit([](const auto &l) { validate(l); }, label);
}

double label_k(const WaveLabel &label) {
  return std::visit([](const auto &l) { return l.k; }, label);
}

double label_theta(const WaveLabel &label) {
  return std::visit([](const auto &l) { return l.theta; }, label);
}

std::string describe_label(const WaveLabel &label) {
  using detail::fmt17;
  std::string out;
  if (const auto *p = std::get_if<LabelSetPlane>(&label)) {
    out = "plane k=" + fmt17(p->k) + " theta=" + fmt17(p->theta) +
          " phi=" + fmt17(p->phi);
  } else if (const auto *b = std::get_if<LabelSetBessel>(&label)) {
    out = "bessel k=" + fmt17(b->k) + " theta=" + fmt17(b->theta) +
          " n=" + std::to_string(b->n);
  } else {
    const auto &m = std::get<LabelSetMathieu>(label);
    out = "mathieu-" + to_string(m.parity) + " k=" + fmt17(m.k) +
          " theta=" + fmt17(m.theta) + " n=" + std::to_string(m.n) +
          " f=" + fmt17(m.f);
  }
  return out;
}

std::optional<WaveLabel> parse_label(const std::string &text) {
  std::istringstream in(text);
  std::string family;
  in >> family;
  std::optional<double> k, theta, phi, f;
  std::optional<long long> n;
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      return std::nullopt;
    const std::string_view key(tok.data(), eq);
    const std::string_view val(tok.data() + eq + 1, tok.size() - eq - 1);
    if (key == "k")
      k = detail::parse_double(val);
    else if (key == "theta")
      theta = detail::parse_double(val);
    else if (key == "phi")
      phi = detail::parse_double(val);
    else if (key == "f")
      f = detail::parse_double(val);
    else if (key == "n")
      n = detail::parse_int(val);
    else
      return std::nullopt;
  }
  if (!k || !theta)
    return std::nullopt;
  if (family == "plane" && phi)
    return LabelSetPlane{*k, *theta, *phi};
  if (family == "bessel" && n)
    return LabelSetBessel{*k, *theta, static_cast<int>(*n)};
  if ((family == "mathieu-even" || family == "mathieu-odd") && n && f)
    return LabelSetMathieu{*k, *theta, static_cast<int>(*n),
                           family == "mathieu-even" ? Parity::even : Parity::odd, *f};
  return std::nullopt;
}

// ─────────────────────────────────────────────────────────────────────────────
// point evaluation
// ─────────────────────────────────────────────────────────────────────────────

cplx eval_plane_wave(const LabelSetPlane &label, const Point3 &p) {
  const double st = std::sin(label.theta);
  const double phase =
      label.k * (p.x * st * std::cos(label.phi) + p.y * st * std::sin(label.phi) +
                 p.z * std::cos(label.theta));
  return std::sqrt(st) * std::polar(1.0, phase);
}

cplx eval_bessel_wave(const LabelSetBessel &label, const Point3 &p) {
  const double st = std::sin(label.theta);
  const double r = std::hypot(p.x, p.y);
  const double azimuth = std::atan2(p.y, p.x);
  const double radial = bessel_j(label.n, label.k * st * r);
  const double phase = label.n * azimuth + label.k * p.z * std::cos(label.theta);
  return i_pow(label.n) * std::sqrt(2.0 * pi * st) * radial * std::polar(1.0, phase);
}

EllipticCoords elliptic_coords(double x, double y, double f) {
  if (!(f > 0.0))
    throw DomainError("elliptic_coords: f must be > 0");
  EllipticCoords out;
  if (y == 0.0) {
    const double u = x / f;
    if (std::abs(u) <= 1.0) {
      out.xi = 0.0;
      out.eta = std::acos(u);
    } else {
      out.xi = std::acosh(std::abs(u));
      out.eta = u > 0.0 ? 0.0 : pi;
    }
  } else {
    const cplx w = std::acosh(cplx(x / f, y / f));
    out.xi = w.real();
    out.eta = w.imag();
    if (out.xi < 0.0) {
      out.xi = -out.xi;
      out.eta = -out.eta;
    }
    if ((y > 0.0) != (out.eta > 0.0))
      out.eta = -out.eta;
  }
  if (out.eta >= pi)
    out.eta -= 2.0 * pi;
  return out;
}

MathieuWave::MathieuWave(const LabelSetMathieu &label)
    : label_(label),
      fn_((validate(label), mathieu_eigen(label.parity, label.n, label.q()))),
      norm_(fn_.norm_constant()) {}

cplx MathieuWave::operator()(const Point3 &p) const {
  const EllipticCoords c = elliptic_coords(p.x, p.y, label_.f);
  const double st = std::sin(label_.theta);
  const double amp = std::sqrt(st) * norm_ * fn_.radial(c.xi) * fn_.angular(c.eta);
  return amp * std::polar(1.0, label_.k * p.z * std::cos(label_.theta));
}

cplx eval_mathieu_wave(const LabelSetMathieu &label, const Point3 &p) {
  return MathieuWave(label)(p);
}

// ─────────────────────────────────────────────────────────────────────────────
// grids
// ─────────────────────────────────────────────────────────────────────────────

void validate(const FieldGrid &field) {
  if (field.nx < min_grid_samples || field.ny < min_grid_samples)
    throw RangeError("field grid must have at least 16 samples per axis (got " +
                     std::to_string(field.nx) + "x" + std::to_string(field.ny) + ")");
  if (!(field.dx > 0.0) || !(field.dy > 0.0))
    throw RangeError("field grid spacing must be > 0");
  if (field.values.size() != static_cast<std::size_t>(field.nx) * field.ny)
    throw RangeError("field grid payload size does not match nx*ny");
  for (std::size_t i = 0; i < field.values.size(); ++i)
    if (!std::isfinite(field.values[i].real()) || !std::isfinite(field.values[i].imag()))
      throw RangeError("field grid sample " + std::to_string(i) + " is not finite");
}

GridSpec GridSpec::centered(int nx, int ny, double dx, double dy, double z) {
  GridSpec s;
  s.nx = nx;
  s.ny = ny;
  s.dx = dx;
  s.dy = dy;
  s.x0 = -0.5 * (nx - 1) * dx;
  s.y0 = -0.5 * (ny - 1) * dy;
  s.z = z;
  return s;
}

FieldGrid sample_grid(const WaveLabel &label, const GridSpec &spec) {
  validate(label);
  FieldGrid grid;
  grid.nx = spec.nx;
  grid.ny = spec.ny;
  grid.dx = spec.dx;
  grid.dy = spec.dy;
  grid.x0 = spec.x0;
  grid.y0 = spec.y0;
  if (spec.nx < min_grid_samples || spec.ny < min_grid_samples)
    throw RangeError("sample_grid: at least 16 samples per axis required");
  if (!(spec.dx > 0.0) || !(spec.dy > 0.0))
    throw RangeError("sample_grid: spacing must be > 0");
  grid.meta.k = label_k(label);
  grid.meta.theta = label_theta(label);
  grid.meta.z_plane = spec.z;
  grid.meta.description = describe_label(label);
  grid.values.assign(static_cast<std::size_t>(spec.nx) * spec.ny, cplx{});

  std::optional<MathieuWave> mathieu;
  if (const auto *m = std::get_if<LabelSetMathieu>(&label))
    mathieu.emplace(*m);

  auto evaluate = [&](const Point3 &p) -> cplx {
    if (const auto *pl = std::get_if<LabelSetPlane>(&label))
      return eval_plane_wave(*pl, p);
    if (const auto *b = std::get_if<LabelSetBessel>(&label))
      return eval_bessel_wave(*b, p);
    return (*mathieu)(p);
  };

  detail::parallel_for(static_cast<std::size_t>(spec.ny), [&](std::size_t row) {
    const int iy = static_cast<int>(row);
    for (int ix = 0; ix < spec.nx; ++ix) {
      const Point3 p{grid.x(ix), grid.y(iy), spec.z};
      try {
        grid.at(ix, iy) = evaluate(p);
      } catch (const RangeError &e) {
        throw RangeError("sample (" + std::to_string(ix) + ", " +
                         std::to_string(iy) + "): " + e.what());
      }
    }
  });
  return grid;
}

} // namespace hwm
