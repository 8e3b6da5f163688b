#include "hwm/errors.hpp"
#include "hwm/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hwm {

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity parse_parity(const std::string &text) {
  if (text == "even")
    return Parity::even;
  if (text == "odd")
    return Parity::odd;
  throw DomainError("unknown parity '" + text + "' (expected even|odd)");
}

MathieuClass MathieuClass::of(Parity parity, int order) {
  return MathieuClass{parity, ((order % 2) + 2) % 2};
}

int MathieuClass::first_harmonic() const {
  if (parity == Parity::even)
    return order_parity;
  return order_parity == 1 ? 1 : 2;
}

int MathieuClass::rank_of(int order) const {
  return (order - first_harmonic()) / 2;
}

bool valid_mathieu_order(Parity parity, int order) {
  return parity == Parity::even ? order >= 0 : order >= 1;
}

namespace {

constexpr int max_dimension = 2048;
constexpr double tail_tolerance = 1e-14;

std::string describe(Parity parity, int order, double q) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(parity) << " order " << order << " q=" << q;
  return os.str();
}

struct Recurrence {
  std::vector<double> diag;
  std::vector<double> off;
};

// Symmetric form of the three-term recurrence. Slot r holds harmonic
// first + 2r; for the cos(2j eta) class slot 0 holds sqrt(2) A_0.
Recurrence build_recurrence(const MathieuClass &cls, double q, int dim) {
  Recurrence rec;
  rec.diag.resize(dim);
  rec.off.assign(dim > 0 ? dim - 1 : 0, q);
  const int first = cls.first_harmonic();
  for (int r = 0; r < dim; ++r) {
    const double h = first + 2.0 * r;
    rec.diag[r] = h * h;
  }
  if (cls.parity == Parity::even && cls.order_parity == 0) {
    if (dim > 1)
      rec.off[0] = std::numbers::sqrt2 * q;
  } else if (cls.parity == Parity::even) {
    rec.diag[0] += q;
  } else if (cls.order_parity == 1) {
    rec.diag[0] -= q;
  }
  return rec;
}

// Replace the decaying tail of the eigenvector with the minimal solution of
// the recurrence (ratio continued fraction), which keeps tiny coefficients
// accurate relative to themselves. The radial series multiplies them by
// cosh(j xi).
void refine_tail(const Recurrence &rec, double a, double q,
                 std::vector<double> &v) {
  const int dim = static_cast<int>(v.size());
  if (dim < 3 || q == 0.0)
    return;
  int peak = 0;
  for (int r = 1; r < dim; ++r)
    if (std::abs(v[r]) > std::abs(v[peak]))
      peak = r;
  int start = -1;
  for (int r = std::max(peak + 1, 2); r < dim; ++r) {
    if (rec.diag[r] > std::abs(a) + 2.0 * q + 1.0) {
      start = r;
      break;
    }
  }
  if (start < 0)
    return;
  std::vector<double> ratio(dim + 1, 0.0);
  for (int r = dim - 1; r >= start; --r) {
    const double upper = (r + 1 < dim) ? rec.off[r] * ratio[r + 1] : 0.0;
    ratio[r] = rec.off[r - 1] / ((a - rec.diag[r]) - upper);
  }
  for (int r = start; r < dim; ++r)
    v[r] = v[r - 1] * ratio[r];
}

MathieuEigen solve_at(Parity parity, int order, double q, int dim) {
  const MathieuClass cls = MathieuClass::of(parity, order);
  const int rank = cls.rank_of(order);
  dim = std::max(dim, rank + 2);
  const Recurrence rec = build_recurrence(cls, q, dim);

  double a = 0.0;
  std::vector<double> v;
  if (q == 0.0) {
    a = rec.diag[rank];
    v.assign(dim, 0.0);
    v[rank] = 1.0;
  } else {
    std::vector<double> values;
    try {
      values = tridiagonal_eigenvalues(rec.diag, rec.off);
    } catch (const NumericalError &e) {
      throw NumericalError("mathieu_eigen: " + describe(parity, order, q) +
                           ": " + e.what());
    }
    a = values[rank];
    v = tridiagonal_eigenvector(rec.diag, rec.off, a);
    refine_tail(rec, a, q, v);
    double norm = 0.0;
    for (double x : v)
      norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw NumericalError("mathieu_eigen: degenerate eigenvector for " +
                           describe(parity, order, q));
    for (double &x : v)
      x /= norm;
  }

  MathieuEigen out;
  out.cls = cls;
  out.parity = parity;
  out.order = order;
  out.q = q;
  out.char_value = a;
  out.truncation = dim;
  const int first = cls.first_harmonic();
  out.coeffs.assign(first + 2 * dim - 1, 0.0);
  for (int r = 0; r < dim; ++r)
    out.coeffs[first + 2 * r] = v[r];
  if (parity == Parity::even && cls.order_parity == 0)
    out.coeffs[0] /= std::numbers::sqrt2;

  // largest |coeff| positive, lowest harmonic wins near-ties
  int lead = -1;
  double best = -1.0;
  for (std::size_t j = 0; j < out.coeffs.size(); ++j) {
    const double m = std::abs(out.coeffs[j]);
    if (m > best * (1.0 + 1e-12)) {
      best = m;
      lead = static_cast<int>(j);
    }
  }
  if (lead >= 0 && out.coeffs[lead] < 0.0)
    for (double &c : out.coeffs)
      c = -c;
  return out;
}

double last_relative(const MathieuEigen &e) {
  double mx = 0.0;
  for (double c : e.coeffs)
    mx = std::max(mx, std::abs(c));
  return mx > 0.0 ? std::abs(e.coeffs.back()) / mx : 0.0;
}

} // namespace

MathieuEigen mathieu_eigen(Parity parity, int order, double q,
                           const MathieuOptions &opts) {
  if (!valid_mathieu_order(parity, order))
    throw DomainError("mathieu_eigen: order " + std::to_string(order) +
                      " invalid for " + to_string(parity) + " parity");
  if (!(q >= 0.0) || !std::isfinite(q))
    throw DomainError("mathieu_eigen: q must be finite and >= 0");

  int dim = opts.dimension;
  if (dim <= 0)
    dim = std::max(32, 2 * order + static_cast<int>(std::ceil(2.0 * std::sqrt(q))) + 25);
  if (opts.fixed_dimension)
    return solve_at(parity, order, q, dim);

  dim = std::min(dim, max_dimension);
  for (;;) {
    MathieuEigen e = solve_at(parity, order, q, dim);
    if (last_relative(e) < tail_tolerance)
      return e;
    if (dim >= max_dimension)
      throw NumericalError("mathieu_eigen: coefficients not converged at "
                           "dimension 2048 for " + describe(parity, order, q));
    dim = std::min(2 * dim, max_dimension);
  }
}

double mathieu_radial_xi_max(double q) {
  return std::min(6.0, 3.0 + std::log(1.0 + 1.0 / std::max(q, 1e-6)));
}

// ─────────────────────────────────────────────────────────────────────────────
// MathieuFunction
// ─────────────────────────────────────────────────────────────────────────────

MathieuFunction::MathieuFunction(MathieuEigen eigen) : eigen_(std::move(eigen)) {
  first_ = eigen_.cls.first_harmonic();
  last_ = static_cast<int>(eigen_.coeffs.size()) - 1;
  while (last_ > first_ && eigen_.coeffs[last_] == 0.0)
    --last_;

  // The radial series multiplies A_j by cosh(j xi); at the largest supported
  // xi it needs harmonics far beyond the angular truncation. Extend the
  // minimal-solution tail until (q e^{2 xi_max} / 4)^m / (m!)^2 has decayed.
  radial_coeffs_ = eigen_.coeffs;
  const double q = eigen_.q;
  const double a = eigen_.char_value;
  monotone_from_ = static_cast<int>(std::ceil(std::sqrt(std::abs(a) + 2.0 * q + 1.0)));
  if (q > 0.0) {
    const double xi_max = mathieu_radial_xi_max(q);
    const double growth = q * std::exp(2.0 * xi_max) / 4.0;
    const int slots = static_cast<int>(std::ceil(std::numbers::e * std::sqrt(growth))) + 40;
    if (slots > eigen_.truncation) {
      const bool sqrt2_slot = eigen_.parity == Parity::even && eigen_.cls.order_parity == 0;
      std::vector<double> v(slots, 0.0);
      for (int r = 0; r < eigen_.truncation; ++r)
        v[r] = eigen_.coeff(first_ + 2 * r);
      if (sqrt2_slot)
        v[0] *= std::numbers::sqrt2;
      const Recurrence rec = build_recurrence(eigen_.cls, q, slots);
      refine_tail(rec, a, q, v);
      if (sqrt2_slot)
        v[0] /= std::numbers::sqrt2;
      radial_coeffs_.assign(first_ + 2 * slots - 1, 0.0);
      for (int r = 0; r < slots; ++r)
        radial_coeffs_[first_ + 2 * r] = v[r];
    }
  }
  radial_last_ = static_cast<int>(radial_coeffs_.size()) - 1;
  while (radial_last_ > first_ && radial_coeffs_[radial_last_] == 0.0)
    --radial_last_;
}

MathieuFunction::MathieuFunction(Parity parity, int order, double q)
    : MathieuFunction(mathieu_eigen(parity, order, q)) {}

double MathieuFunction::angular(double eta) const {
  double s = 0.0;
  if (eigen_.parity == Parity::even)
    for (int j = first_; j <= last_; j += 2)
      s += eigen_.coeffs[j] * std::cos(j * eta);
  else
    for (int j = first_; j <= last_; j += 2)
      s += eigen_.coeffs[j] * std::sin(j * eta);
  return s;
}

double MathieuFunction::angular_d1(double eta) const {
  double s = 0.0;
  if (eigen_.parity == Parity::even)
    for (int j = first_; j <= last_; j += 2)
      s -= j * eigen_.coeffs[j] * std::sin(j * eta);
  else
    for (int j = first_; j <= last_; j += 2)
      s += j * eigen_.coeffs[j] * std::cos(j * eta);
  return s;
}

double MathieuFunction::angular_d2(double eta) const {
  double s = 0.0;
  if (eigen_.parity == Parity::even)
    for (int j = first_; j <= last_; j += 2)
      s -= double(j) * j * eigen_.coeffs[j] * std::cos(j * eta);
  else
    for (int j = first_; j <= last_; j += 2)
      s -= double(j) * j * eigen_.coeffs[j] * std::sin(j * eta);
  return s;
}

void MathieuFunction::check_xi(double xi) const {
  const double limit = mathieu_radial_xi_max(eigen_.q);
  if (!(xi >= 0.0) || xi > limit) {
    std::ostringstream os;
    os.precision(17);
    os << "radial Mathieu function: xi=" << xi << " outside [0, " << limit
       << "] for q=" << eigen_.q;
    throw RangeError(os.str());
  }
}

namespace {

// c * cosh(j xi) or c * sinh(j xi) without overflowing the hyperbolic factor
// when c is tiny.
double hyper_term(double c, double arg, bool use_cosh) {
  if (c == 0.0)
    return 0.0;
  if (arg < 300.0)
    return c * (use_cosh ? std::cosh(arg) : std::sinh(arg));
  return std::copysign(std::exp(std::log(std::abs(c)) + arg - std::numbers::ln2), c);
}

} // namespace

double MathieuFunction::radial_sum(double xi, int power, bool use_cosh) const {
  double s = 0.0;
  double peak = 0.0;
  for (int j = first_; j <= radial_last_; j += 2) {
    double c = radial_coeffs_[j];
    for (int p = 0; p < power; ++p)
      c *= j;
    const double t = hyper_term(c, j * xi, use_cosh);
    s += t;
    peak = std::max(peak, std::abs(t));
    if (j > monotone_from_ && std::abs(t) < 1e-18 * peak)
      break;
  }
  return s;
}

double MathieuFunction::radial(double xi) const {
  check_xi(xi);
  return radial_sum(xi, 0, eigen_.parity == Parity::even);
}

double MathieuFunction::radial_d1(double xi) const {
  check_xi(xi);
  return radial_sum(xi, 1, eigen_.parity != Parity::even);
}

double MathieuFunction::radial_d2(double xi) const {
  check_xi(xi);
  return radial_sum(xi, 2, eigen_.parity == Parity::even);
}

double MathieuFunction::angular_ode_residual(double eta) const {
  const double a = eigen_.char_value;
  const double q = eigen_.q;
  double sum_abs = 0.0;
  double sum_j2 = 0.0;
  for (int j = first_; j <= last_; j += 2) {
    sum_abs += std::abs(eigen_.coeffs[j]);
    sum_j2 += double(j) * j * std::abs(eigen_.coeffs[j]);
  }
  const double scale = sum_j2 + (std::abs(a) + 2.0 * q) * sum_abs;
  const double res =
      angular_d2(eta) + (a - 2.0 * q * std::cos(2.0 * eta)) * angular(eta);
  return std::abs(res) / scale;
}

double MathieuFunction::radial_ode_residual(double xi) const {
  const double a = eigen_.char_value;
  const double q = eigen_.q;
  double sum_abs = 0.0;
  double sum_j2 = 0.0;
  for (int j = first_; j <= radial_last_; j += 2) {
    const double h = std::abs(hyper_term(radial_coeffs_[j], j * xi, true));
    sum_abs += h;
    sum_j2 += double(j) * j * h;
  }
  const double c2 = std::cosh(2.0 * xi);
  const double scale = sum_j2 + (std::abs(a) + 2.0 * q * c2) * sum_abs;
  const double res = radial_d2(xi) - (a - 2.0 * q * c2) * radial(xi);
  return std::abs(res) / scale;
}

double MathieuFunction::norm_constant() const {
  const double q = eigen_.q;
  const double half_pi = std::numbers::pi / 2.0;
  const int n = eigen_.order;
  auto need_positive_q = [&](const char *which) {
    if (q <= 0.0)
      throw DomainError(std::string("mathieu_norm_constant: ") + which +
                        " divides by a power of q; q=0 is singular, use the "
                        "q->0 limit of the wave instead (order " +
                        std::to_string(n) + ")");
  };
  auto divisor = [&](int j) {
    const double c = eigen_.coeff(j);
    if (c == 0.0)
      throw DomainError("mathieu_norm_constant: coefficient " +
                        std::to_string(j) + " vanishes for order " +
                        std::to_string(n) + " at q=0; use the q->0 limit");
    return c;
  };
  if (eigen_.parity == Parity::even) {
    if (n % 2 == 0)
      return angular(0.0) * angular(half_pi) / divisor(0);
    need_positive_q("c_{2n+1}");
    return -angular(0.0) * angular_d1(half_pi) / (std::sqrt(q) * divisor(1));
  }
  if (n % 2 == 1) {
    need_positive_q("s_{2n+1}");
    return angular_d1(0.0) * angular(half_pi) / (std::sqrt(q) * divisor(1));
  }
  need_positive_q("s_{2n+2}");
  return angular_d1(0.0) * angular_d1(half_pi) / (q * divisor(2));
}

// ─────────────────────────────────────────────────────────────────────────────
// free functions
// ─────────────────────────────────────────────────────────────────────────────

double mathieu_ce(int n, double q, double eta) {
  return MathieuFunction(Parity::even, n, q).angular(eta);
}

double mathieu_se(int n, double q, double eta) {
  return MathieuFunction(Parity::odd, n, q).angular(eta);
}

double mathieu_ce_radial(int n, double q, double xi) {
  return MathieuFunction(Parity::even, n, q).radial(xi);
}

double mathieu_se_radial(int n, double q, double xi) {
  return MathieuFunction(Parity::odd, n, q).radial(xi);
}

double mathieu_angular_derivative(Parity parity, int n, double q, double eta) {
  return MathieuFunction(parity, n, q).angular_d1(eta);
}

double mathieu_norm_constant(Parity parity, int n, double q) {
  if (!valid_mathieu_order(parity, n))
    throw DomainError("mathieu_norm_constant: order " + std::to_string(n) +
                      " invalid for " + to_string(parity) + " parity");
  return MathieuFunction(parity, n, q).norm_constant();
}

} // namespace hwm
