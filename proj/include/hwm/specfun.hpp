#pragma once

#include <span>
#include <string>
#include <vector>

namespace hwm {

// ─────────────────────────────────────────────────────────────────────────────
// Bessel functions
// ─────────────────────────────────────────────────────────────────────────────

inline constexpr int bessel_max_order = 200;
inline constexpr double bessel_max_argument = 1e4;

/// Bessel function of the first kind J_n(x) for |n| <= 200 and |x| <= 1e4.
/// Absolute error stays below 1e-12 over that range. Throws RangeError
/// outside it.
double bessel_j(int n, double x);

// ─────────────────────────────────────────────────────────────────────────────
// Symmetric tridiagonal eigenproblem
// ─────────────────────────────────────────────────────────────────────────────

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `offdiag` (offdiag.size() == diag.size() - 1), sorted
/// ascending. Implicit-shift QL; throws NumericalError if an eigenvalue fails
/// to converge within 60 sweeps.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> offdiag);

/// Unit eigenvector for a converged eigenvalue by inverse iteration.
std::vector<double> tridiagonal_eigenvector(std::span<const double> diag,
                                            std::span<const double> offdiag,
                                            double eigenvalue);

// ─────────────────────────────────────────────────────────────────────────────
// Mathieu functions
// ─────────────────────────────────────────────────────────────────────────────

enum class Parity { even, odd };

std::string to_string(Parity p);
Parity parse_parity(const std::string &text);

/// One of the four symmetry classes of periodic Mathieu functions:
///   even, order even  -> ce_{2r}     cos(2j eta)
///   even, order odd   -> ce_{2r+1}   cos((2j+1) eta)
///   odd,  order odd   -> se_{2r+1}   sin((2j+1) eta)
///   odd,  order even  -> se_{2r+2}   sin((2j+2) eta)
struct MathieuClass {
  Parity parity = Parity::even;
  int order_parity = 0; ///< order mod 2

  static MathieuClass of(Parity parity, int order);
  /// Lowest harmonic carried by the class (0, 1, 1 or 2).
  int first_harmonic() const;
  /// Rank of `order` among the eigenvalues of this class (0-based).
  int rank_of(int order) const;

  friend bool operator==(const MathieuClass &, const MathieuClass &) = default;
};

/// True when `order` is admissible for the parity (even: n >= 0, odd: n >= 1).
bool valid_mathieu_order(Parity parity, int order);

/// Characteristic value and Fourier coefficients of ce_n or se_n.
///
/// `coeffs[j]` is A_j (even) or B_j (odd), indexed by harmonic j. Harmonics of
/// the wrong parity hold exact zeros. Normalization: the angular function has
/// integral pi of its square over one period, i.e. 2 A_0^2 + sum A_j^2 = 1 for
/// ce_{2r} and sum c_j^2 = 1 otherwise. The largest-magnitude coefficient is
/// positive (lowest harmonic wins ties).
struct MathieuEigen {
  MathieuClass cls;
  Parity parity = Parity::even;
  int order = 0;
  double q = 0.0;
  double char_value = 0.0;
  std::vector<double> coeffs;
  int truncation = 0; ///< dimension of the recurrence matrix that produced it

  double coeff(int j) const {
    return (j >= 0 && j < static_cast<int>(coeffs.size())) ? coeffs[j] : 0.0;
  }
};

struct MathieuOptions {
  /// Initial recurrence-matrix dimension. 0 selects
  /// max(32, 2n + ceil(2 sqrt q) + 25). The dimension is doubled until the
  /// last coefficient falls below 1e-14 relative, capped at 2048.
  int dimension = 0;
  /// When true, use `dimension` exactly (no doubling). Used by truncation
  /// convergence checks.
  bool fixed_dimension = false;
};

/// Solve the three-term recurrence eigenproblem for (parity, order, q).
/// Throws DomainError for q < 0 or an inadmissible order; NumericalError
/// (naming class, order and q) if the eigensolver does not converge.
MathieuEigen mathieu_eigen(Parity parity, int order, double q,
                           const MathieuOptions &opts = {});

/// Largest radial coordinate for which the hyperbolic series is used:
/// min(6, 3 + ln(1 + 1/max(q, 1e-6))).
double mathieu_radial_xi_max(double q);

/// Evaluates angular and radial Mathieu functions from one solved eigensystem.
class MathieuFunction {
public:
  explicit MathieuFunction(MathieuEigen eigen);
  MathieuFunction(Parity parity, int order, double q);

  const MathieuEigen &eigen() const { return eigen_; }
  Parity parity() const { return eigen_.parity; }
  int order() const { return eigen_.order; }
  double q() const { return eigen_.q; }
  double char_value() const { return eigen_.char_value; }

  /// ce_n(eta) or se_n(eta).
  double angular(double eta) const;
  /// d/deta of the angular function.
  double angular_d1(double eta) const;
  double angular_d2(double eta) const;

  /// Ce_n(xi) = ce_n(i xi) or Se_n(xi) = -i se_n(i xi). RangeError when xi is
  /// negative or exceeds mathieu_radial_xi_max(q).
  double radial(double xi) const;
  double radial_d1(double xi) const;
  double radial_d2(double xi) const;

  /// |w'' + (a - 2q cos 2eta) w| relative to the magnitude of the terms.
  double angular_ode_residual(double eta) const;
  /// |W'' - (a - 2q cosh 2xi) W| relative to the magnitude of the terms.
  double radial_ode_residual(double xi) const;

  /// Normalization constant c_n or s_n multiplying the Mathieu wave.
  double norm_constant() const;

private:
  void check_xi(double xi) const;
  double radial_sum(double xi, int power, bool use_cosh) const;

  MathieuEigen eigen_;
  int first_ = 0; ///< first nonzero-parity harmonic
  int last_ = 0;  ///< last stored harmonic
  // coefficients extended for the hyperbolic series
  std::vector<double> radial_coeffs_;
  int radial_last_ = 0;
  int monotone_from_ = 0; ///< harmonics above this decay monotonically
};

double mathieu_ce(int n, double q, double eta);
double mathieu_se(int n, double q, double eta);
double mathieu_ce_radial(int n, double q, double xi);
double mathieu_se_radial(int n, double q, double xi);
double mathieu_angular_derivative(Parity parity, int n, double q, double eta);

/// c_n (even) or s_n (odd) per the closed forms
///   c_2r   = ce(0) ce(pi/2) / A_0
///   c_2r+1 = -ce(0) ce'(pi/2) / (sqrt(q) A_1)
///   s_2r+1 = se'(0) se(pi/2) / (sqrt(q) B_1)
///   s_2r+2 = se'(0) se'(pi/2) / (q B_2)
/// DomainError at q = 0 for the three forms that divide by a power of q.
double mathieu_norm_constant(Parity parity, int n, double q);

} // namespace hwm
