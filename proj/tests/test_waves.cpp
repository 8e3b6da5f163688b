#include "support.hpp"

#include "hwm/errors.hpp"
#include "hwm/waves.hpp"

#include <doctest.h>

#include <cstring>

using namespace hwm;
using namespace hwm::test;

namespace {

// Phase rate of a point evaluator along a unit direction (centred difference).
double phase_rate(const std::function<cplx(const Point3 &)> &f, Point3 p, int axis, double h) {
  Point3 a = p, b = p;
  (axis == 0 ? a.x : axis == 1 ? a.y : a.z) -= h;
  (axis == 0 ? b.x : axis == 1 ? b.y : b.z) += h;
  return std::arg(f(b) / f(a)) / (2.0 * h);
}

// Five-point Laplacian residual (d_xx + d_yy + k_t^2) f / (k_t^2 |f|).
double helmholtz_residual(const std::function<cplx(const Point3 &)> &f, Point3 p, double kt,
                          double h) {
  auto at = [&](double dx, double dy) { return f({p.x + dx, p.y + dy, p.z}); };
  const cplx c = at(0, 0);
  auto d2 = [&](double sx, double sy) {
    return (-at(2 * sx, 2 * sy) + 16.0 * at(sx, sy) - 30.0 * c + 16.0 * at(-sx, -sy) -
            at(-2 * sx, -2 * sy)) /
           (12.0 * h * h);
  };
  return std::abs(d2(h, 0) + d2(0, h) + kt * kt * c) / (kt * kt * std::abs(c));
}

} // namespace

TEST_SUITE("waves") {

TEST_CASE("plane wave values") {
  const LabelSetPlane l{1.0, pi / 2, 0.0};
  const cplx v0 = eval_plane_wave(l, {0, 0, 0});
  CHECK(v0.real() == 1.0);
  CHECK(v0.imag() == 0.0);
  const cplx v1 = eval_plane_wave(l, {pi, 0, 0});
  CHECK(v1.real() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(v1.imag()) <= 1e-15);
}

TEST_CASE("plane wave modulus and momentum eigenrelations at random points") {
  auto g = rng(11);
  for (int i = 0; i < 50; ++i) {
    const LabelSetPlane l{uniform(g, 0.5, 3.0), uniform(g, 0.1, 3.0), uniform(g, -pi, pi)};
    const Point3 p{uniform(g, -5, 5), uniform(g, -5, 5), uniform(g, -5, 5)};
    auto f = [&](const Point3 &x) { return eval_plane_wave(l, x); };
    CHECK(std::abs(f(p)) == doctest::Approx(std::sqrt(std::sin(l.theta))).epsilon(1e-14));
    const double kt = l.k * std::sin(l.theta);
    CHECK(std::abs(phase_rate(f, p, 1, 1e-4) - kt * std::sin(l.phi)) <= 1e-6 * l.k);
    CHECK(std::abs(phase_rate(f, p, 0, 1e-4) - kt * std::cos(l.phi)) <= 1e-6 * l.k);
    CHECK(std::abs(phase_rate(f, p, 2, 1e-4) - l.k * std::cos(l.theta)) <= 1e-6 * l.k);
  }
}

TEST_CASE("Bessel wave values") {
  const double root2pi = std::sqrt(2.0 * pi);
  const cplx v = eval_bessel_wave({1.0, pi / 2, 0}, {0, 0, 0});
  CHECK(v.real() == doctest::Approx(root2pi).epsilon(1e-15));
  CHECK(v.imag() == 0.0);
  CHECK(std::abs(eval_bessel_wave({1.0, 0.7, 3}, {0, 0, 0})) == 0.0);
  CHECK(std::abs(eval_bessel_wave({1.0, 0.7, -2}, {0, 0, 0.3})) == 0.0);
}

TEST_CASE("Bessel wave modulus peaks at the first maximum of J1") {
  // golden-section search on bessel_j
  double a = 1.0, b = 3.0;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 200; ++i) {
    const double c = b - r * (b - a), d = a + r * (b - a);
    (bessel_j(1, c) > bessel_j(1, d) ? b : a) = (bessel_j(1, c) > bessel_j(1, d) ? d : c);
  }
  const double xmax = 0.5 * (a + b);
  CHECK(xmax == doctest::Approx(1.8411837813406593).epsilon(1e-7));
  const LabelSetBessel l{1.0, pi / 2, 1};
  const double peak = std::abs(eval_bessel_wave(l, {1.8411837813406593, 0, 0}));
  CHECK(peak > std::abs(eval_bessel_wave(l, {1.8411837813406593 - 1e-3, 0, 0})));
  CHECK(peak > std::abs(eval_bessel_wave(l, {1.8411837813406593 + 1e-3, 0, 0})));
}

TEST_CASE("Bessel wave equals the Jacobi-Anger superposition of plane waves") {
  auto g = rng(12);
  for (int i = 0; i < 20; ++i) {
    const LabelSetBessel l{uniform(g, 0.5, 2.0), uniform(g, 0.2, 2.9), uniform_int(g, -8, 8)};
    const Point3 p{uniform(g, -6, 6), uniform(g, -6, 6), 0.0};
    const double kt = l.k * std::sin(l.theta);
    // (1/2pi) int exp(i k_t r cos(a - phi)) exp(i n a) da = i^n J_n(k_t r) e^{i n phi}
    const cplx integral = periodic_quadrature_c(
        [&](double a) {
          return std::polar(1.0, kt * (p.x * std::cos(a) + p.y * std::sin(a)) + l.n * a);
        },
        512);
    const cplx expect = std::sqrt(2.0 * pi * std::sin(l.theta)) * integral / (2.0 * pi);
    CHECK(std::abs(eval_bessel_wave(l, p) - expect) <= 1e-12);
  }
}

TEST_CASE("Bessel wave eigenrelations by finite differences") {
  const LabelSetBessel l{1.3, 0.9, 3};
  auto f = [&](const Point3 &x) { return eval_bessel_wave(l, x); };
  // p_z phase rate
  CHECK(std::abs(phase_rate(f, {0.7, -1.1, 0.4}, 2, 1e-4) - l.k * std::cos(l.theta)) <= 1e-6);
  // l_z: azimuthal phase rate on a circle equals n
  const double r = 2.0, h = 1e-4;
  const cplx a = f({r * std::cos(0.5 - h), r * std::sin(0.5 - h), 0});
  const cplx b = f({r * std::cos(0.5 + h), r * std::sin(0.5 + h), 0});
  CHECK(std::arg(b / a) / (2 * h) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(helmholtz_residual(f, {0.8, 1.7, 0}, l.k * std::sin(l.theta), 1e-2) <= 1e-6);
}

TEST_CASE("elliptic coordinates") {
  const double f = 1.7;
  auto ec = elliptic_coords(f, 0.0, f);
  CHECK(ec.xi == 0.0);
  CHECK(ec.eta == 0.0);
  ec = elliptic_coords(0.0, 0.0, f);
  CHECK(ec.xi == 0.0);
  CHECK(ec.eta == doctest::Approx(pi / 2));
  ec = elliptic_coords(2 * f, 0.0, f);
  CHECK(ec.xi == doctest::Approx(std::acosh(2.0)));
  CHECK(ec.eta == 0.0);
  ec = elliptic_coords(-2 * f, 0.0, f);
  CHECK(ec.eta == -pi);
  CHECK_THROWS_AS(elliptic_coords(1.0, 1.0, 0.0), DomainError);

  auto g = rng(13);
  for (int i = 0; i < 500; ++i) {
    const double x = uniform(g, -10, 10), y = uniform(g, -10, 10);
    const auto c = elliptic_coords(x, y, f);
    CHECK(c.xi >= 0.0);
    CHECK(c.eta >= -pi);
    CHECK(c.eta < pi);
    CHECK((c.eta >= 0) == (y >= 0));
    CHECK(std::abs(f * std::cosh(c.xi) * std::cos(c.eta) - x) <= 1e-10 * std::hypot(x, y, f));
    CHECK(std::abs(f * std::sinh(c.xi) * std::sin(c.eta) - y) <= 1e-10 * std::hypot(x, y, f));
  }
}

TEST_CASE("Mathieu wave values at special points") {
  const LabelSetMathieu even0{1.0, 1.1, 0, Parity::even, 2.0};
  const MathieuFunction fn0(Parity::even, 0, even0.q());
  const cplx at_origin = eval_mathieu_wave(even0, {0, 0, 0});
  CHECK(at_origin.real() == doctest::Approx(std::sqrt(std::sin(1.1)) * fn0.norm_constant() *
                                            fn0.radial(0) * fn0.angular(pi / 2)));

  // q = 1 with f = 2, k = 1, theta = pi/2
  const LabelSetMathieu even2{1.0, pi / 2, 2, Parity::even, 2.0};
  CHECK(even2.q() == doctest::Approx(1.0));
  const MathieuFunction fn2(Parity::even, 2, 1.0);
  const double xi = std::acosh(1.2);
  CHECK(eval_mathieu_wave(even2, {2.0 * 1.2, 0, 0}).real() ==
        doctest::Approx(fn2.norm_constant() * fn2.radial(xi) * fn2.angular(0)).epsilon(1e-13));

  const LabelSetMathieu odd3{1.0, 0.8, 3, Parity::odd, 1.5};
  for (double x : {-1.4, -0.5, 0.0, 0.9, 1.5})
    CHECK(std::abs(eval_mathieu_wave(odd3, {x, 0, 0})) == 0.0);
}

TEST_CASE("Mathieu wave is continuous across the inter-foci segment") {
  for (Parity p : {Parity::even, Parity::odd}) {
    const LabelSetMathieu l{1.0, pi / 2, p == Parity::even ? 2 : 1, p, 2.0};
    for (double x : {-1.5, -0.3, 0.8}) {
      const cplx above = eval_mathieu_wave(l, {x, 1e-9, 0});
      const cplx below = eval_mathieu_wave(l, {x, -1e-9, 0});
      const cplx on = eval_mathieu_wave(l, {x, 0, 0});
      CHECK(std::abs(above - on) <= 1e-7);
      CHECK(std::abs(below - on) <= 1e-7);
    }
  }
}

TEST_CASE("Mathieu waves are plane-wave superpositions with a ce / se angular profile") {
  // Phi(x) / int ce_n(a) exp(i k_t (x cos a + y sin a)) da must be constant.
  for (Parity p : {Parity::even, Parity::odd})
    for (int n = p == Parity::even ? 0 : 1; n <= 4; ++n) {
      const LabelSetMathieu l{1.0, 1.2, n, p, 2.3};
      const MathieuWave wave(l);
      const double kt = l.k * std::sin(l.theta);
      auto g = rng(14 + n);
      std::vector<cplx> ratios;
      for (int i = 0; i < 6; ++i) {
        const Point3 x{uniform(g, -4, 4), uniform(g, -4, 4), 0.0};
        const cplx integral = periodic_quadrature_c(
            [&](double a) {
              return wave.function().angular(a) *
                     std::polar(1.0, kt * (x.x * std::cos(a) + x.y * std::sin(a)));
            },
            512);
        ratios.push_back(wave(x) / integral);
      }
      for (const cplx &r : ratios)
        CHECK(std::abs(r - ratios[0]) <= 1e-9 * std::abs(ratios[0]));
      if (p == Parity::even && n % 2 == 0) {
        // ce_2r Ce_2r = c_2r / (2 pi) * integral
        const double c = wave.norm_constant();
        CHECK(std::abs(ratios[0] - std::sqrt(std::sin(l.theta)) * c * c / (2 * pi)) <=
              1e-9 * std::abs(ratios[0]));
      }
    }
}

TEST_CASE("Mathieu wave eigenrelations by finite differences") {
  const LabelSetMathieu l{1.0, 0.8, 2, Parity::even, 2.0};
  const MathieuWave w(l);
  auto f = [&](const Point3 &x) { return w(x); };
  CHECK(std::abs(phase_rate(f, {0.3, 1.2, 0.0}, 2, 1e-4) - std::cos(0.8)) <= 1e-6);
  CHECK(helmholtz_residual(f, {0.9, 1.3, 0}, std::sin(0.8), 1e-2) <= 1e-6);
}

TEST_CASE("label validation") {
  CHECK_THROWS_AS(validate(LabelSetPlane{1.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(LabelSetPlane{1.0, pi, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(LabelSetPlane{1.0, 1.0, pi}), DomainError);
  CHECK_THROWS_AS(validate(LabelSetPlane{0.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(LabelSetBessel{1.0, 1.0, 201}), DomainError);
  CHECK_THROWS_AS(validate(LabelSetMathieu{1.0, 1.0, 0, Parity::odd, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(LabelSetMathieu{1.0, 1.0, 1, Parity::odd, 0.0}), DomainError);
  CHECK_NOTHROW(validate(LabelSetPlane{1.0, 1.0, -pi}));
}

TEST_CASE("label descriptions round-trip") {
  const std::vector<WaveLabel> labels = {LabelSetPlane{1.5, 0.3, -2.0},
                                         LabelSetBessel{2.0, 1.0, -7},
                                         LabelSetMathieu{0.9, 2.0, 3, Parity::odd, 1.25},
                                         LabelSetMathieu{0.1, 0.2, 0, Parity::even, 4.0}};
  for (const auto &l : labels) {
    const auto back = parse_label(describe_label(l));
    REQUIRE(back.has_value());
    CHECK(describe_label(*back) == describe_label(l));
    CHECK(back->index() == l.index());
  }
  CHECK_FALSE(parse_label("gaussian k=1 theta=1").has_value());
  CHECK_FALSE(parse_label("bessel k=1 theta=1").has_value());
  CHECK_FALSE(parse_label("").has_value());
}

TEST_CASE("sample_grid geometry, metadata and determinism") {
  const GridSpec spec = GridSpec::centered(33, 20, 0.25, 0.3, 1.5);
  const LabelSetBessel l{1.0, 0.9, 2};
  const FieldGrid g = sample_grid(l, spec);
  CHECK(g.nx == 33);
  CHECK(g.ny == 20);
  CHECK(g.x(16) == doctest::Approx(0.0));
  CHECK(g.meta.k == 1.0);
  CHECK(g.meta.theta == 0.9);
  CHECK(g.meta.z_plane == 1.5);
  CHECK(g.values.size() == 33u * 20u);
  CHECK(g.at(5, 7) == eval_bessel_wave(l, {g.x(5), g.y(7), 1.5}));
  const FieldGrid again = sample_grid(l, spec);
  CHECK(std::memcmp(g.values.data(), again.values.data(), g.values.size() * sizeof(cplx)) == 0);
}

TEST_CASE("sample_grid errors") {
  CHECK_THROWS_AS(sample_grid(LabelSetPlane{1, 1, 0}, GridSpec::centered(15, 32, 0.1, 0.1, 0)),
                  RangeError);
  CHECK_THROWS_AS(sample_grid(LabelSetPlane{1, 1, 0}, GridSpec::centered(32, 32, 0.0, 0.1, 0)),
                  RangeError);
  CHECK_THROWS_AS(sample_grid(LabelSetPlane{1, 0, 0}, GridSpec::centered(32, 32, 0.1, 0.1, 0)),
                  DomainError);
  // Mathieu radial support exceeded far from the foci
  const LabelSetMathieu m{1.0, pi / 2, 2, Parity::even, 2.0};
  try {
    sample_grid(m, GridSpec::centered(64, 64, 10.0, 10.0, 0));
    FAIL("expected RangeError");
  } catch (const RangeError &e) {
    CHECK(std::string(e.what()).find("sample (") != std::string::npos);
  }
}

TEST_CASE("grid validation") {
  FieldGrid g = sample_grid(LabelSetPlane{1, 1, 0}, GridSpec::centered(16, 16, 0.1, 0.1, 0));
  CHECK_NOTHROW(validate(g));
  g.values[3] = {std::nan(""), 0.0};
  CHECK_THROWS_AS(validate(g), RangeError);
  g.values.pop_back();
  CHECK_THROWS_AS(validate(g), RangeError);
}

} // TEST_SUITE
