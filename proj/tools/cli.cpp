#include "cli.hpp"

#include "hwm/detail/format.hpp"
#include "hwm/errors.hpp"
#include "hwm/fieldio.hpp"
#include "hwm/momenta.hpp"
#include "hwm/spectral.hpp"
#include "hwm/waves.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

namespace hwm::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<std::string, std::string> split_pair(const std::string &text, const char *flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw UsageError(std::string(flag) + " expects two comma-separated values, got '" +
                     text + "'");
  return {text.substr(0, comma), text.substr(comma + 1)};
}

std::pair<double, double> real_pair(const std::string &text, const char *flag) {
  const auto [a, b] = split_pair(text, flag);
  const auto x = detail::parse_double(a);
  const auto y = detail::parse_double(b);
  if (!x || !y)
    throw UsageError(std::string(flag) + ": cannot parse '" + text + "'");
  return {*x, *y};
}

std::pair<int, int> int_pair(const std::string &text, const char *flag) {
  const auto [a, b] = split_pair(text, flag);
  const auto x = detail::parse_int(a);
  const auto y = detail::parse_int(b);
  if (!x || !y || std::abs(*x) > 1000000 || std::abs(*y) > 1000000)
    throw UsageError(std::string(flag) + ": cannot parse '" + text + "'");
  return {static_cast<int>(*x), static_cast<int>(*y)};
}

struct GenArgs {
  std::string family;
  double k = 1.0;
  double theta = std::numbers::pi / 2.0;
  double phi = 0.0;
  int n = 0;
  double f = 1.0;
  std::string grid = "64,64";
  std::optional<double> dx, dy;
  std::optional<std::string> origin;
  double z = 0.0;
  std::string out;
  bool degrees = false;
};

struct InputArgs {
  std::string in;
  std::optional<double> k, theta;
  bool degrees = false;
};

struct SpectrumArgs {
  InputArgs input;
  int ring_samples = default_ring_samples;
  std::string n_range = "-64,64";
  std::string window = "none";
  std::optional<std::string> out_ring, out_oam, out_json;
};

struct MomentaArgs {
  InputArgs input;
  std::string methods = "spectral,grid,paper";
  std::optional<double> f;
  std::string window = "none";
  int ring_samples = default_ring_samples;
  int stencil_order = 4;
  std::optional<std::string> out;
};

struct TableArgs {
  std::string parity;
  int n = 0;
  double q = 0.0;
  std::optional<double> q_max;
  int q_steps = 0;
  std::optional<std::string> out;
};

double to_radians(double v, bool degrees) { return degrees ? v * std::numbers::pi / 180.0 : v; }

void emit(const std::optional<std::string> &path, const std::string &text, std::ostream &out) {
  if (path)
    write_text(*path, text);
  else
    out << text;
}

FieldGrid load_input(const InputArgs &a) {
  const bool csv = a.in.size() >= 4 && a.in.compare(a.in.size() - 4, 4, ".csv") == 0;
  if (!csv) {
    FieldGrid g = read_field(a.in);
    if (a.k)
      g.meta.k = *a.k;
    if (a.theta)
      g.meta.theta = to_radians(*a.theta, a.degrees);
    return g;
  }
  if (!a.k || !a.theta)
    throw UsageError("CSV input carries no cone metadata: pass --k and --theta");
  FieldMeta meta;
  meta.k = *a.k;
  meta.theta = to_radians(*a.theta, a.degrees);
  return read_field_csv(a.in, meta);
}

int cmd_gen(const GenArgs &a) {
  const double theta = to_radians(a.theta, a.degrees);
  const double phi = to_radians(a.phi, a.degrees);
  WaveLabel label;
  if (a.family == "plane")
    label = LabelSetPlane{a.k, theta, phi};
  else if (a.family == "bessel")
    label = LabelSetBessel{a.k, theta, a.n};
  else if (a.family == "mathieu-even" || a.family == "mathieu-odd")
    label = LabelSetMathieu{a.k, theta, a.n,
                            a.family == "mathieu-even" ? Parity::even : Parity::odd, a.f};
  else
    throw UsageError("--family must be plane|bessel|mathieu-even|mathieu-odd");
  validate(label);

  const auto [nx, ny] = int_pair(a.grid, "--grid");
  // default spacing: 32 samples per transverse wavelength
  const double dx = a.dx ? *a.dx : 2.0 * std::numbers::pi / (a.k * std::sin(theta)) / 32.0;
  const double dy = a.dy ? *a.dy : dx;
  GridSpec spec = GridSpec::centered(nx, ny, dx, dy, a.z);
  if (a.origin) {
    const auto [x0, y0] = real_pair(*a.origin, "--origin");
    spec.x0 = x0;
    spec.y0 = y0;
  }
  write_field(sample_grid(label, spec), a.out);
  return exit_ok;
}

int cmd_spectrum(const SpectrumArgs &a, std::ostream &out) {
  const FieldGrid field = load_input(a.input);
  const Window window = parse_window(a.window);
  const auto [nmin, nmax] = int_pair(a.n_range, "--n-range");
  const RingSpectrum ring = ring_spectrum_from_grid(field, a.ring_samples, window);
  const OamSpectrum oam = oam_spectrum(ring, nmin, nmax);
  if (a.out_ring)
    write_text(*a.out_ring, format_ring_csv(ring));
  if (a.out_oam)
    write_text(*a.out_oam, format_oam_csv(oam));
  emit(a.out_json, format_spectrum_json(ring, oam, window), out);
  return exit_ok;
}

int cmd_momenta(const MomentaArgs &a, std::ostream &out) {
  const FieldGrid field = load_input(a.input);
  ReportOptions opts;
  opts.spectral = opts.grid = opts.paper = false;
  std::string rest = a.methods;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string token = rest.substr(0, comma);
    rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
    MomentumMethod m;
    try {
      m = parse_method(token);
    } catch (const DomainError &e) {
      throw UsageError(e.what());
    }
    if (m == MomentumMethod::spectral)
      opts.spectral = true;
    else if (m == MomentumMethod::grid_oracle)
      opts.grid = true;
    else
      opts.paper = true;
  }
  opts.window = parse_window(a.window);
  opts.ring_samples = a.ring_samples;
  opts.stencil_order = a.stencil_order;
  opts.f = a.f;
  if (!opts.f)
    if (const auto label = parse_label(field.meta.description))
      if (const auto *m = std::get_if<LabelSetMathieu>(&*label))
        opts.f = m->f;
  emit(a.out, format_report_json(report(field, opts)), out);
  return exit_ok;
}

int cmd_table(const TableArgs &a, std::ostream &out) {
  const Parity parity = parse_parity(a.parity);
  if (a.q_steps < 0)
    throw UsageError("--q-steps must be >= 0");
  if (a.q_steps > 0 && !a.q_max)
    throw UsageError("--q-steps requires --q-max");
  std::vector<MathieuEigen> rows;
  const int steps = a.q_max ? std::max(a.q_steps, 1) : 0;
  for (int i = 0; i <= steps; ++i) {
    const double q = steps == 0 ? a.q : a.q + (*a.q_max - a.q) * i / steps;
    rows.push_back(mathieu_eigen(parity, a.n, q));
  }
  emit(a.out, format_mathieu_table(rows), out);
  return exit_ok;
}

void add_input_flags(CLI::App *cmd, InputArgs &a) {
  cmd->add_option("--in", a.in, "input field (HWMF1, or CSV x,y,re,im when *.csv)")
      ->required();
  cmd->add_option("--k", a.k, "wavenumber (required for CSV input; overrides the header)");
  cmd->add_option("--theta", a.theta,
                  "cone angle in radians (required for CSV input; overrides the header)");
  cmd->add_flag("--degrees", a.degrees, "read --theta in degrees");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Helmholtz wave momenta: generate separable waves, decompose them into "
               "Bessel (OAM) spectra and report mean momenta"};
  app.name(args.empty() ? "hwm" : args[0]);
  app.require_subcommand(1);

  GenArgs gen;
  auto *g = app.add_subcommand("gen", "sample a wave on a transverse grid");
  g->add_option("--family", gen.family, "plane|bessel|mathieu-even|mathieu-odd")->required();
  g->add_option("--k", gen.k, "wavenumber")->capture_default_str();
  g->add_option("--theta", gen.theta, "cone angle (radians)")->capture_default_str();
  g->add_option("--phi", gen.phi, "plane-wave azimuth (radians)")->capture_default_str();
  g->add_option("--n", gen.n, "order / topological charge")->capture_default_str();
  g->add_option("--f", gen.f, "Mathieu semi-focal distance")->capture_default_str();
  g->add_option("--grid", gen.grid, "NX,NY")->capture_default_str();
  g->add_option("--dx", gen.dx, "x spacing (default: 32 samples per transverse wavelength)");
  g->add_option("--dy", gen.dy, "y spacing (default: --dx)");
  g->add_option("--origin", gen.origin, "X0,Y0 of the first sample (default: centred)");
  g->add_option("--z", gen.z, "z plane")->capture_default_str();
  g->add_option("--out", gen.out, "output HWMF1 file")->required();
  g->add_flag("--degrees", gen.degrees, "read --theta and --phi in degrees");

  SpectrumArgs spec;
  auto *s = app.add_subcommand("spectrum", "ring spectrum and OAM coefficients of a field");
  add_input_flags(s, spec.input);
  s->add_option("--ring-samples", spec.ring_samples, "M, a power of two >= 256")
      ->capture_default_str();
  s->add_option("--n-range", spec.n_range, "NMIN,NMAX (write --n-range=-8,8)")
      ->capture_default_str();
  s->add_option("--window", spec.window, "none|hann")->capture_default_str();
  s->add_option("--out-ring", spec.out_ring, "ring CSV phi,re,im");
  s->add_option("--out-oam", spec.out_oam, "OAM CSV n,re,im,abs2");
  s->add_option("--out-json", spec.out_json, "JSON summary (default: stdout)");

  MomentaArgs mom;
  auto *m = app.add_subcommand("momenta", "mean momenta report");
  add_input_flags(m, mom.input);
  m->add_option("--methods", mom.methods, "comma list of spectral,grid,paper")
      ->capture_default_str();
  m->add_option("--f", mom.f,
                "semi-focal distance for l_z^2 + f^2 p_x^2 (default: from a Mathieu label)");
  m->add_option("--window", mom.window, "none|hann")->capture_default_str();
  m->add_option("--ring-samples", mom.ring_samples, "M for the spectral method")
      ->capture_default_str();
  m->add_option("--stencil-order", mom.stencil_order, "2|4 for the grid method")
      ->capture_default_str();
  m->add_option("--out", mom.out, "report JSON (default: stdout)");

  TableArgs tab;
  auto *t = app.add_subcommand("mathieu-table", "characteristic values and coefficients");
  t->add_option("--parity", tab.parity, "even|odd")->required();
  t->add_option("--n", tab.n, "order")->required();
  t->add_option("--q", tab.q, "parameter q (start of the sweep)")->required();
  t->add_option("--q-max", tab.q_max, "end of the q sweep");
  t->add_option("--q-steps", tab.q_steps, "number of sweep intervals")->capture_default_str();
  t->add_option("--out", tab.out, "CSV output (default: stdout)");

  std::vector<const char *> argv;
  argv.reserve(args.size() + 1);
  if (args.empty())
    argv.push_back("hwm");
  for (const auto &a : args)
    argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help("", CLI::AppFormatMode::All);
      return exit_ok;
    }
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (g->parsed())
      return cmd_gen(gen);
    if (s->parsed())
      return cmd_spectrum(spec, out);
    if (m->parsed())
      return cmd_momenta(mom, out);
    return cmd_table(tab, out);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const FormatError &e) {
    err << "format error: " << e.what() << "\n";
    return exit_io;
  } catch (const IoError &e) {
    err << "I/O error: " << e.what() << "\n";
    return exit_io;
  } catch (const Error &e) {
    err << "numeric error: " << e.what() << "\n";
    return exit_numeric;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return exit_numeric;
  }
}

} // namespace hwm::cli
