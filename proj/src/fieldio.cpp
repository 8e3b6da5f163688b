#include "hwm/fieldio.hpp"

#include "hwm/detail/format.hpp"
#include "hwm/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

namespace hwm {

namespace {

using detail::fmt17;
using ojson = nlohmann::ordered_json;

void put_le(std::string &out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b)
    out.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
}

double get_le(const char *p) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b)
    bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[b])) << (8 * b);
  return std::bit_cast<double>(bits);
}

[[noreturn]] void format_error(std::size_t offset, const std::string &what) {
  throw FormatError("byte " + std::to_string(offset) + ": " + what);
}

template <class T> T header_field(const ojson &h, const char *key) {
  if (!h.contains(key))
    format_error(0, std::string("header lacks '") + key + "'");
  try {
    return h.at(key).get<T>();
  } catch (const nlohmann::json::exception &) {
    format_error(0, std::string("header field '") + key + "' has the wrong type");
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Uniform lattice through the sorted distinct coordinates.
struct Axis {
  double origin = 0.0;
  double step = 0.0;
  int count = 0;
};

Axis infer_axis(std::vector<double> values, const char *name) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.size() < 2)
    throw FormatError(std::string("csv: fewer than two distinct ") + name + " values");
  double step = values[1] - values[0];
  for (std::size_t i = 2; i < values.size(); ++i)
    step = std::min(step, values[i] - values[i - 1]);
  const double span = values.back() - values.front();
  const double steps = span / step;
  const long long count = std::llround(steps) + 1;
  if (count > 1000000)
    throw FormatError(std::string("csv: ") + name + " spacing is not uniform");
  Axis a{values.front(), span / static_cast<double>(count - 1), static_cast<int>(count)};
  for (double v : values) {
    const double idx = (v - a.origin) / a.step;
    if (std::abs(idx - std::round(idx)) > 1e-6)
      throw FormatError(std::string("csv: ") + name + " value " + fmt17(v) +
                        " is off the uniform lattice");
  }
  return a;
}

ojson report_object(const MomentumReport &r) {
  ojson o;
  o["method"] = to_string(r.method);
  o["mean_lz"] = r.mean_lz;
  o["mean_px"] = r.mean_px;
  o["mean_py"] = r.mean_py;
  o["mean_pz"] = r.mean_pz;
  if (r.elliptic_invariant)
    o["elliptic_invariant"] = *r.elliptic_invariant;
  else
    o["elliptic_invariant"] = nullptr;
  o["norm_used"] = r.norm_used;
  o["window"] = r.window;
  o["notes"] = r.notes;
  return o;
}

} // namespace

std::string encode_field(const FieldGrid &field) {
  validate(field);
  ojson h;
  h["magic"] = field_magic;
  h["nx"] = field.nx;
  h["ny"] = field.ny;
  h["dx"] = field.dx;
  h["dy"] = field.dy;
  h["x0"] = field.x0;
  h["y0"] = field.y0;
  h["k"] = field.meta.k;
  h["theta"] = field.meta.theta;
  h["z_plane"] = field.meta.z_plane;
  h["description"] = field.meta.description;
  std::string out = h.dump();
  out.push_back('\n');
  out.reserve(out.size() + field.values.size() * 16);
  for (const cplx &v : field.values) {
    put_le(out, v.real());
    put_le(out, v.imag());
  }
  return out;
}

FieldGrid decode_field(std::string_view bytes) {
  const std::size_t line_end = bytes.find('\n');
  if (line_end == std::string_view::npos)
    format_error(bytes.size(), "no header line terminator");
  ojson h;
  try {
    h = ojson::parse(bytes.substr(0, line_end));
  } catch (const nlohmann::json::parse_error &e) {
    format_error(e.byte > 0 ? e.byte - 1 : 0, "malformed JSON header");
  }
  if (!h.is_object())
    format_error(0, "header is not a JSON object");
  const auto magic = header_field<std::string>(h, "magic");
  if (magic != field_magic)
    format_error(0, "bad magic '" + magic + "' (expected HWMF1)");

  FieldGrid g;
  g.nx = header_field<int>(h, "nx");
  g.ny = header_field<int>(h, "ny");
  g.dx = header_field<double>(h, "dx");
  g.dy = header_field<double>(h, "dy");
  g.x0 = header_field<double>(h, "x0");
  g.y0 = header_field<double>(h, "y0");
  g.meta.k = header_field<double>(h, "k");
  g.meta.theta = header_field<double>(h, "theta");
  g.meta.z_plane = header_field<double>(h, "z_plane");
  g.meta.description = header_field<std::string>(h, "description");
  if (g.nx <= 0 || g.ny <= 0)
    format_error(0, "non-positive grid dimensions");

  const std::size_t payload_start = line_end + 1;
  const std::size_t payload = bytes.size() - payload_start;
  const std::size_t expected = static_cast<std::size_t>(g.nx) * g.ny;
  if (payload % 16 != 0 || payload / 16 != expected)
    format_error(payload_start + std::min(payload, expected * 16),
                 "payload holds " + std::to_string(payload) + " bytes (" +
                     std::to_string(payload / 16) + " samples), header declares " +
                     std::to_string(expected) + " samples (" +
                     std::to_string(expected * 16) + " bytes)");
  g.values.resize(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    const std::size_t at = payload_start + 16 * i;
    const double re = get_le(bytes.data() + at);
    const double im = get_le(bytes.data() + at + 8);
    if (!std::isfinite(re))
      format_error(at, "non-finite real part of sample " + std::to_string(i));
    if (!std::isfinite(im))
      format_error(at + 8, "non-finite imaginary part of sample " + std::to_string(i));
    g.values[i] = {re, im};
  }
  try {
    validate(g);
  } catch (const RangeError &e) {
    format_error(0, std::string("inconsistent header: ") + e.what());
  }
  return g;
}

void write_text(const std::filesystem::path &path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out)
    throw IoError("write to '" + path.string() + "' failed");
}

std::string read_text(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad())
    throw IoError("read from '" + path.string() + "' failed");
  return ss.str();
}

void write_field(const FieldGrid &field, const std::filesystem::path &path) {
  write_text(path, encode_field(field));
}

FieldGrid read_field(const std::filesystem::path &path) {
  return decode_field(read_text(path));
}

FieldGrid parse_field_csv(std::string_view text, const FieldMeta &meta) {
  std::vector<std::string_view> lines = split(text, '\n');
  while (!lines.empty() && trim(lines.back()).empty())
    lines.pop_back();
  if (lines.empty())
    throw FormatError("csv: empty input");

  const auto header = split(trim(lines[0]), ',');
  int col[4] = {-1, -1, -1, -1};
  const char *names[4] = {"x", "y", "re", "im"};
  for (std::size_t c = 0; c < header.size(); ++c)
    for (int k = 0; k < 4; ++k)
      if (trim(header[c]) == names[k]) {
        if (col[k] >= 0)
          throw FormatError(std::string("csv: duplicate column '") + names[k] + "'");
        col[k] = static_cast<int>(c);
      }
  for (int k = 0; k < 4; ++k)
    if (col[k] < 0)
      throw FormatError(std::string("csv: missing column '") + names[k] + "'");

  struct Row {
    double v[4];
  };
  std::vector<Row> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto line = trim(lines[li]);
    if (line.empty())
      continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size())
      throw FormatError("csv line " + std::to_string(li + 1) + ": expected " +
                        std::to_string(header.size()) + " fields, found " +
                        std::to_string(cells.size()));
    Row r{};
    for (int k = 0; k < 4; ++k) {
      const auto v = detail::parse_double(trim(cells[col[k]]));
      if (!v || !std::isfinite(*v))
        throw FormatError("csv line " + std::to_string(li + 1) + ": bad value for '" +
                          names[k] + "'");
      r.v[k] = *v;
    }
    rows.push_back(r);
  }
  if (rows.empty())
    throw FormatError("csv: no data rows");

  std::vector<double> xs, ys;
  for (const Row &r : rows) {
    xs.push_back(r.v[0]);
    ys.push_back(r.v[1]);
  }
  const Axis ax = infer_axis(xs, "x");
  const Axis ay = infer_axis(ys, "y");

  FieldGrid g;
  g.nx = ax.count;
  g.ny = ay.count;
  g.dx = ax.step;
  g.dy = ay.step;
  g.x0 = ax.origin;
  g.y0 = ay.origin;
  g.meta = meta;
  g.values.assign(static_cast<std::size_t>(g.nx) * g.ny, cplx{});
  std::vector<char> seen(g.values.size(), 0);
  for (const Row &r : rows) {
    const auto ix = static_cast<int>(std::lround((r.v[0] - ax.origin) / ax.step));
    const auto iy = static_cast<int>(std::lround((r.v[1] - ay.origin) / ay.step));
    const std::size_t c = static_cast<std::size_t>(iy) * g.nx + ix;
    if (seen[c])
      throw FormatError("csv: duplicate node (x=" + fmt17(r.v[0]) + ", y=" + fmt17(r.v[1]) +
                        ")");
    seen[c] = 1;
    g.values[c] = {r.v[2], r.v[3]};
  }
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      if (!seen[static_cast<std::size_t>(iy) * g.nx + ix])
        throw FormatError("csv: lattice gap, first missing node (x=" + fmt17(g.x(ix)) +
                          ", y=" + fmt17(g.y(iy)) + ") at index (" + std::to_string(ix) +
                          ", " + std::to_string(iy) + ")");
  try {
    validate(g);
  } catch (const RangeError &e) {
    throw FormatError(std::string("csv: ") + e.what());
  }
  return g;
}

FieldGrid read_field_csv(const std::filesystem::path &path, const FieldMeta &meta) {
  return parse_field_csv(read_text(path), meta);
}

std::string format_field_csv(const FieldGrid &field) {
  std::string out = "x,y,re,im\n";
  for (int iy = 0; iy < field.ny; ++iy)
    for (int ix = 0; ix < field.nx; ++ix) {
      const cplx v = field.at(ix, iy);
      out += fmt17(field.x(ix)) + ',' + fmt17(field.y(iy)) + ',' + fmt17(v.real()) + ',' +
             fmt17(v.imag()) + '\n';
    }
  return out;
}

void write_field_csv(const FieldGrid &field, const std::filesystem::path &path) {
  write_text(path, format_field_csv(field));
}

std::string format_oam_csv(const OamSpectrum &spec) {
  std::string out = "n,re,im,abs2\n";
  for (int n = spec.n_min; n <= spec.n_max; ++n) {
    const cplx c = spec.coeff(n);
    out += std::to_string(n) + ',' + fmt17(c.real()) + ',' + fmt17(c.imag()) + ',' +
           fmt17(std::norm(c)) + '\n';
  }
  return out;
}

std::string format_ring_csv(const RingSpectrum &ring) {
  std::string out = "phi,re,im\n";
  for (int m = 0; m < ring.M; ++m) {
    const cplx s = ring.samples[m];
    out += fmt17(ring.azimuth(m)) + ',' + fmt17(s.real()) + ',' + fmt17(s.imag()) + '\n';
  }
  return out;
}

std::string format_spectrum_json(const RingSpectrum &ring, const OamSpectrum &oam,
                                 Window window) {
  const double ring_norm = parseval_norm(ring);
  ojson o;
  o["k"] = ring.k;
  o["theta"] = ring.theta;
  o["ring_samples"] = ring.M;
  o["window"] = to_string(window);
  o["weight_convention"] = RingSpectrum::weight_convention;
  o["n_min"] = oam.n_min;
  o["n_max"] = oam.n_max;
  o["ring_norm"] = ring_norm;
  o["ring_norm_times_sin_theta"] = ring_norm * std::sin(ring.theta);
  o["oam_norm"] = oam.norm;
  o["mean_charge"] = oam.norm > 0.0 ? ojson(mean_charge(oam)) : ojson(nullptr);
  ojson coeffs = ojson::array();
  for (int n = oam.n_min; n <= oam.n_max; ++n) {
    const cplx c = oam.coeff(n);
    coeffs.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}, {"abs2", std::norm(c)}});
  }
  o["coefficients"] = std::move(coeffs);
  return o.dump(2) + "\n";
}

std::string format_report_json(const std::vector<MomentumReport> &reports) {
  ojson arr = ojson::array();
  for (const auto &r : reports)
    arr.push_back(report_object(r));
  ojson o;
  o["reports"] = std::move(arr);
  return o.dump(2) + "\n";
}

std::string class_label(const MathieuClass &cls) {
  if (cls.parity == Parity::even)
    return cls.order_parity == 0 ? "ce_2r" : "ce_2r+1";
  return cls.order_parity == 1 ? "se_2r+1" : "se_2r+2";
}

std::string format_mathieu_table(const std::vector<MathieuEigen> &rows) {
  std::string out = "class,n,q,char_value,j,coeff\n";
  for (const MathieuEigen &e : rows) {
    const std::string prefix = class_label(e.cls) + ',' + std::to_string(e.order) + ',' +
                               fmt17(e.q) + ',' + fmt17(e.char_value) + ',';
    for (std::size_t j = 0; j < e.coeffs.size(); ++j)
      if (e.coeffs[j] != 0.0)
        out += prefix + std::to_string(j) + ',' + fmt17(e.coeffs[j]) + '\n';
  }
  return out;
}

} // namespace hwm
