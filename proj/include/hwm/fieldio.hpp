#pragma once

#include "hwm/momenta.hpp"
#include "hwm/spectral.hpp"
#include "hwm/waves.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hwm {

inline constexpr std::string_view field_magic = "HWMF1";

/// HWMF1: a one-line JSON header (magic, nx, ny, dx, dy, x0, y0, k, theta,
/// z_plane, description) terminated by '\n', then nx*ny (re, im) pairs of
/// little-endian IEEE-754 doubles, row-major with y outer.
std::string encode_field(const FieldGrid &field);
/// FormatError naming the byte offset on bad magic, malformed header, short or
/// long payload, or non-finite samples.
FieldGrid decode_field(std::string_view bytes);

void write_field(const FieldGrid &field, const std::filesystem::path &path);
FieldGrid read_field(const std::filesystem::path &path);

/// CSV `x,y,re,im` (columns in any order, rows in any order) on a complete
/// rectangular lattice. Geometry is inferred; `meta` supplies the cone.
FieldGrid parse_field_csv(std::string_view text, const FieldMeta &meta = {});
FieldGrid read_field_csv(const std::filesystem::path &path, const FieldMeta &meta = {});
std::string format_field_csv(const FieldGrid &field);
void write_field_csv(const FieldGrid &field, const std::filesystem::path &path);

/// `n,re,im,abs2`
std::string format_oam_csv(const OamSpectrum &spec);
/// `phi,re,im`
std::string format_ring_csv(const RingSpectrum &ring);
/// JSON summary with the Parseval norms and the coefficient list.
std::string format_spectrum_json(const RingSpectrum &ring, const OamSpectrum &oam,
                                 Window window);

/// JSON object {"reports": [...]}, one entry per method.
std::string format_report_json(const std::vector<MomentumReport> &reports);

/// `class,n,q,char_value,j,coeff`, one row per nonzero coefficient.
std::string format_mathieu_table(const std::vector<MathieuEigen> &rows);

/// Class label as used in the table: ce_2r, ce_2r+1, se_2r+1 or se_2r+2.
std::string class_label(const MathieuClass &cls);

void write_text(const std::filesystem::path &path, std::string_view text);
std::string read_text(const std::filesystem::path &path);

} // namespace hwm
