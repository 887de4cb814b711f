#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ltar/model.hpp"
#include "ltar/tensor.hpp"

namespace ltar {

/// "%.17g": enough digits for every double to round-trip exactly.
std::string format_double(double value);

// Series files:
//
//   #LTAR-SERIES v1
//   # ell=<ell> depth=<m> count=<n>
//   <ell lines of m comma-separated numbers>   observation 1
//   <blank line>
//   ...                                        observation n
//
// Line i of an observation block holds tube (i, 0, :). LF endings only, no
// blank line after the last block.

void write_series(std::ostream& out, const TensorSeries& series);
std::string series_to_string(const TensorSeries& series);

/// Throws ParseError with the 1-based line and column of the first problem.
TensorSeries parse_series(std::string_view text,
                          const std::string& source = "<series>");

void save_series(const std::filesystem::path& path, const TensorSeries& series);
TensorSeries load_series(const std::filesystem::path& path);

// Model files: a JSON document
//   { format_version, p, d, s, transform, difference_order, ell, m,
//     A: [p arrays of ell*ell*m numbers], C: [ell*m numbers],
//     retained_tails: [{kind, order, observations: [[ell*m numbers], ...]}] }
// with tensor entries in storage order (slice by slice, row-major within a
// slice).

inline constexpr int kModelFormatVersion = 1;

std::string serialize_model(const LtarModel& model);
LtarModel deserialize_model(std::string_view json,
                            const std::string& source = "<model>");

void save_model(const std::filesystem::path& path, const LtarModel& model);
LtarModel load_model(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace ltar
