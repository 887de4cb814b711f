#include "ltar/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ltar {

namespace {

constexpr std::string_view kSeriesMagic = "#LTAR-SERIES v1";

struct Line {
  std::string_view text;
  std::size_t number;  // 1-based
};

class LineReader {
 public:
  LineReader(std::string_view text, const std::string& source)
      : text_(text), source_(source) {}

  bool at_end() const { return pos_ >= text_.size(); }
  std::size_t next_line_number() const { return line_ + 1; }

  Line next(std::string_view expecting) {
    if (at_end()) {
      throw ParseError(source_, line_ + 1, 0,
                       "unexpected end of file, expected " +
                           std::string(expecting));
    }
    const std::size_t end = text_.find('\n', pos_);
    std::string_view line = end == std::string_view::npos
                                ? text_.substr(pos_)
                                : text_.substr(pos_, end - pos_);
    pos_ = end == std::string_view::npos ? text_.size() : end + 1;
    ++line_;
    if (const auto cr = line.find('\r'); cr != std::string_view::npos) {
      throw ParseError(source_, line_, cr + 1,
                       "carriage return found; series files use LF endings");
    }
    return {line, line_};
  }

 private:
  std::string_view text_;
  const std::string& source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

std::size_t parse_count(std::string_view field, std::string_view key,
                        const Line& line, std::size_t column,
                        const std::string& source) {
  if (field.substr(0, key.size()) != key) {
    throw ParseError(source, line.number, column,
                     "expected '" + std::string(key) + "<count>'");
  }
  const std::string_view digits = field.substr(key.size());
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() ||
      digits.empty() || value == 0) {
    throw ParseError(source, line.number, column + key.size(),
                     "expected a positive integer after '" + std::string(key) +
                         "'");
  }
  return value;
}

std::vector<double> flatten(const Tensor3& t) {
  return {t.data().begin(), t.data().end()};
}

void write_array(std::ostream& out, std::span<const double> values) {
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out << ", ";
    }
    out << format_double(values[i]);
  }
  out << ']';
}

using nlohmann::json;

const json& require(const json& doc, const char* key,
                    const std::string& source) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParseError(source, 0, 0,
                     std::string("model is missing field '") + key + "'");
  }
  return *it;
}

std::size_t require_count(const json& doc, const char* key,
                          const std::string& source) {
  const json& v = require(doc, key, source);
  if (!v.is_number_unsigned()) {
    throw ParseError(source, 0, 0,
                     std::string("model field '") + key +
                         "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string require_string(const json& doc, const char* key,
                           const std::string& source) {
  const json& v = require(doc, key, source);
  if (!v.is_string()) {
    throw ParseError(source, 0, 0,
                     std::string("model field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::vector<double> require_numbers(const json& v, std::size_t expected,
                                    const std::string& what,
                                    const std::string& source) {
  if (!v.is_array() || v.size() != expected) {
    throw ParseError(source, 0, 0,
                     what + " must be an array of " + std::to_string(expected) +
                         " numbers");
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& x : v) {
    if (!x.is_number()) {
      throw ParseError(source, 0, 0, what + " contains a non-number");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return {buf, static_cast<std::size_t>(len)};
}

void write_series(std::ostream& out, const TensorSeries& series) {
  const std::size_t l = series.ell();
  const std::size_t m = series.depth();
  out << kSeriesMagic << '\n'
      << "# ell=" << l << " depth=" << m << " count=" << series.size() << '\n';
  for (std::size_t j = 0; j < series.size(); ++j) {
    if (j > 0) {
      out << '\n';
    }
    const Tensor3& obs = series[j];
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        if (k > 0) {
          out << ',';
        }
        out << format_double(obs(i, 0, k));
      }
      out << '\n';
    }
  }
}

std::string series_to_string(const TensorSeries& series) {
  std::ostringstream out;
  write_series(out, series);
  return out.str();
}

TensorSeries parse_series(std::string_view text, const std::string& source) {
  LineReader reader(text, source);
  const Line magic = reader.next("the series header");
  if (magic.text != kSeriesMagic) {
    throw ParseError(source, magic.number, 1,
                     "expected '" + std::string(kSeriesMagic) + "'");
  }
  const Line dims = reader.next("the dimension line");
  constexpr std::string_view prefix = "# ";
  if (dims.text.substr(0, prefix.size()) != prefix) {
    throw ParseError(source, dims.number, 1,
                     "expected '# ell=<n> depth=<n> count=<n>'");
  }
  std::vector<std::string_view> fields;
  std::vector<std::size_t> columns;
  {
    std::size_t start = prefix.size();
    while (true) {
      const std::size_t sp = dims.text.find(' ', start);
      fields.push_back(dims.text.substr(start, sp - start));
      columns.push_back(start + 1);
      if (sp == std::string_view::npos) break;
      start = sp + 1;
    }
  }
  if (fields.size() != 3) {
    throw ParseError(source, dims.number, 1,
                     "expected '# ell=<n> depth=<n> count=<n>'");
  }
  const std::size_t l = parse_count(fields[0], "ell=", dims, columns[0], source);
  const std::size_t m =
      parse_count(fields[1], "depth=", dims, columns[1], source);
  const std::size_t count =
      parse_count(fields[2], "count=", dims, columns[2], source);

  std::vector<Tensor3> observations;
  observations.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    if (j > 0) {
      const Line blank = reader.next("a blank separator line");
      if (!blank.text.empty()) {
        throw ParseError(source, blank.number, 1,
                         "expected a blank line between observations " +
                             std::to_string(j) + " and " +
                             std::to_string(j + 1));
      }
    }
    std::vector<double> data(l * m);
    for (std::size_t i = 0; i < l; ++i) {
      const Line row = reader.next("observation " + std::to_string(j + 1) +
                                   " row " + std::to_string(i + 1));
      std::size_t start = 0;
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t comma = row.text.find(',', start);
        const bool last = k + 1 == m;
        if (!last && comma == std::string_view::npos) {
          throw ParseError(source, row.number, row.text.size() + 1,
                           "expected " + std::to_string(m) +
                               " comma-separated values, found " +
                               std::to_string(k + 1));
        }
        if (last && comma != std::string_view::npos) {
          throw ParseError(source, row.number, comma + 1,
                           "more than " + std::to_string(m) +
                               " values on this line");
        }
        const std::string_view field =
            last ? row.text.substr(start) : row.text.substr(start, comma - start);
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} ||
            ptr != field.data() + field.size()) {
          throw ParseError(source, row.number, start + 1,
                           "invalid number '" + std::string(field) + "'");
        }
        // Tube (i, 0, :) -> storage index k * l + i.
        data[k * l + i] = value;
        start = comma + 1;
      }
    }
    observations.emplace_back(l, 1, m, std::move(data));
  }
  if (!reader.at_end()) {
    const Line extra = reader.next("end of file");
    throw ParseError(source, extra.number, 1,
                     "unexpected content after the last of " +
                         std::to_string(count) + " observations");
  }
  return TensorSeries(std::move(observations));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading '" + path.string() + "'");
  }
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

void save_series(const std::filesystem::path& path,
                 const TensorSeries& series) {
  write_file(path, series_to_string(series));
}

TensorSeries load_series(const std::filesystem::path& path) {
  return parse_series(read_file(path), path.string());
}

std::string serialize_model(const LtarModel& model) {
  model.validate();
  std::ostringstream out;
  out << "{\n"
      << "  \"format_version\": " << kModelFormatVersion << ",\n"
      << "  \"p\": " << model.p << ",\n"
      << "  \"d\": " << model.d << ",\n"
      << "  \"s\": " << model.s << ",\n"
      << "  \"transform\": \"" << to_string(model.transform) << "\",\n"
      << "  \"difference_order\": \"" << to_string(model.difference_order)
      << "\",\n"
      << "  \"ell\": " << model.ell() << ",\n"
      << "  \"m\": " << model.depth() << ",\n"
      << "  \"A\": [";
  for (std::size_t i = 0; i < model.A.size(); ++i) {
    out << (i > 0 ? ",\n    " : "\n    ");
    write_array(out, flatten(model.A[i]));
  }
  out << "\n  ],\n  \"C\": ";
  write_array(out, flatten(model.C));
  out << ",\n  \"retained_tails\": [";
  for (std::size_t t = 0; t < model.retained_tails.size(); ++t) {
    const auto& state = model.retained_tails[t];
    out << (t > 0 ? ",\n    {" : "\n    {") << "\"kind\": \""
        << to_string(state.kind) << "\", \"order\": " << state.order
        << ", \"observations\": [";
    for (std::size_t j = 0; j < state.anchor.size(); ++j) {
      out << (j > 0 ? ",\n      " : "\n      ");
      write_array(out, flatten(state.anchor[j]));
    }
    out << "\n    ]}";
  }
  out << (model.retained_tails.empty() ? "]\n" : "\n  ]\n") << "}\n";
  return out.str();
}

LtarModel deserialize_model(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, 0, e.what());
  }
  if (!doc.is_object()) {
    throw ParseError(source, 0, 0, "model document must be a JSON object");
  }
  const std::size_t version = require_count(doc, "format_version", source);
  if (version != kModelFormatVersion) {
    throw ParseError(source, 0, 0,
                     "unsupported model format_version " +
                         std::to_string(version));
  }
  LtarModel model;
  model.p = require_count(doc, "p", source);
  model.d = require_count(doc, "d", source);
  model.s = require_count(doc, "s", source);
  try {
    model.transform =
        parse_transform_kind(require_string(doc, "transform", source));
    model.difference_order = parse_difference_order(
        require_string(doc, "difference_order", source));
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, 0, e.what());
  }
  const std::size_t l = require_count(doc, "ell", source);
  const std::size_t m = require_count(doc, "m", source);
  if (l == 0 || m == 0) {
    throw ParseError(source, 0, 0, "model dimensions must be positive");
  }

  const json& a = require(doc, "A", source);
  if (!a.is_array() || a.size() != model.p) {
    throw ParseError(source, 0, 0,
                     "field 'A' must hold p = " + std::to_string(model.p) +
                         " coefficient arrays");
  }
  for (std::size_t i = 0; i < model.p; ++i) {
    model.A.emplace_back(l, l, m,
                         require_numbers(a[i], l * l * m,
                                         "A[" + std::to_string(i) + "]",
                                         source));
  }
  model.C = Tensor3(l, 1, m,
                    require_numbers(require(doc, "C", source), l * m, "C",
                                    source));

  const json& tails = require(doc, "retained_tails", source);
  if (!tails.is_array()) {
    throw ParseError(source, 0, 0, "field 'retained_tails' must be an array");
  }
  for (const auto& t : tails) {
    if (!t.is_object()) {
      throw ParseError(source, 0, 0, "retained tail must be an object");
    }
    DifferencingState state;
    try {
      state.kind = parse_difference_kind(require_string(t, "kind", source));
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, 0, 0, e.what());
    }
    state.order = require_count(t, "order", source);
    const json& obs = require(t, "observations", source);
    if (!obs.is_array() || obs.size() != state.order) {
      throw ParseError(source, 0, 0,
                       "retained tail must hold 'order' observations");
    }
    for (const auto& o : obs) {
      state.anchor.emplace_back(
          l, 1, m, require_numbers(o, l * m, "retained observation", source));
    }
    model.retained_tails.push_back(std::move(state));
  }
  try {
    model.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, 0, e.what());
  }
  return model;
}

void save_model(const std::filesystem::path& path, const LtarModel& model) {
  write_file(path, serialize_model(model));
}

LtarModel load_model(const std::filesystem::path& path) {
  return deserialize_model(read_file(path), path.string());
}

}  // namespace ltar
