#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "ltar/datagen.hpp"
#include "ltar/errors.hpp"
#include "ltar/io.hpp"
#include "oracles.hpp"

using namespace ltar;

namespace {

const char* kSmall =
    "#LTAR-SERIES v1\n"
    "# ell=2 depth=3 count=2\n"
    "1,2,3\n"
    "4,5,6\n"
    "\n"
    "0.5,-1e-3,7\n"
    "8,9,10\n";

std::size_t error_line(std::string_view text) {
  try {
    (void)parse_series(text, "s");
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(FormatDouble, SeventeenDigitsRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, i % 40 - 20);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(ParseSeries, LayoutMapsLinesToTubes) {
  const TensorSeries s = parse_series(kSmall);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.ell(), 2u);
  EXPECT_EQ(s.depth(), 3u);
  EXPECT_EQ(s[0](1, 0, 2), 6.0);
  EXPECT_EQ(s[1](0, 0, 1), -1e-3);
  EXPECT_EQ(series_to_string(s),
            "#LTAR-SERIES v1\n# ell=2 depth=3 count=2\n1,2,3\n4,5,6\n\n0.5,-0.001,7\n8,9,10\n");
}

TEST(ParseSeries, WriteParseIsByteExact) {
  std::mt19937_64 rng(2);
  const TensorSeries s = oracle::random_series(7, 4, 5, rng);
  const std::string text = series_to_string(s);
  const TensorSeries back = parse_series(text);
  EXPECT_EQ(back, s);
  EXPECT_EQ(series_to_string(back), text);
}

TEST(ParseSeries, ErrorsCarryLineNumbers) {
  std::string bad = kSmall;
  EXPECT_EQ(error_line("#LTAR-SERIES v2\n"), 1u);
  EXPECT_EQ(error_line("#LTAR-SERIES v1\n# ell=2 depth=3\n"), 2u);
  EXPECT_EQ(error_line("#LTAR-SERIES v1\n# ell=0 depth=3 count=1\n"), 2u);
  // Bad number on line 6.
  bad = std::string(kSmall).replace(std::string(kSmall).find("0.5"), 3, "0.x");
  EXPECT_EQ(error_line(bad), 6u);
  // Too few values on line 4.
  bad = std::string(kSmall).replace(std::string(kSmall).find("4,5,6"), 5, "4,5");
  EXPECT_EQ(error_line(bad), 4u);
  // Too many values on line 3.
  bad = std::string(kSmall).replace(std::string(kSmall).find("1,2,3"), 5, "1,2,3,4");
  EXPECT_EQ(error_line(bad), 3u);
  // Missing blank separator.
  bad = std::string(kSmall).erase(std::string(kSmall).find("\n\n"), 1);
  EXPECT_EQ(error_line(bad), 5u);
  // Truncated payload.
  EXPECT_EQ(error_line(std::string(kSmall).substr(0, std::string(kSmall).size() - 7)), 7u);
  // Trailing blank line.
  EXPECT_EQ(error_line(std::string(kSmall) + "\n"), 8u);
  // CR line endings.
  EXPECT_EQ(error_line("#LTAR-SERIES v1\r\n"), 1u);
  // Empty field.
  bad = std::string(kSmall).replace(std::string(kSmall).find("8,9"), 3, "8,,");
  EXPECT_EQ(error_line(bad), 7u);
}

TEST(ParseSeries, DiagnosticNamesSourceLineAndColumn) {
  std::string bad = std::string(kSmall).replace(std::string(kSmall).find("5,6"), 1, "?");
  try {
    (void)parse_series(bad, "data.txt");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_EQ(std::string(e.what()).rfind("data.txt:4:3:", 0), 0u);
  }
}

TEST(Files, SaveLoadAndIoErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "ltar_io_test";
  std::filesystem::create_directories(dir);
  const TensorSeries s = gen_ltar1_series(5, 1);
  save_series(dir / "s.txt", s);
  EXPECT_EQ(load_series(dir / "s.txt"), s);
  EXPECT_THROW((void)load_series(dir / "missing.txt"), IoError);
  EXPECT_THROW(write_file(dir / "no" / "such" / "dir.txt", "x"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(ModelJson, RoundTripIsByteExactAndForecastsMatch) {
  const TensorSeries s = gen_ltar1_series(400, 3);
  for (const auto kind : {TransformKind::Dct, TransformKind::Dft, TransformKind::Haar}) {
    const LtarModel m = fit_with_differencing(s.head(350), 2, 1, 4, kind,
                                              DifferenceOrder::LagThenSeasonal);
    const std::string text = serialize_model(m);
    const LtarModel back = deserialize_model(text);
    EXPECT_EQ(serialize_model(back), text);
    EXPECT_EQ(back.A, m.A);
    EXPECT_EQ(back.C, m.C);
    EXPECT_EQ(back.retained_tails, m.retained_tails);
    EXPECT_EQ(back.difference_order, m.difference_order);
    const auto fa = forecast(m, s.head(350), 30, ForecastMode::MultiStep);
    const auto fb = forecast(back, s.head(350), 30, ForecastMode::MultiStep);
    EXPECT_EQ(fa.forecasts, fb.forecasts);
  }
}

TEST(ModelJson, SchemaViolationsAreParseErrors) {
  const std::string good = serialize_model(ground_truth_theta());
  EXPECT_NO_THROW((void)deserialize_model(good));
  auto mutate = [&](const std::string& from, const std::string& to) {
    std::string out = good;
    const auto pos = out.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return out.replace(pos, from.size(), to);
  };
  EXPECT_THROW((void)deserialize_model("{"), ParseError);
  EXPECT_THROW((void)deserialize_model("[]"), ParseError);
  EXPECT_THROW((void)deserialize_model(mutate("\"format_version\": 1", "\"format_version\": 2")), ParseError);
  EXPECT_THROW((void)deserialize_model(mutate("\"p\": 1", "\"p\": 2")), ParseError);
  EXPECT_THROW((void)deserialize_model(mutate("\"transform\": \"dct\"", "\"transform\": \"dst\"")), ParseError);
  EXPECT_THROW((void)deserialize_model(mutate("\"ell\": 3", "\"ell\": 2")), ParseError);
  EXPECT_THROW((void)deserialize_model(mutate("\"s\": 0", "\"s\": 1")), ParseError);
  EXPECT_THROW((void)deserialize_model(mutate("\"C\": [0.10000000000000001", "\"C\": [\"x\"")), ParseError);
  EXPECT_THROW((void)deserialize_model(mutate("\"d\": 0,", "")), ParseError);
}
