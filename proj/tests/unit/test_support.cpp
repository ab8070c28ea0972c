#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "rsfade/error.hpp"
#include "rsfade/grid.hpp"
#include "rsfade/number_format.hpp"

using rsfade::ErrorKind;
using rsfade::GridSpec;
using rsfade::Rectangle;

namespace fs = std::filesystem;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const rsfade::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no rsfade::Error thrown";
  return ErrorKind::Io;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Error, KindAndMessage) {
  const rsfade::Error e(ErrorKind::OrderDomain, "bad order");
  EXPECT_EQ(e.kind(), ErrorKind::OrderDomain);
  EXPECT_EQ(std::string(e.what()), "order-domain error: bad order");
  EXPECT_EQ(rsfade::to_string(ErrorKind::UnknownProblem), "unknown-problem");
}

TEST(Grid, SizesAndNodes) {
  const GridSpec grid({0.0, 2.0, -1.0, 1.0}, 4, 8);
  EXPECT_EQ(grid.nx(), 3u);
  EXPECT_EQ(grid.ny(), 7u);
  EXPECT_DOUBLE_EQ(grid.dx(), 0.5);
  EXPECT_DOUBLE_EQ(grid.dy(), 0.25);
  EXPECT_DOUBLE_EQ(grid.x(0), 0.0);
  EXPECT_DOUBLE_EQ(grid.x(4), 2.0);
  EXPECT_DOUBLE_EQ(grid.y(2), -0.5);
}

TEST(Grid, SampleOrientation) {
  const GridSpec grid({}, 4, 3);
  const auto m = grid.sample([](double x, double y) { return 10 * x + y; });
  ASSERT_EQ(m.rows(), 3);
  ASSERT_EQ(m.cols(), 2);
  EXPECT_DOUBLE_EQ(m(0, 0), 10 * 0.25 + 1.0 / 3);
  EXPECT_DOUBLE_EQ(m(2, 1), 10 * 0.75 + 2.0 / 3);
}

TEST(Grid, WithSpacing) {
  EXPECT_EQ(GridSpec::with_spacing({}, 0.1).m1(), 10u);
  EXPECT_EQ(GridSpec::with_spacing({}, 0.0125).m2(), 80u);
  const double pi = std::numbers::pi;
  const auto grid = GridSpec::with_spacing({0, pi, 0, pi}, 0.05 * pi);
  EXPECT_EQ(grid.m1(), 20u);
  EXPECT_EQ(rsfade::cells_for_spacing(pi, 0.0125 * pi), 80u);
}

TEST(Grid, Errors) {
  EXPECT_EQ(kind_of([] { GridSpec({}, 1, 4); }), ErrorKind::Argument);
  EXPECT_EQ(kind_of([] { GridSpec({1, 0, 0, 1}, 4, 4); }), ErrorKind::Argument);
  EXPECT_EQ(kind_of([] { GridSpec::with_spacing({}, 0.3); }), ErrorKind::Argument);
  EXPECT_EQ(kind_of([] { GridSpec::with_spacing({}, 0.0); }), ErrorKind::Argument);
  EXPECT_EQ(kind_of([] { GridSpec::with_spacing({}, 0.75); }), ErrorKind::Argument);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(rsfade::format_double(0.1), "0.1");
  EXPECT_EQ(rsfade::format_double(4.0), "4");
  EXPECT_EQ(rsfade::format_double(-2.5e-300), "-2.5e-300");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> exponent(-300, 300), mantissa(-1, 1);
  for (int i = 0; i < 2000; ++i) {
    const double value = mantissa(rng) * std::pow(10.0, exponent(rng));
    EXPECT_EQ(std::strtod(rsfade::format_double(value).c_str(), nullptr), value);
  }
}

TEST(WriteFileAtomic, WritesAndReplaces) {
  const auto dir = fs::temp_directory_path() / "rsfade_atomic_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto path = dir / "out.txt";
  rsfade::write_file_atomic(path, "first\n");
  EXPECT_EQ(slurp(path), "first\n");
  rsfade::write_file_atomic(path, "second\n");
  EXPECT_EQ(slurp(path), "second\n");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1u);
  fs::remove_all(dir);
  EXPECT_EQ(kind_of([&] { rsfade::write_file_atomic(dir / "missing" / "x.txt", "x"); }),
            ErrorKind::Io);
}
