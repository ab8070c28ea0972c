#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "rsfade/convergence.hpp"
#include "rsfade/error.hpp"

using Eigen::MatrixXd;
using rsfade::ErrorKind;
using rsfade::GridSpec;
using rsfade::StudyAxis;

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

}  // namespace

TEST(ErrorNorms, IdenticalFields) {
  const GridSpec grid({}, 5, 4);
  const MatrixXd u = MatrixXd::Random(4, 3);
  const auto norms = rsfade::error_norms(u, u, grid);
  EXPECT_EQ(norms.max_error, 0.0);
  EXPECT_EQ(norms.l2_error, 0.0);
}

TEST(ErrorNorms, ConstantOffset) {
  const GridSpec grid({0, 2, 0, 1}, 5, 4);
  const MatrixXd u = MatrixXd::Random(4, 3);
  const double c = -0.3;
  const auto norms = rsfade::error_norms(u, u.array() - c, grid);
  EXPECT_NEAR(norms.max_error, 0.3, 1e-15);
  EXPECT_NEAR(norms.l2_error, 0.3 * std::sqrt(grid.dx() * grid.dy() * 4 * 3), 1e-15);
}

TEST(ErrorNorms, AgainstExactFunctionAtFieldTime) {
  const GridSpec grid({}, 4, 4);
  rsfade::SolutionField field{MatrixXd::Zero(3, 3), 2.0, 5};
  const auto norms =
      rsfade::error_norms(field, [](double, double, double t) { return t; }, grid);
  EXPECT_DOUBLE_EQ(norms.max_error, 2.0);
}

TEST(ErrorNorms, Errors) {
  const GridSpec grid({}, 4, 4);
  EXPECT_EQ(kind_of([&] { rsfade::error_norms(MatrixXd::Zero(3, 3), MatrixXd::Zero(3, 2), grid); }),
            ErrorKind::Shape);
  EXPECT_EQ(kind_of([&] { rsfade::error_norms(MatrixXd::Zero(2, 2), MatrixXd::Zero(2, 2), grid); }),
            ErrorKind::Shape);
  rsfade::SolutionField field{MatrixXd::Zero(3, 3), 0.0, 0};
  EXPECT_EQ(kind_of([&] { rsfade::error_norms(field, rsfade::SpaceTimeFunction{}, grid); }),
            ErrorKind::Argument);
}

TEST(ConvergenceRates, FourthOrderSequence) {
  const auto rates = rsfade::convergence_rates({1.0, 1.0 / 16, 1.0 / 256}, {0.1, 0.05, 0.025});
  ASSERT_EQ(rates.size(), 2u);
  for (const double r : rates) EXPECT_NEAR(r, 4.0, 1e-12);
}

// Reference errors carry six significant figures, which leaves about 1e-5
// of slack in a recomputed rate.
TEST(ConvergenceRates, TablePairs) {
  EXPECT_NEAR(rsfade::convergence_rates({3.19826e-3, 2.61740e-4}, {0.1, 0.05})[0], 3.61108, 2e-5);
  EXPECT_NEAR(rsfade::convergence_rates({4.79240e-3, 1.46420e-3}, {0.1, 0.05})[0], 1.71063, 2e-5);
}

TEST(ConvergenceRates, RecoversSyntheticPowerLaws) {
  const std::vector<double> steps{0.3, 0.17, 0.08, 0.031, 0.0042};
  for (const double order : {1.0, 2.0, 4.0}) {
    std::vector<double> errors;
    for (const double h : steps) errors.push_back(2.7 * std::pow(h, order));
    for (const double r : rsfade::convergence_rates(errors, steps)) EXPECT_NEAR(r, order, 1e-12);
  }
}

TEST(ConvergenceRates, Errors) {
  EXPECT_EQ(kind_of([] { rsfade::convergence_rates({1.0, 0.0}, {0.1, 0.05}); }),
            ErrorKind::DegenerateRate);
  EXPECT_EQ(kind_of([] { rsfade::convergence_rates({1.0, -1.0}, {0.1, 0.05}); }),
            ErrorKind::DegenerateRate);
  EXPECT_EQ(kind_of([] { rsfade::convergence_rates({1.0, 0.5}, {0.1, 0.1}); }),
            ErrorKind::DegenerateRate);
  EXPECT_EQ(kind_of([] { rsfade::convergence_rates({1.0, 0.5}, {0.1}); }), ErrorKind::Argument);
  EXPECT_EQ(kind_of([] { rsfade::convergence_rates({1.0}, {0.1}); }), ErrorKind::Argument);
}

TEST(StudyAxis, RoundTrip) {
  EXPECT_EQ(rsfade::parse_study_axis("space"), StudyAxis::Space);
  EXPECT_EQ(rsfade::parse_study_axis("time"), StudyAxis::Time);
  EXPECT_EQ(rsfade::to_string(StudyAxis::Time), "time");
  EXPECT_EQ(kind_of([] { rsfade::parse_study_axis("both"); }), ErrorKind::Argument);
}

TEST(RefinementStudy, SingleLevelHasNoRates) {
  const auto report =
      rsfade::refinement_study(rsfade::example1(), StudyAxis::Space, {0.25}, 0.01);
  ASSERT_EQ(report.levels.size(), 1u);
  EXPECT_TRUE(report.rates.empty());
  EXPECT_TRUE(report.l2_rates.empty());
  EXPECT_EQ(report.levels[0].divisions, 4u);
  EXPECT_GT(report.levels[0].max_error, 0.0);
}

TEST(RefinementStudy, ErrorsDecreaseOnBothExamples) {
  const double pi = std::numbers::pi;
  const auto first =
      rsfade::refinement_study(rsfade::example1(), StudyAxis::Space, {0.25, 0.125, 0.0625}, 0.01);
  const auto second = rsfade::refinement_study(rsfade::example2(), StudyAxis::Space,
                                               {0.25 * pi, 0.125 * pi, 0.0625 * pi}, 0.01);
  for (const auto* report : {&first, &second}) {
    ASSERT_EQ(report->rates.size(), 2u);
    for (std::size_t i = 1; i < report->levels.size(); ++i) {
      EXPECT_LT(report->levels[i].max_error, report->levels[i - 1].max_error);
      EXPECT_LT(report->levels[i].step, report->levels[i - 1].step);
    }
  }
  EXPECT_EQ(first.problem, "example1");
  EXPECT_EQ(first.fixed_step, 0.01);
  EXPECT_DOUBLE_EQ(first.t_end, std::numbers::pi);
}

TEST(RefinementStudy, TimeAxisRecordsFittedSteps) {
  const auto report =
      rsfade::refinement_study(rsfade::example1(), StudyAxis::Time, {0.1, 0.05}, 0.1);
  EXPECT_EQ(report.levels[0].divisions, 31u);
  EXPECT_DOUBLE_EQ(report.levels[0].step, std::numbers::pi / 31.0);
  EXPECT_DOUBLE_EQ(report.levels[0].nominal_step, 0.1);
  EXPECT_EQ(report.levels[1].divisions, 63u);
}

TEST(RefinementStudy, ExampleOneTemporalRatesApproachTwo) {
  const auto report = rsfade::refinement_study(rsfade::example1(), StudyAxis::Time,
                                               {0.2, 0.1, 0.05}, 0.02);
  ASSERT_EQ(report.rates.size(), 2u);
  EXPECT_GT(report.rates.back(), 1.75);
}

TEST(RefinementStudy, LevelValidationAndAnnotation) {
  const auto p = rsfade::example1();
  EXPECT_EQ(kind_of([&] { rsfade::refinement_study(p, StudyAxis::Space, {0.1, 0.2}, 0.01); }),
            ErrorKind::Argument);
  EXPECT_EQ(kind_of([&] { rsfade::refinement_study(p, StudyAxis::Space, {}, 0.01); }),
            ErrorKind::Argument);
  try {
    rsfade::refinement_study(p, StudyAxis::Space, {0.25, 0.3 / 4}, 0.01);
    FAIL() << "expected an error";
  } catch (const rsfade::Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Argument);
    EXPECT_NE(std::string(e.what()).find("level 1"), std::string::npos) << e.what();
  }
  auto no_exact = p;
  no_exact.exact = nullptr;
  EXPECT_EQ(kind_of([&] { rsfade::refinement_study(no_exact, StudyAxis::Space, {0.25}, 0.01); }),
            ErrorKind::ProblemSpec);
}

TEST(RefinementStudy, ParallelMatchesSerial) {
  const auto p = rsfade::example2();
  const double pi = std::numbers::pi;
  const std::vector<double> levels{0.25 * pi, 0.125 * pi, 0.0625 * pi};
  const auto serial = rsfade::refinement_study(p, StudyAxis::Space, levels, 0.05);
  rsfade::StudyOptions options;
  options.parallel = true;
  const auto parallel = rsfade::refinement_study(p, StudyAxis::Space, levels, 0.05, options);
  EXPECT_EQ(rsfade::report_to_json(serial, false), rsfade::report_to_json(parallel, false));
}

TEST(Report, SerializationFormats) {
  rsfade::ConvergenceReport report;
  report.problem = "demo";
  report.axis = StudyAxis::Space;
  report.fixed_step = 0.001;
  report.t_end = 1.0;
  report.levels = {{0.1, 0.1, 10, 1e-2, 2e-2, 0.5}, {0.05, 0.05, 20, 1e-2 / 16, 2e-2 / 16, 1.5}};
  report.rates = {4.0};
  report.l2_rates = {4.0};

  EXPECT_EQ(rsfade::report_to_csv(report),
            "step,max_error,l2_error,rate\n0.1,0.01,0.02,\n0.05,0.000625,0.00125,4\n");

  const auto with_meta = nlohmann::json::parse(rsfade::report_to_json(report, true));
  EXPECT_EQ(with_meta["problem"], "demo");
  EXPECT_EQ(with_meta["axis"], "space");
  EXPECT_EQ(with_meta["levels"].size(), 2u);
  EXPECT_EQ(with_meta["levels"][1]["divisions"], 20);
  EXPECT_EQ(with_meta["rates"][0], 4.0);
  EXPECT_EQ(with_meta["metadata"]["wall_seconds"][1], 1.5);
  const auto without = nlohmann::json::parse(rsfade::report_to_json(report, false));
  EXPECT_FALSE(without.contains("metadata"));

  std::istringstream plot(rsfade::report_to_plot_data(report));
  std::string line;
  std::getline(plot, line);
  EXPECT_EQ(line.front(), '#');
  double log_step = 0, log_error = 0;
  plot >> log_step >> log_error;
  EXPECT_DOUBLE_EQ(log_step, std::log(0.1));
  EXPECT_DOUBLE_EQ(log_error, std::log(0.01));
}
