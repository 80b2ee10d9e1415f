#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "isometrica/error.hpp"
#include "isometrica/harness.hpp"

using namespace isometrica;

namespace {

RunConfig small_run(std::uint64_t seed, std::size_t trials) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.max_dim = 5;
  return cfg;
}

class ThreadsEnv {
 public:
  explicit ThreadsEnv(const char* value) {
    if (const char* old = std::getenv("ISOMETRICA_THREADS")) saved_ = old;
    ::setenv("ISOMETRICA_THREADS", value, 1);
  }
  ~ThreadsEnv() {
    if (saved_.empty())
      ::unsetenv("ISOMETRICA_THREADS");
    else
      ::setenv("ISOMETRICA_THREADS", saved_.c_str(), 1);
  }

 private:
  std::string saved_;
};

}  // namespace

TEST(Harness, SweepKindTokens) {
  for (SweepKind k : {SweepKind::kSupport, SweepKind::kExtremalSupport, SweepKind::kIsometryPath,
                      SweepKind::kExtremalPath, SweepKind::kContinuity})
    EXPECT_EQ(parse_sweep_kind(to_string(k)), k);
  EXPECT_EQ(to_string(SweepKind::kSupport), "thm1");
  EXPECT_FALSE(parse_sweep_kind("thm2").has_value());
}

TEST(Harness, ConfigValidation) {
  RunConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.max_dim = 1;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.max_dim = 65;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  EXPECT_NO_THROW(cfg.validate());
  GalleryParams g;
  g.points = 0;
  EXPECT_THROW(g.validate(), Error);
}

TEST(Harness, EverySuitePassesAtDefaultTolerances) {
  for (SweepKind k : {SweepKind::kSupport, SweepKind::kExtremalSupport, SweepKind::kIsometryPath,
                      SweepKind::kExtremalPath, SweepKind::kContinuity}) {
    const SweepReport r = run_sweep(k, small_run(7, 40));
    EXPECT_TRUE(r.passed()) << to_string(k);
    EXPECT_EQ(r.trials.size(), 40u);
    EXPECT_EQ(r.summary.checked + r.summary.skipped, 40u);
    for (std::size_t i = 0; i < r.trials.size(); ++i) EXPECT_EQ(r.trials[i].trial, i);
  }
}

TEST(Harness, ReportIsDeterministic) {
  const auto a = render_report(run_sweep(SweepKind::kSupport, small_run(3, 30)), ReportFormat::kJson);
  const auto b = render_report(run_sweep(SweepKind::kSupport, small_run(3, 30)), ReportFormat::kJson);
  const auto c = render_report(run_sweep(SweepKind::kSupport, small_run(4, 30)), ReportFormat::kJson);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Harness, ReportDoesNotDependOnWorkerCount) {
  std::string one, four;
  {
    ThreadsEnv env("1");
    EXPECT_EQ(worker_count(100), 1u);
    one = render_report(run_sweep(SweepKind::kExtremalSupport, small_run(5, 50)), ReportFormat::kJson);
  }
  {
    ThreadsEnv env("4");
    EXPECT_LE(worker_count(100), 4u);
    EXPECT_EQ(worker_count(1), 1u);
    four = render_report(run_sweep(SweepKind::kExtremalSupport, small_run(5, 50)), ReportFormat::kJson);
  }
  EXPECT_EQ(one, four);
}

TEST(Harness, CsvLayout) {
  const auto csv = render_report(run_sweep(SweepKind::kSupport, small_run(9, 12)), ReportFormat::kCsv);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "trial,seed,d,lhs,rhs,margin,flags");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 12u);
}

TEST(Harness, JsonSummaryFields) {
  const auto r = run_sweep(SweepKind::kSupport, small_run(11, 20));
  const Json j = Json::parse(render_report(r, ReportFormat::kJson));
  EXPECT_EQ(j["which"], "thm1");
  EXPECT_EQ(j["seed"], 11);
  EXPECT_EQ(j["summary"]["violations"], 0);
  EXPECT_EQ(j["results"].size(), 20u);
  ASSERT_TRUE(r.summary.min_margin.has_value());
  EXPECT_GE(*r.summary.min_margin, -1e-10);
}

TEST(Harness, ExtremalWindowAboveSqrtTwoSkipsEverything) {
  RunConfig cfg = small_run(1, 10);
  cfg.d_min = 1.5;
  cfg.d_max = 2.0;
  const auto r = run_sweep(SweepKind::kExtremalSupport, cfg);
  EXPECT_EQ(r.summary.skipped, 10u);
  EXPECT_TRUE(r.passed());
}

TEST(Harness, ImpossibleToleranceIsReportedAsViolation) {
  RunConfig cfg = small_run(2, 5);
  cfg.tolerances.iso_tol = 1e-300;
  const auto r = run_sweep(SweepKind::kSupport, cfg);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.trials[0].flags.back().rfind("error:", 0), 0u);
}

TEST(Gallery, Counts) {
  GalleryParams p;
  p.points = 7;
  p.pad = 2;
  const Json sharp = build_gallery(GalleryKind::kExtremalSharpness, p);
  EXPECT_EQ(sharp["entries"].size(), 7u);
  EXPECT_EQ(sharp["equality_cases"], 7);
  const Json proj = build_gallery(GalleryKind::kProjectionEquality, p);
  EXPECT_EQ(proj["equality_cases"], 7);
  const Json counter = build_gallery(GalleryKind::kCounterexamples, {});
  std::vector<std::string> names;
  for (const auto& e : counter["entries"]) names.push_back(e["name"]);
  EXPECT_EQ(names, (std::vector<std::string>{"zero_and_nonzero", "antipodal_extremal", "polar_discontinuity"}));
}
