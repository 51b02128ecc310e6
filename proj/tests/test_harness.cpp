#include <gtest/gtest.h>

#include <alcc/harness.hpp>

#include <sstream>

using namespace alcc;

namespace {

Scenario small(int A, Strategy s, double var = 1e-8) {
  Scenario sc;
  sc.A = A;
  sc.strategy = s;
  sc.precision = {PrecisionModel::Synthetic, var};
  sc.trials = 20;
  return sc;
}

std::string csv_of(const SweepResult& r, bool rows = true) {
  std::ostringstream os;
  write_csv(os, r, rows);
  return os.str();
}

} // namespace

TEST(Trial, CleanPipeline) {
  Scenario sc;
  sc.A = 0;
  sc.enc.sigma_pad = 1.0;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    auto r = run_trial(sc, s);
    EXPECT_LE(r.e_rel, 1e-6);
    EXPECT_TRUE(r.loc_correct);
  }
}

TEST(Trial, LargePaddingSetsPrecisionFloor) {
  Scenario sc;
  sc.A = 0;
  const double e = run_trial(sc, 1).e_rel;
  EXPECT_GT(e, 1e-6);
  EXPECT_LT(e, 1e-2);
}

TEST(Trial, ReplayIsIdentical) {
  auto sc = small(3, Strategy::Joint, 1e-3);
  auto a = run_trial(sc, 99), b = run_trial(sc, 99);
  EXPECT_EQ(a.e_rel, b.e_rel);
  EXPECT_EQ(a.loc_correct, b.loc_correct);
}

TEST(Trial, NoDecoderDegradesByTwentyDb) {
  SweepSpec g;
  g.A = {0, 4};
  auto r = run_sweep(small(0, Strategy::None), g, 1);
  EXPECT_GE(r.mean_db(1) - r.mean_db(0), 20.0);
}

TEST(Trial, DecoderKeepsFewByzantinesNearBaseline) {
  SweepSpec g;
  g.A = {0, 4};
  auto r = run_sweep(small(0, Strategy::Independent), g, 1);
  EXPECT_LE(r.mean_db(1) - r.mean_db(0), 3.0);
}

TEST(Trial, CapabilityExceededIsRecorded) {
  auto sc = small(9, Strategy::Independent);
  TrialRecord r;
  ASSERT_NO_THROW(r = run_trial(sc, 4));
  EXPECT_TRUE(r.capability_exceeded);
  EXPECT_FALSE(r.loc_correct);
}

TEST(Trial, RestrictedExactOnUnreliableSet) {
  Scenario sc;
  sc.enc.N = 11;
  sc.enc.k = 3;
  sc.enc.t = 1;
  sc.unreliable = {1, 3, 6, 9, 11};
  sc.enc.sigma_pad = 1.0;
  sc.A = 2;
  sc.strategy = Strategy::Restricted;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    auto r = run_trial(sc, s);
    EXPECT_TRUE(r.loc_correct);
    EXPECT_LE(r.e_rel, 1e-6);
  }
}

TEST(Sweep, SinglePointGrid) {
  auto sc = small(2, Strategy::Independent);
  sc.trials = 3;
  auto r = run_sweep(sc, {}, 1);
  ASSERT_EQ(r.grid.size(), 1u);
  auto body = csv_of(r, false);
  std::istringstream is(body);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "scenario,seed,A,sigma_p2,strategy,e_rel,e_rel_db,loc_correct");
  int n = 0;
  while (std::getline(is, line)) ++n;
  EXPECT_EQ(n, 1);
}

TEST(Sweep, AggregateDbMatchesHandComputation) {
  auto sc = small(0, Strategy::Independent);
  sc.trials = 4;
  SweepSpec g;
  g.A = {0, 5};
  auto r = run_sweep(sc, g, 1);
  for (std::size_t p = 0; p < r.grid.size(); ++p) {
    double s = 0.0;
    for (auto& t : r.trials[p]) s += t.e_rel;
    EXPECT_NEAR(r.mean_db(p), 20.0 * std::log10(s / 4.0), 1e-12);
  }
  auto body = csv_of(r);
  std::istringstream is(body);
  std::string line;
  int rows = 0, means = 0;
  std::getline(is, line);
  while (std::getline(is, line)) {
    ++rows;
    if (line.find(",mean,") != std::string::npos) ++means;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
  }
  EXPECT_EQ(rows, 10);
  EXPECT_EQ(means, 2);
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  auto sc = small(0, Strategy::Joint, 1e-2);
  sc.trials = 6;
  SweepSpec g;
  g.A = {2, 6};
  g.strategy = {Strategy::Independent, Strategy::Joint};
  auto a = csv_of(run_sweep(sc, g, 1));
  auto b = csv_of(run_sweep(sc, g, 3));
  auto c = csv_of(run_sweep(sc, g, 1));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Sweep, PairedTrialsAcrossStrategies) {
  auto sc = small(0, Strategy::Independent);
  sc.trials = 2;
  SweepSpec g;
  g.strategy = {Strategy::Independent, Strategy::None};
  auto r = run_sweep(sc, g, 1);
  EXPECT_EQ(r.trials[0][0].seed, r.trials[1][0].seed);
  EXPECT_NE(r.trials[0][0].seed, r.trials[0][1].seed);
}

TEST(ParallelMap, OrderPreserved) {
  auto v = parallel_map<int>(100, [](std::size_t i) { return static_cast<int>(i * i); }, 4);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(v[i], i * i);
}

TEST(Config, ParsesSectionsAndLists) {
  auto c = Config::from_string(
      "# comment\n[run]\nname = demo\ntrials = 7\n[sweep]\nA = 1, 2,3\nvariance = 1e-3,1e-2\n"
      "assignment = 1,2,3,4,5; 1,3,6,9,11\n");
  EXPECT_EQ(c.str("run.name", ""), "demo");
  EXPECT_EQ(c.integer("run.trials", 0), 7);
  EXPECT_EQ(c.int_list("sweep.A"), std::vector<int>({1, 2, 3}));
  auto sp = sweep_from_config(c);
  EXPECT_EQ(sp.variance, std::vector<double>({1e-3, 1e-2}));
  ASSERT_EQ(sp.assignment.size(), 2u);
  EXPECT_EQ(sp.assignment[1], std::vector<int>({1, 3, 6, 9, 11}));
}

TEST(Config, UnknownKeysRejected) {
  auto c = Config::from_string("[run]\nname = x\n[decoder]\nstrategy = joint\nbogus = 1\n");
  auto sc = scenario_from_config(c);
  EXPECT_EQ(sc.strategy, Strategy::Joint);
  sweep_from_config(c);
  EXPECT_THROW(reject_unused(c), InvalidParams);
}

TEST(Config, InvalidValuesRejected) {
  EXPECT_THROW(scenario_from_config(Config::from_string("[decoder]\nstrategy = psychic\n")), InvalidParams);
  EXPECT_THROW(scenario_from_config(Config::from_string("[encoding]\nN = 10\n")), InvalidParams);
  EXPECT_THROW(scenario_from_config(Config::from_string("[run]\ntrials = abc\n")), InvalidParams);
  EXPECT_THROW(scenario_from_config(Config::from_string("[byzantine]\nA = 2\nlocations = 1,40\n")), InvalidParams);
  EXPECT_THROW(Config::load("/nonexistent/alcc.cfg"), InvalidParams);
}

TEST(Config, ShippedConfigsLoad) {
  for (const char* f : {"nullification.cfg", "joint_vs_independent.cfg", "weak_collusion.cfg", "assignment.cfg"}) {
    auto c = Config::load(std::string(ALCC_CONFIG_DIR) + "/" + f);
    EXPECT_NO_THROW({
      scenario_from_config(c);
      sweep_from_config(c);
      reject_unused(c);
    }) << f;
  }
}

TEST(Oracle, SelftestCodesPass) {
  for (auto [N, K] : std::vector<std::pair<int, int>>{{7, 3}, {11, 7}, {15, 7}}) {
    auto r = decoder_oracle(N, K, 5, 2);
    EXPECT_TRUE(r.ok());
    EXPECT_LE(r.worst_rel, 1e-6);
  }
}
