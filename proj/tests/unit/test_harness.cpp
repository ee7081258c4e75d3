#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "exch/campaigns.hpp"
#include "exch/error.hpp"
#include "exch/harness.hpp"
#include "exch/json_io.hpp"
#include "exch/simulate.hpp"

using namespace exch;

TEST_CASE("nearest-rank quantiles") {
  const std::vector<double> v{10, 9, 8, 7, 6, 5, 4, 3, 2, 1};
  CHECK(quantile_nearest_rank(v, 0.25) == 3.0);
  CHECK(quantile_nearest_rank(v, 0.75) == 8.0);
  CHECK(quantile_nearest_rank(v, 0.5) == 5.0);
  CHECK(quantile_nearest_rank(v, 0.0) == 1.0);
  CHECK(quantile_nearest_rank(v, 1.0) == 10.0);
  CHECK(quantile_nearest_rank({4.0, 1.0, 3.0}, 0.25) == 1.0);
  CHECK(quantile_nearest_rank({4.0, 1.0, 3.0}, 0.75) == 4.0);
  CHECK(quantile_nearest_rank({7.0}, 0.25) == 7.0);
  CHECK_THROWS_AS(quantile_nearest_rank({}, 0.5), DomainError);
  const auto s = summarize({2.0, 4.0});
  CHECK(s.mean == 3.0);
  CHECK(s.q25 == 2.0);
  CHECK(s.q75 == 4.0);
}

TEST_CASE("records and CSV layout") {
  const auto nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<TrialRecord> recs{make_record(0, "g", 3, 0.1, 0.5, 0.5), make_record(1, "g", 3, 1.0 / 3.0, 0.25, 0.5),
                                make_record(2, "h", 0, 1.0, 1.0, nan)};
  CHECK(recs[0].exceeded);
  CHECK_FALSE(recs[1].exceeded);
  CHECK_FALSE(recs[2].exceeded);
  const auto csv = records_to_csv(recs);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == kCsvHeader);
  std::getline(in, line);
  CHECK(line == "0,g,3,0.10000000000000001,0.5,0.5,1");
  std::getline(in, line);
  CHECK(line == "1,g,3,0.33333333333333331,0.25,0.5,0");
  std::getline(in, line);
  CHECK(line == "2,h,0,1,1,nan,0");
  CHECK(csv.find('\r') == std::string::npos);
  const auto groups = summarize_groups(recs);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].exceed_rate == 0.5);
  CHECK(std::isnan(groups[1].exceed_rate));
}

TEST_CASE("parallel trials merge in index order") {
  auto fn = [](std::size_t t) {
    return std::vector<TrialRecord>{make_record(t, "a", 0, double(t), double(t), 1e9),
                                    make_record(t, "b", 1, -double(t), 0.0, 1e9)};
  };
  const auto one = run_trials(37, 1, fn);
  const auto many = run_trials(37, 4, fn);
  CHECK(records_to_csv(one) == records_to_csv(many));
  CHECK(one[10].trial == 5);
  CHECK_THROWS_AS(run_trials(5, 3, [](std::size_t t) -> std::vector<TrialRecord> {
                    if (t == 3) throw DomainError("boom");
                    return {};
                  }),
                  DomainError);
}

TEST_CASE("campaign schema validation") {
  CHECK_THROWS_AS(campaign_from_json(Json{{"kind", "nope"}, {"trials", 1}}), ValidationError);
  CHECK_THROWS_AS(campaign_from_json(Json{{"kind", "figure1"}, {"trials", 0}}), ValidationError);
  CHECK_THROWS_AS(campaign_from_json(Json{{"kind", "figure1"}, {"trials", 2}, {"delta_grid", {0.5, 1.0}}}),
                  ValidationError);
  CHECK_THROWS_AS(campaign_from_json(Json{{"kind", "figure1"}, {"trials", 2}, {"extra", 1}}), ValidationError);
  auto c = campaign_from_json(Json{{"kind", "lemma_suite"}, {"trials", 1}, {"parameters", {{"bogus", 3}}}});
  CHECK_THROWS_AS(run_campaign(c), ValidationError);
  c = campaign_from_json(Json{{"kind", "figure2"}, {"trials", 1}, {"parameters", {{"q", "big"}}}});
  CHECK_THROWS_AS(run_campaign(c), ValidationError);
  const auto ok = campaign_from_json(
      Json{{"name", "x"}, {"kind", "tail_coverage"}, {"trials", 3}, {"seed", 9}, {"delta_grid", {0.1}}});
  CHECK(ok.seed == 9);
  CHECK(campaign_from_json(campaign_to_json(ok)).trials == 3);
}

TEST_CASE("campaign replay is byte-identical and thread-count independent") {
  Campaign c = default_campaign(CampaignKind::TailCoverage);
  c.trials = 60;
  const auto a = run_campaign(c, {false, std::nullopt, 1});
  const auto b = run_campaign(c, {false, std::nullopt, 3});
  CHECK(records_to_csv(a.records) == records_to_csv(b.records));
  CHECK(a.summary().dump() == b.summary().dump());
  const auto other = run_campaign(c, {false, 12345u, 1});
  CHECK(records_to_csv(other.records) != records_to_csv(a.records));
  CHECK(other.campaign.seed == 12345u);
}

TEST_CASE("a single deterministic trial summarizes to itself") {
  Campaign c = default_campaign(CampaignKind::LemmaSuite);
  c.parameters = Json{{"max_n", 4}, {"max_n_ab", 8}, {"instances_per_n", 2}, {"dilation_instances", 3}};
  const auto r = run_campaign(c);
  CHECK(r.passed());
  for (std::size_t i = 0; i < r.groups.size(); ++i) {
    const auto& g = r.groups[i];
    CHECK(g.error.count == 1);
    CHECK(g.error.mean == g.error.q25);
    CHECK(g.error.mean == g.error.q75);
  }
}

TEST_CASE("persisted campaign files") {
  Campaign c = default_campaign(CampaignKind::TailCoverage);
  c.trials = 20;
  const auto r = run_campaign(c, {false, std::nullopt, 1});
  const auto dir = std::filesystem::temp_directory_path() / "exch_harness_test";
  std::filesystem::remove_all(dir);
  persist_campaign(r, dir);
  const auto summary = read_json_file(dir / "summary.json");
  CHECK(summary.at("kind") == "tail_coverage");
  CHECK(summary.at("groups").size() == 10);
  std::ifstream in(dir / "records.csv", std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == records_to_csv(r.records));
  CHECK(std::filesystem::exists(dir / "timing.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("JSON formats round-trip and reject bad lengths") {
  const DenseTensor t({2, 3}, std::vector<double>{1, 2, 3, 4, 5, 6});
  CHECK(tensor_from_json(tensor_to_json(t)) == t);
  CHECK_THROWS_AS(tensor_from_json(Json{{"dims", {2, 3}}, {"data", {1, 2, 3}}}), ValidationError);
  CHECK_THROWS_AS(tensor_from_json(Json{{"dims", {2}}, {"data", {1, "x"}}}), ValidationError);
  const MatrixSeq s({Matrix{{1, 2}}, Matrix{{3, 4}}});
  const auto back = seq_from_json(seq_to_json(s));
  CHECK(back.size() == 2);
  CHECK(back[1].data() == std::vector<double>{3, 4});
  CHECK_THROWS_AS(seq_from_json(Json{{"n", 2}, {"rows", 1}, {"cols", 2}, {"items", {{1, 2}}}}), ValidationError);
  CHECK_THROWS_AS(seq_from_json(Json{{"n", 1}, {"rows", 1}, {"cols", 2}, {"items", {{1, 2, 3}}}}), ValidationError);
  CHECK_THROWS_AS(grid_from_json(Json{{"n", 2}, {"rows", 1}, {"cols", 1}, {"items", {{1}, {2}}}}), ValidationError);
  const auto rep = report_to_json(make_report("k", 1.0, 0.0, 1.0, 0.1));
  CHECK(rep.at("lambda_window").is_null());
  CHECK(rep.at("threshold").get<double>() > 0.0);
}

TEST_CASE("simulation configs") {
  const auto avg = simulate_avg_effect(Json{{"dims", {4, 5, 10}}, {"sizes", {4, 5, 4}}, {"trials", 30}, {"seed", 3}});
  CHECK(avg.records.size() == 30);
  CHECK(avg.passed());
  const auto bern = simulate_avg_effect(Json{{"dims", {4, 5}}, {"rate", 0.5}, {"trials", 10}});
  CHECK(std::isnan(bern.records[0].threshold));
  CHECK_THROWS_AS(simulate_avg_effect(Json{{"dims", {4}}, {"sizes", {2}}, {"oops", 1}}), ValidationError);
  const auto sk = simulate_sketching(Json{{"q", 16}, {"n", 8}, {"q_prime", 4}, {"trials", 20}});
  CHECK(sk.records.size() == 20);
  const auto rt = simulate_rtfa(Json{{"q", 8}, {"n_samples", 6}, {"agents", 4}, {"q_prime", 4}, {"rounds", 5}, {"trials", 2}});
  CHECK(rt.records.size() == 10);
  CHECK(rt.records[4].step == 5);
}
