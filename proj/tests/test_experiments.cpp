#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "confq/experiments.hpp"
#include "json.hpp"

using namespace confq;

namespace {

ExperimentSpec tiny_spec() {
  ExperimentSpec spec;
  spec.eps_list = {0.1};
  spec.p_db_list = {0.0, 5.0};
  spec.base.max_trials = 20'000;
  spec.base.min_outage_events = 500;
  spec.fr_trials = 5'000;
  return spec;
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

std::size_t column_index(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  REQUIRE(false);
  return 0;
}

int run_cli(const std::string& args) {
  const char* cli = std::getenv("CONFQ_CLI");
  REQUIRE(cli != nullptr);
  const int rc = std::system((std::string(cli) + " " + args).c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("fig1 emits curve rows plus one crossover row per eps") {
  ExperimentSpec spec;
  spec.eps_list = {1.0};
  spec.p_db_list = {0.0, 2.0};
  spec.base.max_trials = 30'000;
  spec.base.min_outage_events = 300;
  const Table t = run_fig1(spec);
  REQUIRE(t.rows.size() == 3);  // two curve rows, one summary row
  const std::size_t kind = column_index(t, "row_kind");
  const std::size_t ts = column_index(t, "out_ts");
  const std::size_t it = column_index(t, "out_it");
  for (const auto& row : t.rows) {
    if (row[kind] != 0.0) continue;
    CHECK(row[ts] >= 0.0);
    CHECK(row[ts] <= 1.0);
    CHECK(row[it] >= 0.0);
    CHECK(row[it] <= 1.0);
  }
  CHECK(t.rows.back()[kind] == 1.0);
  // the strong-interference crossover sits near 2 dB
  CHECK(t.rows.back()[column_index(t, "p_db")] >= -1.0);
  CHECK(t.rows.back()[column_index(t, "p_db")] <= 6.0);

  const std::string again = to_csv(run_fig1(spec));
  CHECK(to_csv(t) == again);
}

TEST_CASE("fig2 table layout and internal consistency") {
  const Table t = run_fig2(tiny_spec());
  CHECK(t.columns.size() == 13);
  REQUIRE(t.rows.size() == 2);
  const std::size_t confer = column_index(t, "out_confer");
  const std::size_t separate = column_index(t, "out_separate");
  const std::size_t nofb = column_index(t, "out_nofb");
  const std::size_t opt = column_index(t, "out_opt");
  const std::size_t fr = column_index(t, "fr_confer");
  for (const auto& row : t.rows) {
    CHECK(row[confer] == row[opt]);  // zero-distortion exchange
    CHECK(row[confer] <= row[separate]);
    CHECK(row[confer] <= row[nofb]);
    CHECK(row[fr] >= 2.0);
    CHECK(row[fr] <= 5.0);  // finite mean; the 4-bit limit is only asymptotic
  }
  bool has_seed = false;
  for (const auto& [k, v] : t.meta) {
    CHECK(k != "workers");  // worker count must not leak into the output
    if (k == "seed") has_seed = true;
  }
  CHECK(has_seed);
}

TEST_CASE("distortion sweep carries the matched bit budget") {
  ExperimentSpec spec = tiny_spec();
  spec.p_db_list = {5.0};
  spec.m_list = {1, 2, 3, 4, 5, 6, 7, 8};
  spec.base.max_trials = 4'000;
  spec.base.min_outage_events = 4'000;  // unreachable: fixed length, equal trials per row
  spec.fr_trials = 2'000;
  const Table t = run_fig3(spec);
  REQUIRE(t.rows.size() == 8);
  const std::size_t m_col = column_index(t, "m");
  const std::size_t b_col = column_index(t, "b_tot");
  const std::size_t nofb_col = column_index(t, "dist_nofb");
  for (const auto& row : t.rows) {
    const int m = static_cast<int>(row[m_col]);
    CHECK(row[b_col] == (m <= 4 ? 8.0 : 12.0));
  }
  // the no-feedback policy ignores the codebook size
  for (const auto& row : t.rows) CHECK(row[nofb_col] == t.rows[0][nofb_col]);
}

TEST_CASE("fig4 sweeps power at fixed codebook size") {
  ExperimentSpec spec = tiny_spec();
  spec.p_db_list = {0.0, 4.0};
  spec.fig4_m = 2;
  spec.base.max_trials = 10'000;
  spec.base.min_outage_events = 300;
  const Table t = run_fig4(spec);
  REQUIRE(t.rows.size() == 2);
  const std::size_t m_col = column_index(t, "m");
  for (const auto& row : t.rows) CHECK(row[m_col] == 2.0);
}

TEST_CASE("custom sweeps validate their axes") {
  ExperimentSpec spec;
  spec.scheme = {Scheme::ConferMinIt};
  spec.mode = "outage";
  spec.p_db_list = {0.0};
  spec.m_list = {2};
  spec.btot_list = {8};
  spec.seed_list = {1};
  CHECK_THROWS_AS(run_custom(spec), std::invalid_argument);  // eps missing
  spec.eps_list = {0.1};
  spec.mode = "bogus";
  CHECK_THROWS_AS(run_custom(spec), std::invalid_argument);
  spec.mode = "outage";
  spec.base.max_trials = 5'000;
  spec.base.min_outage_events = 500;
  const Table t = run_custom(spec);
  CHECK(t.rows.size() == 1);
}

TEST_CASE("custom seed sweeps agree within standard errors") {
  ExperimentSpec spec;
  spec.scheme = {Scheme::OptMinTs};
  spec.mode = "outage";
  spec.eps_list = {0.1};
  spec.p_db_list = {0.0};
  spec.m_list = {1};
  spec.btot_list = {8};
  spec.seed_list = {11, 22, 33};
  spec.base.max_trials = 50'000;
  spec.base.min_outage_events = 2000;
  const Table t = run_custom(spec);
  REQUIRE(t.rows.size() == 3);
  const std::size_t val = column_index(t, "value");
  const std::size_t se = column_index(t, "std_err");
  for (const auto& a : t.rows)
    for (const auto& b : t.rows) {
      const double gap = std::abs(a[val] - b[val]);
      const double bar = 3.0 * std::sqrt(a[se] * a[se] + b[se] * b[se]);
      CHECK(gap <= bar);
    }
}

TEST_CASE("custom distortion mode compares against the matching optimum") {
  ExperimentSpec spec;
  spec.scheme = {Scheme::ConferMinIt};
  spec.mode = "distortion";
  spec.eps_list = {0.1};
  spec.p_db_list = {5.0};
  spec.m_list = {2};
  spec.btot_list = {8};
  spec.seed_list = {1};
  spec.base.max_trials = 100'000;
  spec.base.min_outage_events = 200;
  const Table t = run_custom(spec);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][column_index(t, "value")] > 0.0);
}

TEST_CASE("csv output is byte-deterministic and worker-independent") {
  ExperimentSpec spec = tiny_spec();
  spec.base.workers = 1;
  const std::string a = to_csv(run_fig2(spec));
  const std::string b = to_csv(run_fig2(spec));
  CHECK(a == b);
  spec.base.workers = 3;
  const std::string c = to_csv(run_fig2(spec));
  CHECK(a == c);
}

TEST_CASE("json output carries the same table") {
  const Table t = run_fig4([] {
    ExperimentSpec s = tiny_spec();
    s.p_db_list = {0.0};
    s.base.max_trials = 5'000;
    s.base.min_outage_events = 100;
    return s;
  }());
  std::ostringstream os;
  write_json(t, os);
  const auto j = nlohmann::json::parse(os.str());
  CHECK(j["meta"]["figure"] == "fig4");
  CHECK(j["columns"].size() == t.columns.size());
  CHECK(j["rows"].size() == t.rows.size());
}

TEST_CASE("cli exit codes and byte-identical reruns") {
  if (std::getenv("CONFQ_CLI") == nullptr) {
    MESSAGE("CONFQ_CLI not set; skipping cli-level checks");
    return;
  }
  CHECK(run_cli("fig2 --no-such-flag 2>/dev/null") == 2);
  CHECK(run_cli("custom --scheme not_a_scheme 2>/dev/null") == 2);
  CHECK(run_cli("custom --scheme confer_min_it --eps 0.1 --p-db 0 "
                "--trials 3000 --min-outage-events 100 --out cli_ok.csv") == 0);
  // a capped run reports undersampled results through the exit code
  CHECK(run_cli("custom --scheme opt_min_ts --eps 0.1 --p-db 40 "
                "--trials 500 --min-outage-events 500 --out cli_under.csv") == 3);
  // trial caps below the event target are rejected up front
  CHECK(run_cli("custom --scheme opt_min_ts --eps 0.1 --p-db 0 "
                "--trials 500 --min-outage-events 100000 2>/dev/null") == 2);

  const std::string common =
      "fig2 --eps 0.1 --p-db 0,5 --trials 3000 --min-outage-events 100 "
      "--fr-trials 1000 --seed 77 ";
  CHECK(run_cli(common + "--workers 1 --out cli_w1.csv") == 0);
  CHECK(run_cli(common + "--workers 3 --out cli_w3.csv") == 0);
  CHECK(slurp("cli_w1.csv") == slurp("cli_w3.csv"));
  for (const char* f : {"cli_ok.csv", "cli_under.csv", "cli_w1.csv", "cli_w3.csv"})
    std::remove(f);
}
