#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "confq/montecarlo.hpp"
#include "confq/table.hpp"

namespace confq {

// A runnable sweep.  Figure runners fill defaults for anything left empty.
struct ExperimentSpec {
  std::string name = "custom";
  double rho = 0.5;
  std::vector<double> eps_list;
  std::vector<double> p_db_list;
  std::vector<int> m_list;
  std::vector<int> btot_list;
  std::vector<std::uint64_t> seed_list;

  RunConfig base;                       // stopping rule, seed, workers
  std::uint64_t fr_trials = 1'000'000;  // fixed trial count for feedback-rate runs

  // custom runs
  SchemeSpec scheme;
  std::string mode = "outage";  // outage | feedback | distortion

  int fig2_total_bits = 16;
  int fig4_m = 4;
};

// Optimal minimum-rate outage of both strategies versus P, plus one
// crossover summary row per eps.
Table run_fig1(const ExperimentSpec& spec);

// Time sharing: bisection quantizer vs separate quantization vs no feedback,
// plus the bisection quantizer's average feedback rate.
Table run_fig2(const ExperimentSpec& spec);

// Interference transmission distortions versus codebook size M at fixed P.
Table run_fig3(const ExperimentSpec& spec);

// Interference transmission distortions versus P at fixed M.
Table run_fig4(const ExperimentSpec& spec);

Table run_custom(const ExperimentSpec& spec);

// Default per-eps operating point for the distortion sweeps, a few dB below
// the strategy crossover.
double default_fig3_p_db(double eps);

}  // namespace confq
