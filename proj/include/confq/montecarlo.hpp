#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "confq/baseline.hpp"
#include "confq/conferencing.hpp"

namespace confq {

enum class Scheme {
  OptSumTs,           // best sum-rate time split (exhaustive corner check)
  OptSumIt,           // best sum-rate power pair
  OptMinTs,           // equal-rate time split
  OptMinIt,           // equal-rate power pair
  ConferSumTs,        // one bit per receiver, time sharing
  ConferSumIt,        // one bit per receiver, interference transmission
  ConferMinTs,        // bisection exchange on time fractions
  ConferMinIt,        // power-codebook exchange
  CentralizedMinIt,   // full-CSI argmax over the power codebook
  SeparateTs,         // Lloyd-quantized gains, time sharing
  SeparateIt,         // Lloyd-quantized gains, interference transmission
  NoFeedbackTs,       // fixed (0.5, 0.5)
  NoFeedbackIt,       // fixed (1, 1)
};

struct SchemeSpec {
  Scheme scheme = Scheme::OptMinTs;
  int codebook_m = 4;   // ConferMinIt / CentralizedMinIt
  int total_bits = 16;  // SeparateTs / SeparateIt
  int max_rounds = 64;  // ConferMinTs
};

struct RunConfig {
  FadingParams params{1.0, 1.0, 0.5};
  SchemeSpec scheme;
  std::uint64_t min_outage_events = 5000;   // must not exceed max_trials
  std::uint64_t max_trials = 2'000'000;
  std::uint64_t master_seed = 1;
  int workers = 1;  // 0 = hardware concurrency; result is worker-independent
};

struct Estimate {
  double value = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t events = 0;
  double std_err = 0.0;
  bool undersampled = false;
};

// Outage probability with an event-count stopping rule: trials are consumed
// in index order until min_outage_events events are seen or max_trials is hit.
Estimate estimate_outage(const RunConfig& cfg);

// Mean feedback bits per channel state over exactly max_trials trials.
Estimate estimate_feedback_rate(const RunConfig& cfg);

// Paired difference OUT(scheme) - OUT(reference) on common channel draws.
// Stops once the two schemes have disagreed on min_outage_events states.
Estimate estimate_distortion(const RunConfig& cfg, const SchemeSpec& reference);

// Several schemes on common draws; stops when every scheme has at least
// min_outage_events events (or at max_trials).
struct PairedEstimates {
  std::vector<Estimate> per_scheme;
  Estimate reference;  // outage of the reference scheme (distortion runs only)
  std::uint64_t trials = 0;
  bool undersampled = false;
};
PairedEstimates estimate_outage_paired(const RunConfig& base,
                                       const std::vector<SchemeSpec>& schemes);

// Paired distortions of several schemes against one reference, common draws;
// stopping is driven by the first scheme's disagreement count.
PairedEstimates estimate_distortion_paired(const RunConfig& base, const SchemeSpec& reference,
                                           const std::vector<SchemeSpec>& schemes);

struct CrossoverPoint {
  double p_db = 0.0;
  Estimate ts;
  Estimate it;
};

struct CrossoverResult {
  std::vector<CrossoverPoint> points;
  bool found = false;
  double p_th_db = 0.0;  // interpolated crossing, valid when found
};

// Estimates both optimal minimum-rate outage curves on a dB grid (common
// draws per point) and interpolates the sign change of their difference.
CrossoverResult find_power_threshold(double eps, double rho,
                                     const std::vector<double>& p_grid_db,
                                     const RunConfig& point_cfg);

// Coarse 3 dB scan to bracket the crossing, then a fine 1 dB grid.
CrossoverResult locate_power_threshold(double eps, double rho, const RunConfig& point_cfg);

}  // namespace confq
