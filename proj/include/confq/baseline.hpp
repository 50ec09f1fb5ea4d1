#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "confq/rates.hpp"

namespace confq {

// Scalar Lloyd-Max codebook trained on an exponential source.
struct LloydCodebook {
  std::vector<double> levels;      // strictly increasing reproduction values
  std::vector<double> thresholds;  // cell boundaries, midpoints of levels
  double source_mean = 1.0;
};

struct LloydTrainConfig {
  std::size_t samples = 1'000'000;
  int max_iterations = 500;
  double rel_tolerance = 1e-8;
};

// Sample-based generalized Lloyd training; quantile initialization.
// Appends per-iteration mean squared error to *distortion_log if given.
LloydCodebook train_lloyd(int bits_per_gain, double source_mean, TrialRng& rng,
                          const LloydTrainConfig& cfg = {},
                          std::vector<double>* distortion_log = nullptr);

// Nearest level; ties at a threshold go to the upper cell.
double quantize_gain(const LloydCodebook& cb, double x);

struct QuantizedDecision {
  TransmissionPair pair;
  int bits = 0;
};

// Conventional baseline: each receiver quantizes its two gains separately
// with total_bits/4 bits each, and the pair is computed from the
// reconstructed channel as if it were exact.
QuantizedDecision separate_quantizer_pair(const ChannelState& h, const FadingParams& params,
                                          Strategy strategy, int total_bits,
                                          const LloydCodebook& direct_cb,
                                          const LloydCodebook& cross_cb);

// (0.5, 0.5) time split, or full power for both.
TransmissionPair no_feedback_pair(Strategy strategy);

void save_codebook(const LloydCodebook& cb, const std::string& path);
LloydCodebook load_codebook(const std::string& path);

}  // namespace confq
