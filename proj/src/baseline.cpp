#include "confq/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace confq {

namespace {

std::vector<double> midpoints(const std::vector<double>& levels) {
  std::vector<double> thr;
  thr.reserve(levels.size() - 1);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    thr.push_back(0.5 * (levels[i] + levels[i + 1]));
  return thr;
}

}  // namespace

LloydCodebook train_lloyd(int bits_per_gain, double source_mean, TrialRng& rng,
                          const LloydTrainConfig& cfg,
                          std::vector<double>* distortion_log) {
  if (bits_per_gain < 0 || bits_per_gain > 20)
    throw std::invalid_argument("train_lloyd: bits_per_gain must be in [0, 20]");
  if (!(source_mean > 0.0)) throw std::invalid_argument("train_lloyd: source_mean must be positive");
  if (cfg.samples < 2) throw std::invalid_argument("train_lloyd: need at least 2 samples");

  LloydCodebook cb;
  cb.source_mean = source_mean;

  if (bits_per_gain == 0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < cfg.samples; ++i) sum += rng.next_exponential(source_mean);
    cb.levels = {sum / static_cast<double>(cfg.samples)};
    return cb;
  }

  const std::size_t n_levels = std::size_t{1} << bits_per_gain;
  std::vector<double> x(cfg.samples);
  for (auto& v : x) v = rng.next_exponential(source_mean);
  std::sort(x.begin(), x.end());

  std::vector<double> psum(cfg.samples + 1, 0.0);
  std::vector<double> psum2(cfg.samples + 1, 0.0);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    psum[i + 1] = psum[i] + x[i];
    psum2[i + 1] = psum2[i] + x[i] * x[i];
  }

  // Quantile initialization keeps every cell populated for a continuous source.
  std::vector<double> levels(n_levels);
  for (std::size_t j = 0; j < n_levels; ++j) {
    const double q = (static_cast<double>(j) + 0.5) / static_cast<double>(n_levels);
    levels[j] = x[static_cast<std::size_t>(q * static_cast<double>(cfg.samples))];
  }

  const double n = static_cast<double>(cfg.samples);
  double prev_distortion = -1.0;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    // Cell boundaries: first index at or above each threshold, ties upward.
    std::vector<std::size_t> edge(n_levels + 1);
    edge[0] = 0;
    edge[n_levels] = cfg.samples;
    for (std::size_t j = 1; j < n_levels; ++j) {
      const double thr = 0.5 * (levels[j - 1] + levels[j]);
      edge[j] = static_cast<std::size_t>(
          std::lower_bound(x.begin(), x.end(), thr) - x.begin());
    }

    for (std::size_t j = 0; j < n_levels; ++j) {
      const std::size_t lo = edge[j];
      const std::size_t hi = edge[j + 1];
      if (hi > lo) levels[j] = (psum[hi] - psum[lo]) / static_cast<double>(hi - lo);
    }

    double distortion = 0.0;
    for (std::size_t j = 0; j < n_levels; ++j) {
      const std::size_t lo = edge[j];
      const std::size_t hi = edge[j + 1];
      const double cnt = static_cast<double>(hi - lo);
      distortion += (psum2[hi] - psum2[lo]) - 2.0 * levels[j] * (psum[hi] - psum[lo]) +
                    cnt * levels[j] * levels[j];
    }
    distortion /= n;
    if (distortion_log) distortion_log->push_back(distortion);

    if (prev_distortion >= 0.0 &&
        prev_distortion - distortion < cfg.rel_tolerance * prev_distortion)
      break;
    prev_distortion = distortion;
  }

  cb.levels = std::move(levels);
  cb.thresholds = midpoints(cb.levels);
  return cb;
}

double quantize_gain(const LloydCodebook& cb, double x) {
  if (!(x >= 0.0)) throw std::domain_error("quantize_gain: x must be nonnegative");
  const auto it = std::upper_bound(cb.thresholds.begin(), cb.thresholds.end(), x);
  return cb.levels[static_cast<std::size_t>(it - cb.thresholds.begin())];
}

QuantizedDecision separate_quantizer_pair(const ChannelState& h, const FadingParams& params,
                                          Strategy strategy, int total_bits,
                                          const LloydCodebook& direct_cb,
                                          const LloydCodebook& cross_cb) {
  if (total_bits <= 0 || total_bits % 4 != 0)
    throw std::invalid_argument("separate_quantizer_pair: total_bits must be a positive multiple of 4");
  const std::size_t want = std::size_t{1} << (total_bits / 4);
  if (direct_cb.levels.size() != want || cross_cb.levels.size() != want)
    throw std::invalid_argument("separate_quantizer_pair: codebook size does not match total_bits/4");

  ChannelState hat;
  hat.h11 = quantize_gain(direct_cb, h.h11);
  hat.h22 = quantize_gain(direct_cb, h.h22);
  hat.h12 = quantize_gain(cross_cb, h.h12);
  hat.h21 = quantize_gain(cross_cb, h.h21);

  QuantizedDecision d;
  d.pair = strategy == Strategy::TimeSharing ? best_time_share_pair(hat, params)
                                             : best_power_pair(hat, params);
  d.bits = total_bits;
  return d;
}

TransmissionPair no_feedback_pair(Strategy strategy) {
  if (strategy == Strategy::TimeSharing) return {0.5, 0.5, PairKind::TimeShare};
  return {1.0, 1.0, PairKind::Power};
}

void save_codebook(const LloydCodebook& cb, const std::string& path) {
  nlohmann::ordered_json j;
  int bits = 0;
  while ((std::size_t{1} << bits) < cb.levels.size()) ++bits;
  j["bits"] = bits;
  j["source_mean"] = cb.source_mean;
  j["levels"] = cb.levels;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_codebook: cannot open " + path);
  os << j.dump(2) << "\n";
}

LloydCodebook load_codebook(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_codebook: cannot open " + path);
  nlohmann::json j;
  is >> j;
  LloydCodebook cb;
  cb.source_mean = j.at("source_mean").get<double>();
  cb.levels = j.at("levels").get<std::vector<double>>();
  if (cb.levels.empty() || !std::is_sorted(cb.levels.begin(), cb.levels.end()))
    throw std::runtime_error("load_codebook: corrupt levels in " + path);
  cb.thresholds = midpoints(cb.levels);
  return cb;
}

}  // namespace confq
