#pragma once

#include <string>
#include <vector>

#include "confq/rates.hpp"

namespace confq {

// Bits published by each receiver in one conferencing round.
struct ConferenceRound {
  std::string bits_rx1;
  std::string bits_rx2;
};

struct Transcript {
  std::vector<ConferenceRound> rounds;
  int total_bits = 0;
  TransmissionPair decision;
  bool declared_outage = false;
  bool terminated_by_cap = false;
};

int transcript_bits(const Transcript& t);
std::string transcript_to_json(const Transcript& t);

// Uniform power codebook {0, 1/m, ..., 1}.
struct PowerCodebook {
  explicit PowerCodebook(int m);

  int m;
  std::vector<double> levels;  // m + 1 entries, 0 to 1

  int index_bits() const;                 // ceil(log2(m + 1))
  int quantize_down_index(double x) const;  // largest level <= x; 0 if x <= 0
};

// 1(log2(1 + P * direct) >= 2 * rho): can this user alone carry the sum-rate
// target in a full slot?
int sum_rate_bit(const LocalCsi& view, const FadingParams& params);

// One bit per receiver; decision table resolves (1,1) to (1,0).
Transcript confer_sum_rate_it(const ChannelState& h, const FadingParams& params);
Transcript confer_sum_rate_ts(const ChannelState& h, const FadingParams& params);

// Bisection exchange on the per-user minimum time fractions.  Each round the
// receivers publish one bit each; bounds are maintained identically at all
// terminals.  Exposed round by round so tests can inspect the public bits.
class BisectionTimeShare {
 public:
  BisectionTimeShare(const LocalCsi& rx1, const LocalCsi& rx2,
                     const FadingParams& params, int max_rounds = 64);

  bool done() const { return done_; }
  int rounds_completed() const { return static_cast<int>(transcript_.rounds.size()); }
  std::pair<int, int> run_round();  // pre: !done()
  double lower_bound(int receiver) const;
  double upper_bound(int receiver) const;
  const Transcript& result() const { return transcript_; }  // pre: done()
  Transcript run();

 private:
  void finish(const TransmissionPair& pair, bool outage, bool capped);

  double tmin_[2];
  double lb_[2] = {0.0, 0.0};
  double ub_[2] = {1.0, 1.0};
  int max_rounds_;
  int next_round_ = 0;
  bool done_ = false;
  Transcript transcript_;
};

Transcript confer_min_rate_ts(const ChannelState& h, const FadingParams& params,
                              int max_rounds = 64);

// Round-0 encoder of the power-codebook exchange: quantize the tolerable
// interferer power down into the codebook.  Returns a level index.
int power_level_index(const LocalCsi& view, const FadingParams& params,
                      const PowerCodebook& cb);

// The responding receiver's check: 1 if its own rate reaches rho when its
// transmitter uses power `level` and the other transmitter uses full power.
int power_check_bit(const LocalCsi& view, const FadingParams& params, double level);

// At most two rounds: level from receiver 1, check bit from receiver 2,
// optionally a mirrored level from receiver 2.
Transcript confer_min_rate_it(const ChannelState& h, const FadingParams& params,
                              const PowerCodebook& cb);

// Full-CSI reference: argmax of the minimum rate over
// {(1,1)} u {(1, m/M)} u {(m/M, 1)}, ties to the first in that order.
TransmissionPair centralized_power_pair(const ChannelState& h, const FadingParams& params,
                                        const PowerCodebook& cb);

}  // namespace confq
