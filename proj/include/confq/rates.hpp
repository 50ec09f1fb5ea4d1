#pragma once

#include "confq/channel.hpp"

namespace confq {

enum class PairKind { TimeShare, Power };
enum class Strategy { TimeSharing, Interference };
enum class Metric { SumRate, MinRate };

// Either a time-sharing split (a, b) with a + b = 1, or a pair of power
// fractions.  `degenerate` marks zero-gain fallback decisions.
struct TransmissionPair {
  double a = 0.0;
  double b = 0.0;
  PairKind kind = PairKind::TimeShare;
  bool degenerate = false;
};

struct RateReport {
  double r1 = 0.0;
  double r2 = 0.0;
  double sum = 0.0;
  double min = 0.0;
};

// t * log2(1 + P * direct_gain)
double time_share_rate(double t, const FadingParams& params, double direct_gain);

// log2(1 + p_self * P * direct / (p_other * P * cross + 1)); the cross gain
// is the one arriving at this user's receiver from the other transmitter.
double interference_rate(double p_self, double p_other, const FadingParams& params,
                         double direct_gain, double cross_gain);

RateReport rate_report(const ChannelState& h, const TransmissionPair& pair,
                       const FadingParams& params);

// Split that equalizes the two slot rates; maximizes the minimum rate.
TransmissionPair best_time_share_pair(const ChannelState& h, const FadingParams& params);

// Power pair maximizing the minimum rate: full power for the weaker-SINR
// user, the equal-rate root for the other.
TransmissionPair best_power_pair(const ChannelState& h, const FadingParams& params);

// rho / log2(1 + P * direct); +inf when the direct gain is zero.
double min_time_fraction(const LocalCsi& local, const FadingParams& params);

// Largest interferer power fraction that keeps this receiver out of outage
// when its own transmitter uses full power.  May be negative (receiver is in
// outage even without interference) or exceed 1; +inf when cross_in is zero.
double max_interferer_power(const LocalCsi& local, const FadingParams& params);

// Whether outage is unavoidable for the given metric and strategy, i.e. the
// best possible pair still falls below the target (2*rho for sum rate, rho
// for minimum rate).  Outage comparisons are strict.
bool optimal_outage(const ChannelState& h, const FadingParams& params,
                    Metric metric, Strategy strategy);

}  // namespace confq
