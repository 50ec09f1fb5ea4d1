#include "confq/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace confq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double time_share_rate(double t, const FadingParams& params, double direct_gain) {
  return t * std::log2(1.0 + params.p * direct_gain);
}

double interference_rate(double p_self, double p_other, const FadingParams& params,
                         double direct_gain, double cross_gain) {
  const double sinr =
      p_self * params.p * direct_gain / (p_other * params.p * cross_gain + 1.0);
  return std::log2(1.0 + sinr);
}

RateReport rate_report(const ChannelState& h, const TransmissionPair& pair,
                       const FadingParams& params) {
  RateReport r;
  if (pair.kind == PairKind::TimeShare) {
    r.r1 = time_share_rate(pair.a, params, h.h11);
    r.r2 = time_share_rate(pair.b, params, h.h22);
  } else {
    r.r1 = interference_rate(pair.a, pair.b, params, h.h11, h.h21);
    r.r2 = interference_rate(pair.b, pair.a, params, h.h22, h.h12);
  }
  r.sum = r.r1 + r.r2;
  r.min = std::min(r.r1, r.r2);
  return r;
}

TransmissionPair best_time_share_pair(const ChannelState& h, const FadingParams& params) {
  const double l1 = std::log2(1.0 + params.p * h.h11);
  const double l2 = std::log2(1.0 + params.p * h.h22);
  if (l2 <= 0.0) return {1.0, 0.0, PairKind::TimeShare, true};
  if (l1 <= 0.0) return {0.0, 1.0, PairKind::TimeShare, true};
  return {l2 / (l1 + l2), l1 / (l1 + l2), PairKind::TimeShare, false};
}

TransmissionPair best_power_pair(const ChannelState& h, const FadingParams& params) {
  const double P = params.p;
  if (h.h11 <= 0.0 && h.h22 <= 0.0) return {1.0, 1.0, PairKind::Power, true};

  const double sinr1 = P * h.h11 / (P * h.h21 + 1.0);
  const double sinr2 = P * h.h22 / (P * h.h12 + 1.0);
  // Scale back the stronger user's power to the root that equalizes both
  // SINRs; the q / (sqrt(1 + q) + 1) form avoids cancellation for small q.
  if (sinr1 >= sinr2) {
    if (h.h12 <= 0.0) return {1.0, 1.0, PairKind::Power, true};
    const double q = (4.0 * P * P * h.h12 * h.h21 * h.h22 + 4.0 * P * h.h22 * h.h12) / h.h11;
    const double p1 = q / (2.0 * P * h.h12 * (std::sqrt(1.0 + q) + 1.0));
    return {std::min(p1, 1.0), 1.0, PairKind::Power, false};
  }
  if (h.h21 <= 0.0) return {1.0, 1.0, PairKind::Power, true};
  const double q = (4.0 * P * P * h.h11 * h.h12 * h.h21 + 4.0 * P * h.h11 * h.h21) / h.h22;
  const double p2 = q / (2.0 * P * h.h21 * (std::sqrt(1.0 + q) + 1.0));
  return {1.0, std::min(p2, 1.0), PairKind::Power, false};
}

double min_time_fraction(const LocalCsi& local, const FadingParams& params) {
  const double l = std::log2(1.0 + params.p * local.direct);
  if (l <= 0.0) return kInf;
  return params.rho / l;
}

double max_interferer_power(const LocalCsi& local, const FadingParams& params) {
  if (local.cross_in <= 0.0) return kInf;
  const double thr = std::exp2(params.rho) - 1.0;
  return local.direct / (thr * local.cross_in) - 1.0 / (params.p * local.cross_in);
}

bool optimal_outage(const ChannelState& h, const FadingParams& params,
                    Metric metric, Strategy strategy) {
  if (metric == Metric::SumRate) {
    const double target = 2.0 * params.rho;
    if (strategy == Strategy::TimeSharing) {
      return rate_report(h, {1.0, 0.0, PairKind::TimeShare}, params).sum < target &&
             rate_report(h, {0.0, 1.0, PairKind::TimeShare}, params).sum < target;
    }
    return rate_report(h, {1.0, 0.0, PairKind::Power}, params).sum < target &&
           rate_report(h, {0.0, 1.0, PairKind::Power}, params).sum < target &&
           rate_report(h, {1.0, 1.0, PairKind::Power}, params).sum < target;
  }
  if (strategy == Strategy::TimeSharing) {
    return min_time_fraction(local_view(h, 1), params) +
               min_time_fraction(local_view(h, 2), params) >
           1.0;
  }
  return rate_report(h, best_power_pair(h, params), params).min < params.rho;
}

}  // namespace confq
