#include "confq/conferencing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace confq {

namespace {

std::string fixed_width_bits(int index, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = width - 1; i >= 0; --i) {
    if (index & 1) s[static_cast<std::size_t>(i)] = '1';
    index >>= 1;
  }
  return s;
}

}  // namespace

int transcript_bits(const Transcript& t) { return t.total_bits; }

std::string transcript_to_json(const Transcript& t) {
  nlohmann::ordered_json j;
  j["rounds"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rounds) j["rounds"].push_back({r.bits_rx1, r.bits_rx2});
  j["total_bits"] = t.total_bits;
  j["decision"] = {
      {"kind", t.decision.kind == PairKind::TimeShare ? "time_share" : "power"},
      {"a", t.decision.a},
      {"b", t.decision.b},
      {"degenerate", t.decision.degenerate},
  };
  j["declared_outage"] = t.declared_outage;
  j["terminated_by_cap"] = t.terminated_by_cap;
  return j.dump();
}

PowerCodebook::PowerCodebook(int m_) : m(m_) {
  if (m < 1) throw std::invalid_argument("PowerCodebook: m must be >= 1");
  levels.reserve(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) levels.push_back(static_cast<double>(i) / m);
}

int PowerCodebook::index_bits() const {
  int bits = 0;
  while ((1 << bits) < m + 1) ++bits;
  return bits;
}

int PowerCodebook::quantize_down_index(double x) const {
  if (x <= 0.0) return 0;
  if (x >= 1.0) return m;  // covers the no-constraint (+inf) case
  auto it = std::upper_bound(levels.begin(), levels.end(), x);
  return static_cast<int>(it - levels.begin()) - 1;
}

int sum_rate_bit(const LocalCsi& view, const FadingParams& params) {
  return std::log2(1.0 + params.p * view.direct) >= 2.0 * params.rho ? 1 : 0;
}

Transcript confer_sum_rate_it(const ChannelState& h, const FadingParams& params) {
  const int b1 = sum_rate_bit(local_view(h, 1), params);
  const int b2 = sum_rate_bit(local_view(h, 2), params);
  Transcript t;
  t.rounds.push_back({b1 ? "1" : "0", b2 ? "1" : "0"});
  t.total_bits = 2;
  if (b1)
    t.decision = {1.0, 0.0, PairKind::Power};  // (1,1) ties resolve to (1,0)
  else if (b2)
    t.decision = {0.0, 1.0, PairKind::Power};
  else
    t.decision = {1.0, 1.0, PairKind::Power};
  t.declared_outage = rate_report(h, t.decision, params).sum < 2.0 * params.rho;
  return t;
}

Transcript confer_sum_rate_ts(const ChannelState& h, const FadingParams& params) {
  const int b1 = sum_rate_bit(local_view(h, 1), params);
  const int b2 = sum_rate_bit(local_view(h, 2), params);
  Transcript t;
  t.rounds.push_back({b1 ? "1" : "0", b2 ? "1" : "0"});
  t.total_bits = 2;
  if (!b1 && b2)
    t.decision = {0.0, 1.0, PairKind::TimeShare};
  else
    t.decision = {1.0, 0.0, PairKind::TimeShare};  // (0,0) is outage either way
  t.declared_outage = rate_report(h, t.decision, params).sum < 2.0 * params.rho;
  return t;
}

BisectionTimeShare::BisectionTimeShare(const LocalCsi& rx1, const LocalCsi& rx2,
                                       const FadingParams& params, int max_rounds)
    : max_rounds_(max_rounds) {
  if (max_rounds_ < 1) throw std::invalid_argument("BisectionTimeShare: max_rounds must be >= 1");
  tmin_[0] = min_time_fraction(rx1, params);
  tmin_[1] = min_time_fraction(rx2, params);
}

double BisectionTimeShare::lower_bound(int receiver) const { return lb_[receiver - 1]; }
double BisectionTimeShare::upper_bound(int receiver) const { return ub_[receiver - 1]; }

void BisectionTimeShare::finish(const TransmissionPair& pair, bool outage, bool capped) {
  transcript_.decision = pair;
  transcript_.declared_outage = outage;
  transcript_.terminated_by_cap = capped;
  done_ = true;
}

std::pair<int, int> BisectionTimeShare::run_round() {
  if (done_) throw std::logic_error("BisectionTimeShare: protocol already finished");
  int b1 = 0;
  int b2 = 0;
  if (next_round_ == 0) {
    b1 = tmin_[0] >= 1.0 ? 1 : 0;
    b2 = tmin_[1] >= 1.0 ? 1 : 0;
    transcript_.rounds.push_back({b1 ? "1" : "0", b2 ? "1" : "0"});
    transcript_.total_bits += 2;
    if (b1 || b2) {
      // Some user needs the whole block or more: outage no matter the split.
      finish({0.5, 0.5, PairKind::TimeShare}, true, false);
    }
  } else {
    const double mid1 = 0.5 * (lb_[0] + ub_[0]);
    const double mid2 = 0.5 * (lb_[1] + ub_[1]);
    b1 = tmin_[0] >= mid1 ? 1 : 0;
    b2 = tmin_[1] >= mid2 ? 1 : 0;
    transcript_.rounds.push_back({b1 ? "1" : "0", b2 ? "1" : "0"});
    transcript_.total_bits += 2;
    if (b1 && b2) {
      finish({0.5, 0.5, PairKind::TimeShare}, true, false);
    } else if (!b1 && !b2) {
      // Both users fit below the just-tested midpoints, which sum to one.
      finish({mid1, mid2, PairKind::TimeShare}, false, false);
    } else {
      if (b1) {
        lb_[0] = mid1;
        ub_[1] = mid2;
      } else {
        ub_[0] = mid1;
        lb_[1] = mid2;
      }
      if (next_round_ >= max_rounds_) finish({0.5, 0.5, PairKind::TimeShare}, true, true);
    }
  }
  ++next_round_;
  return {b1, b2};
}

Transcript BisectionTimeShare::run() {
  while (!done_) run_round();
  return transcript_;
}

Transcript confer_min_rate_ts(const ChannelState& h, const FadingParams& params,
                              int max_rounds) {
  return BisectionTimeShare(local_view(h, 1), local_view(h, 2), params, max_rounds).run();
}

int power_level_index(const LocalCsi& view, const FadingParams& params,
                      const PowerCodebook& cb) {
  return cb.quantize_down_index(max_interferer_power(view, params));
}

int power_check_bit(const LocalCsi& view, const FadingParams& params, double level) {
  return interference_rate(level, 1.0, params, view.direct, view.cross_in) >= params.rho
             ? 1
             : 0;
}

Transcript confer_min_rate_it(const ChannelState& h, const FadingParams& params,
                              const PowerCodebook& cb) {
  const LocalCsi rx1 = local_view(h, 1);
  const LocalCsi rx2 = local_view(h, 2);
  const int width = cb.index_bits();

  const int idx1 = power_level_index(rx1, params, cb);
  const double q1 = cb.levels[static_cast<std::size_t>(idx1)];
  const int check = power_check_bit(rx2, params, q1);

  Transcript t;
  t.rounds.push_back({fixed_width_bits(idx1, width), check ? "1" : "0"});
  t.total_bits = width + 1;
  if (check) {
    t.decision = {1.0, q1, PairKind::Power};
  } else {
    const int idx2 = power_level_index(rx2, params, cb);
    const double q2 = cb.levels[static_cast<std::size_t>(idx2)];
    t.rounds.push_back({"", fixed_width_bits(idx2, width)});
    t.total_bits += width;
    t.decision = {q2, 1.0, PairKind::Power};
  }
  t.declared_outage = rate_report(h, t.decision, params).min < params.rho;
  return t;
}

TransmissionPair centralized_power_pair(const ChannelState& h, const FadingParams& params,
                                        const PowerCodebook& cb) {
  TransmissionPair best{1.0, 1.0, PairKind::Power};
  double best_mr = rate_report(h, best, params).min;
  for (int m = 1; m < cb.m; ++m) {
    const TransmissionPair cand{1.0, cb.levels[static_cast<std::size_t>(m)], PairKind::Power};
    const double mr = rate_report(h, cand, params).min;
    if (mr > best_mr) {
      best = cand;
      best_mr = mr;
    }
  }
  for (int m = 1; m < cb.m; ++m) {
    const TransmissionPair cand{cb.levels[static_cast<std::size_t>(m)], 1.0, PairKind::Power};
    const double mr = rate_report(h, cand, params).min;
    if (mr > best_mr) {
      best = cand;
      best_mr = mr;
    }
  }
  return best;
}

}  // namespace confq
