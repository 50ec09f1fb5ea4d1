#include "confq/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace confq {

namespace {

constexpr std::uint64_t kBlock = 1 << 15;
constexpr std::uint64_t kLloydTrainSeed = 0x11bdc0deb00cull;

struct SchemeContext {
  std::optional<PowerCodebook> power_cb;
  const LloydCodebook* direct_cb = nullptr;
  const LloydCodebook* cross_cb = nullptr;
};

// Codebooks depend only on (bits, source mean); train once per process so
// repeated runs and figure sweeps share them.
const LloydCodebook& cached_lloyd(int bits, double mean) {
  static std::map<std::pair<int, double>, LloydCodebook> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(bits, mean);
  auto it = cache.find(key);
  if (it == cache.end()) {
    TrialRng rng = TrialRng::for_trial(kLloydTrainSeed, static_cast<std::uint64_t>(bits));
    it = cache.emplace(key, train_lloyd(bits, mean, rng)).first;
  }
  return it->second;
}

SchemeContext make_context(const SchemeSpec& spec, const FadingParams& params) {
  SchemeContext ctx;
  switch (spec.scheme) {
    case Scheme::ConferMinIt:
    case Scheme::CentralizedMinIt:
      ctx.power_cb.emplace(spec.codebook_m);
      break;
    case Scheme::SeparateTs:
    case Scheme::SeparateIt: {
      if (spec.total_bits <= 0 || spec.total_bits % 4 != 0)
        throw std::invalid_argument("scheme total_bits must be a positive multiple of 4");
      const int bits = spec.total_bits / 4;
      ctx.direct_cb = &cached_lloyd(bits, 1.0);
      ctx.cross_cb = &cached_lloyd(bits, params.eps);
      break;
    }
    default:
      break;
  }
  return ctx;
}

struct TrialOutcome {
  bool outage = false;
  int bits = 0;
};

TrialOutcome evaluate_scheme(const SchemeSpec& spec, const SchemeContext& ctx,
                             const ChannelState& h, const FadingParams& params) {
  switch (spec.scheme) {
    case Scheme::OptSumTs:
      return {optimal_outage(h, params, Metric::SumRate, Strategy::TimeSharing), 0};
    case Scheme::OptSumIt:
      return {optimal_outage(h, params, Metric::SumRate, Strategy::Interference), 0};
    case Scheme::OptMinTs:
      return {optimal_outage(h, params, Metric::MinRate, Strategy::TimeSharing), 0};
    case Scheme::OptMinIt:
      return {optimal_outage(h, params, Metric::MinRate, Strategy::Interference), 0};
    case Scheme::ConferSumTs: {
      const Transcript t = confer_sum_rate_ts(h, params);
      return {t.declared_outage, t.total_bits};
    }
    case Scheme::ConferSumIt: {
      const Transcript t = confer_sum_rate_it(h, params);
      return {t.declared_outage, t.total_bits};
    }
    case Scheme::ConferMinTs: {
      const Transcript t = confer_min_rate_ts(h, params, spec.max_rounds);
      return {t.declared_outage, t.total_bits};
    }
    case Scheme::ConferMinIt: {
      const Transcript t = confer_min_rate_it(h, params, *ctx.power_cb);
      return {t.declared_outage, t.total_bits};
    }
    case Scheme::CentralizedMinIt: {
      const TransmissionPair p = centralized_power_pair(h, params, *ctx.power_cb);
      return {rate_report(h, p, params).min < params.rho, 0};
    }
    case Scheme::SeparateTs:
    case Scheme::SeparateIt: {
      const Strategy st = spec.scheme == Scheme::SeparateTs ? Strategy::TimeSharing
                                                            : Strategy::Interference;
      const QuantizedDecision d = separate_quantizer_pair(h, params, st, spec.total_bits,
                                                          *ctx.direct_cb, *ctx.cross_cb);
      return {rate_report(h, d.pair, params).min < params.rho, d.bits};
    }
    case Scheme::NoFeedbackTs:
      return {rate_report(h, no_feedback_pair(Strategy::TimeSharing), params).min < params.rho, 0};
    case Scheme::NoFeedbackIt:
      return {rate_report(h, no_feedback_pair(Strategy::Interference), params).min < params.rho, 0};
  }
  throw std::logic_error("evaluate_scheme: unknown scheme");
}

int resolve_workers(int workers) {
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (workers == 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }
  return workers;
}

enum class StopRule { FirstScheme, AllSchemes, DiffFirstTwo };

struct EngineResult {
  std::vector<std::uint64_t> events;
  std::vector<std::uint64_t> n_plus;   // outage on scheme i but not on scheme 0
  std::vector<std::uint64_t> n_minus;  // outage on scheme 0 but not on scheme i
  std::uint64_t trials = 0;
  bool reached_min_events = false;
};

// Common-draw engine: trial i uses the stream derived from (seed, i), every
// scheme sees the same channel state, and trials are consumed strictly in
// index order so any worker count yields identical results.
EngineResult run_outage_engine(const FadingParams& params,
                               const std::vector<SchemeSpec>& specs,
                               std::uint64_t min_events, std::uint64_t max_trials,
                               std::uint64_t seed, int workers_req, StopRule rule) {
  if (specs.empty()) throw std::invalid_argument("run_outage_engine: no schemes");
  if (min_events < 1) throw std::invalid_argument("min_outage_events must be >= 1");
  if (max_trials < min_events)
    throw std::invalid_argument("max_trials must be at least min_outage_events");

  const int workers = resolve_workers(workers_req);
  const std::size_t ns = specs.size();
  std::vector<SchemeContext> ctxs;
  ctxs.reserve(ns);
  for (const auto& s : specs) ctxs.push_back(make_context(s, params));

  EngineResult res;
  res.events.assign(ns, 0);
  res.n_plus.assign(ns, 0);
  res.n_minus.assign(ns, 0);

  std::vector<std::uint8_t> flags(kBlock * ns);
  std::uint64_t done = 0;
  while (done < max_trials && !res.reached_min_events) {
    const std::uint64_t n_this = std::min<std::uint64_t>(kBlock, max_trials - done);
    auto fill = [&](int w) {
      for (std::uint64_t i = static_cast<std::uint64_t>(w); i < n_this;
           i += static_cast<std::uint64_t>(workers)) {
        TrialRng rng = TrialRng::for_trial(seed, done + i);
        const ChannelState h = sample_channel(rng, params);
        for (std::size_t s = 0; s < ns; ++s)
          flags[i * ns + s] = evaluate_scheme(specs[s], ctxs[s], h, params).outage ? 1 : 0;
      }
    };
    if (workers == 1) {
      fill(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(fill, w);
      for (auto& th : pool) th.join();
    }

    // Sequential scan finds the exact stopping trial.
    for (std::uint64_t i = 0; i < n_this; ++i) {
      const std::uint8_t base = flags[i * ns];
      for (std::size_t s = 0; s < ns; ++s) {
        const std::uint8_t f = flags[i * ns + s];
        res.events[s] += f;
        if (f && !base) ++res.n_plus[s];
        if (base && !f) ++res.n_minus[s];
      }
      ++res.trials;
      std::uint64_t metric = 0;
      switch (rule) {
        case StopRule::FirstScheme:
          metric = res.events[0];
          break;
        case StopRule::AllSchemes:
          metric = *std::min_element(res.events.begin(), res.events.end());
          break;
        case StopRule::DiffFirstTwo:
          metric = ns > 1 ? res.n_plus[1] + res.n_minus[1] : 0;
          break;
      }
      if (metric >= min_events) {
        res.reached_min_events = true;
        break;
      }
    }
    done += n_this;
  }
  return res;
}

Estimate proportion_estimate(std::uint64_t events, std::uint64_t trials, bool reached) {
  Estimate e;
  e.trials = trials;
  e.events = events;
  e.value = static_cast<double>(events) / static_cast<double>(trials);
  e.std_err = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
  e.undersampled = !reached;
  return e;
}

Estimate paired_difference_estimate(std::uint64_t n_plus, std::uint64_t n_minus,
                                    std::uint64_t trials, bool reached) {
  Estimate e;
  e.trials = trials;
  e.events = n_plus + n_minus;  // disagreement count
  const double n = static_cast<double>(trials);
  e.value = (static_cast<double>(n_plus) - static_cast<double>(n_minus)) / n;
  const double second_moment = static_cast<double>(n_plus + n_minus) / n;
  const double var = std::max(0.0, second_moment - e.value * e.value);
  e.std_err = std::sqrt(var / n);
  e.undersampled = !reached;
  return e;
}

}  // namespace

Estimate estimate_outage(const RunConfig& cfg) {
  const auto r = run_outage_engine(cfg.params, {cfg.scheme}, cfg.min_outage_events,
                                   cfg.max_trials, cfg.master_seed, cfg.workers,
                                   StopRule::FirstScheme);
  return proportion_estimate(r.events[0], r.trials, r.reached_min_events);
}

Estimate estimate_feedback_rate(const RunConfig& cfg) {
  switch (cfg.scheme.scheme) {
    case Scheme::ConferSumTs:
    case Scheme::ConferSumIt:
    case Scheme::ConferMinTs:
    case Scheme::ConferMinIt:
    case Scheme::SeparateTs:
    case Scheme::SeparateIt:
      break;
    default:
      throw std::invalid_argument("estimate_feedback_rate: scheme has no feedback bits");
  }
  const int workers = resolve_workers(cfg.workers);
  const SchemeContext ctx = make_context(cfg.scheme, cfg.params);
  const std::uint64_t trials = cfg.max_trials;

  std::vector<std::uint64_t> sum(static_cast<std::size_t>(workers), 0);
  std::vector<std::uint64_t> sum_sq(static_cast<std::size_t>(workers), 0);
  auto work = [&](int w) {
    std::uint64_t s = 0;
    std::uint64_t s2 = 0;
    for (std::uint64_t i = static_cast<std::uint64_t>(w); i < trials;
         i += static_cast<std::uint64_t>(workers)) {
      TrialRng rng = TrialRng::for_trial(cfg.master_seed, i);
      const ChannelState h = sample_channel(rng, cfg.params);
      const auto out = evaluate_scheme(cfg.scheme, ctx, h, cfg.params);
      const std::uint64_t b = static_cast<std::uint64_t>(out.bits);
      s += b;
      s2 += b * b;
    }
    sum[static_cast<std::size_t>(w)] = s;
    sum_sq[static_cast<std::size_t>(w)] = s2;
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  const std::uint64_t total = std::accumulate(sum.begin(), sum.end(), std::uint64_t{0});
  const std::uint64_t total_sq = std::accumulate(sum_sq.begin(), sum_sq.end(), std::uint64_t{0});

  Estimate e;
  e.trials = trials;
  e.events = total;
  const double n = static_cast<double>(trials);
  e.value = static_cast<double>(total) / n;
  const double var = std::max(0.0, static_cast<double>(total_sq) / n - e.value * e.value);
  e.std_err = std::sqrt(var / n);
  return e;
}

Estimate estimate_distortion(const RunConfig& cfg, const SchemeSpec& reference) {
  const auto r = run_outage_engine(cfg.params, {reference, cfg.scheme},
                                   cfg.min_outage_events, cfg.max_trials, cfg.master_seed,
                                   cfg.workers, StopRule::DiffFirstTwo);
  return paired_difference_estimate(r.n_plus[1], r.n_minus[1], r.trials,
                                    r.reached_min_events);
}

PairedEstimates estimate_outage_paired(const RunConfig& base,
                                       const std::vector<SchemeSpec>& schemes) {
  const auto r = run_outage_engine(base.params, schemes, base.min_outage_events,
                                   base.max_trials, base.master_seed, base.workers,
                                   StopRule::AllSchemes);
  PairedEstimates out;
  out.trials = r.trials;
  out.undersampled = !r.reached_min_events;
  for (std::size_t s = 0; s < schemes.size(); ++s)
    out.per_scheme.push_back(proportion_estimate(r.events[s], r.trials, r.reached_min_events));
  return out;
}

PairedEstimates estimate_distortion_paired(const RunConfig& base, const SchemeSpec& reference,
                                           const std::vector<SchemeSpec>& schemes) {
  std::vector<SchemeSpec> all;
  all.reserve(schemes.size() + 1);
  all.push_back(reference);
  for (const auto& s : schemes) all.push_back(s);
  const auto r = run_outage_engine(base.params, all, base.min_outage_events, base.max_trials,
                                   base.master_seed, base.workers, StopRule::DiffFirstTwo);
  PairedEstimates out;
  out.trials = r.trials;
  out.undersampled = !r.reached_min_events;
  out.reference = proportion_estimate(r.events[0], r.trials, r.reached_min_events);
  for (std::size_t s = 1; s < all.size(); ++s)
    out.per_scheme.push_back(paired_difference_estimate(r.n_plus[s], r.n_minus[s], r.trials,
                                                        r.reached_min_events));
  return out;
}

CrossoverResult find_power_threshold(double eps, double rho,
                                     const std::vector<double>& p_grid_db,
                                     const RunConfig& point_cfg) {
  if (p_grid_db.size() < 2)
    throw std::invalid_argument("find_power_threshold: need at least 2 grid points");
  if (!std::is_sorted(p_grid_db.begin(), p_grid_db.end()))
    throw std::invalid_argument("find_power_threshold: grid must be sorted ascending");

  CrossoverResult res;
  for (double p_db : p_grid_db) {
    RunConfig cfg = point_cfg;
    cfg.params = FadingParams(eps, db_to_linear(p_db), rho);
    const auto est = estimate_outage_paired(
        cfg, {{Scheme::OptMinTs}, {Scheme::OptMinIt}});
    res.points.push_back({p_db, est.per_scheme[0], est.per_scheme[1]});
  }

  for (std::size_t i = 0; i + 1 < res.points.size(); ++i) {
    const double d0 = res.points[i].ts.value - res.points[i].it.value;
    const double d1 = res.points[i + 1].ts.value - res.points[i + 1].it.value;
    if (d0 == 0.0) {
      res.found = true;
      res.p_th_db = res.points[i].p_db;
      break;
    }
    if ((d0 < 0.0) != (d1 < 0.0)) {
      res.found = true;
      res.p_th_db = res.points[i].p_db + d0 * (res.points[i + 1].p_db - res.points[i].p_db) /
                                             (d0 - d1);
      break;
    }
  }
  return res;
}

CrossoverResult locate_power_threshold(double eps, double rho, const RunConfig& point_cfg) {
  std::vector<double> coarse;
  for (double p = -6.0; p <= 33.0; p += 3.0) coarse.push_back(p);
  RunConfig coarse_cfg = point_cfg;
  coarse_cfg.min_outage_events = std::min<std::uint64_t>(point_cfg.min_outage_events, 400);
  coarse_cfg.max_trials = std::min<std::uint64_t>(point_cfg.max_trials, 300'000);
  const CrossoverResult scan = find_power_threshold(eps, rho, coarse, coarse_cfg);
  if (!scan.found) return scan;

  std::vector<double> fine;
  for (double p = scan.p_th_db - 4.0; p <= scan.p_th_db + 4.0 + 1e-9; p += 1.0)
    fine.push_back(p);
  return find_power_threshold(eps, rho, fine, point_cfg);
}

}  // namespace confq
