#include "confq/experiments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace confq {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_double(v[i]);
  }
  return s;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<double> db_range(double lo, double hi, double step) {
  std::vector<double> v;
  for (double p = lo; p <= hi + 1e-9; p += step) v.push_back(p);
  return v;
}

// Feedback budget granted to the separate-quantization baseline when it is
// matched against a codebook of size m: the conferencing budget rounded up
// to a multiple of 4 so each of the four gains gets an equal share.
int matched_total_bits(int m) {
  const double r = 2.0 * std::log2(static_cast<double>(m) + 1.0) + 3.0;
  return 4 * static_cast<int>(std::ceil(r / 4.0));
}

// Everything that determines the numbers goes into the metadata block.
// Worker count is deliberately absent: it cannot change any output value.
void common_meta(Table& t, const ExperimentSpec& spec, const std::string& figure) {
  t.add_meta("tool", "confq");
  t.add_meta("figure", figure);
  t.add_meta("rho", format_double(spec.rho));
  t.add_meta("seed", std::to_string(spec.base.master_seed));
  t.add_meta("min_outage_events", std::to_string(spec.base.min_outage_events));
  t.add_meta("max_trials", std::to_string(spec.base.max_trials));
}

ExperimentSpec with_defaults(const ExperimentSpec& in, const std::string& figure) {
  ExperimentSpec spec = in;
  if (spec.eps_list.empty()) {
    if (figure == "fig1")
      spec.eps_list = {1.0, 0.5, 0.1, 0.01};
    else
      spec.eps_list = {0.1};
  }
  if (spec.p_db_list.empty()) {
    if (figure == "fig4")
      spec.p_db_list = db_range(-10.0, 12.0, 2.0);
    else if (figure != "fig3")
      spec.p_db_list = db_range(-20.0, 40.0, 5.0);
    // fig3 defaults to a per-eps operating point, resolved in the runner
  }
  if (spec.m_list.empty()) spec.m_list = {1, 2, 4, 8, 16};
  return spec;
}

}  // namespace

double default_fig3_p_db(double eps) {
  if (eps >= 0.75) return -3.0;
  if (eps >= 0.3) return 0.0;
  if (eps >= 0.05) return 7.0;
  return 20.0;
}

Table run_fig1(const ExperimentSpec& in) {
  const ExperimentSpec spec = with_defaults(in, "fig1");
  Table t;
  common_meta(t, spec, "fig1");
  t.add_meta("eps_list", join_doubles(spec.eps_list));
  t.add_meta("p_db_list", join_doubles(spec.p_db_list));
  t.columns = {"row_kind", "eps",    "p_db",   "out_ts", "se_ts",
               "out_it",   "se_it",  "trials", "undersampled"};

  for (double eps : spec.eps_list) {
    for (double p_db : spec.p_db_list) {
      RunConfig cfg = spec.base;
      cfg.params = FadingParams(eps, db_to_linear(p_db), spec.rho);
      const auto est = estimate_outage_paired(cfg, {{Scheme::OptMinTs}, {Scheme::OptMinIt}});
      t.rows.push_back({0.0, eps, p_db, est.per_scheme[0].value, est.per_scheme[0].std_err,
                        est.per_scheme[1].value, est.per_scheme[1].std_err,
                        static_cast<double>(est.trials), est.undersampled ? 1.0 : 0.0});
    }
  }
  for (double eps : spec.eps_list) {
    const CrossoverResult cr = locate_power_threshold(eps, spec.rho, spec.base);
    const double p_th = cr.found ? cr.p_th_db : kNan;
    bool undersampled = false;
    for (const auto& pt : cr.points)
      if (pt.ts.undersampled || pt.it.undersampled) undersampled = true;
    t.rows.push_back({1.0, eps, p_th, kNan, kNan, kNan, kNan, kNan, undersampled ? 1.0 : 0.0});
    t.add_meta("p_th_db_eps_" + format_double(eps), cr.found ? format_double(cr.p_th_db) : "none");
  }
  return t;
}

Table run_fig2(const ExperimentSpec& in) {
  const ExperimentSpec spec = with_defaults(in, "fig2");
  const double eps = spec.eps_list.front();

  Table t;
  common_meta(t, spec, "fig2");
  t.add_meta("eps", format_double(eps));
  t.add_meta("p_db_list", join_doubles(spec.p_db_list));
  t.add_meta("total_bits", std::to_string(spec.fig2_total_bits));
  t.add_meta("fr_trials", std::to_string(spec.fr_trials));
  t.columns = {"p_db",        "out_confer", "se_confer", "out_separate", "se_separate",
               "out_nofb",    "se_nofb",    "out_opt",   "se_opt",       "fr_confer",
               "fr_se",       "trials",     "undersampled"};

  SchemeSpec confer{Scheme::ConferMinTs};
  confer.max_rounds = spec.base.scheme.max_rounds;
  SchemeSpec separate{Scheme::SeparateTs};
  separate.total_bits = spec.fig2_total_bits;

  for (double p_db : spec.p_db_list) {
    RunConfig cfg = spec.base;
    cfg.params = FadingParams(eps, db_to_linear(p_db), spec.rho);
    const auto est = estimate_outage_paired(
        cfg, {confer, separate, {Scheme::NoFeedbackTs}, {Scheme::OptMinTs}});

    RunConfig fr_cfg = cfg;
    fr_cfg.scheme = confer;
    fr_cfg.max_trials = spec.fr_trials;
    const Estimate fr = estimate_feedback_rate(fr_cfg);

    t.rows.push_back({p_db, est.per_scheme[0].value, est.per_scheme[0].std_err,
                      est.per_scheme[1].value, est.per_scheme[1].std_err,
                      est.per_scheme[2].value, est.per_scheme[2].std_err,
                      est.per_scheme[3].value, est.per_scheme[3].std_err, fr.value, fr.std_err,
                      static_cast<double>(est.trials), est.undersampled ? 1.0 : 0.0});
  }
  return t;
}

namespace {

Table run_distortion_sweep(const ExperimentSpec& spec, const std::string& figure) {
  Table t;
  common_meta(t, spec, figure);
  t.add_meta("eps_list", join_doubles(spec.eps_list));
  t.add_meta("m_list", join_ints(spec.m_list));
  t.add_meta("fr_trials", std::to_string(spec.fr_trials));
  t.columns = {"eps",         "p_db",        "m",       "b_tot",         "dist_confer",
               "se_confer",   "dist_separate", "se_separate", "dist_nofb", "se_nofb",
               "out_opt",     "fr_confer",   "fr_se",   "trials",        "undersampled"};

  for (double eps : spec.eps_list) {
    std::vector<double> p_list = spec.p_db_list;
    if (p_list.empty()) p_list = {default_fig3_p_db(eps)};
    t.add_meta("p_db_eps_" + format_double(eps), join_doubles(p_list));
    for (double p_db : p_list) {
      for (int m : spec.m_list) {
        RunConfig cfg = spec.base;
        cfg.params = FadingParams(eps, db_to_linear(p_db), spec.rho);

        SchemeSpec confer{Scheme::ConferMinIt};
        confer.codebook_m = m;
        SchemeSpec separate{Scheme::SeparateIt};
        separate.total_bits = matched_total_bits(m);

        const auto est = estimate_distortion_paired(
            cfg, {Scheme::OptMinIt}, {confer, separate, {Scheme::NoFeedbackIt}});
        const Estimate& opt = est.reference;

        RunConfig fr_cfg = cfg;
        fr_cfg.scheme = confer;
        fr_cfg.max_trials = spec.fr_trials;
        const Estimate fr = estimate_feedback_rate(fr_cfg);

        t.rows.push_back({eps, p_db, static_cast<double>(m),
                          static_cast<double>(separate.total_bits),
                          est.per_scheme[0].value, est.per_scheme[0].std_err,
                          est.per_scheme[1].value, est.per_scheme[1].std_err,
                          est.per_scheme[2].value, est.per_scheme[2].std_err, opt.value,
                          fr.value, fr.std_err, static_cast<double>(est.trials),
                          est.undersampled ? 1.0 : 0.0});
      }
    }
  }
  return t;
}

}  // namespace

Table run_fig3(const ExperimentSpec& in) {
  ExperimentSpec spec = with_defaults(in, "fig3");
  return run_distortion_sweep(spec, "fig3");
}

Table run_fig4(const ExperimentSpec& in) {
  ExperimentSpec spec = with_defaults(in, "fig4");
  spec.m_list = {spec.fig4_m};
  return run_distortion_sweep(spec, "fig4");
}

namespace {

SchemeSpec opt_counterpart(const SchemeSpec& s) {
  SchemeSpec ref = s;
  switch (s.scheme) {
    case Scheme::ConferSumTs:
      ref.scheme = Scheme::OptSumTs;
      break;
    case Scheme::ConferSumIt:
      ref.scheme = Scheme::OptSumIt;
      break;
    case Scheme::ConferMinTs:
    case Scheme::SeparateTs:
    case Scheme::NoFeedbackTs:
      ref.scheme = Scheme::OptMinTs;
      break;
    case Scheme::ConferMinIt:
    case Scheme::CentralizedMinIt:
    case Scheme::SeparateIt:
    case Scheme::NoFeedbackIt:
      ref.scheme = Scheme::OptMinIt;
      break;
    default:
      break;  // optimal schemes compare against themselves
  }
  return ref;
}

}  // namespace

Table run_custom(const ExperimentSpec& spec) {
  if (spec.eps_list.empty() || spec.p_db_list.empty())
    throw std::invalid_argument("run_custom: eps and P sweep lists must be non-empty");
  if (spec.m_list.empty() || spec.btot_list.empty() || spec.seed_list.empty())
    throw std::invalid_argument("run_custom: m, b_tot and seed sweep lists must be non-empty");
  if (spec.mode != "outage" && spec.mode != "feedback" && spec.mode != "distortion")
    throw std::invalid_argument("run_custom: mode must be outage, feedback or distortion");

  Table t;
  common_meta(t, spec, "custom");
  t.add_meta("mode", spec.mode);
  t.add_meta("eps_list", join_doubles(spec.eps_list));
  t.add_meta("p_db_list", join_doubles(spec.p_db_list));
  t.add_meta("m_list", join_ints(spec.m_list));
  t.add_meta("btot_list", join_ints(spec.btot_list));
  t.columns = {"eps",   "p_db",   "m",      "b_tot",        "seed",
               "value", "std_err", "trials", "events",       "undersampled"};

  for (double eps : spec.eps_list) {
    for (double p_db : spec.p_db_list) {
      for (int m : spec.m_list) {
        for (int btot : spec.btot_list) {
          for (std::uint64_t seed : spec.seed_list) {
            RunConfig cfg = spec.base;
            cfg.params = FadingParams(eps, db_to_linear(p_db), spec.rho);
            cfg.scheme = spec.scheme;
            cfg.scheme.codebook_m = m;
            cfg.scheme.total_bits = btot;
            cfg.master_seed = seed;

            Estimate e;
            if (spec.mode == "outage")
              e = estimate_outage(cfg);
            else if (spec.mode == "feedback")
              e = estimate_feedback_rate(cfg);
            else
              e = estimate_distortion(cfg, opt_counterpart(cfg.scheme));

            t.rows.push_back({eps, p_db, static_cast<double>(m), static_cast<double>(btot),
                              static_cast<double>(seed), e.value, e.std_err,
                              static_cast<double>(e.trials), static_cast<double>(e.events),
                              e.undersampled ? 1.0 : 0.0});
          }
        }
      }
    }
  }
  return t;
}

}  // namespace confq
