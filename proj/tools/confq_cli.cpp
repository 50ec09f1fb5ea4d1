#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "confq/experiments.hpp"

namespace {

const std::map<std::string, confq::Scheme>& scheme_names() {
  static const std::map<std::string, confq::Scheme> names = {
      {"opt_sum_ts", confq::Scheme::OptSumTs},
      {"opt_sum_it", confq::Scheme::OptSumIt},
      {"opt_min_ts", confq::Scheme::OptMinTs},
      {"opt_min_it", confq::Scheme::OptMinIt},
      {"confer_sum_ts", confq::Scheme::ConferSumTs},
      {"confer_sum_it", confq::Scheme::ConferSumIt},
      {"confer_min_ts", confq::Scheme::ConferMinTs},
      {"confer_min_it", confq::Scheme::ConferMinIt},
      {"centralized_min_it", confq::Scheme::CentralizedMinIt},
      {"separate_ts", confq::Scheme::SeparateTs},
      {"separate_it", confq::Scheme::SeparateIt},
      {"nofb_ts", confq::Scheme::NoFeedbackTs},
      {"nofb_it", confq::Scheme::NoFeedbackIt},
  };
  return names;
}

int emit(const confq::Table& table, const std::string& out_path, const std::string& format) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open output file " << out_path << "\n";
      return 2;
    }
    os = &file;
  }
  if (format == "json")
    confq::write_json(table, *os);
  else
    confq::write_csv(table, *os);
  return table.has_undersampled() ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conferencing-based channel quantizer experiments for two-user interference networks"};
  app.require_subcommand(1);

  confq::ExperimentSpec spec;
  std::string out_path;
  std::string format = "csv";
  std::string scheme_name;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--eps", spec.eps_list, "cross-link gain means, comma separated")
        ->delimiter(',');
    sub->add_option("--p-db", spec.p_db_list, "power constraints in dB, comma separated")
        ->delimiter(',');
    sub->add_option("--rho", spec.rho, "target rate in bits/s/Hz");
    sub->add_option("--seed", spec.base.master_seed, "master seed");
    sub->add_option("--trials", spec.base.max_trials, "trial cap per grid point");
    sub->add_option("--min-outage-events", spec.base.min_outage_events,
                    "outage events required before a point may stop");
    sub->add_option("--workers", spec.base.workers,
                    "worker threads (0 = all cores; never changes results)");
    sub->add_option("--fr-trials", spec.fr_trials, "fixed trial count for feedback-rate columns");
    sub->add_option("--out", out_path, "output path (default: stdout)");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "optimal min-rate outage of both strategies vs P, with crossover rows");
  add_common(fig1);

  CLI::App* fig2 = app.add_subcommand(
      "fig2", "time sharing: conferencing quantizer vs separate quantization and no feedback");
  add_common(fig2);
  fig2->add_option("--btot", spec.fig2_total_bits, "baseline feedback budget in bits");

  CLI::App* fig3 = app.add_subcommand(
      "fig3", "interference transmission: outage distortion vs codebook size M");
  add_common(fig3);
  fig3->add_option("--m-list", spec.m_list, "codebook sizes, comma separated")->delimiter(',');

  CLI::App* fig4 = app.add_subcommand(
      "fig4", "interference transmission: outage distortion vs P at fixed M");
  add_common(fig4);
  fig4->add_option("--m", spec.fig4_m, "codebook size");

  CLI::App* custom = app.add_subcommand("custom", "ad-hoc sweep over eps, P, M, b_tot, seeds");
  add_common(custom);
  custom->add_option("--scheme", scheme_name, "scheme to evaluate")
      ->required()
      ->check(CLI::IsMember([] {
        std::vector<std::string> v;
        for (const auto& [k, _] : scheme_names()) v.push_back(k);
        return v;
      }()));
  custom->add_option("--mode", spec.mode, "outage, feedback or distortion");
  custom->add_option("--m-list", spec.m_list, "codebook sizes")->delimiter(',');
  custom->add_option("--btot-list", spec.btot_list, "baseline budgets")->delimiter(',');
  custom->add_option("--seeds", spec.seed_list, "seed sweep")->delimiter(',');
  custom->add_option("--max-rounds", spec.scheme.max_rounds, "bisection round cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    confq::Table table;
    if (fig1->parsed()) {
      table = confq::run_fig1(spec);
    } else if (fig2->parsed()) {
      table = confq::run_fig2(spec);
    } else if (fig3->parsed()) {
      table = confq::run_fig3(spec);
    } else if (fig4->parsed()) {
      table = confq::run_fig4(spec);
    } else {
      spec.scheme.scheme = scheme_names().at(scheme_name);
      if (spec.eps_list.empty()) spec.eps_list = {0.1};
      if (spec.p_db_list.empty()) spec.p_db_list = {0.0};
      if (spec.m_list.empty()) spec.m_list = {spec.scheme.codebook_m};
      if (spec.btot_list.empty()) spec.btot_list = {spec.scheme.total_bits};
      if (spec.seed_list.empty()) spec.seed_list = {spec.base.master_seed};
      table = confq::run_custom(spec);
    }
    return emit(table, out_path, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
