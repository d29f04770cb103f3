#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "equicount/gen.hpp"
#include "equicount/json_io.hpp"
#include "equicount/rules.hpp"
#include "equicount/scenarios.hpp"

namespace {

using eqc::io::json;

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    eqc::io::write_file(out_path, j);
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open for writing: " + out_path);
    os << text;
  }
}

eqc::RuleVariant parse_variant(const std::string& name) {
  if (name == "gibbs") return eqc::RuleVariant::gibbs;
  if (name == "boltzmann") return eqc::RuleVariant::boltzmann_original;
  if (name == "support-exclude") return eqc::RuleVariant::boltzmann_support_exclude_borderline;
  if (name == "support-mixed") return eqc::RuleVariant::boltzmann_support_mixed;
  throw CLI::ValidationError("--variant", "unknown rule variant: " + name);
}

eqc::Region parse_beta(const eqc::ParameterSpace& space, const std::string& inline_json,
                       const std::string& file) {
  if (inline_json.empty() == file.empty())
    throw CLI::ValidationError("--beta", "give exactly one of --beta or --beta-file");
  const json j = inline_json.empty() ? eqc::io::read_file(file) : json::parse(inline_json);
  return eqc::io::region_from_json(space, j);
}

struct CommonOptions {
  double eps_amp = eqc::kDefaultEpsAmp;
  int n_max = eqc::kDefaultMaxEnsembleSize;
  double tol = 1e-9;
  std::uint64_t seed = eqc::scenarios::ScenarioConfig{}.seed;
  std::string format = "json";
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--eps-amp", eps_amp, "amplitude-zero threshold, relative to total weight")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--n-max", n_max, "maximum ensemble size")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", tol, "containment tolerance")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", seed, "campaign master seed");
    cmd->add_option("--format", format, "report format: json or csv (csv for campaigns)")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out, "write the report to this file instead of stdout");
  }

  eqc::scenarios::ScenarioConfig config() const {
    eqc::scenarios::ScenarioConfig cfg;
    cfg.eps_amp = eps_amp;
    cfg.n_max = n_max;
    cfg.tol_contain = tol;
    cfg.seed = seed;
    return cfg;
  }
};

int cmd_scenario_run(const std::string& name, const CommonOptions& opts, std::optional<int> trials) {
  eqc::scenarios::ScenarioConfig cfg = opts.config();
  if (trials) {
    cfg.trials_gibbs = *trials;
    cfg.trials_eq10 = *trials;
    cfg.trials_families = *trials;
    cfg.trials_additivity = *trials;
    cfg.trials_hilbert = *trials;
  }

  if (opts.format == "csv") {
    if (!eqc::scenarios::is_campaign(name))
      throw CLI::ValidationError("--format", "csv output is defined for campaign scenarios only");
    eqc::scenarios::CampaignSummary summary;
    if (name == "campaign_gibbs") summary = eqc::scenarios::run_gibbs_campaign(cfg);
    else if (name == "campaign_eq10") summary = eqc::scenarios::run_eq10_campaign(cfg);
    else if (name == "campaign_families") summary = eqc::scenarios::run_family_campaign(cfg);
    else if (name == "campaign_additivity") summary = eqc::scenarios::run_additivity_campaign(cfg);
    else if (name == "campaign_hilbert") summary = eqc::scenarios::run_hilbert_campaign(cfg);
    else throw CLI::ValidationError("scenario", "unknown campaign: " + name);
    emit_text(eqc::scenarios::campaign_csv(summary), opts.out);
    std::cerr << summary.name << ": " << (summary.pass() ? "pass" : "FAIL") << " ("
              << summary.trials << " trials, " << summary.failures << " failures)\n";
    return summary.pass() ? kExitPass : kExitMismatch;
  }

  const eqc::scenarios::ScenarioResult res = eqc::scenarios::run_scenario(name, cfg);
  emit(res.report, opts.out);
  std::cerr << res.name << ": " << (res.pass ? "pass" : "FAIL") << "\n";
  return res.pass ? kExitPass : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"microstate-counting rules, interval probabilities, and Born-rule cross-checks"};
  app.require_subcommand(1);

  // scenario run / scenario list
  auto* scenario = app.add_subcommand("scenario", "run or list the named regression scenarios");
  scenario->require_subcommand(1);
  auto* sc_list = scenario->add_subcommand("list", "list registered scenario names");
  auto* sc_run = scenario->add_subcommand("run", "run one scenario and report");
  std::string scenario_name;
  std::optional<int> trials_override;
  sc_run->add_option("name", scenario_name, "scenario name")->required();
  int trials_opt = 0;
  auto* trials_flag = sc_run->add_option("--trials", trials_opt, "override campaign trial count")
                          ->check(CLI::PositiveNumber);
  CommonOptions run_opts;
  run_opts.attach(sc_run);

  // partition
  auto* partition = app.add_subcommand("partition", "partition a field's space and write the ensemble");
  std::string part_field, part_mode = "equiamp", part_layout = "slabs-x", part_policy = "alt-x",
              part_out;
  int part_n = 0;
  CommonOptions part_opts;
  partition->add_option("--field", part_field, "wave field JSON file")->required();
  partition->add_option("--mode", part_mode, "equivol or equiamp")
      ->check(CLI::IsMember({"equivol", "equiamp"}));
  partition->add_option("--n", part_n, "number of cells")->required();
  partition->add_option("--layout", part_layout, "equivolume layout: slabs-x, slabs-y, grid:RxC, bisect");
  partition->add_option("--policy", part_policy, "equiamplitude split policy: alt-x, alt-y, longest");
  partition->add_option("--out", part_out, "output ensemble JSON file");
  partition->add_option("--n-max", part_opts.n_max, "maximum ensemble size")->check(CLI::PositiveNumber);

  // check
  auto* check = app.add_subcommand("check", "interval probabilities and consistency for a family");
  std::string check_field, check_beta_inline, check_beta_file, check_out;
  std::vector<std::string> check_ensembles, check_variants;
  CommonOptions check_opts;
  check->add_option("--field", check_field, "wave field JSON file")->required();
  check->add_option("--ensemble", check_ensembles, "ensemble JSON file (repeatable)")->required();
  check->add_option("--beta", check_beta_inline, "macrostate region as inline JSON");
  check->add_option("--beta-file", check_beta_file, "macrostate region JSON file");
  check->add_option("--variant", check_variants,
                    "rule variant per ensemble (or one for all): gibbs, boltzmann, "
                    "support-exclude, support-mixed");
  check->add_option("--eps-amp", check_opts.eps_amp, "amplitude-zero threshold")
      ->check(CLI::NonNegativeNumber);
  check->add_option("--out", check_out, "write the report to this file");

  // hilbert check
  auto* hilbert_cmd = app.add_subcommand("hilbert", "finite-dimensional decomposition checks");
  hilbert_cmd->require_subcommand(1);
  auto* hb_check = hilbert_cmd->add_subcommand("check", "seeded decomposition/containment trials");
  int hb_dim = 8, hb_n = 4, hb_rank = -1, hb_trials = 1;
  double hb_tol = 1e-10;
  CommonOptions hb_opts;
  hb_check->add_option("--dim", hb_dim, "Hilbert space dimension")->check(CLI::Range(1, 4096));
  hb_check->add_option("--n", hb_n, "decomposition size (<= dim)")->check(CLI::PositiveNumber);
  hb_check->add_option("--rank", hb_rank, "projector rank (default random)");
  hb_check->add_option("--trials", hb_trials, "number of trials")->check(CLI::PositiveNumber);
  hb_check->add_option("--tol", hb_tol, "eigenstate classification tolerance")
      ->check(CLI::NonNegativeNumber);
  hb_check->add_option("--seed", hb_opts.seed, "master seed");
  hb_check->add_option("--out", hb_opts.out, "write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*sc_list) {
      json names = json::array();
      for (const std::string& n : eqc::scenarios::scenario_names()) names.push_back(n);
      std::cout << names.dump(2) << "\n";
      return kExitPass;
    }

    if (*sc_run) {
      if (*trials_flag) trials_override = trials_opt;
      return cmd_scenario_run(scenario_name, run_opts, trials_override);
    }

    if (*partition) {
      const auto field = std::make_shared<const eqc::WaveField>(
          eqc::io::field_from_json(eqc::io::read_file(part_field)));
      eqc::Ensemble e = [&]() {
        if (part_mode == "equiamp") {
          eqc::SplitAxisPolicy policy = eqc::SplitAxisPolicy::alternate_x_first;
          if (part_policy == "alt-y") policy = eqc::SplitAxisPolicy::alternate_y_first;
          else if (part_policy == "longest") policy = eqc::SplitAxisPolicy::longest_extent;
          else if (part_policy != "alt-x")
            throw CLI::ValidationError("--policy", "unknown policy: " + part_policy);
          return eqc::equiamplitude_partition(field, part_n, policy, part_opts.n_max);
        }
        eqc::EquivolumeLayout layout = eqc::EquivolumeLayout::slabs();
        if (part_layout == "slabs-y") layout = eqc::EquivolumeLayout::slabs(eqc::SplitAxis::y);
        else if (part_layout == "bisect") layout = eqc::EquivolumeLayout::bisect();
        else if (part_layout.rfind("grid:", 0) == 0) {
          const std::string spec = part_layout.substr(5);
          const std::size_t x = spec.find('x');
          if (x == std::string::npos)
            throw CLI::ValidationError("--layout", "grid layout must look like grid:RxC");
          layout = eqc::EquivolumeLayout::grid(std::stoi(spec.substr(0, x)), std::stoi(spec.substr(x + 1)));
        } else if (part_layout != "slabs-x") {
          throw CLI::ValidationError("--layout", "unknown layout: " + part_layout);
        }
        return eqc::equivolume_partition(field->space(), part_n, layout, part_opts.n_max, field);
      }();
      emit(eqc::io::to_json(e), part_out);
      return kExitPass;
    }

    if (*check) {
      const auto field = std::make_shared<const eqc::WaveField>(
          eqc::io::field_from_json(eqc::io::read_file(check_field)));
      const eqc::Region beta = parse_beta(field->space(), check_beta_inline, check_beta_file);
      std::vector<eqc::Ensemble> family;
      for (const std::string& path : check_ensembles)
        family.push_back(eqc::io::ensemble_from_json(eqc::io::read_file(path), field));
      std::vector<eqc::RuleVariant> variants;
      if (check_variants.empty()) {
        for (const eqc::Ensemble& e : family)
          variants.push_back(e.rule() == eqc::PartitionRule::equiamplitude
                                 ? eqc::RuleVariant::gibbs
                                 : eqc::RuleVariant::boltzmann_original);
      } else {
        for (const std::string& v : check_variants) variants.push_back(parse_variant(v));
      }
      const eqc::ConsistencyReport rep =
          eqc::consistency_check(*field, family, beta, variants, check_opts.eps_amp);
      json out = eqc::io::to_json(rep);
      out["born"] = field->born(beta);
      emit(out, check_out);
      return kExitPass;
    }

    if (*hb_check) {
      json trials = json::array();
      bool all_pass = true;
      for (int t = 0; t < hb_trials; ++t) {
        eqc::gen::Rng rng(eqc::gen::derive_seed(hb_opts.seed, static_cast<std::uint64_t>(t)));
        const std::size_t d = static_cast<std::size_t>(hb_dim);
        if (static_cast<std::size_t>(hb_n) > d)
          throw CLI::ValidationError("--n", "decomposition size must not exceed --dim");
        const std::size_t rank = hb_rank < 0
                                     ? static_cast<std::size_t>(rng.uniform_int(0, hb_dim))
                                     : static_cast<std::size_t>(hb_rank);
        const eqc::hilbert::Matrix basis = eqc::gen::random_unitary(rng, d);
        const eqc::hilbert::StateVector psi = eqc::gen::random_state(rng, d);
        const eqc::hilbert::Projector p = eqc::gen::random_projector(rng, d, rank);
        const eqc::hilbert::AppendixReport rep =
            eqc::hilbert::appendix_theorem_check(p, psi, hb_n, &basis, hb_tol, 1e-9);
        all_pass = all_pass && rep.pass;
        trials.push_back(json{{"trial", t},
                              {"m", rep.m},
                              {"r", rep.r},
                              {"n", rep.n},
                              {"rank", rank},
                              {"quotient", rep.quotient},
                              {"interval", eqc::io::to_json(rep.interval)},
                              {"contained", rep.contained},
                              {"proof_bounds_hold", rep.proof_bounds_hold},
                              {"pass", rep.pass}});
      }
      emit(json{{"dim", hb_dim}, {"n", hb_n}, {"trials", trials}, {"pass", all_pass}}, hb_opts.out);
      return all_pass ? kExitPass : kExitMismatch;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
