#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equicount/json_io.hpp"

namespace eqc {
namespace scenarios {

/// Shared knobs for scenario runs and campaigns. Trial counts default to
/// the regression targets; everything is reproducible from the seed.
struct ScenarioConfig {
  double eps_amp = 1e-12;
  int n_max = 4096;
  double tol_contain = 1e-9;
  std::uint64_t seed = 0x5eedc0de;
  int trials_gibbs = 1000;
  int trials_eq10 = 200;
  int trials_families = 200;
  int trials_additivity = 1000;
  int trials_hilbert = 200;
};

struct ScenarioResult {
  std::string name;
  bool pass = false;
  io::json report;
};

/// One campaign trial for CSV export.
struct TrialRow {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::string kind;
  int dim = 0;
  int n = 0;
  double born = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

struct CampaignSummary {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::vector<TrialRow> rows;
  io::json failure_detail = io::json::array();
  double elapsed_seconds = 0.0;

  // Worst constructor-contract numbers seen across all validated ensembles.
  double max_weight_deviation = 0.0;  // equiamplitude, relative to W
  double max_volume_deviation = 0.0;  // equivolume, relative to λ(M)
  double max_sum_error = 0.0;         // Parseval / λ-sum, relative

  bool pass() const { return trials > 0 && failures == 0; }
};

/// Containment + constructor-contract campaign over random fields,
/// equiamplitude ensembles, and box-union macrostates.
CampaignSummary run_gibbs_campaign(const ScenarioConfig& cfg);

/// Exactness campaign: β built from whole cells must give a degenerate
/// interval equal to the Born quantity to 1e-12.
CampaignSummary run_eq10_campaign(const ScenarioConfig& cfg);

/// Cross-ensemble consistency: families of five equiamplitude ensembles
/// on one field always have intersecting intervals.
CampaignSummary run_family_campaign(const ScenarioConfig& cfg);

/// Generalized additivity over random disjoint macrostate pairs.
CampaignSummary run_additivity_campaign(const ScenarioConfig& cfg);

/// Finite-dimensional decomposition/theorem campaign.
CampaignSummary run_hilbert_campaign(const ScenarioConfig& cfg);

std::vector<std::string> scenario_names();
bool is_campaign(const std::string& name);

/// Run a registered scenario; throws std::invalid_argument for unknown names.
ScenarioResult run_scenario(const std::string& name, const ScenarioConfig& cfg);

std::string campaign_csv(const CampaignSummary& summary);

}  // namespace scenarios
}  // namespace eqc
