#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsched/analysis.hpp"
#include "rsched/policies.hpp"

namespace rsched {

/// Runs one policy over a slice of a fuzz stream and applies every check.
struct CampaignOptions {
  std::uint64_t seed = 1;
  std::uint64_t first = 0;  // index of the first instance, for sharding
  std::size_t count = 1000;
  int n_max = 8;
  std::vector<int> machines{1, 2, 3, 4};
  PolicyChoice policy;
  std::optional<Rat> max_ratio;  // ratios above this count as violations
  bool leftover = true;
  bool claim2 = false;
  bool observation1 = false;
  bool audit = true;
  CheckpointMode checkpoints = CheckpointMode::BreakpointsAndMidpoints;
};

struct CampaignFailure {
  std::uint64_t index = 0;
  std::string check;
  std::string detail;
  Instance instance;
};

struct CampaignResult {
  std::size_t instances = 0;
  std::size_t replacements = 0;
  Rat max_ratio;
  std::uint64_t max_ratio_index = 0;
  std::size_t ratio_violations = 0;
  std::size_t leftover_failures = 0;
  std::size_t claim2_failures = 0;
  std::size_t observation1_failures = 0;
  std::size_t audit_violations = 0;
  std::size_t fact1_ties = 0;
  // Final-view waste against replaced mass at the makespan.
  std::size_t waste_equal = 0;
  std::size_t waste_general_larger = 0;
  std::size_t waste_general_smaller = 0;
  std::optional<Rat> min_leftover_slack;
  std::vector<CampaignFailure> failures;  // first few, in index order

  [[nodiscard]] std::size_t violations() const {
    return ratio_violations + leftover_failures + claim2_failures + observation1_failures + audit_violations +
           waste_general_smaller;
  }
  void merge(const CampaignResult& other);
};

[[nodiscard]] CampaignResult run_campaign(const CampaignOptions& options);

struct Claim3Campaign {
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t unmet = 0;  // generator produced a triple failing the preconditions
  std::optional<Rat> min_slack;
  std::size_t climbs = 0;
  std::optional<Rat> climb_min_slack;
};

/// `trials` random admissible triples of length <= k_max, then `starts` hill
/// climbs of `steps` moves each, all driven by one generator seeded with `seed`.
[[nodiscard]] Claim3Campaign run_claim3_campaign(std::uint64_t seed, std::size_t trials, int k_max, std::size_t starts,
                                                 int steps);

}  // namespace rsched
