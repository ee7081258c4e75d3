#pragma once
// Seeded experiment campaigns with acceptance predicates.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "exch/harness.hpp"
#include "exch/json_io.hpp"

namespace exch {

enum class CampaignKind { TailCoverage, Figure1, Figure2, Figure3, LemmaSuite };

CampaignKind parse_campaign_kind(const std::string& s);
std::string campaign_kind_name(CampaignKind k);

struct Campaign {
  std::string name;
  CampaignKind kind = CampaignKind::TailCoverage;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::vector<double> delta_grid;
  Json parameters = Json::object();
};

/// Parses and validates {"name", "kind", "trials", "seed", "delta_grid", "parameters"}.
Campaign campaign_from_json(const Json& j);
Json campaign_to_json(const Campaign& c);

/// A campaign with desk-scale defaults for the given kind.
Campaign default_campaign(CampaignKind kind);

struct CampaignOptions {
  /// Full-scale trial counts and sizes.
  bool full = false;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;  // 0: default_threads()
};

struct Predicate {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CampaignResult {
  Campaign campaign;  // after option overrides
  Json parameters;    // fully resolved
  std::vector<TrialRecord> records;
  std::vector<GroupSummary> groups;
  std::vector<Predicate> predicates;
  bool passed() const;
  Json summary() const;
};

/// Validates the campaign, runs every trial and evaluates the kind's predicates.
CampaignResult run_campaign(const Campaign& c, const CampaignOptions& opt = {});

/// Writes records.csv, summary.json and timing.csv into dir (created if needed).
void persist_campaign(const CampaignResult& r, const std::filesystem::path& dir);

}  // namespace exch
