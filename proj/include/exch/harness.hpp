#pragma once
// Trial records, CSV persistence, summaries and the parallel trial runner.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "exch/json_io.hpp"

namespace exch {

struct TrialRecord {
  std::size_t trial = 0;
  std::string group;
  std::int64_t step = 0;
  double estimate = 0.0;
  /// The statistic compared against the threshold.
  double error = 0.0;
  /// NaN when no threshold applies.
  double threshold = 0.0;
  bool exceeded = false;
  /// Not part of the CSV; persisted separately so replays stay byte-identical.
  double wall_seconds = 0.0;
};

/// exceeded is set to (error ≥ threshold); false when the threshold is NaN.
TrialRecord make_record(std::size_t trial, std::string group, std::int64_t step, double estimate, double error,
                        double threshold);

inline constexpr const char* kCsvHeader = "trial,group,step,estimate,error,threshold,exceeded";

/// Header plus one LF-terminated line per record; reals with 17 significant digits.
std::string records_to_csv(const std::vector<TrialRecord>& records);
void write_records_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records);
void write_timing_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records);

/// Inclusive nearest-rank quantile: the ceil(p·n)-th smallest value (the smallest for p = 0).
double quantile_nearest_rank(std::vector<double> values, double p);

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  /// Sample standard deviation (0 for a single value).
  double stddev = 0.0;
};
SummaryStats summarize(const std::vector<double>& values);

struct GroupSummary {
  std::string group;
  std::int64_t step = 0;
  SummaryStats error;
  SummaryStats estimate;
  /// Fraction of records with a threshold that exceeded it; NaN when none has one.
  double exceed_rate = 0.0;
  std::size_t with_threshold = 0;
};

/// One entry per (group, step), in order of first appearance.
std::vector<GroupSummary> summarize_groups(const std::vector<TrialRecord>& records);
const GroupSummary& find_group(const std::vector<GroupSummary>& groups, const std::string& group, std::int64_t step);
Json groups_to_json(const std::vector<GroupSummary>& groups);

/// EXCH_THREADS if set, otherwise the hardware concurrency (at least 1).
std::size_t default_threads();

/// Runs fn(0..trials−1) on up to `threads` workers and concatenates the results in trial order.
/// The first exception thrown by any trial is rethrown after all workers stop.
std::vector<TrialRecord> run_trials(std::size_t trials, std::size_t threads,
                                    const std::function<std::vector<TrialRecord>(std::size_t)>& fn);

/// Explicit path if non-empty, else $EXCH_OUT_DIR, else "exch-out".
std::filesystem::path resolve_output_dir(const std::string& explicit_dir);

}  // namespace exch
