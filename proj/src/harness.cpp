#include "exch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "exch/error.hpp"

namespace exch {

TrialRecord make_record(std::size_t trial, std::string group, std::int64_t step, double estimate, double error,
                        double threshold) {
  TrialRecord r;
  r.trial = trial;
  r.group = std::move(group);
  r.step = step;
  r.estimate = estimate;
  r.error = error;
  r.threshold = threshold;
  r.exceeded = !std::isnan(threshold) && error >= threshold;
  return r;
}

namespace {

void append_real(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
  if (!out) throw ValidationError("write failed: " + path.string());
}

}  // namespace

std::string records_to_csv(const std::vector<TrialRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.trial);
    out += ',';
    out += r.group;
    out += ',';
    out += std::to_string(r.step);
    out += ',';
    append_real(out, r.estimate);
    out += ',';
    append_real(out, r.error);
    out += ',';
    append_real(out, r.threshold);
    out += r.exceeded ? ",1\n" : ",0\n";
  }
  return out;
}

void write_records_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records) {
  write_text(path, records_to_csv(records));
}

void write_timing_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records) {
  std::string out = "trial,group,step,wall_seconds\n";
  for (const auto& r : records) {
    out += std::to_string(r.trial) + ',' + r.group + ',' + std::to_string(r.step) + ',';
    append_real(out, r.wall_seconds);
    out += '\n';
  }
  write_text(path, out);
}

double quantile_nearest_rank(std::vector<double> values, double p) {
  if (values.empty()) throw DomainError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(p * n));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

SummaryStats summarize(const std::vector<double>& values) {
  SummaryStats s;
  s.count = values.size();
  if (values.empty()) {
    s.mean = s.q25 = s.q75 = s.stddev = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double acc = 0.0;
  for (double v : values) acc += v;
  s.mean = acc / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  s.q25 = quantile_nearest_rank(values, 0.25);
  s.q75 = quantile_nearest_rank(values, 0.75);
  return s;
}

std::vector<GroupSummary> summarize_groups(const std::vector<TrialRecord>& records) {
  struct Acc {
    std::string group;
    std::int64_t step;
    std::vector<double> errors, estimates;
    std::size_t with_threshold = 0, exceeded = 0;
  };
  std::vector<Acc> accs;
  for (const auto& r : records) {
    auto it = std::find_if(accs.begin(), accs.end(), [&](const Acc& a) { return a.group == r.group && a.step == r.step; });
    if (it == accs.end()) {
      accs.push_back({r.group, r.step, {}, {}});
      it = accs.end() - 1;
    }
    it->errors.push_back(r.error);
    it->estimates.push_back(r.estimate);
    if (!std::isnan(r.threshold)) {
      ++it->with_threshold;
      if (r.exceeded) ++it->exceeded;
    }
  }
  std::vector<GroupSummary> out;
  for (const auto& a : accs) {
    GroupSummary g;
    g.group = a.group;
    g.step = a.step;
    g.error = summarize(a.errors);
    g.estimate = summarize(a.estimates);
    g.with_threshold = a.with_threshold;
    g.exceed_rate = a.with_threshold == 0 ? std::numeric_limits<double>::quiet_NaN()
                                          : static_cast<double>(a.exceeded) / static_cast<double>(a.with_threshold);
    out.push_back(std::move(g));
  }
  return out;
}

const GroupSummary& find_group(const std::vector<GroupSummary>& groups, const std::string& group, std::int64_t step) {
  for (const auto& g : groups)
    if (g.group == group && g.step == step) return g;
  throw ValidationError("no records for group " + group + " step " + std::to_string(step));
}

namespace {

Json stats_json(const SummaryStats& s) {
  auto real = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  return {{"count", s.count}, {"mean", real(s.mean)}, {"q25", real(s.q25)}, {"q75", real(s.q75)}, {"stddev", real(s.stddev)}};
}

}  // namespace

Json groups_to_json(const std::vector<GroupSummary>& groups) {
  Json arr = Json::array();
  for (const auto& g : groups) {
    Json j = {{"group", g.group}, {"step", g.step}, {"error", stats_json(g.error)}, {"estimate", stats_json(g.estimate)}};
    j["with_threshold"] = g.with_threshold;
    j["exceed_rate"] = std::isnan(g.exceed_rate) ? Json(nullptr) : Json(g.exceed_rate);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::size_t default_threads() {
  if (const char* env = std::getenv("EXCH_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TrialRecord> run_trials(std::size_t trials, std::size_t threads,
                                    const std::function<std::vector<TrialRecord>(std::size_t)>& fn) {
  std::vector<std::vector<TrialRecord>> slots(trials);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= trials || failed.load()) return;
      try {
        slots[t] = fn(t);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(trials, 1));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<TrialRecord> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  return out;
}

std::filesystem::path resolve_output_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("EXCH_OUT_DIR"); env && *env) return env;
  return "exch-out";
}

}  // namespace exch
