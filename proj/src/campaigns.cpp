#include "exch/campaigns.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

#include "exch/applications.hpp"
#include "exch/error.hpp"
#include "exch/exchangeable_gen.hpp"
#include "exch/lemmas.hpp"
#include "exch/linalg.hpp"
#include "exch/matrix_bounds.hpp"
#include "exch/rtfa.hpp"
#include "exch/sketching.hpp"
#include "exch/tensor_bounds.hpp"

namespace exch {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, CampaignKind>& kind_table() {
  static const std::map<std::string, CampaignKind> t{{"tail_coverage", CampaignKind::TailCoverage},
                                                    {"figure1", CampaignKind::Figure1},
                                                    {"figure2", CampaignKind::Figure2},
                                                    {"figure3", CampaignKind::Figure3},
                                                    {"lemma_suite", CampaignKind::LemmaSuite}};
  return t;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Parameter resolution: known keys only, each type-checked; missing keys take the desk or full default.
class Params {
 public:
  Params(const Json& given, bool full) : given_(given.is_null() ? Json::object() : given), full_(full) {
    if (!given_.is_object()) throw ValidationError("campaign parameters must be an object");
  }

  std::size_t count(const std::string& key, std::size_t desk, std::size_t full) {
    const Json& v = take(key, Json(full_ ? full : desk));
    if (!is_nonnegative_integer(v) || v.get<std::size_t>() == 0)
      throw ValidationError("parameter '" + key + "' must be a positive integer");
    resolved_[key] = v;
    return v.get<std::size_t>();
  }

  std::size_t count_or_zero(const std::string& key, std::size_t def) {
    const Json& v = take(key, Json(def));
    if (!is_nonnegative_integer(v)) throw ValidationError("parameter '" + key + "' must be a non-negative integer");
    resolved_[key] = v;
    return v.get<std::size_t>();
  }

  double real(const std::string& key, double desk, double full) {
    const Json& v = take(key, Json(full_ ? full : desk));
    if (!v.is_number()) throw ValidationError("parameter '" + key + "' must be a number");
    resolved_[key] = v;
    return v.get<double>();
  }

  std::vector<std::size_t> counts(const std::string& key, const std::vector<std::size_t>& desk,
                                  const std::vector<std::size_t>& full) {
    const Json& v = take(key, Json(full_ ? full : desk));
    if (!v.is_array() || v.empty()) throw ValidationError("parameter '" + key + "' must be a non-empty integer list");
    std::vector<std::size_t> out;
    for (const auto& e : v) {
      if (!is_nonnegative_integer(e) || e.get<std::size_t>() == 0)
        throw ValidationError("parameter '" + key + "' must hold positive integers");
      out.push_back(e.get<std::size_t>());
    }
    resolved_[key] = v;
    return out;
  }

  std::string text(const std::string& key, const std::string& def, const std::vector<std::string>& allowed) {
    const Json& v = take(key, Json(def));
    if (!v.is_string()) throw ValidationError("parameter '" + key + "' must be a string");
    const auto s = v.get<std::string>();
    if (std::find(allowed.begin(), allowed.end(), s) == allowed.end())
      throw ValidationError("parameter '" + key + "' has unsupported value '" + s + "'");
    resolved_[key] = v;
    return s;
  }

  bool has(const std::string& key) const { return given_.contains(key); }

  /// Rejects keys that no accessor consumed.
  Json finish() const {
    for (const auto& [k, v] : given_.items())
      if (!resolved_.contains(k)) throw ValidationError("unknown campaign parameter '" + k + "'");
    return resolved_;
  }

 private:
  const Json& take(const std::string& key, Json def) {
    if (given_.contains(key)) return given_.at(key);
    defaults_.push_back(std::move(def));
    return defaults_.back();
  }

  Json given_;
  bool full_;
  Json resolved_ = Json::object();
  std::deque<Json> defaults_;
};

double coverage_limit(double delta, std::size_t m) { return delta + 3.0 * std::sqrt(delta / static_cast<double>(m)); }

Predicate coverage_predicate(const GroupSummary& g, double delta, const std::string& label) {
  const double limit = coverage_limit(delta, g.with_threshold);
  return {"coverage " + label, g.exceed_rate <= limit,
          "exceed rate " + fmt(g.exceed_rate) + " vs limit " + fmt(limit) + " over " + std::to_string(g.with_threshold)};
}

Predicate less_predicate(const std::string& name, double lhs, double rhs, bool strict) {
  const bool ok = strict ? lhs < rhs : lhs <= rhs;
  return {name, ok, fmt(lhs) + (strict ? " < " : " <= ") + fmt(rhs)};
}

template <typename Fn>
std::function<std::vector<TrialRecord>(std::size_t)> timed(Fn fn) {
  return [fn](std::size_t t) {
    const auto start = std::chrono::steady_clock::now();
    auto recs = fn(t);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : recs) r.wall_seconds = secs;
    return recs;
  };
}

DenseTensor uniform_tensor(const std::vector<std::size_t>& dims, SplitMix64& rng) {
  DenseTensor t(dims);
  for (auto& v : t.data()) v = 2.0 * rng.uniform01() - 1.0;
  return t;
}

Matrix normal_matrix(std::size_t p, std::size_t q, SplitMix64& rng) {
  Matrix m(p, q);
  for (auto& v : m.data()) v = rng.normal();
  return m;
}

// ---------------------------------------------------------------- tail coverage

void run_tail_coverage(CampaignResult& res, Params& params, std::size_t threads) {
  const auto& c = res.campaign;
  const auto dims = params.counts("tensor_dims", {4, 5, 6}, {4, 5, 6});
  const std::size_t n = params.count("matrix_n", 20, 20);
  const std::size_t d = params.count("matrix_dim", 4, 4);
  res.parameters = params.finish();
  if (c.delta_grid.empty()) throw ValidationError("tail_coverage needs a non-empty delta_grid");

  SplitMix64 base = Seed{c.seed, 0, purpose_tag("tail_coverage/base")}.stream();
  const DenseTensor tw = uniform_tensor(dims, base);
  const DenseTensor tx = uniform_tensor(dims, base);
  const auto tprof = variance_profile(tw, tx);

  std::vector<Matrix> wk, xk;
  std::vector<double> xi(n);
  for (std::size_t k = 0; k < n; ++k) wk.push_back(normal_matrix(d, d, base));
  for (std::size_t k = 0; k < n; ++k) {
    Matrix x = normal_matrix(d, d, base);
    x *= base.uniform01() / op_norm(x);
    xk.push_back(std::move(x));
  }
  for (auto& v : xi) v = 2.0 * base.uniform01() - 1.0;
  const MatrixSeq w(wk);
  const MatrixSeq xg(xk);
  const MatrixSeq xs = scalar_data_seq(xi, d);
  const auto pair = scalar_commutativity_pair(w, xi);
  const auto mprof = variance_profile_matrix(w, xs, &pair);

  struct Check {
    std::string group;
    std::vector<double> thresholds;
  };
  std::vector<Check> checks{{"tensor_hoeffding", {}}, {"tensor_bernstein", {}}, {"matrix_generic", {}},
                            {"matrix_commut", {}}, {"matrix_bernstein", {}}};
  for (double delta : c.delta_grid) {
    checks[0].thresholds.push_back(hoeffding_tensor(tw, tprof, delta).threshold);
    checks[1].thresholds.push_back(bernstein_tensor(tw, tprof, delta).threshold);
    checks[2].thresholds.push_back(hoeffding_matrix_generic(w, d, delta).threshold);
    checks[3].thresholds.push_back(hoeffding_matrix_commut(w, pair, delta).threshold);
    checks[4].thresholds.push_back(bernstein_matrix(w, xs, mprof, delta).threshold);
  }

  const std::uint64_t tag = purpose_tag("tail_coverage/trial");
  res.records = run_trials(c.trials, threads, timed([&](std::size_t t) {
    SplitMix64 rng = Seed{c.seed, t, tag}.stream();
    const double zt = centered_statistic(tw, mode_permute(tx, rng));
    const auto perm = random_permutation(n, rng);
    const double zg = centered_matrix_statistic(w, xg.permuted(perm));
    const double zs = centered_matrix_statistic(w, xs.permuted(perm));
    const double stats[] = {zt, zt, zg, zs, zs};
    std::vector<TrialRecord> out;
    for (std::size_t ci = 0; ci < checks.size(); ++ci)
      for (std::size_t di = 0; di < c.delta_grid.size(); ++di)
        out.push_back(make_record(t, checks[ci].group, static_cast<std::int64_t>(di), stats[ci], stats[ci],
                                  checks[ci].thresholds[di]));
    return out;
  }));
  res.groups = summarize_groups(res.records);
  for (const auto& ch : checks)
    for (std::size_t di = 0; di < c.delta_grid.size(); ++di)
      res.predicates.push_back(coverage_predicate(find_group(res.groups, ch.group, static_cast<std::int64_t>(di)),
                                                  c.delta_grid[di], ch.group + " delta=" + fmt(c.delta_grid[di])));
}

// ---------------------------------------------------------------- figure 1

void run_figure1(CampaignResult& res, Params& params, std::size_t threads) {
  const auto& c = res.campaign;
  const std::string setting = params.text("setting", "A", {"A", "B"});
  std::vector<std::size_t> full_grid;
  for (std::size_t v = 10; v <= 500; v += 10) full_grid.push_back(v);
  const auto grid = params.counts("n_grid", {setting == "A" ? std::size_t{200} : std::size_t{100}}, full_grid);
  const double rate = params.real("rate", 0.4, 0.4);
  res.parameters = params.finish();
  if (!(rate > 0.0 && rate < 1.0)) throw ValidationError("figure1 rate must lie in (0, 1)");
  const double delta = c.delta_grid.empty() ? 0.1 : c.delta_grid.front();

  static const char* kSchemes[] = {"i", "ii", "iii", "iv"};
  struct Setup {
    std::vector<std::size_t> dims;
    MultiFactorModel model;
    std::vector<std::vector<std::size_t>> sizes;
    std::vector<double> thresholds;
  };
  std::vector<Setup> setups;
  for (std::size_t nn : grid) {
    Setup s;
    if (setting == "A") {
      s.dims = {5, 10, nn};
    } else {
      if (nn % 10 != 0) throw ValidationError("figure1 setting B needs N divisible by 10");
      s.dims = {nn / 10, nn / 5, nn / 2};
    }
    s.model = make_model(polynomial_weight_tensor(s.dims));
    for (std::size_t k = 0; k < 3; ++k) {
      auto sizes = s.dims;
      sizes[k] = static_cast<std::size_t>(std::llround(rate * static_cast<double>(s.dims[k])));
      if (sizes[k] < 1 || sizes[k] >= s.dims[k]) throw ValidationError("figure1: rate gives an empty or full sub-sample");
      // Two-sided: each tail at δ/2.
      s.thresholds.push_back(avg_effect_bound(s.model, sizes, delta / 2.0).threshold);
      s.sizes.push_back(std::move(sizes));
    }
    setups.push_back(std::move(s));
  }

  res.records = run_trials(c.trials, threads, timed([&](std::size_t t) {
    std::vector<TrialRecord> out;
    for (const auto& s : setups) {
      const auto step = static_cast<std::int64_t>(s.dims[2] * (setting == "A" ? 1 : 2));
      for (std::size_t k = 0; k < 4; ++k) {
        const Seed seed{c.seed, t, purpose_tag("figure1/" + std::to_string(step) + "/" + kSchemes[k])};
        double est;
        double thr = kNaN;
        if (k < 3) {
          est = ht_estimate(s.model, cartesian_subsample(s.dims, s.sizes[k], seed));
          thr = s.thresholds[k];
        } else {
          est = ht_estimate_bernoulli(s.model, bernoulli_tensor(s.dims, rate, seed), rate);
        }
        out.push_back(make_record(t, kSchemes[k], step, est, std::fabs(est - s.model.mu), thr));
      }
    }
    return out;
  }));
  res.groups = summarize_groups(res.records);

  for (std::size_t nn : grid) {
    const auto step = static_cast<std::int64_t>(nn);
    const GroupSummary* g[4];
    for (std::size_t k = 0; k < 4; ++k) g[k] = &find_group(res.groups, kSchemes[k], step);
    const std::string at = " N=" + std::to_string(nn);
    if (setting == "A") {
      for (std::size_t k = 0; k < 3; ++k)
        res.predicates.push_back(less_predicate(std::string("err(") + kSchemes[k + 1] + ") < err(" + kSchemes[k] + ")" + at,
                                                g[k + 1]->error.mean, g[k]->error.mean, true));
    } else {
      for (std::size_t k = 0; k < 2; ++k) {
        // Ordering up to two standard errors of the difference of means.
        const double m = static_cast<double>(g[k]->error.count);
        const double se = std::sqrt((g[k]->error.stddev * g[k]->error.stddev +
                                     g[k + 1]->error.stddev * g[k + 1]->error.stddev) / m);
        res.predicates.push_back(less_predicate(std::string("err(") + kSchemes[k + 1] + ") <= err(" + kSchemes[k] +
                                                    ") within noise" + at,
                                                g[k + 1]->error.mean, g[k]->error.mean + 2.0 * se, false));
      }
      res.predicates.push_back(less_predicate("err(iv) < err(iii)" + at, g[3]->error.mean, g[2]->error.mean, true));
    }
    for (std::size_t k = 0; k < 3; ++k)
      res.predicates.push_back(coverage_predicate(*g[k], delta, std::string("scheme ") + kSchemes[k] + at));
  }
}

// ---------------------------------------------------------------- figure 2

void run_figure2(CampaignResult& res, Params& params, std::size_t threads) {
  const auto& c = res.campaign;
  const std::size_t q = params.count("q", 200, 1000);
  const std::size_t r = params.count("r", 1, 1);
  const std::size_t n = params.count("n", 50, 50);
  const double rho = params.real("rho", 0.99, 0.99);
  const auto qps = params.counts("q_primes", {40, 100}, {200, 500, 800, 1000});
  res.parameters = params.finish();
  const double delta = c.delta_grid.empty() ? 0.1 : c.delta_grid.front();
  for (std::size_t qp : qps)
    if (qp > q || (qp * n) % q != 0) throw ValidationError("figure2: each q' needs q' <= q and q'N divisible by q");

  const SketchScheme schemes[] = {SketchScheme::FixedDst, SketchScheme::DstSubsampleWo, SketchScheme::DstSubsampleWr,
                                  SketchScheme::Gaussian};
  std::vector<SketchDesign> fixed;
  for (std::size_t qp : qps) fixed.push_back(build_sketch_design(q, qp, n, SketchScheme::FixedDst, Seed{c.seed, 0, 0}));

  res.records = run_trials(c.trials, threads, timed([&](std::size_t t) {
    const auto thetas = conditional_gaussian_thetas(q, r, n, rho, Seed{c.seed, t, purpose_tag("figure2/theta")});
    const Matrix theta_bar = thetas.mean();
    std::vector<TrialRecord> out;
    for (std::size_t qi = 0; qi < qps.size(); ++qi) {
      for (SketchScheme s : schemes) {
        const std::string name(sketch_scheme_name(s));
        double thr = kNaN;
        double err;
        if (s == SketchScheme::FixedDst) {
          err = op_norm(sketch_aggregate(fixed[qi], thetas) - theta_bar);
          thr = sketching_bound(fixed[qi], thetas, delta).threshold;
        } else {
          const Seed seed{c.seed, t, purpose_tag("figure2/design/" + std::to_string(qps[qi]) + "/" + name)};
          err = op_norm(sketch_aggregate(build_sketch_design(q, qps[qi], n, s, seed), thetas) - theta_bar);
        }
        out.push_back(make_record(t, name, static_cast<std::int64_t>(qps[qi]), err, err, thr));
      }
    }
    return out;
  }));
  res.groups = summarize_groups(res.records);
  for (std::size_t qp : qps) {
    const auto step = static_cast<std::int64_t>(qp);
    const auto& a = find_group(res.groups, "fixed_dst", step);
    const auto& b = find_group(res.groups, "dst_subsample_wo", step);
    const auto& cc = find_group(res.groups, "dst_subsample_wr", step);
    const auto& dd = find_group(res.groups, "gaussian", step);
    const std::string at = " q'=" + std::to_string(qp);
    res.predicates.push_back(less_predicate("mean(A) < mean(C)" + at, a.error.mean, cc.error.mean, true));
    res.predicates.push_back(less_predicate("mean(A) < mean(D)" + at, a.error.mean, dd.error.mean, true));
    res.predicates.push_back(less_predicate("mean(A) <= mean(B)" + at, a.error.mean, b.error.mean, false));
    res.predicates.push_back(coverage_predicate(a, delta, "fixed_dst" + at));
  }
}

// ---------------------------------------------------------------- figure 3

void run_figure3(CampaignResult& res, Params& params, std::size_t threads) {
  const auto& c = res.campaign;
  RtfaConfig cfg;
  cfg.q = params.count("q", 200, 1000);
  cfg.r = params.count("r", 1, 1);
  cfg.n = params.count("n_samples", 80, 200);
  cfg.agents = params.count("agents", 20, 50);
  cfg.q_prime = params.count("q_prime", 100, 500);
  cfg.noise_var = params.real("noise_var", 0.2, 0.2);
  cfg.lambda = params.real("lambda", 0.5, 0.5);
  cfg.rounds = params.count("rounds", 30, 30);
  cfg.local_steps = params.count_or_zero("local_steps", 0);
  cfg.step_size = params.real("step_size", 0.1, 0.1);
  res.parameters = params.finish();

  const SketchScheme schemes[] = {SketchScheme::FixedDst, SketchScheme::Gaussian};
  res.records = run_trials(c.trials, threads, timed([&](std::size_t t) {
    SplitMix64 drng = Seed{c.seed, t, purpose_tag("figure3/data")}.stream();
    const RtfaData data = make_rtfa_data(cfg, drng);
    std::vector<TrialRecord> out;
    for (SketchScheme s : schemes) {
      RtfaConfig sc = cfg;
      sc.scheme = s;
      const std::string name(sketch_scheme_name(s));
      SplitMix64 rng = Seed{c.seed, t, purpose_tag("figure3/run/" + name)}.stream();
      const auto run = rtfa_run(sc, data, rng);
      for (std::size_t i = 0; i < run.errors.size(); ++i)
        out.push_back(make_record(t, name, static_cast<std::int64_t>(i + 1), run.errors[i], run.errors[i], kNaN));
    }
    return out;
  }));
  res.groups = summarize_groups(res.records);

  const auto T = static_cast<std::int64_t>(cfg.rounds);
  const std::int64_t from = std::min<std::int64_t>(10, T);
  Predicate below{"fixed_dst below gaussian for t >= " + std::to_string(from), true, ""};
  for (std::int64_t t = from; t <= T; ++t) {
    const double f = find_group(res.groups, "fixed_dst", t).error.mean;
    const double g = find_group(res.groups, "gaussian", t).error.mean;
    if (!(f < g)) {
      below.passed = false;
      below.detail += "t=" + std::to_string(t) + ": " + fmt(f) + " >= " + fmt(g) + "; ";
    }
  }
  if (below.passed) below.detail = "all rounds ordered";
  res.predicates.push_back(below);
  const double e1 = find_group(res.groups, "fixed_dst", 1).error.mean;
  const double eT = find_group(res.groups, "fixed_dst", T).error.mean;
  res.predicates.push_back(less_predicate("fixed_dst error at t=" + std::to_string(T) + " <= error at t=1 / 10", eT,
                                          e1 / 10.0, false));
}

// ---------------------------------------------------------------- lemma suite

void run_lemmas(CampaignResult& res, Params& params) {
  LemmaSuiteOptions opt;
  opt.max_n_permutation = params.count("max_n", 6, 6);
  opt.instances_per_n = params.count("instances_per_n", 20, 20);
  opt.max_n_ab = params.count("max_n_ab", 64, 64);
  opt.dilation_instances = params.count("dilation_instances", 50, 50);
  opt.seed = res.campaign.seed;
  res.parameters = params.finish();
  const auto start = std::chrono::steady_clock::now();
  const auto checks = run_lemma_suite(opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Predicate all{"all identity checks within tolerance", true, ""};
  for (const auto& ch : checks) {
    auto rec = make_record(0, ch.name, static_cast<std::int64_t>(ch.n), ch.error, ch.error, ch.tol);
    rec.wall_seconds = secs;
    res.records.push_back(rec);
    if (!ch.passed()) {
      all.passed = false;
      all.detail += ch.name + " n=" + std::to_string(ch.n) + " error " + fmt(ch.error) + "; ";
    }
  }
  if (all.passed) all.detail = std::to_string(checks.size()) + " checks";
  res.groups = summarize_groups(res.records);
  res.predicates.push_back(all);
}

std::size_t full_trials(CampaignKind k) {
  switch (k) {
    case CampaignKind::TailCoverage: return 10000;
    case CampaignKind::Figure1: return 1000;
    case CampaignKind::Figure2: return 100;
    case CampaignKind::Figure3: return 100;
    case CampaignKind::LemmaSuite: return 1;
  }
  return 1;
}

}  // namespace

CampaignKind parse_campaign_kind(const std::string& s) {
  const auto it = kind_table().find(s);
  if (it == kind_table().end()) throw ValidationError("unknown campaign kind '" + s + "'");
  return it->second;
}

std::string campaign_kind_name(CampaignKind k) {
  for (const auto& [name, kind] : kind_table())
    if (kind == k) return name;
  return "unknown";
}

Campaign campaign_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("campaign must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "name" && k != "kind" && k != "trials" && k != "seed" && k != "delta_grid" && k != "parameters")
      throw ValidationError("unknown campaign field '" + k + "'");
  Campaign c;
  if (!j.contains("kind") || !j.at("kind").is_string()) throw ValidationError("campaign needs a string 'kind'");
  c.kind = parse_campaign_kind(j.at("kind").get<std::string>());
  c.name = j.value("name", campaign_kind_name(c.kind));
  if (!j.contains("trials") || !is_nonnegative_integer(j.at("trials")) || j.at("trials").get<std::size_t>() == 0)
    throw ValidationError("campaign 'trials' must be a positive integer");
  c.trials = j.at("trials").get<std::size_t>();
  if (j.contains("seed")) {
    if (!is_nonnegative_integer(j.at("seed"))) throw ValidationError("campaign 'seed' must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("delta_grid")) {
    const auto& g = j.at("delta_grid");
    if (!g.is_array()) throw ValidationError("'delta_grid' must be an array");
    for (const auto& d : g) {
      if (!d.is_number()) throw ValidationError("'delta_grid' entries must be numbers");
      c.delta_grid.push_back(d.get<double>());
    }
  }
  for (double d : c.delta_grid)
    if (!(d > 0.0 && d < 1.0)) throw ValidationError("every delta must lie in (0, 1)");
  if (j.contains("parameters")) {
    if (!j.at("parameters").is_object()) throw ValidationError("'parameters' must be an object");
    c.parameters = j.at("parameters");
  }
  return c;
}

Json campaign_to_json(const Campaign& c) {
  return {{"name", c.name}, {"kind", campaign_kind_name(c.kind)}, {"trials", c.trials},
          {"seed", c.seed}, {"delta_grid", c.delta_grid},          {"parameters", c.parameters}};
}

Campaign default_campaign(CampaignKind kind) {
  Campaign c;
  c.kind = kind;
  c.name = campaign_kind_name(kind);
  c.seed = 20240601;
  switch (kind) {
    case CampaignKind::TailCoverage:
      c.trials = 10000;
      c.delta_grid = {0.05, 0.1};
      break;
    case CampaignKind::Figure1: c.trials = 200; c.delta_grid = {0.1}; break;
    case CampaignKind::Figure2: c.trials = 100; c.delta_grid = {0.1}; break;
    case CampaignKind::Figure3: c.trials = 20; break;
    case CampaignKind::LemmaSuite: c.trials = 1; break;
  }
  return c;
}

bool CampaignResult::passed() const {
  for (const auto& p : predicates)
    if (!p.passed) return false;
  return true;
}

Json CampaignResult::summary() const {
  Json j = campaign_to_json(campaign);
  j["parameters"] = parameters;
  j["groups"] = groups_to_json(groups);
  Json preds = Json::array();
  for (const auto& p : predicates) preds.push_back({{"name", p.name}, {"passed", p.passed}, {"detail", p.detail}});
  j["predicates"] = preds;
  j["passed"] = passed();
  return j;
}

CampaignResult run_campaign(const Campaign& c, const CampaignOptions& opt) {
  CampaignResult res;
  res.campaign = c;
  if (opt.seed) res.campaign.seed = *opt.seed;
  if (opt.full) res.campaign.trials = full_trials(c.kind);
  if (res.campaign.trials == 0) throw ValidationError("campaign 'trials' must be a positive integer");
  for (double d : res.campaign.delta_grid)
    if (!(d > 0.0 && d < 1.0)) throw ValidationError("every delta must lie in (0, 1)");
  const std::size_t threads = opt.threads == 0 ? default_threads() : opt.threads;
  Params params(c.parameters, opt.full);
  switch (c.kind) {
    case CampaignKind::TailCoverage: run_tail_coverage(res, params, threads); break;
    case CampaignKind::Figure1: run_figure1(res, params, threads); break;
    case CampaignKind::Figure2: run_figure2(res, params, threads); break;
    case CampaignKind::Figure3: run_figure3(res, params, threads); break;
    case CampaignKind::LemmaSuite: run_lemmas(res, params); break;
  }
  return res;
}

void persist_campaign(const CampaignResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create " + dir.string() + ": " + ec.message());
  write_records_csv(dir / "records.csv", r.records);
  write_json_file(dir / "summary.json", r.summary());
  write_timing_csv(dir / "timing.csv", r.records);
}

}  // namespace exch
