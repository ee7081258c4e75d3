#include "exch/simulate.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "exch/applications.hpp"
#include "exch/error.hpp"
#include "exch/exchangeable_gen.hpp"
#include "exch/linalg.hpp"
#include "exch/rtfa.hpp"
#include "exch/sketching.hpp"

namespace exch {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_keys(const Json& cfg, const std::set<std::string>& allowed) {
  if (!cfg.is_object()) throw ValidationError("simulation config must be a JSON object");
  for (const auto& [k, v] : cfg.items())
    if (!allowed.contains(k)) throw ValidationError("unknown config field '" + k + "'");
}

std::size_t get_count(const Json& cfg, const char* key, std::size_t def, bool allow_zero = false) {
  if (!cfg.contains(key)) return def;
  const auto& v = cfg.at(key);
  if (!is_nonnegative_integer(v) || (!allow_zero && v.get<std::size_t>() == 0))
    throw ValidationError(std::string("config field '") + key + "' must be a positive integer");
  return v.get<std::size_t>();
}

double get_real(const Json& cfg, const char* key, double def) {
  if (!cfg.contains(key)) return def;
  if (!cfg.at(key).is_number()) throw ValidationError(std::string("config field '") + key + "' must be a number");
  return cfg.at(key).get<double>();
}

std::vector<std::size_t> get_counts(const Json& cfg, const char* key) {
  if (!cfg.contains(key) || !cfg.at(key).is_array())
    throw ValidationError(std::string("config field '") + key + "' must be an integer list");
  std::vector<std::size_t> out;
  for (const auto& v : cfg.at(key)) {
    if (!is_nonnegative_integer(v) || v.get<std::size_t>() == 0)
      throw ValidationError(std::string("config field '") + key + "' must hold positive integers");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

CampaignResult start(const std::string& name, const Json& cfg, const SimulationOptions& opt) {
  CampaignResult res;
  res.campaign.name = name;
  res.campaign.trials = get_count(cfg, "trials", 100);
  if (cfg.contains("seed") && !is_nonnegative_integer(cfg.at("seed")))
    throw ValidationError("config field 'seed' must be a non-negative integer");
  res.campaign.seed = opt.seed ? *opt.seed : (cfg.contains("seed") ? cfg.at("seed").get<std::uint64_t>() : 0);
  const double delta = get_real(cfg, "delta", 0.1);
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
  res.campaign.delta_grid = {delta};
  res.parameters = cfg;
  res.parameters["seed"] = res.campaign.seed;
  res.parameters["trials"] = res.campaign.trials;
  return res;
}

std::size_t threads_of(const SimulationOptions& opt) { return opt.threads == 0 ? default_threads() : opt.threads; }

void add_coverage(CampaignResult& res) {
  const double delta = res.campaign.delta_grid.front();
  for (const auto& g : res.groups) {
    if (g.with_threshold == 0) continue;
    const double limit = delta + 3.0 * std::sqrt(delta / static_cast<double>(g.with_threshold));
    res.predicates.push_back({"coverage " + g.group, g.exceed_rate <= limit,
                              "exceed rate " + std::to_string(g.exceed_rate) + " vs limit " + std::to_string(limit)});
  }
}

}  // namespace

CampaignResult simulate_avg_effect(const Json& cfg, const SimulationOptions& opt) {
  check_keys(cfg, {"dims", "sizes", "rate", "weights", "trials", "seed", "delta"});
  auto res = start("avg_effect", cfg, opt);
  const auto dims = get_counts(cfg, "dims");
  const bool bernoulli = !cfg.contains("sizes");
  std::vector<std::size_t> sizes;
  double rate = 0.0;
  if (bernoulli) {
    rate = get_real(cfg, "rate", kNaN);
    if (!(rate > 0.0 && rate <= 1.0)) throw ValidationError("Bernoulli sampling needs 'rate' in (0, 1]");
  } else {
    sizes = get_counts(cfg, "sizes");
    if (sizes.size() != dims.size()) throw ValidationError("'sizes' needs one entry per mode");
  }
  DenseTensor w = cfg.contains("weights") ? tensor_from_json(cfg.at("weights")) : polynomial_weight_tensor(dims);
  if (w.dims() != dims) throw ValidationError("'weights' dims differ from 'dims'");
  const auto model = make_model(w);
  const Campaign& c = res.campaign;
  const double thr = bernoulli ? kNaN : avg_effect_bound(model, sizes, c.delta_grid.front() / 2.0).threshold;
  const std::string group = bernoulli ? "bernoulli" : "cartesian";
  const std::uint64_t tag = purpose_tag("simulate/avg_effect");
  res.records = run_trials(c.trials, threads_of(opt), [&](std::size_t t) {
    const Seed seed{c.seed, t, tag};
    const double est = bernoulli ? ht_estimate_bernoulli(model, bernoulli_tensor(dims, rate, seed), rate)
                                 : ht_estimate(model, cartesian_subsample(dims, sizes, seed));
    return std::vector<TrialRecord>{make_record(t, group, 0, est, std::fabs(est - model.mu), thr)};
  });
  res.groups = summarize_groups(res.records);
  add_coverage(res);
  return res;
}

CampaignResult simulate_sketching(const Json& cfg, const SimulationOptions& opt) {
  check_keys(cfg, {"q", "r", "n", "rho", "q_prime", "scheme", "trials", "seed", "delta"});
  auto res = start("sketching", cfg, opt);
  const std::size_t q = get_count(cfg, "q", 200);
  const std::size_t r = get_count(cfg, "r", 1);
  const std::size_t n = get_count(cfg, "n", 50);
  const std::size_t qp = get_count(cfg, "q_prime", 100);
  const double rho = get_real(cfg, "rho", 0.99);
  const SketchScheme scheme = parse_sketch_scheme(cfg.value("scheme", std::string("fixed_dst")));
  const std::string name(sketch_scheme_name(scheme));
  const Campaign& c = res.campaign;
  const double delta = c.delta_grid.front();
  const bool fixed = scheme == SketchScheme::FixedDst;
  SketchDesign fixed_design;
  if (fixed) fixed_design = build_sketch_design(q, qp, n, scheme, Seed{c.seed, 0, 0});
  res.records = run_trials(c.trials, threads_of(opt), [&](std::size_t t) {
    const auto thetas = conditional_gaussian_thetas(q, r, n, rho, Seed{c.seed, t, purpose_tag("simulate/theta")});
    const SketchDesign design =
        fixed ? fixed_design : build_sketch_design(q, qp, n, scheme, Seed{c.seed, t, purpose_tag("simulate/design")});
    const double err = op_norm(sketch_aggregate(design, thetas) - thetas.mean());
    const double thr = fixed ? sketching_bound(design, thetas, delta).threshold : kNaN;
    return std::vector<TrialRecord>{make_record(t, name, static_cast<std::int64_t>(qp), err, err, thr)};
  });
  res.groups = summarize_groups(res.records);
  add_coverage(res);
  return res;
}

CampaignResult simulate_rtfa(const Json& cfg, const SimulationOptions& opt) {
  check_keys(cfg, {"q", "r", "n_samples", "agents", "q_prime", "noise_var", "lambda", "rounds", "local_steps",
                   "step_size", "scheme", "trials", "seed"});
  auto res = start("rtfa", cfg, opt);
  RtfaConfig rc;
  rc.q = get_count(cfg, "q", rc.q);
  rc.r = get_count(cfg, "r", rc.r);
  rc.n = get_count(cfg, "n_samples", rc.n);
  rc.agents = get_count(cfg, "agents", rc.agents);
  rc.q_prime = get_count(cfg, "q_prime", rc.q_prime);
  rc.noise_var = get_real(cfg, "noise_var", rc.noise_var);
  rc.lambda = get_real(cfg, "lambda", rc.lambda);
  rc.rounds = get_count(cfg, "rounds", rc.rounds);
  rc.local_steps = get_count(cfg, "local_steps", 0, true);
  rc.step_size = get_real(cfg, "step_size", rc.step_size);
  rc.scheme = parse_sketch_scheme(cfg.value("scheme", std::string("fixed_dst")));
  const std::string name(sketch_scheme_name(rc.scheme));
  const Campaign& c = res.campaign;
  res.records = run_trials(c.trials, threads_of(opt), [&](std::size_t t) {
    SplitMix64 drng = Seed{c.seed, t, purpose_tag("simulate/rtfa/data")}.stream();
    const auto data = make_rtfa_data(rc, drng);
    SplitMix64 rng = Seed{c.seed, t, purpose_tag("simulate/rtfa/run")}.stream();
    const auto run = rtfa_run(rc, data, rng);
    std::vector<TrialRecord> out;
    for (std::size_t i = 0; i < run.errors.size(); ++i)
      out.push_back(make_record(t, name, static_cast<std::int64_t>(i + 1), run.errors[i], run.errors[i], kNaN));
    return out;
  });
  res.groups = summarize_groups(res.records);
  return res;
}

}  // namespace exch
