#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exch/applications.hpp"
#include "exch/campaigns.hpp"
#include "exch/certify.hpp"
#include "exch/error.hpp"
#include "exch/exchangeable_gen.hpp"
#include "exch/json_io.hpp"
#include "exch/kernels.hpp"
#include "exch/lemmas.hpp"
#include "exch/matrix_bounds.hpp"
#include "exch/simulate.hpp"
#include "exch/tensor_bounds.hpp"

using namespace exch;

namespace {

EpsilonPolicy policy_for(std::optional<std::uint64_t> override_n, std::size_t modes) {
  if (!override_n) return EpsilonPolicy::exact();
  return EpsilonPolicy::override_last(modes, *override_n);
}

std::vector<double> read_reals(const std::string& path) {
  const Json j = read_json_file(path);
  if (!j.is_array()) throw ValidationError(path + ": expected a JSON array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError(path + ": non-numeric entry");
    out.push_back(v.get<double>());
  }
  return out;
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

int finish_run(const CampaignResult& res, const std::string& out_dir) {
  const auto dir = resolve_output_dir(out_dir);
  persist_campaign(res, dir);
  for (const auto& p : res.predicates)
    std::cerr << (p.passed ? "PASS " : "FAIL ") << p.name << " (" << p.detail << ")\n";
  std::cerr << "wrote " << (dir / "records.csv").string() << " and " << (dir / "summary.json").string() << '\n';
  return res.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concentration bounds for exchangeable tensors and matrix sequences"};
  app.require_subcommand(1);
  int exit_code = 0;

  // bounds -----------------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "Compute a tail threshold and print a JSON report");
  bounds->require_subcommand(1);

  struct TensorArgs {
    std::string w, x, kind = "hoeffding";
    double delta = 0.05;
    std::optional<std::uint64_t> eps_n;
  } ta;
  auto* bt = bounds->add_subcommand("tensor", "Tensor inner-product bounds");
  bt->add_option("--w", ta.w, "Weight tensor JSON")->required();
  bt->add_option("--x", ta.x, "Data tensor JSON")->required();
  bt->add_option("--delta", ta.delta)->check(CLI::Range(0.0, 1.0));
  bt->add_option("--kind", ta.kind)->check(CLI::IsMember({"hoeffding", "bernstein", "bernstein-simplified"}));
  bt->add_option("--epsilon-override", ta.eps_n, "Use epsilon of this length for the last mode");
  bt->callback([&] {
    const auto w = tensor_from_json(read_json_file(ta.w));
    const auto x = tensor_from_json(read_json_file(ta.x));
    const auto prof = variance_profile(w, x, policy_for(ta.eps_n, w.order()));
    BoundReport rep;
    if (ta.kind == "hoeffding") rep = hoeffding_tensor(w, prof, ta.delta);
    else if (ta.kind == "bernstein") rep = bernstein_tensor(w, prof, ta.delta);
    else rep = bernstein_tensor_simplified(w, prof, ta.delta);
    auto j = report_to_json(rep);
    j["statistic"] = centered_statistic(w, x);
    print(j);
  });

  struct MatrixArgs {
    std::string w, x, xtilde, v, kind = "generic";
    double delta = 0.05;
    bool strengthened = false;
    std::optional<std::uint64_t> eps_n;
  } ma;
  auto* bm = bounds->add_subcommand("matrix", "Weighted sums of exchangeable matrices");
  bm->add_option("--w", ma.w, "Weight sequence JSON")->required();
  bm->add_option("--x", ma.x, "Data sequence JSON")->required();
  bm->add_option("--xtilde", ma.xtilde, "Commutativity pair: X-tilde sequence");
  bm->add_option("--v", ma.v, "Commutativity pair: V sequence");
  bm->add_option("--delta", ma.delta)->check(CLI::Range(0.0, 1.0));
  bm->add_option("--kind", ma.kind)->check(CLI::IsMember({"generic", "commut", "bernstein"}));
  bm->add_flag("--strengthened", ma.strengthened, "Use max-norm widths");
  bm->add_option("--epsilon-override", ma.eps_n);
  bm->callback([&] {
    const auto w = seq_from_json(read_json_file(ma.w));
    const auto x = seq_from_json(read_json_file(ma.x));
    const auto policy = policy_for(ma.eps_n, 1);
    std::optional<CommutativityPair> pair;
    if (!ma.xtilde.empty() || !ma.v.empty()) {
      if (ma.xtilde.empty() || ma.v.empty()) throw ValidationError("--xtilde and --v must be given together");
      pair = CommutativityPair{seq_from_json(read_json_file(ma.xtilde)), seq_from_json(read_json_file(ma.v))};
      validate_pair(w, x, *pair);
    }
    BoundReport rep;
    if (ma.kind == "generic") {
      rep = hoeffding_matrix_generic(w, x.cols, ma.delta, policy);
    } else {
      if (!pair) throw ValidationError("--kind " + ma.kind + " needs a commutativity pair (--xtilde, --v)");
      if (ma.kind == "commut") {
        rep = hoeffding_matrix_commut(w, *pair, ma.delta, policy);
      } else {
        const auto mode = ma.strengthened ? WidthMode::Strengthened : WidthMode::Standard;
        rep = bernstein_matrix(w, x, variance_profile_matrix(w, x, &*pair, mode, policy), ma.delta);
      }
    }
    auto j = report_to_json(rep);
    j["statistic"] = centered_matrix_statistic(w, x);
    print(j);
  });

  struct CombArgs {
    std::string array;
    double delta = 0.05;
  } ca;
  auto* bc = bounds->add_subcommand("combinatorial", "Combinatorial matrix sums");
  bc->add_option("--array", ca.array, "Matrix array JSON (n*n items)")->required();
  bc->add_option("--delta", ca.delta)->check(CLI::Range(0.0, 1.0));
  bc->callback([&] { print(report_to_json(combinatorial_bernstein(grid_from_json(read_json_file(ca.array)), ca.delta))); });

  struct ScalarArgs {
    std::string w, xi, kind = "hoeffding";
    double delta = 0.05;
    std::optional<std::uint64_t> eps_n;
  } sa;
  auto* bs = bounds->add_subcommand("scalar", "Weighted sums of exchangeable scalars");
  bs->add_option("--w", sa.w, "JSON array of mean-zero weights")->required();
  bs->add_option("--xi", sa.xi, "JSON array of data values");
  bs->add_option("--delta", sa.delta)->check(CLI::Range(0.0, 1.0));
  bs->add_option("--kind", sa.kind)->check(CLI::IsMember({"hoeffding", "bernstein"}));
  bs->add_option("--epsilon-override", sa.eps_n);
  bs->callback([&] {
    const auto w = read_reals(sa.w);
    const auto xi = sa.xi.empty() ? std::vector<double>{} : read_reals(sa.xi);
    const auto kind = sa.kind == "hoeffding" ? BoundKind::Hoeffding : BoundKind::Bernstein;
    print(report_to_json(scalar_weighted_bounds(w, xi, sa.delta, kind, policy_for(sa.eps_n, 1))));
  });

  // gen --------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Emit seeded exchangeable data as JSON");
  gen->require_subcommand(1);
  struct GenArgs {
    std::vector<std::size_t> dims, sizes;
    std::string kind = "sign", input;
    double p = 0.5, rho = 0.99;
    std::uint64_t seed = 0;
    std::size_t q = 16, r = 1, n = 8;
  } ga;
  auto* gt = gen->add_subcommand("tensor", "Random tensor");
  gt->add_option("--dims", ga.dims)->required()->delimiter(',');
  gt->add_option("--kind", ga.kind)->check(CLI::IsMember({"sign", "low-info", "bernoulli"}));
  gt->add_option("--p", ga.p, "Bernoulli probability");
  gt->add_option("--seed", ga.seed);
  gt->callback([&] {
    const Seed seed{ga.seed, 0, purpose_tag("gen/tensor")};
    DenseTensor t;
    if (ga.kind == "sign") t = sign_tensor(ga.dims, seed);
    else if (ga.kind == "low-info") t = low_info_tensor(ga.dims, seed);
    else t = bernoulli_tensor(ga.dims, ga.p, seed);
    print(tensor_to_json(t));
  });
  auto* gp = gen->add_subcommand("permute", "Mode-permute a tensor");
  gp->add_option("--input", ga.input, "Tensor JSON")->required();
  gp->add_option("--seed", ga.seed);
  gp->callback([&] {
    print(tensor_to_json(mode_permute(tensor_from_json(read_json_file(ga.input)), Seed{ga.seed, 0, purpose_tag("gen/permute")})));
  });
  auto* gs = gen->add_subcommand("seq", "Uniformly permute a matrix sequence");
  gs->add_option("--input", ga.input, "Sequence JSON")->required();
  gs->add_option("--seed", ga.seed);
  gs->callback([&] {
    print(seq_to_json(exchangeable_matrix_seq(seq_from_json(read_json_file(ga.input)), Seed{ga.seed, 0, purpose_tag("gen/seq")})));
  });
  auto* gc = gen->add_subcommand("sample", "Indicator tensor of a Cartesian sub-sample");
  gc->add_option("--dims", ga.dims)->required()->delimiter(',');
  gc->add_option("--sizes", ga.sizes)->required()->delimiter(',');
  gc->add_option("--seed", ga.seed);
  gc->callback([&] {
    print(tensor_to_json(indicator_tensor(cartesian_subsample(ga.dims, ga.sizes, Seed{ga.seed, 0, purpose_tag("gen/sample")}))));
  });
  auto* gth = gen->add_subcommand("thetas", "Conditionally Gaussian parameter sequence");
  gth->add_option("--q", ga.q);
  gth->add_option("--r", ga.r);
  gth->add_option("--n", ga.n);
  gth->add_option("--rho", ga.rho);
  gth->add_option("--seed", ga.seed);
  gth->callback([&] {
    print(seq_to_json(conditional_gaussian_thetas(ga.q, ga.r, ga.n, ga.rho, Seed{ga.seed, 0, purpose_tag("gen/thetas")})));
  });

  // simulate ---------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Run one application simulation from a config");
  sim->require_subcommand(1);
  struct SimArgs {
    std::string config, out;
    std::optional<std::uint64_t> seed;
    std::size_t threads = 0;
  } si;
  auto add_sim = [&](const char* name, const char* help, CampaignResult (*fn)(const Json&, const SimulationOptions&)) {
    auto* s = sim->add_subcommand(name, help);
    s->add_option("--config", si.config, "Config JSON")->required();
    s->add_option("--out", si.out, "Output directory (default: $EXCH_OUT_DIR or exch-out)");
    s->add_option("--seed", si.seed, "Override the config seed");
    s->add_option("--threads", si.threads);
    s->callback([&, fn] {
      const auto res = fn(read_json_file(si.config), SimulationOptions{si.seed, si.threads});
      exit_code = finish_run(res, si.out);
    });
  };
  add_sim("avg-effect", "Horvitz-Thompson estimation under sub-sampling", simulate_avg_effect);
  add_sim("sketching", "Sketched averaging of exchangeable parameters", simulate_sketching);
  add_sim("rtfa", "Federated averaging with sketched uploads", simulate_rtfa);

  // verify -----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Exact numerical checks");
  verify->require_subcommand(1);
  struct VerifyArgs {
    std::size_t max_n = 6, instances = 50;
    std::uint64_t seed = 20240601;
  } va;
  auto* vl = verify->add_subcommand("lemmas", "Linear-algebra identity suite");
  vl->add_option("--max-n", va.max_n, "Largest n for the permutation-average check")->check(CLI::Range(2, 9));
  vl->add_option("--seed", va.seed);
  vl->callback([&] {
    LemmaSuiteOptions opt;
    opt.max_n_permutation = va.max_n;
    opt.seed = va.seed;
    for (const auto& c : run_lemma_suite(opt)) {
      std::cout << (c.passed() ? "ok   " : "FAIL ") << c.name << " n=" << c.n << " error=" << c.error
                << " tol=" << c.tol << '\n';
      if (!c.passed()) exit_code = 1;
    }
  });
  auto* vt = verify->add_subcommand("tails", "Exact small-N exceedance of the permutation bounds");
  vt->add_option("--instances", va.instances);
  vt->add_option("--max-n", va.max_n)->check(CLI::Range(2, 8));
  vt->add_option("--seed", va.seed);
  vt->callback([&] {
    CertificationOptions opt;
    opt.instances = va.instances;
    opt.max_n = va.max_n;
    opt.seed = va.seed;
    double worst = 0.0;
    std::size_t failed = 0;
    const auto results = certify_small_n(opt);
    for (const auto& r : results) {
      worst = std::max(worst, r.exceedance - r.delta);
      if (!r.passed()) {
        ++failed;
        std::cout << "FAIL " << r.family << ' ' << r.bound << " instance=" << r.instance << " n=" << r.n
                  << " delta=" << r.delta << " exceedance=" << r.exceedance << '\n';
      }
    }
    std::cout << results.size() << " checks, " << failed << " failures, max(exceedance - delta) = " << worst << '\n';
    if (failed) exit_code = 1;
  });

  // campaign ---------------------------------------------------------------
  auto* camp = app.add_subcommand("campaign", "Seeded experiment campaigns");
  camp->require_subcommand(1);
  struct CampArgs {
    std::string config, out, kind;
    bool full = false;
    std::optional<std::uint64_t> seed;
    std::size_t threads = 0;
  } cp;
  auto* cr = camp->add_subcommand("run", "Run a campaign and persist records and summary");
  auto* cfg_opt = cr->add_option("--config", cp.config, "Campaign JSON");
  cr->add_option("--kind", cp.kind, "Run the built-in desk campaign of this kind")->excludes(cfg_opt);
  cr->add_option("--out", cp.out, "Output directory (default: $EXCH_OUT_DIR or exch-out)");
  cr->add_flag("--full", cp.full, "Full-scale trial counts and sizes");
  cr->add_option("--seed", cp.seed, "Override the campaign seed");
  cr->add_option("--threads", cp.threads);
  cr->callback([&] {
    if (cp.config.empty() && cp.kind.empty()) throw ValidationError("campaign run needs --config or --kind");
    const Campaign c = cp.config.empty() ? default_campaign(parse_campaign_kind(cp.kind))
                                         : campaign_from_json(read_json_file(cp.config));
    exit_code = finish_run(run_campaign(c, CampaignOptions{cp.full, cp.seed, cp.threads}), cp.out);
  });

  auto* info = app.add_subcommand("info", "Print the active SIMD kernel set");
  info->callback([&] { std::cout << "kernels: " << kernels::isa_name(kernels::active_isa()) << '\n'; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
