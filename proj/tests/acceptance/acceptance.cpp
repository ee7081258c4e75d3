// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "exch/campaigns.hpp"
#include "exch/certify.hpp"
#include "exch/exchangeable_gen.hpp"
#include "exch/lemmas.hpp"
#include "exch/linalg.hpp"
#include "exch/matrix_bounds.hpp"
#include "exch/scalars.hpp"
#include "exch/sketching.hpp"
#include "exch/tensor_bounds.hpp"

using namespace exch;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome crit_epsilon() {
  Outcome o{true, ""};
  if (epsilon(1) != 0.0 || epsilon(2) != 1.0) o = {false, "special values wrong; "};
  EpsilonTable t(100000);
  for (std::uint64_t n = 3; n <= 100000; ++n)
    if (!(t[n] < t[n - 1]) || t[n] > 1.0) {
      o.passed = false;
      o.detail += "not decreasing at n=" + std::to_string(n) + "; ";
      break;
    }
  // H_10 = num/den in exact integer arithmetic.
  long long num = 0, den = 1;
  for (long long k = 1; k <= 10; ++k) {
    num = num * k + den;
    den *= k;
    const long long g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  const double exact = static_cast<double>(num - den) / static_cast<double>(10 * den - num);
  const double err = std::fabs(epsilon(10) - exact);
  if (err > 1e-12) o.passed = false;
  o.detail += "eps(10) = " + fmt("%.15f", epsilon(10)) + ", |error| " + fmt("%.1e", err);
  return o;
}

Outcome crit_lemmas() {
  const auto checks = run_lemma_suite();
  Outcome o{true, ""};
  double worst_perm = 0, worst_ab = 0, worst_dil = 0;
  for (const auto& c : checks) {
    if (!c.passed()) {
      o.passed = false;
      o.detail += c.name + " n=" + std::to_string(c.n) + " failed; ";
    }
    if (c.name == "permutation_average") worst_perm = std::max(worst_perm, c.error);
    else if (c.name == "dilation_spectrum") worst_dil = std::max(worst_dil, c.error);
    else if (c.name != "normalized_exp_lower_bound") worst_ab = std::max(worst_ab, c.error);
  }
  o.detail += std::to_string(checks.size()) + " checks; max errors: permutation average " + fmt("%.1e", worst_perm) +
              ", A/B " + fmt("%.1e", worst_ab) + ", dilation " + fmt("%.1e", worst_dil);
  return o;
}

Outcome crit_exhaustive() {
  const auto results = certify_small_n();
  Outcome o{true, ""};
  double worst = -1.0;
  std::size_t fails = 0;
  for (const auto& r : results) {
    worst = std::max(worst, r.exceedance - r.delta);
    if (!r.passed()) ++fails;
  }
  o.passed = fails == 0 && results.size() == 50 * 3 * 5;
  o.detail = std::to_string(results.size()) + " exact checks, " + std::to_string(fails) +
             " above delta, max(exceedance - delta) = " + fmt("%.3f", worst);
  return o;
}

Outcome campaign_outcome(const CampaignResult& r) {
  Outcome o{r.passed(), ""};
  std::size_t fails = 0;
  for (const auto& p : r.predicates)
    if (!p.passed) {
      ++fails;
      o.detail += p.name + " [" + p.detail + "]; ";
    }
  o.detail += std::to_string(r.predicates.size() - fails) + "/" + std::to_string(r.predicates.size()) + " predicates";
  return o;
}

Outcome crit_coverage() {
  const auto r = run_campaign(default_campaign(CampaignKind::TailCoverage));
  auto o = campaign_outcome(r);
  double worst = 0.0;
  for (const auto& g : r.groups) worst = std::max(worst, g.exceed_rate);
  o.detail += ", max exceed rate " + fmt("%.4f", worst);
  return o;
}

Outcome crit_consistency() {
  SplitMix64 rng = Seed{99, 0, purpose_tag("acceptance/consistency")}.stream();
  Outcome o{true, ""};
  double worst_k1 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + rng.uniform_int(30);
    DenseTensor w({n});
    for (auto& v : w.data()) v = rng.normal();
    const double m = w.mean();
    for (auto& v : w.data()) v -= m;
    const double delta = 0.01 + 0.5 * rng.uniform01();
    const double t = hoeffding_tensor(w, weight_profile(w), delta).threshold;
    const double s = scalar_weighted_bounds(w.data(), {}, delta, BoundKind::Hoeffding).threshold;
    worst_k1 = std::max(worst_k1, std::fabs(t - s) / s);
  }
  if (worst_k1 > 1e-12) o.passed = false;

  std::size_t gap_fail = 0;
  double min_ratio = INFINITY, max_ratio = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 5 + rng.uniform_int(40);
    const std::size_t p = 1 + rng.uniform_int(4), r = 1 + rng.uniform_int(4);
    std::vector<Matrix> wk;
    std::vector<double> xi(n);
    for (std::size_t k = 0; k < n; ++k) {
      Matrix m(p, r);
      for (auto& v : m.data()) v = rng.normal();
      wk.push_back(std::move(m));
      xi[k] = 2.0 * rng.uniform01() - 1.0;
    }
    const MatrixSeq w(wk);
    const auto pair = scalar_commutativity_pair(w, xi);
    const double g = hoeffding_matrix_generic(w, r, 0.1).a2;
    const double c = hoeffding_matrix_commut(w, pair, 0.1).a2;
    if (c > g) ++gap_fail;
    min_ratio = std::min(min_ratio, g / c);
    max_ratio = std::max(max_ratio, g / c);
  }
  if (gap_fail) o.passed = false;

  double worst_iid = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 3 + rng.uniform_int(20);
    std::vector<double> w(n), xi(n);
    std::vector<Matrix> wk;
    double mean = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      w[k] = rng.normal();
      mean += w[k] / double(n);
      xi[k] = 2.0 * rng.uniform01() - 1.0;
      Matrix m(2, 3);
      for (auto& v : m.data()) v = rng.normal();
      wk.push_back(std::move(m));
    }
    for (auto& v : w) v -= mean;
    const auto big = EpsilonPolicy::override_last(1, 1000000);
    const auto zero = EpsilonPolicy::independent();
    auto rel = [](double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); };
    for (auto kind : {BoundKind::Hoeffding, BoundKind::Bernstein})
      worst_iid = std::max(worst_iid, rel(scalar_weighted_bounds(w, xi, 0.1, kind, big).threshold,
                                          scalar_weighted_bounds(w, xi, 0.1, kind, zero).threshold));
    const MatrixSeq ws(wk);
    const auto pair = scalar_commutativity_pair(ws, xi);
    const auto xs = scalar_data_seq(xi, 3);
    worst_iid = std::max(worst_iid, rel(hoeffding_matrix_commut(ws, pair, 0.1, big).threshold,
                                        hoeffding_matrix_commut(ws, pair, 0.1, zero).threshold));
    worst_iid = std::max(
        worst_iid, rel(bernstein_matrix(ws, xs, variance_profile_matrix(ws, xs, &pair, WidthMode::Standard, big), 0.1)
                           .threshold,
                       bernstein_matrix(ws, xs, variance_profile_matrix(ws, xs, &pair, WidthMode::Standard, zero), 0.1)
                           .threshold));
    const DenseTensor wt({n}, w);
    const DenseTensor xt({n}, xi);
    worst_iid = std::max(worst_iid, rel(bernstein_tensor(wt, variance_profile(wt, xt, big), 0.1).threshold,
                                        bernstein_tensor(wt, variance_profile(wt, xt, zero), 0.1).threshold));
  }
  if (worst_iid > 1e-3) o.passed = false;
  o.detail = "K=1 vs scalar max rel diff " + fmt("%.1e", worst_k1) + "; commut/generic a2 violations " +
             std::to_string(gap_fail) + ", generic/commut ratio in [" + fmt("%.2f", min_ratio) + ", " +
             fmt("%.2f", max_ratio) + "]; override vs independent max rel diff " + fmt("%.1e", worst_iid);
  return o;
}

Outcome crit_dichotomy() {
  const std::vector<std::size_t> dims{6, 5, 4};
  SplitMix64 base = Seed{5, 0, purpose_tag("acceptance/dichotomy/w")}.stream();
  DenseTensor w(dims);
  for (auto& v : w.data()) v = 2.0 * base.uniform01() - 1.0;
  const int trials = 10000;
  auto variance = [&](auto draw) {
    double s = 0.0, s2 = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double z = inner(w, draw(t));
      s += z;
      s2 += z * z;
    }
    const double m = s / trials;
    return (s2 - trials * m * m) / (trials - 1);
  };
  const double v_sign = variance([&](int t) { return sign_tensor(dims, Seed{5, std::uint64_t(t), purpose_tag("sign")}); });
  const double v_low =
      variance([&](int t) { return low_info_tensor(dims, Seed{5, std::uint64_t(t), purpose_tag("low")}); });
  const double ref_sign = inner(w, w);
  const auto w1 = mode_average_ladder(w).broadcast(1);
  const double ref_low = inner(w1, w1) * 5.0 * 4.0;
  const double e1 = std::fabs(v_sign / ref_sign - 1.0);
  const double e2 = std::fabs(v_low / ref_low - 1.0);
  return {e1 <= 0.05 && e2 <= 0.05, "sign: var " + fmt("%.3f", v_sign) + " vs " + fmt("%.3f", ref_sign) + " (" +
                                        fmt("%.1f", 100 * e1) + "%); low-info: var " + fmt("%.3f", v_low) + " vs " +
                                        fmt("%.3f", ref_low) + " (" + fmt("%.1f", 100 * e2) + "%)"};
}

Outcome crit_figure1() {
  Campaign a = default_campaign(CampaignKind::Figure1);
  a.parameters = Json{{"setting", "A"}, {"n_grid", {200}}};
  Campaign b = default_campaign(CampaignKind::Figure1);
  b.parameters = Json{{"setting", "B"}, {"n_grid", {100}}};
  const auto ra = run_campaign(a);
  const auto rb = run_campaign(b);
  Outcome o{true, ""};
  auto mean = [](const CampaignResult& r, const char* s, int n) { return find_group(r.groups, s, n).error.mean; };
  const char* sch[] = {"i", "ii", "iii", "iv"};
  o.detail = "A:";
  for (int k = 0; k < 4; ++k) o.detail += std::string(" ") + sch[k] + "=" + fmt("%.3g", mean(ra, sch[k], 200));
  for (int k = 0; k < 3; ++k)
    if (!(mean(ra, sch[k], 200) > mean(ra, sch[k + 1], 200))) o.passed = false;
  o.detail += "; B:";
  for (int k = 0; k < 4; ++k) o.detail += std::string(" ") + sch[k] + "=" + fmt("%.3g", mean(rb, sch[k], 100));
  for (const auto& p : rb.predicates)
    if (p.name.find("within noise") != std::string::npos && !p.passed) {
      o.passed = false;
      o.detail += " [" + p.name + ": " + p.detail + "]";
    }
  return o;
}

Outcome crit_figure2() {
  const auto r = run_campaign(default_campaign(CampaignKind::Figure2));
  Outcome o{true, ""};
  for (int qp : {40, 100}) {
    const double a = find_group(r.groups, "fixed_dst", qp).error.mean;
    const double b = find_group(r.groups, "dst_subsample_wo", qp).error.mean;
    const double c = find_group(r.groups, "dst_subsample_wr", qp).error.mean;
    const double d = find_group(r.groups, "gaussian", qp).error.mean;
    if (!(a < c && a < d && a <= b)) o.passed = false;
    o.detail += "q'=" + std::to_string(qp) + ": A=" + fmt("%.4f", a) + " B=" + fmt("%.4f", b) + " C=" + fmt("%.4f", c) +
                " D=" + fmt("%.4f", d) + "; ";
  }
  return o;
}

Outcome crit_figure3() {
  const auto r = run_campaign(default_campaign(CampaignKind::Figure3));
  Outcome o{true, ""};
  std::size_t misordered = 0;
  for (int t = 10; t <= 30; ++t)
    if (!(find_group(r.groups, "fixed_dst", t).error.mean < find_group(r.groups, "gaussian", t).error.mean))
      ++misordered;
  const double e1 = find_group(r.groups, "fixed_dst", 1).error.mean;
  const double e30 = find_group(r.groups, "fixed_dst", 30).error.mean;
  const double g30 = find_group(r.groups, "gaussian", 30).error.mean;
  o.passed = misordered == 0 && e30 * 10.0 <= e1;
  o.detail = "rounds t>=10 with fixed >= gaussian: " + std::to_string(misordered) + "; fixed t=1 " + fmt("%.4f", e1) +
             ", t=30 " + fmt("%.4f", e30) + " (ratio " + fmt("%.2f", e1 / e30) + ", need >= 10); gaussian t=30 " +
             fmt("%.4f", g30);
  return o;
}

Outcome crit_dst() {
  Outcome o{true, ""};
  std::size_t triples = 0;
  double worst = 0.0;
  for (std::size_t q : {4, 5, 8, 10, 12, 16, 20, 24, 32, 48, 64})
    for (std::size_t qp = 1; qp <= q; ++qp)
      for (std::size_t n : {1, 2, 3, 4, 5, 8, 16}) {
        if ((qp * n) % q != 0) continue;
        const auto d = build_sketch_design(q, qp, n, SketchScheme::FixedDst, Seed{});
        Matrix s(q, q);
        for (std::size_t k = 0; k < n; ++k) s += d.gram(k);
        worst = std::max(worst, max_abs_diff(s, Matrix::identity(q)));
        ++triples;
      }
  if (worst > 1e-10 || triples < 30) o.passed = false;
  double worst_pair = 0.0;
  const auto design = build_sketch_design(12, 6, 4, SketchScheme::FixedDst, Seed{});
  const auto w = sketch_weight_seq(design);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto thetas = conditional_gaussian_thetas(12, 2, 4, 0.99, Seed{s, 0, purpose_tag("acceptance/theta")});
    const auto pair = sketch_commutativity_pair(design, thetas);
    worst_pair = std::max(worst_pair, commutativity_residual(w, thetas, pair));
    try {
      validate_pair(w, thetas, pair);
    } catch (const std::exception&) {
      o.passed = false;
    }
  }
  o.detail = std::to_string(triples) + " (q, q', N) triples, max |sum U_k^T U_k - I| " + fmt("%.1e", worst) +
             "; 20 pair draws, max residual " + fmt("%.1e", worst_pair);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "epsilon sequence", 1.0, crit_epsilon},
      {2, "identity suite", 10.0, crit_lemmas},
      {3, "exact small-N tail certification", 30.0, crit_exhaustive},
      {4, "Monte Carlo coverage", 60.0, crit_coverage},
      {5, "cross-bound consistency", 60.0, crit_consistency},
      {6, "variance dichotomy", 60.0, crit_dichotomy},
      {7, "average-effect sampling schemes", 120.0, crit_figure1},
      {8, "sketching schemes", 120.0, crit_figure2},
      {9, "sketched federated averaging", 120.0, crit_figure3},
      {10, "fixed DST exactness and commutativity pair", 60.0, crit_dst},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = o.passed && in_time;
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s | %s | %.2f s (budget %.0f s%s)\n", ok ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
