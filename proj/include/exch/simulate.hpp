#pragma once
// Single-configuration simulations behind `exch-bounds simulate`.

#include <cstdint>
#include <optional>

#include "exch/campaigns.hpp"

namespace exch {

struct SimulationOptions {
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
};

/// {"dims", "sizes" | "rate" (Bernoulli sampling), "weights"?: tensor, "trials", "seed", "delta"}.
/// Records per trial: estimate μ̂, error |μ̂ − μ|, the two-sided threshold (Cartesian samples only).
CampaignResult simulate_avg_effect(const Json& cfg, const SimulationOptions& opt = {});
/// {"q", "r", "n", "rho", "q_prime", "scheme", "trials", "seed", "delta"}; fresh θ's every trial.
CampaignResult simulate_sketching(const Json& cfg, const SimulationOptions& opt = {});
/// RtfaConfig fields plus "trials" and "seed"; one record per round with step = t.
CampaignResult simulate_rtfa(const Json& cfg, const SimulationOptions& opt = {});

}  // namespace exch
