#pragma once

#include <optional>
#include <vector>

#include "regen/reliability.hpp"
#include "regen/tradeoff.hpp"

namespace regen {

// Resource caps for the repair optimizations. alpha_th is absent for the
// helper-count problem, present for the storage-allocation problem.
struct Budget {
    Rational gamma_th;
    std::optional<Rational> alpha_th;

    explicit Budget(Rational gamma, std::optional<Rational> alpha = std::nullopt)
        : gamma_th(std::move(gamma)), alpha_th(std::move(alpha)) {
        if (!(gamma_th > Rational(0))) throw std::invalid_argument("Budget: gamma_th must be positive");
        if (alpha_th && !(*alpha_th > Rational(0)))
            throw std::invalid_argument("Budget: alpha_th must be positive");
    }
};

struct HelperOptResult {
    bool feasible = false;
    std::optional<HelperScheme> best;
    Family family = Family::Interior;
    double p_star = 0.0;
    long feasible_count = 0;
    std::vector<HelperScheme> ties;  // co-optimal candidates, enumeration order
};

struct TwoLayerOptResult {
    bool feasible = false;
    std::optional<TwoLayerAllocation> best;
    Family anchor_family = Family::Interior;
    double p_star = 0.0;
    long feasible_count = 0;
    std::vector<TwoLayerAllocation> ties;
};

// max p_success_helpers over integer pairs k <= d <= n-1, d <= d' <= n-1 with
// beta fixed to the family's point at d and d'*beta <= gamma_th. Ties go to
// the smaller d', then the smaller d. p.d is ignored; d is a search variable.
HelperOptResult optimize_helpers(const SystemParams& p, Family family, const Budget& b,
                                 const ChannelModel& ch);

// Which (alpha1, beta1) base points optimize_twolayer may anchor on.
enum class AnchorFilter { All, MsrOnly, MbrOnly };

// max p_success_twolayer subject to alpha1+alpha2 <= alpha_th and
// d(beta1+beta2) <= gamma_th, beta2 <= alpha2. The base (alpha1, beta1) runs
// over the lossless tradeoff breakpoints (MSR through MBR); beta2 runs over a
// rational grid of the residual budget that always includes every value where
// the regeneration indicator flips, so the discrete search attains the true
// optimum. alpha2 is set to beta2, the minimum the constraint allows, which
// the storage tie-break would pick anyway. Ties go to smaller storage, then
// smaller bandwidth.
TwoLayerOptResult optimize_twolayer(const SystemParams& p, const Budget& b, const ChannelModel& ch,
                                    int grid_steps = 64, AnchorFilter filter = AnchorFilter::All);

enum class RegionTag { Msr, Mbr, Tie, Infeasible };

const char* region_tag_name(RegionTag t);

// For every (gamma_th, alpha_th) cell, compare the best MSR-anchored against
// the best MBR-anchored two-layer allocation. Result indexed [gamma][alpha].
std::vector<std::vector<RegionTag>> region_map(const SystemParams& p, const ChannelModel& ch,
                                               const std::vector<Rational>& gamma_grid,
                                               const std::vector<Rational>& alpha_grid,
                                               int grid_steps = 64);

}  // namespace regen
