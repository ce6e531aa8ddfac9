#include "regen/optimize.hpp"

#include <set>

namespace regen {

const char* region_tag_name(RegionTag t) {
    switch (t) {
        case RegionTag::Msr: return "MSR";
        case RegionTag::Mbr: return "MBR";
        case RegionTag::Tie: return "TIE";
        case RegionTag::Infeasible: return "INFEASIBLE";
    }
    return "?";
}

namespace {

Rational family_beta(const SystemParams& p, Family family, int d) {
    SystemParams q(p.M, p.n, p.k, d);
    return family == Family::MSR ? msr_point(q).beta : mbr_point(q).beta;
}

}  // namespace

HelperOptResult optimize_helpers(const SystemParams& p, Family family, const Budget& b,
                                 const ChannelModel& ch) {
    if (family == Family::Interior)
        throw std::invalid_argument("optimize_helpers: family must be MSR or MBR");
    HelperOptResult out;
    out.family = family;
    for (int d = p.k; d <= p.n - 1; ++d) {
        const Rational beta = family_beta(p, family, d);
        for (int dp = d; dp <= p.n - 1; ++dp) {
            if (Rational(dp) * beta > b.gamma_th) continue;
            HelperScheme cand(d, dp, beta);
            const double ps = p_success_helpers(cand, ch);
            ++out.feasible_count;
            if (!out.best || ps > out.p_star) {
                out.best = cand;
                out.p_star = ps;
                out.ties.clear();
                out.ties.push_back(cand);
            } else if (ps == out.p_star) {
                out.ties.push_back(cand);
                const HelperScheme& cur = *out.best;
                if (cand.d_prime < cur.d_prime ||
                    (cand.d_prime == cur.d_prime && cand.d < cur.d)) {
                    out.best = cand;
                }
            }
        }
    }
    out.feasible = out.best.has_value();
    return out;
}

TwoLayerOptResult optimize_twolayer(const SystemParams& p, const Budget& b, const ChannelModel& ch,
                                    int grid_steps, AnchorFilter filter) {
    if (!b.alpha_th) throw std::invalid_argument("optimize_twolayer: alpha_th cap required");
    if (grid_steps < 2) throw std::invalid_argument("optimize_twolayer: grid_steps must be >= 2");
    const Rational alpha_th = *b.alpha_th;
    const Rational d_rat(p.d);
    const ChannelModel lossless{Rational(0)};

    TwoLayerOptResult out;
    for (int i = 0; i <= p.k - 1; ++i) {
        Family fam = i == 0 ? Family::MSR : (i == p.k - 1 ? Family::MBR : Family::Interior);
        if (p.k == 1) fam = Family::MSR;  // MSR and MBR coincide
        if (filter == AnchorFilter::MsrOnly && i != 0) continue;
        if (filter == AnchorFilter::MbrOnly && i != p.k - 1) continue;

        const Rational gamma1 = tradeoff_f(p, i);
        const Rational beta1 = gamma1 / d_rat;
        const auto alpha1 = tradeoff_alpha_star(p, gamma1, lossless);
        if (!alpha1) continue;  // cannot happen at a breakpoint
        if (*alpha1 > alpha_th || gamma1 > b.gamma_th) continue;
        if (!cut_feasible(p, *alpha1, beta1, lossless)) continue;  // anchor sanity

        const Rational beta2_cap = min(alpha_th - *alpha1, (b.gamma_th - gamma1) / d_rat);
        // Indicator flip values: beta2 where d1*beta1 + d2*beta2 crosses the
        // residual threshold for some integer pair. Between flips p_s is flat,
        // so this candidate set attains the continuous optimum exactly.
        const Rational threshold =
            twolayer_threshold(p, TwoLayerAllocation(*alpha1, Rational(0), beta1, Rational(0)));
        std::set<Rational> candidates;
        candidates.insert(Rational(0));
        candidates.insert(beta2_cap);
        for (int g = 1; g < grid_steps; ++g) {
            candidates.insert(beta2_cap * Rational(g, grid_steps));
        }
        for (int d1 = 0; d1 <= p.d; ++d1) {
            const Rational need = threshold - Rational(d1) * beta1;
            if (!(need > Rational(0))) break;  // larger d1 only lowers the need
            for (int d2 = 1; d2 <= p.d; ++d2) {
                const Rational flip = need / Rational(d2);
                if (flip > Rational(0) && flip <= beta2_cap) candidates.insert(flip);
            }
        }

        for (const Rational& beta2 : candidates) {
            TwoLayerAllocation cand(*alpha1, beta2, beta1, beta2);
            const double ps = p_success_twolayer(p, cand, ch);
            ++out.feasible_count;
            if (!out.best || ps > out.p_star) {
                out.best = cand;
                out.p_star = ps;
                out.anchor_family = fam;
                out.ties.assign(1, cand);
            } else if (ps == out.p_star) {
                out.ties.push_back(cand);
                const TwoLayerAllocation& cur = *out.best;
                const bool wins_tie =
                    cand.storage() < cur.storage() ||
                    (cand.storage() == cur.storage() && cand.bandwidth(p.d) < cur.bandwidth(p.d));
                if (wins_tie) {
                    out.best = cand;
                    out.anchor_family = fam;
                }
            }
        }
    }
    out.feasible = out.best.has_value();
    return out;
}

std::vector<std::vector<RegionTag>> region_map(const SystemParams& p, const ChannelModel& ch,
                                               const std::vector<Rational>& gamma_grid,
                                               const std::vector<Rational>& alpha_grid,
                                               int grid_steps) {
    if (gamma_grid.empty() || alpha_grid.empty())
        throw std::invalid_argument("region_map: grids must be non-empty");
    for (std::size_t i = 1; i < gamma_grid.size(); ++i)
        if (!(gamma_grid[i] > gamma_grid[i - 1]))
            throw std::invalid_argument("region_map: gamma_grid must be ascending");
    for (std::size_t i = 1; i < alpha_grid.size(); ++i)
        if (!(alpha_grid[i] > alpha_grid[i - 1]))
            throw std::invalid_argument("region_map: alpha_grid must be ascending");

    std::vector<std::vector<RegionTag>> map(gamma_grid.size(),
                                            std::vector<RegionTag>(alpha_grid.size()));
    for (std::size_t gi = 0; gi < gamma_grid.size(); ++gi) {
        for (std::size_t ai = 0; ai < alpha_grid.size(); ++ai) {
            Budget cell(gamma_grid[gi], alpha_grid[ai]);
            const auto msr = optimize_twolayer(p, cell, ch, grid_steps, AnchorFilter::MsrOnly);
            const auto mbr = optimize_twolayer(p, cell, ch, grid_steps, AnchorFilter::MbrOnly);
            RegionTag tag;
            if (!msr.feasible && !mbr.feasible) {
                tag = RegionTag::Infeasible;
            } else if (!mbr.feasible) {
                tag = RegionTag::Msr;
            } else if (!msr.feasible) {
                tag = RegionTag::Mbr;
            } else if (msr.p_star > mbr.p_star) {
                tag = RegionTag::Msr;
            } else if (mbr.p_star > msr.p_star) {
                tag = RegionTag::Mbr;
            } else {
                tag = RegionTag::Tie;
            }
            map[gi][ai] = tag;
        }
    }
    return map;
}

}  // namespace regen
