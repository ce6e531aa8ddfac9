#pragma once

#include <optional>

#include "regen/model.hpp"

namespace regen {

// Minimum-storage regenerating point: alpha = M/k, beta = M/(k(d-k+1)).
CodePoint msr_point(const SystemParams& p);

// Minimum-bandwidth regenerating point: alpha = gamma = 2dM/(k(2d-k+1)).
CodePoint mbr_point(const SystemParams& p);

// Bandwidth breakpoints of the lossless tradeoff, i in [0, k-1]:
//   f(i) = 2Md / ((2k-i-1)i + 2k(d-k+1))
// f(0) is the MSR repair bandwidth, f(k-1) the MBR one.
Rational tradeoff_f(const SystemParams& p, int i);

// Helper-sum coefficient of the tradeoff piece, i in [0, k-1]:
//   g(i) = (2d - 2k + i + 1) i / (2d)
// so that the piece value is alpha* = (M - g(i)(1-eps) gamma) / (k - i).
Rational tradeoff_g(const SystemParams& p, int i);

// Minimal per-node storage alpha* supporting total repair bandwidth gamma over
// links with erasure probability eps. Piecewise in gamma with breakpoints
// f(i)/(1-eps); returns nullopt when gamma < f(k-1)/(1-eps), where no code
// exists. gamma must be positive.
std::optional<Rational> tradeoff_alpha_star(const SystemParams& p, const Rational& gamma,
                                            const ChannelModel& ch);

// Information-flow min-cut test with per-helper delivery (1-eps)*beta:
//   sum_{i=0}^{k-1} min((d-i)(1-eps) beta, alpha) >= M
// True iff a linear network code with per-node storage alpha and per-helper
// bandwidth beta can regenerate while every k nodes rebuild the file.
bool cut_feasible(const SystemParams& p, const Rational& alpha, const Rational& beta,
                  const ChannelModel& ch);

}  // namespace regen
