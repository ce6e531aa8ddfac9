#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regen/optimize.hpp"
#include "regen/sim.hpp"

namespace regen {

// Independent minimal-storage search that uses only the cut test: evaluates
// the k candidate solutions of the piecewise-linear cut sum and returns the
// least one that cut_feasible accepts. This is the oracle route against the
// closed-form tradeoff_alpha_star; the two share no formulas.
std::optional<Rational> cut_oracle_min_alpha(const SystemParams& p, const Rational& gamma,
                                             const ChannelModel& ch);

struct CheckResult {
    int criterion = 0;  // 1..9
    std::string name;
    std::string expected;
    std::string observed;
    std::string tolerance;
    bool pass = false;
    double seconds = 0.0;
};

struct ValidateOptions {
    bool quick = false;  // skip the Monte-Carlo block
    std::uint64_t seed = 42;
    long trials = 100000;
};

// The full validation suite: worked reference numbers, tradeoff oracle
// agreement, qualitative region checks, exhaustive-enumeration oracles,
// Monte-Carlo agreement and the property batteries.
std::vector<CheckResult> run_validation(const ValidateOptions& opt);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace regen
