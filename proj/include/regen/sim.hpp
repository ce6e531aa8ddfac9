#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regen/gf_matrix.hpp"
#include "regen/reliability.hpp"

namespace regen {

// Per-stream seed derivation (splitmix64 finalizer over an additive golden-
// ratio sequence). Stream 0 seeds system construction, stream t+1 seeds trial
// t, so trial outcomes are independent of execution order. The constants are
// part of the reproducibility contract:
//   z = master + (index + 1) * 0x9E3779B97F4A7C15
//   z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
//   z ^= z >> 27;  z *= 0x94D049BB133111EB
//   z ^= z >> 31
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Batch mode loses a helper's whole batch as one unit, matching the per-node
// binomial reliability model and the analytic formulas. PerFragment loses
// individual fragments and is provided for sensitivity studies only.
enum class ErasureMode { Batch, PerFragment };

// Integer code geometry after sub-packetization: every analytic quantity is
// multiplied by the lcm of its denominators so fragment counts are whole.
// Batch-level erasure probabilities are unaffected by the scaling.
struct CodeGeometry {
    int n = 0;
    int k = 0;
    int d = 0;
    int d_prime = 0;   // helpers transmitting (== d for two-layer schemes)
    int file_dim = 0;  // M after scaling
    int alpha1 = 0;    // primary-layer rows per node
    int alpha2 = 0;    // surplus rows per node; 0 for single-layer codes
    int beta1 = 0;     // primary batch rows per helper
    int beta2 = 0;     // surplus batch rows per helper
    std::int64_t scale = 1;

    int alpha_total() const { return alpha1 + alpha2; }
    bool two_layer() const { return alpha2 > 0 || beta2 > 0; }
};

CodeGeometry make_geometry(const SystemParams& p, const CodePoint& point, int d_prime);
CodeGeometry make_geometry(const SystemParams& p, const TwoLayerAllocation& a);

// A concrete linear storage code: node i holds alpha_total coefficient
// vectors of length file_dim over GF(2^8), the first alpha1 forming the
// primary layer and the rest the surplus layer (fresh random global vectors
// at construction). Invariants established by init_system: every node's rows
// are independent, every k-subset stacks to rank file_dim (the MDS
// property), and for two-layer codes the k-subset primary layers alone
// already stack to rank file_dim.
struct StorageSystem {
    CodeGeometry geo;
    std::vector<GfMatrix> node;
    std::uint64_t generation = 0;

    // Audit cache: echelon bases of the (k-1)-subsets whose stacked rank
    // falls short of file_dim. After one repair, the system is MDS iff every
    // such subset of the survivors reaches full rank together with the new
    // node; all other subsets are already saturated.
    struct SubsetBasis {
        std::vector<int> members;
        Echelon basis;
    };
    std::vector<SubsetBasis> deficient;
};

// Rejection-samples random coefficient vectors until the invariants hold.
StorageSystem init_system(const CodeGeometry& geo, std::uint64_t seed, int max_tries = 100);

// Full C(n,k) MDS audit on the complete node stores (slow path, used at init
// and for post-hoc checks).
bool system_is_mds(const StorageSystem& sys);

// Two-layer initialization property: every k-subset's primary layers alone
// stack to full rank. Functional repair mixes the layers of the regenerated
// node, so this is asserted at construction, not after repair.
bool primary_layers_rebuild(const StorageSystem& sys);

// One repair: fails node (generation mod n), the first d' survivors each emit
// beta1 random combinations of their primary rows (plus beta2 combinations of
// their full store for two-layer codes), every batch (or fragment, in
// PerFragment mode) is erased independently with probability eps, and the new
// node stores alpha1 (+alpha2) random combinations of everything received,
// mixed through a rank-preserving (randomized Cauchy) coefficient matrix.
// Success means the resulting system is a full member of the code again: the
// new node's primary rows are independent and every k-subset still ranks
// file_dim. Returns the outcome; fills *after when non-null and successful.
bool repair_trial(const StorageSystem& sys, const ChannelModel& ch, ErasureMode mode,
                  std::uint64_t seed, StorageSystem* after = nullptr);

// Same trial with a forced link pattern instead of random erasure: bit b of
// survive_mask keeps batch b. Batch order: helper h's primary batch is bit h;
// for two-layer codes helper h's surplus batch is bit d_prime + h.
bool repair_trial_forced(const StorageSystem& sys, std::uint32_t survive_mask, std::uint64_t seed,
                         StorageSystem* after = nullptr);

struct SimReport {
    long trials = 0;
    long successes = 0;
    double p_hat = 0.0;
    double ci95 = 0.0;  // half-width, normal approximation
    double p_analytic = 0.0;
    double abs_err = 0.0;  // |p_hat - p_analytic|
    std::uint64_t seed = 0;
    std::string scheme;
};

// Independent repair trials against one system; trial t fails node t mod n
// and uses derive_seed(master_seed, t+1).
SimReport run_trials(const SystemParams& p, const CodePoint& point, int d_prime,
                     const ChannelModel& ch, long trials, std::uint64_t master_seed,
                     double p_analytic, ErasureMode mode = ErasureMode::Batch);
SimReport run_trials(const SystemParams& p, const TwoLayerAllocation& a, const ChannelModel& ch,
                     long trials, std::uint64_t master_seed, double p_analytic,
                     ErasureMode mode = ErasureMode::Batch);

// Exact success probability by enumerating every batch-erasure pattern and
// applying the analytic success rule (at least d arrivals, or the two-layer
// regeneration condition). Link count is capped at 20.
double exhaustive_check(const HelperScheme& s, const ChannelModel& ch);
double exhaustive_check(const SystemParams& p, const TwoLayerAllocation& a, const ChannelModel& ch);

}  // namespace regen
