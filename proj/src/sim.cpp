#include "regen/sim.hpp"

#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace regen {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

namespace {

std::uint8_t rand_byte(std::mt19937_64& rng) { return static_cast<std::uint8_t>(rng() & 0xFF); }

// Uniform double in [0, 1) from the top 53 bits; avoids
// std::uniform_real_distribution, whose stream is not pinned by the standard.
double rand_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::int64_t scaled_int(const Rational& value, const BigInt& scale, const char* what) {
    Rational scaled = value * Rational(scale, BigInt(1));
    if (!scaled.is_integer()) throw std::logic_error(std::string("make_geometry: ") + what);
    return scaled.num().to_int64();
}

BigInt common_scale(std::initializer_list<const Rational*> values) {
    BigInt s(1);
    for (const Rational* v : values) s = BigInt::lcm(s, v->den());
    return s;
}

void check_geometry(const CodeGeometry& g) {
    if (g.file_dim < 1 || g.file_dim > 4096)
        throw std::invalid_argument("make_geometry: scaled file size out of range [1, 4096]");
    if (g.alpha_total() > g.file_dim)
        throw std::invalid_argument("make_geometry: node storage exceeds file size; no independent layout exists");
    if (static_cast<std::int64_t>(g.k) * g.alpha1 < g.file_dim)
        throw std::invalid_argument("make_geometry: k * alpha1 < M; k nodes cannot rebuild the file");
    if ((g.beta2 > 0 ? 2 : 1) * g.d_prime > 32 || g.beta1 > 32 || g.beta2 > 32)
        throw std::invalid_argument("make_geometry: link or batch count exceeds the 32-bit mask limit");
}

// Next r-combination of {0..n-1} in lexicographic order; false when done.
bool next_combination(std::vector<int>& c, int n) {
    const int r = static_cast<int>(c.size());
    for (int i = r - 1; i >= 0; --i) {
        if (c[i] < n - r + i) {
            ++c[i];
            for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

GfMatrix stack_nodes(const StorageSystem& sys, const std::vector<int>& members, bool primary_only) {
    GfMatrix out(0, sys.geo.file_dim);
    for (int m : members) {
        if (primary_only) {
            for (int r = 0; r < sys.geo.alpha1; ++r) out.append_row(sys.node[m].row(r));
        } else {
            out.append_rows(sys.node[m]);
        }
    }
    return out;
}

void rebuild_audit_cache(StorageSystem& sys) {
    sys.deficient.clear();
    if (sys.geo.k < 2) return;  // empty (k-1)-subsets never constrain
    std::vector<int> subset(sys.geo.k - 1);
    for (int i = 0; i < sys.geo.k - 1; ++i) subset[i] = i;
    do {
        Echelon e = echelon_form(stack_nodes(sys, subset, false));
        if (e.rank() < sys.geo.file_dim) {
            sys.deficient.push_back({subset, std::move(e)});
        }
    } while (next_combination(subset, sys.geo.n));
}

// count random GF combinations of pool's first use_rows rows, uniform
// coefficients.
GfMatrix random_combinations(const GfMatrix& pool, int use_rows, int count, std::mt19937_64& rng) {
    GfMatrix out(count, pool.cols());
    for (int r = 0; r < count; ++r) {
        std::uint8_t* dst = out.row(r);
        for (int s = 0; s < use_rows; ++s) {
            const std::uint8_t c = rand_byte(rng);
            if (c == 0) continue;
            const std::uint8_t* mrow = gf::mul_row(c);
            const std::uint8_t* src = pool.row(s);
            for (int j = 0; j < pool.cols(); ++j) dst[j] ^= mrow[src[j]];
        }
    }
    return out;
}

// Rank-preserving random mixing for the regenerated node: coefficients form a
// Cauchy matrix on randomly drawn distinct field elements, so every square
// sub-block is invertible and rank(out) = min(count, rank(pool)) up to the
// O(1/q) events inherent in the received data itself. Uniform coefficients
// would add another O(count/q) of avoidable rank loss per trial. Falls back
// to uniform mixing when count + use_rows exceeds the field size.
GfMatrix mixed_combinations(const GfMatrix& pool, int use_rows, int count, std::mt19937_64& rng) {
    if (use_rows == 0 || count == 0 || count + use_rows > 256)
        return random_combinations(pool, use_rows, count, rng);
    std::array<std::uint8_t, 256> deck;
    for (int i = 0; i < 256; ++i) deck[i] = static_cast<std::uint8_t>(i);
    for (int i = 0; i < count + use_rows; ++i) {  // partial Fisher-Yates
        const int j = i + static_cast<int>(rng() % (256 - i));
        std::swap(deck[i], deck[j]);
    }
    GfMatrix out(count, pool.cols());
    for (int r = 0; r < count; ++r) {
        std::uint8_t* dst = out.row(r);
        for (int s = 0; s < use_rows; ++s) {
            const std::uint8_t c = gf::inv(deck[r] ^ deck[count + s]);
            const std::uint8_t* mrow = gf::mul_row(c);
            const std::uint8_t* src = pool.row(s);
            for (int j = 0; j < pool.cols(); ++j) dst[j] ^= mrow[src[j]];
        }
    }
    return out;
}

struct TrialCore {
    const StorageSystem& sys;
    int failed;
    std::vector<int> helpers;

    TrialCore(const StorageSystem& s) : sys(s), failed(static_cast<int>(s.generation % s.geo.n)) {
        for (int i = 0; i < sys.geo.n && static_cast<int>(helpers.size()) < sys.geo.d_prime; ++i) {
            if (i != failed) helpers.push_back(i);
        }
    }

    // mask bit h: helper h's primary batch survives; bit d'+h: surplus batch.
    bool run(std::uint32_t survive_mask, const std::vector<std::uint32_t>* fragment_masks,
             std::mt19937_64& rng, StorageSystem* after) const {
        const CodeGeometry& g = sys.geo;
        GfMatrix received(0, g.file_dim);
        for (std::size_t h = 0; h < helpers.size(); ++h) {
            const GfMatrix& store = sys.node[helpers[h]];
            GfMatrix batch1 = random_combinations(store, g.alpha1, g.beta1, rng);
            GfMatrix batch2 = g.beta2 > 0
                                  ? random_combinations(store, g.alpha_total(), g.beta2, rng)
                                  : GfMatrix(0, g.file_dim);
            if (fragment_masks) {
                const std::uint32_t m1 = (*fragment_masks)[2 * h];
                const std::uint32_t m2 = (*fragment_masks)[2 * h + 1];
                for (int r = 0; r < batch1.rows(); ++r)
                    if (m1 >> r & 1u) received.append_row(batch1.row(r));
                for (int r = 0; r < batch2.rows(); ++r)
                    if (m2 >> r & 1u) received.append_row(batch2.row(r));
            } else {
                if (survive_mask >> h & 1u) received.append_rows(batch1);
                if (g.beta2 > 0 && (survive_mask >> (g.d_prime + h) & 1u))
                    received.append_rows(batch2);
            }
        }

        GfMatrix fresh = mixed_combinations(received, received.rows(), g.alpha_total(), rng);

        // New node must contribute alpha1 independent primary rows...
        GfMatrix primary(0, g.file_dim);
        for (int r = 0; r < g.alpha1; ++r) primary.append_row(fresh.row(r));
        if (rank(primary) != g.alpha1) return false;

        // ...and every k-subset through it must still reach full rank; only
        // the cached deficient subsets can fail that.
        for (const auto& sub : sys.deficient) {
            bool uses_failed = false;
            for (int m : sub.members) {
                if (m == failed) {
                    uses_failed = true;
                    break;
                }
            }
            if (uses_failed) continue;
            if (rank_with_rows(sub.basis, fresh) < g.file_dim) return false;
        }

        if (after) {
            *after = sys;
            after->node[failed] = std::move(fresh);
            after->generation = sys.generation + 1;
            rebuild_audit_cache(*after);
        }
        return true;
    }
};

std::string describe(const CodeGeometry& g, ErasureMode mode) {
    std::ostringstream os;
    os << (g.two_layer() ? "twolayer" : "helpers") << " n=" << g.n << " k=" << g.k << " d=" << g.d;
    if (!g.two_layer()) os << " d'=" << g.d_prime;
    os << " M=" << g.file_dim << " alpha1=" << g.alpha1;
    if (g.two_layer()) os << " alpha2=" << g.alpha2;
    os << " beta1=" << g.beta1;
    if (g.two_layer()) os << " beta2=" << g.beta2;
    os << " scale=" << g.scale << (mode == ErasureMode::Batch ? " batch" : " per-fragment");
    return os.str();
}

SimReport run_trials_geo(const CodeGeometry& geo, const ChannelModel& ch, long trials,
                         std::uint64_t master_seed, double p_analytic, ErasureMode mode) {
    if (trials < 1) throw std::invalid_argument("run_trials: need trials >= 1");
    StorageSystem sys = init_system(geo, derive_seed(master_seed, 0));
    long successes = 0;
    for (long t = 0; t < trials; ++t) {
        sys.generation = static_cast<std::uint64_t>(t);
        if (repair_trial(sys, ch, mode, derive_seed(master_seed, static_cast<std::uint64_t>(t) + 1)))
            ++successes;
    }
    SimReport rep;
    rep.trials = trials;
    rep.successes = successes;
    rep.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
    rep.ci95 = 1.96 * std::sqrt(rep.p_hat * (1.0 - rep.p_hat) / static_cast<double>(trials));
    rep.p_analytic = p_analytic;
    rep.abs_err = std::fabs(rep.p_hat - p_analytic);
    rep.seed = master_seed;
    rep.scheme = describe(geo, mode);
    return rep;
}

double pattern_weight(std::uint32_t mask, int links, double eps) {
    double w = 1.0;
    for (int b = 0; b < links; ++b) w *= (mask >> b & 1u) ? 1.0 - eps : eps;
    return w;
}

}  // namespace

CodeGeometry make_geometry(const SystemParams& p, const CodePoint& point, int d_prime) {
    if (d_prime < p.d || d_prime > p.n - 1)
        throw std::invalid_argument("make_geometry: need d <= d_prime <= n-1");
    BigInt s = common_scale({&p.M, &point.alpha, &point.beta});
    CodeGeometry g;
    g.n = p.n;
    g.k = p.k;
    g.d = p.d;
    g.d_prime = d_prime;
    g.scale = s.to_int64();
    g.file_dim = static_cast<int>(scaled_int(p.M, s, "M does not scale to an integer"));
    g.alpha1 = static_cast<int>(scaled_int(point.alpha, s, "alpha does not scale to an integer"));
    g.beta1 = static_cast<int>(scaled_int(point.beta, s, "beta does not scale to an integer"));
    check_geometry(g);
    return g;
}

CodeGeometry make_geometry(const SystemParams& p, const TwoLayerAllocation& a) {
    BigInt s = common_scale({&p.M, &a.alpha1, &a.alpha2, &a.beta1, &a.beta2});
    CodeGeometry g;
    g.n = p.n;
    g.k = p.k;
    g.d = p.d;
    g.d_prime = p.d;
    g.scale = s.to_int64();
    g.file_dim = static_cast<int>(scaled_int(p.M, s, "M does not scale to an integer"));
    g.alpha1 = static_cast<int>(scaled_int(a.alpha1, s, "alpha1 does not scale to an integer"));
    g.alpha2 = static_cast<int>(scaled_int(a.alpha2, s, "alpha2 does not scale to an integer"));
    g.beta1 = static_cast<int>(scaled_int(a.beta1, s, "beta1 does not scale to an integer"));
    g.beta2 = static_cast<int>(scaled_int(a.beta2, s, "beta2 does not scale to an integer"));
    check_geometry(g);
    return g;
}

StorageSystem init_system(const CodeGeometry& geo, std::uint64_t seed, int max_tries) {
    check_geometry(geo);
    std::mt19937_64 rng(seed);
    StorageSystem sys;
    sys.geo = geo;
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        sys.node.assign(geo.n, GfMatrix(geo.alpha_total(), geo.file_dim));
        for (auto& node : sys.node) {
            for (int r = 0; r < node.rows(); ++r) {
                std::uint8_t* row = node.row(r);
                for (int c = 0; c < node.cols(); ++c) row[c] = rand_byte(rng);
            }
        }
        bool ok = true;
        for (int i = 0; ok && i < geo.n; ++i) {
            if (rank(sys.node[i]) != geo.alpha_total()) ok = false;
        }
        if (ok) ok = system_is_mds(sys);
        if (ok && geo.two_layer()) ok = primary_layers_rebuild(sys);
        if (ok) {
            rebuild_audit_cache(sys);
            return sys;
        }
    }
    throw std::runtime_error("init_system: could not draw an MDS layout within the retry cap");
}

bool system_is_mds(const StorageSystem& sys) {
    std::vector<int> subset(sys.geo.k);
    for (int i = 0; i < sys.geo.k; ++i) subset[i] = i;
    do {
        if (rank(stack_nodes(sys, subset, false)) != sys.geo.file_dim) return false;
    } while (next_combination(subset, sys.geo.n));
    return true;
}

bool primary_layers_rebuild(const StorageSystem& sys) {
    std::vector<int> subset(sys.geo.k);
    for (int i = 0; i < sys.geo.k; ++i) subset[i] = i;
    do {
        if (rank(stack_nodes(sys, subset, true)) != sys.geo.file_dim) return false;
    } while (next_combination(subset, sys.geo.n));
    return true;
}

bool repair_trial(const StorageSystem& sys, const ChannelModel& ch, ErasureMode mode,
                  std::uint64_t seed, StorageSystem* after) {
    std::mt19937_64 rng(seed);
    const CodeGeometry& g = sys.geo;
    const double eps = ch.epsilon_d();
    TrialCore core(sys);
    // Erasure draws happen up front, one stream position per link (or
    // fragment), so the loss pattern does not depend on coefficient draws.
    if (mode == ErasureMode::Batch) {
        std::uint32_t mask = 0;
        for (int h = 0; h < g.d_prime; ++h) {
            if (rand_unit(rng) >= eps) mask |= 1u << h;
        }
        if (g.beta2 > 0) {
            for (int h = 0; h < g.d_prime; ++h) {
                if (rand_unit(rng) >= eps) mask |= 1u << (g.d_prime + h);
            }
        }
        return core.run(mask, nullptr, rng, after);
    }
    std::vector<std::uint32_t> fragment_masks(2 * core.helpers.size(), 0);
    for (std::size_t h = 0; h < core.helpers.size(); ++h) {
        for (int r = 0; r < g.beta1; ++r) {
            if (rand_unit(rng) >= eps) fragment_masks[2 * h] |= 1u << r;
        }
        for (int r = 0; r < g.beta2; ++r) {
            if (rand_unit(rng) >= eps) fragment_masks[2 * h + 1] |= 1u << r;
        }
    }
    return core.run(0, &fragment_masks, rng, after);
}

bool repair_trial_forced(const StorageSystem& sys, std::uint32_t survive_mask, std::uint64_t seed,
                         StorageSystem* after) {
    std::mt19937_64 rng(seed);
    TrialCore core(sys);
    return core.run(survive_mask, nullptr, rng, after);
}

SimReport run_trials(const SystemParams& p, const CodePoint& point, int d_prime,
                     const ChannelModel& ch, long trials, std::uint64_t master_seed,
                     double p_analytic, ErasureMode mode) {
    return run_trials_geo(make_geometry(p, point, d_prime), ch, trials, master_seed, p_analytic, mode);
}

SimReport run_trials(const SystemParams& p, const TwoLayerAllocation& a, const ChannelModel& ch,
                     long trials, std::uint64_t master_seed, double p_analytic, ErasureMode mode) {
    return run_trials_geo(make_geometry(p, a), ch, trials, master_seed, p_analytic, mode);
}

double exhaustive_check(const HelperScheme& s, const ChannelModel& ch) {
    const int links = s.d_prime;
    if (links > 20) throw std::invalid_argument("exhaustive_check: more than 20 links");
    const double eps = ch.epsilon_d();
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << links); ++mask) {
        int arrived = 0;
        for (int b = 0; b < links; ++b) arrived += mask >> b & 1u;
        if (arrived >= s.d) total += pattern_weight(mask, links, eps);
    }
    return total;
}

double exhaustive_check(const SystemParams& p, const TwoLayerAllocation& a, const ChannelModel& ch) {
    const int links = 2 * p.d;
    if (links > 20) throw std::invalid_argument("exhaustive_check: more than 20 links");
    const double eps = ch.epsilon_d();
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << links); ++mask) {
        int d1 = 0, d2 = 0;
        for (int b = 0; b < p.d; ++b) d1 += mask >> b & 1u;
        for (int b = p.d; b < links; ++b) d2 += mask >> b & 1u;
        if (regen_condition(p, a, d1, d2)) total += pattern_weight(mask, links, eps);
    }
    return total;
}

}  // namespace regen
