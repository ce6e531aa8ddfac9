// regen: storage-bandwidth tradeoff, repair reliability, and Monte-Carlo
// validation for regenerating codes over packet-erasure links.

#include <algorithm>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emit.hpp"
#include "regen/optimize.hpp"
#include "regen/sim.hpp"
#include "regen/validate.hpp"

namespace {

using namespace regen;
using cli::Cell;
using cli::Json;
using cli::Table;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitValidation = 3;

struct CommonOpts {
    std::string M = "1";
    int n = 10, k = 5, d = 9;
    std::vector<std::string> eps{"0.1"};
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_geometry = true) {
    if (with_geometry) {
        cmd->add_option("--M", o.M, "file size in fragments (rational)");
        cmd->add_option("--n", o.n, "total storage nodes");
        cmd->add_option("--k", o.k, "reconstruction threshold");
        cmd->add_option("--d", o.d, "helpers contacted in lossless repair");
    }
    cmd->add_option("--eps", o.eps, "erasure probability (repeatable)");
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output file (default stdout)");
}

Rational parse_rat(const std::string& s, const char* what) {
    try {
        return Rational::from_string(s);
    } catch (const std::exception&) {
        throw CLI::ValidationError(std::string(what) + ": not a rational: '" + s + "'");
    }
}

std::vector<ChannelModel> parse_channels(const std::vector<std::string>& eps) {
    std::vector<ChannelModel> out;
    for (const auto& e : eps) out.emplace_back(parse_rat(e, "--eps"));
    return out;
}

Json inputs_json(const CommonOpts& o) {
    Json j;
    j["M"] = o.M;
    j["n"] = o.n;
    j["k"] = o.k;
    j["d"] = o.d;
    j["eps"] = o.eps;
    return j;
}

std::vector<Rational> linspace(const Rational& lo, const Rational& hi, int count) {
    std::vector<Rational> out;
    if (count < 2) {
        out.push_back(lo);
        return out;
    }
    for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * Rational(i, count - 1));
    return out;
}

int cmd_point(const CommonOpts& o) {
    SystemParams p(parse_rat(o.M, "--M"), o.n, o.k, o.d);
    Table t({"family", "alpha", "beta", "gamma"});
    for (const CodePoint& pt : {msr_point(p), mbr_point(p)}) {
        t.row({family_name(pt.family), pt.alpha, pt.beta, pt.gamma});
    }
    return cli::write_output(t, inputs_json(o), o.format, o.out);
}

int cmd_tradeoff(const CommonOpts& o, const std::string& gmin, const std::string& gmax, int grid) {
    SystemParams p(parse_rat(o.M, "--M"), o.n, o.k, o.d);
    auto channels = parse_channels(o.eps);
    Table t({"eps", "gamma", "alpha_star", "status"});
    for (const auto& ch : channels) {
        const Rational surv = ch.survive();
        std::set<Rational> gammas;
        for (int i = 0; i <= p.k - 1; ++i) gammas.insert(tradeoff_f(p, i) / surv);
        Rational lo = gmin.empty() ? tradeoff_f(p, p.k - 1) / surv * Rational(9, 10)
                                   : parse_rat(gmin, "--gamma-min");
        Rational hi = gmax.empty() ? tradeoff_f(p, 0) / surv * Rational(12, 10)
                                   : parse_rat(gmax, "--gamma-max");
        for (const Rational& g : linspace(lo, hi, grid)) {
            if (g > Rational(0)) gammas.insert(g);
        }
        for (const Rational& gamma : gammas) {
            const auto alpha = tradeoff_alpha_star(p, gamma, ch);
            if (alpha) {
                t.row({ch.epsilon, gamma, *alpha, "ok"});
            } else {
                t.row({ch.epsilon, gamma, Cell{}, "infeasible"});
            }
        }
    }
    return cli::write_output(t, inputs_json(o), o.format, o.out);
}

int cmd_psucc(const CommonOpts& o, int d, int d_prime, const std::string& beta) {
    const Rational b = parse_rat(beta, "--beta");
    Table t({"eps", "d", "d_prime", "beta", "gamma_prime", "p_success"});
    HelperScheme s(d, d_prime, b);
    for (const auto& ch : parse_channels(o.eps)) {
        t.row({ch.epsilon, d, d_prime, b, s.bandwidth(), p_success_helpers(s, ch)});
    }
    Json in = inputs_json(o);
    in["d"] = d;
    in["d_prime"] = d_prime;
    in["beta"] = beta;
    return cli::write_output(t, in, o.format, o.out);
}

int cmd_psucc_rep(const CommonOpts& o, const std::vector<int>& counts) {
    RepetitionScheme s(counts);
    std::string counts_str;
    for (std::size_t i = 0; i < counts.size(); ++i)
        counts_str += (i ? "|" : "") + std::to_string(counts[i]);
    Table t({"eps", "counts", "p_success"});
    for (const auto& ch : parse_channels(o.eps)) {
        t.row({ch.epsilon, counts_str, p_success_repetition(s, ch)});
    }
    Json in = inputs_json(o);
    in["counts"] = counts;
    return cli::write_output(t, in, o.format, o.out);
}

int cmd_psucc_2layer(const CommonOpts& o, const std::string& a1, const std::string& a2,
                     const std::string& b1, const std::string& b2) {
    SystemParams p(parse_rat(o.M, "--M"), o.n, o.k, o.d);
    TwoLayerAllocation alloc(parse_rat(a1, "--alpha1"), parse_rat(a2, "--alpha2"),
                             parse_rat(b1, "--beta1"), parse_rat(b2, "--beta2"));
    Table t({"eps", "alpha1", "alpha2", "beta1", "beta2", "p_success"});
    for (const auto& ch : parse_channels(o.eps)) {
        t.row({ch.epsilon, alloc.alpha1, alloc.alpha2, alloc.beta1, alloc.beta2,
               p_success_twolayer(p, alloc, ch)});
    }
    Json in = inputs_json(o);
    in["alpha1"] = a1;
    in["alpha2"] = a2;
    in["beta1"] = b1;
    in["beta2"] = b2;
    return cli::write_output(t, in, o.format, o.out);
}

int cmd_opt_helpers(const CommonOpts& o, const std::string& family, const std::string& gamma_th) {
    SystemParams p(parse_rat(o.M, "--M"), o.n, o.k, o.k);  // d is a search variable
    Budget b{parse_rat(gamma_th, "--gamma-th")};
    const Family fam = family == "msr" ? Family::MSR : Family::MBR;
    Table t({"eps", "d", "d_prime", "beta", "gamma_prime", "p_star", "feasible_count", "ties",
             "status"});
    bool any_feasible = false;
    for (const auto& ch : parse_channels(o.eps)) {
        const auto res = optimize_helpers(p, fam, b, ch);
        if (res.feasible) {
            any_feasible = true;
            t.row({ch.epsilon, res.best->d, res.best->d_prime, res.best->beta,
                   res.best->bandwidth(), res.p_star, res.feasible_count,
                   static_cast<long long>(res.ties.size()), "ok"});
        } else {
            t.row({ch.epsilon, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, res.feasible_count, 0,
                   "infeasible"});
        }
    }
    Json in = inputs_json(o);
    in["family"] = family;
    in["gamma_th"] = gamma_th;
    int rc = cli::write_output(t, in, o.format, o.out);
    return rc != 0 ? rc : (any_feasible ? kExitOk : kExitInfeasible);
}

int cmd_opt_storage(const CommonOpts& o, const std::string& gamma_th, const std::string& alpha_th,
                    int grid, const std::string& anchor) {
    SystemParams p(parse_rat(o.M, "--M"), o.n, o.k, o.d);
    Budget b{parse_rat(gamma_th, "--gamma-th"), parse_rat(alpha_th, "--alpha-th")};
    const AnchorFilter filter = anchor == "msr"   ? AnchorFilter::MsrOnly
                                : anchor == "mbr" ? AnchorFilter::MbrOnly
                                                  : AnchorFilter::All;
    Table t({"eps", "alpha1", "alpha2", "beta1", "beta2", "storage", "bandwidth", "anchor",
             "p_star", "feasible_count", "status"});
    bool any_feasible = false;
    for (const auto& ch : parse_channels(o.eps)) {
        const auto res = optimize_twolayer(p, b, ch, grid, filter);
        if (res.feasible) {
            any_feasible = true;
            t.row({ch.epsilon, res.best->alpha1, res.best->alpha2, res.best->beta1,
                   res.best->beta2, res.best->storage(), res.best->bandwidth(p.d),
                   family_name(res.anchor_family), res.p_star, res.feasible_count, "ok"});
        } else {
            t.row({ch.epsilon, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{},
                   res.feasible_count, "infeasible"});
        }
    }
    Json in = inputs_json(o);
    in["gamma_th"] = gamma_th;
    in["alpha_th"] = alpha_th;
    in["grid"] = grid;
    in["anchor"] = anchor;
    int rc = cli::write_output(t, in, o.format, o.out);
    return rc != 0 ? rc : (any_feasible ? kExitOk : kExitInfeasible);
}

int cmd_region_map(const CommonOpts& o, const std::string& gmin, const std::string& gmax,
                   const std::string& amin, const std::string& amax, int cells, int grid) {
    SystemParams p(parse_rat(o.M, "--M"), o.n, o.k, o.d);
    ChannelModel ch = parse_channels(o.eps).front();
    const auto gamma_grid = linspace(parse_rat(gmin, "--gamma-min"), parse_rat(gmax, "--gamma-max"), cells);
    const auto alpha_grid = linspace(parse_rat(amin, "--alpha-min"), parse_rat(amax, "--alpha-max"), cells);
    const auto map = region_map(p, ch, gamma_grid, alpha_grid, grid);
    Table t({"gamma_th", "alpha_th", "winner"});
    for (std::size_t gi = 0; gi < gamma_grid.size(); ++gi) {
        for (std::size_t ai = 0; ai < alpha_grid.size(); ++ai) {
            t.row({gamma_grid[gi], alpha_grid[ai], region_tag_name(map[gi][ai])});
        }
    }
    Json in = inputs_json(o);
    in["gamma_range"] = {gmin, gmax};
    in["alpha_range"] = {amin, amax};
    in["cells"] = cells;
    return cli::write_output(t, in, o.format, o.out);
}

int cmd_simulate(const CommonOpts& o, const std::string& scheme, const std::string& family,
                 int d_prime, const std::string& a1, const std::string& a2, const std::string& b1,
                 const std::string& b2, long trials, std::uint64_t seed, const std::string& mode_s) {
    SystemParams p(parse_rat(o.M, "--M"), o.n, o.k, o.d);
    ChannelModel ch = parse_channels(o.eps).front();
    const ErasureMode mode = mode_s == "fragment" ? ErasureMode::PerFragment : ErasureMode::Batch;
    SimReport rep;
    if (scheme == "helpers") {
        const CodePoint point = family == "msr" ? msr_point(p) : mbr_point(p);
        const int dp = d_prime > 0 ? d_prime : p.n - 1;
        const double analytic = p_success_helpers(HelperScheme(p.d, dp, point.beta), ch);
        rep = run_trials(p, point, dp, ch, trials, seed, analytic, mode);
    } else {
        TwoLayerAllocation alloc(parse_rat(a1, "--alpha1"), parse_rat(a2, "--alpha2"),
                                 parse_rat(b1, "--beta1"), parse_rat(b2, "--beta2"));
        const double analytic = p_success_twolayer(p, alloc, ch);
        rep = run_trials(p, alloc, ch, trials, seed, analytic, mode);
    }
    Table t({"scheme", "eps", "trials", "successes", "p_hat", "ci95", "p_analytic", "abs_err",
             "seed"});
    t.row({rep.scheme, ch.epsilon, static_cast<long long>(rep.trials),
           static_cast<long long>(rep.successes), rep.p_hat, rep.ci95, rep.p_analytic, rep.abs_err,
           static_cast<long long>(rep.seed)});
    Json in = inputs_json(o);
    in["scheme"] = scheme;
    in["trials"] = trials;
    in["erasure_mode"] = mode_s;
    return cli::write_output(t, in, o.format, o.out, seed, true, "result");
}

int cmd_validate(const CommonOpts& o, bool quick, std::uint64_t seed, long trials) {
    ValidateOptions opt;
    opt.quick = quick;
    opt.seed = seed;
    opt.trials = trials;
    const auto results = run_validation(opt);
    Table t({"criterion", "check", "expected", "observed", "tolerance", "pass", "seconds"});
    for (const auto& r : results) {
        t.row({r.criterion, r.name, r.expected, r.observed, r.tolerance, r.pass ? "PASS" : "FAIL",
               r.seconds});
    }
    Json in;
    in["quick"] = quick;
    in["trials"] = trials;
    int rc = cli::write_output(t, in, o.format, o.out, seed, true);
    if (rc != 0) return rc;
    return all_passed(results) ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regenerating-code repair analysis over erasure channels"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string family = "mbr", gamma_th = "5", alpha_th = "1", scheme = "helpers", anchor = "all";
    std::string gmin, gmax, amin = "0.19", amax = "0.4";
    std::string beta = "1", a1 = "2", a2 = "1", b1 = "1", b2 = "1", mode_s = "batch";
    std::vector<int> counts{2, 1, 1};
    int d = 7, d_prime = 0, grid = 64, cells = 8;
    long trials = 100000;
    std::uint64_t seed = 42;
    bool quick = false;

    auto* point = app.add_subcommand("point", "MSR and MBR operating points");
    add_common(point, o);

    auto* tradeoff = app.add_subcommand("tradeoff", "storage-bandwidth tradeoff curve per eps");
    add_common(tradeoff, o);
    tradeoff->add_option("--gamma-min", gmin, "curve start (default: just below MBR bandwidth)");
    tradeoff->add_option("--gamma-max", gmax, "curve end (default: past MSR bandwidth)");
    tradeoff->add_option("--grid", grid, "uniform samples on top of the breakpoints");

    auto* psucc = app.add_subcommand("psucc", "repair success probability with extra helpers");
    add_common(psucc, o, false);
    psucc->add_option("--d", d, "helpers whose batches suffice");
    psucc->add_option("--d-prime", d_prime, "helpers transmitting");
    psucc->add_option("--beta", beta, "fragments per helper (for the bandwidth column)");

    auto* psucc_rep = app.add_subcommand("psucc-rep", "success probability under per-fragment repetition");
    add_common(psucc_rep, o, false);
    psucc_rep->add_option("--counts", counts, "per-fragment transmission counts");

    auto* psucc_2l = app.add_subcommand("psucc-2layer", "success probability of a two-layer allocation");
    add_common(psucc_2l, o);
    psucc_2l->add_option("--alpha1", a1, "base storage");
    psucc_2l->add_option("--alpha2", a2, "extra storage");
    psucc_2l->add_option("--beta1", b1, "base fragments per helper");
    psucc_2l->add_option("--beta2", b2, "extra fragments per helper");

    auto* opt_h = app.add_subcommand("opt-helpers", "maximize p_s over (d, d') under a bandwidth cap");
    add_common(opt_h, o);
    opt_h->add_option("--family", family, "code family")->check(CLI::IsMember({"msr", "mbr"}));
    opt_h->add_option("--gamma-th", gamma_th, "total bandwidth cap");

    auto* opt_s = app.add_subcommand("opt-storage", "maximize p_s over two-layer allocations");
    add_common(opt_s, o);
    opt_s->add_option("--gamma-th", gamma_th, "total bandwidth cap");
    opt_s->add_option("--alpha-th", alpha_th, "per-node storage cap");
    opt_s->add_option("--grid", grid, "beta2 grid resolution");
    opt_s->add_option("--anchor", anchor, "restrict base points")->check(CLI::IsMember({"all", "msr", "mbr"}));

    auto* region = app.add_subcommand("region-map", "best family per (gamma_th, alpha_th) cell");
    add_common(region, o);
    region->add_option("--gamma-min", gmin, "bandwidth axis start")->required();
    region->add_option("--gamma-max", gmax, "bandwidth axis end")->required();
    region->add_option("--alpha-min", amin, "storage axis start");
    region->add_option("--alpha-max", amax, "storage axis end");
    region->add_option("--cells", cells, "cells per axis");
    region->add_option("--grid", grid, "beta2 grid resolution");

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo repair trials over GF(256)");
    add_common(sim, o);
    sim->add_option("--scheme", scheme, "scheme kind")->check(CLI::IsMember({"helpers", "twolayer"}));
    sim->add_option("--family", family, "code family for helpers scheme")->check(CLI::IsMember({"msr", "mbr"}));
    sim->add_option("--d-prime", d_prime, "helpers transmitting (default n-1)");
    sim->add_option("--alpha1", a1, "two-layer base storage");
    sim->add_option("--alpha2", a2, "two-layer extra storage");
    sim->add_option("--beta1", b1, "two-layer base fragments per helper");
    sim->add_option("--beta2", b2, "two-layer extra fragments per helper");
    sim->add_option("--trials", trials, "number of repair trials");
    sim->add_option("--seed", seed, "master seed");
    sim->add_option("--erasure-mode", mode_s, "loss granularity")->check(CLI::IsMember({"batch", "fragment"}));

    auto* validate = app.add_subcommand("validate", "run the full validation suite");
    add_common(validate, o, false);
    validate->add_flag("--quick", quick, "analytics only, skip Monte-Carlo");
    validate->add_option("--seed", seed, "master seed");
    validate->add_option("--trials", trials, "Monte-Carlo trials per scheme");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(point)) return cmd_point(o);
        if (app.got_subcommand(tradeoff)) return cmd_tradeoff(o, gmin, gmax, grid);
        if (app.got_subcommand(psucc)) {
            if (d_prime == 0) d_prime = d;
            return cmd_psucc(o, d, d_prime, beta);
        }
        // the helper-count reproduction defaults to the reference file size
        if (app.got_subcommand(opt_h) && opt_h->count("--M") == 0) o.M = "10";
        if (app.got_subcommand(psucc_rep)) return cmd_psucc_rep(o, counts);
        if (app.got_subcommand(psucc_2l)) return cmd_psucc_2layer(o, a1, a2, b1, b2);
        if (app.got_subcommand(opt_h)) return cmd_opt_helpers(o, family, gamma_th);
        if (app.got_subcommand(opt_s)) return cmd_opt_storage(o, gamma_th, alpha_th, grid, anchor);
        if (app.got_subcommand(region)) return cmd_region_map(o, gmin, gmax, amin, amax, cells, grid);
        if (app.got_subcommand(sim)) return cmd_simulate(o, scheme, family, d_prime, a1, a2, b1, b2, trials, seed, mode_s);
        if (app.got_subcommand(validate)) return cmd_validate(o, quick, seed, trials);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
