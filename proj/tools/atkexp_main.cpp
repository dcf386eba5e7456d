// Command-line driver.  Exit codes: 0 all-pass, 1 verification failure,
// 2 usage error.

#include <cstdlib>
#include <atomic>
#include <future>
#include <iostream>
#include <memory>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "atkexp/atkinson.hpp"
#include "atkexp/constants.hpp"
#include "atkexp/divisor.hpp"
#include "atkexp/emit.hpp"
#include "atkexp/jutila.hpp"
#include "atkexp/numkit.hpp"
#include "atkexp/saddle.hpp"
#include "atkexp/zetacrit.hpp"

namespace {

using namespace atkexp;

struct GlobalOpts {
    long bits = 192;
    std::uint64_t sieve_limit = 10000000;
    std::string format = "csv";
    int jobs = int(std::thread::hardware_concurrency());
};

emit::Format fmt(const GlobalOpts& g) {
    return g.format == "json" ? emit::Format::json : emit::Format::csv;
}

int run_direct(const GlobalOpts& g, double t) {
    zetacrit::ZetaEvalConfig cfg;
    auto r = zetacrit::mean_square(t, cfg);
    emit::Report rep;
    rep.columns = {"T", "integral", "main_term", "e_value", "est_quad_error"};
    rep.rows.push_back({r.T, r.integral, r.main_term, r.e_value, r.est_quad_error});
    emit::write(rep, fmt(g), std::cout);
    return 0;
}

int run_atkinson(const GlobalOpts& g, double t, long n_opt, bool with_direct) {
    PrecisionContext ctx(g.bits);
    std::uint64_t n = n_opt > 0 ? std::uint64_t(n_opt) : std::uint64_t(t);
    atkinson::AtkinsonInput in(t, n);
    divisor::DivisorTable table(std::max<std::uint64_t>(n + 1, 64));
    double ed = 0;
    if (with_direct) {
        zetacrit::ZetaEvalConfig cfg;
        ed = zetacrit::e_direct(t, cfg);
    }
    atkinson::AtkinsonTerms terms = atkinson::residual(in, ed, table, ctx);
    emit::Report rep;
    rep.columns = {"T", "N", "sigma1", "sigma2", "capZ"};
    std::vector<emit::Cell> row{terms.T, (long long)terms.N, terms.sigma1, terms.sigma2,
                                terms.cap_z};
    if (with_direct) {
        rep.columns.push_back("residual");
        row.push_back(*terms.residual);
    }
    rep.rows.push_back(std::move(row));
    emit::write(rep, fmt(g), std::cout);
    return 0;
}

int run_residual_scan(const GlobalOpts& g, double tmin, double tmax, int points) {
    if (!(2 <= tmin && tmin < tmax) || points < 2) {
        std::cerr << "error: need 2 <= t-min < t-max and points >= 2\n";
        return 2;
    }
    PrecisionContext ctx(g.bits);
    zetacrit::ZetaEvalConfig cfg;
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = tmin * std::pow(tmax / tmin, double(i) / (points - 1));
    auto ms = zetacrit::mean_square_scan(grid, cfg);
    divisor::DivisorTable table(std::uint64_t(tmax) + 2);

    std::vector<atkinson::AtkinsonTerms> terms(points);
    auto worker = [&](int i) {
        atkinson::AtkinsonInput in = atkinson::AtkinsonInput::default_for(grid[i]);
        terms[i] = atkinson::residual(in, ms[i].e_value, table, ctx);
    };
    int jobs = std::max(1, g.jobs);
    if (jobs == 1) {
        for (int i = 0; i < points; ++i) worker(i);
    } else {
        std::vector<std::future<void>> fs;
        std::atomic<int> next{0};
        for (int j = 0; j < jobs; ++j)
            fs.push_back(std::async(std::launch::async, [&] {
                for (int i = next++; i < points; i = next++) worker(i);
            }));
        for (auto& f : fs) f.get();
    }

    emit::Report rep;
    rep.columns = {"T", "sigma1", "sigma2", "e_direct", "residual", "residual_over_log2T"};
    for (int i = 0; i < points; ++i) {
        double lg = std::log(grid[i]);
        rep.rows.push_back({grid[i], terms[i].sigma1, terms[i].sigma2, ms[i].e_value,
                            *terms[i].residual, *terms[i].residual / (lg * lg)});
    }
    emit::write(rep, fmt(g), std::cout);
    return 0;
}

int run_table1(const GlobalOpts& g) {
    PrecisionContext ctx(std::max(g.bits, 256L));
    auto rows = constants::reproduce_table1(ctx);
    emit::Report rep;
    rep.columns = {"aprime", "adprime", "t0_exponent", "alpha0", "a1_paper", "a1_ours",
                   "a2_paper", "a2_ours", "a3_paper", "a3_ours", "ratio3", "verdict", "note"};
    bool all = true;
    for (const auto& r : rows) {
        all = all && r.pass;
        rep.rows.push_back({r.aprime, r.adprime, r.t0_exponent, r.alpha0, r.a1_ref, r.b1,
                            r.a2_ref, r.b2, r.a3_ref, r.b3, r.a3_ref / r.b3,
                            std::string(r.pass ? "PASS" : "FAIL"), r.note});
    }
    emit::write(rep, fmt(g), std::cout);
    std::cout << (all ? "PASS" : "FAIL") << " table1: " << rows.size() << " cells\n";
    return all ? 0 : 1;
}

int run_table2(const GlobalOpts& g) {
    PrecisionContext ctx(std::max(g.bits, 256L));
    auto rows = constants::reproduce_table2(ctx);
    emit::Report rep;
    rep.columns = {"t0_exponent", "paper_value", "recomputed", "ratio", "abs_diff", "verdict"};
    bool all = true;
    for (const auto& r : rows) {
        all = all && r.pass;
        rep.rows.push_back({r.t0_exponent, r.j_ref, r.j_recomputed, r.j_recomputed / r.j_ref,
                            r.abs_diff, std::string(r.pass ? "PASS" : "FAIL")});
    }
    emit::write(rep, fmt(g), std::cout);
    std::cout << (all ? "PASS" : "FAIL") << " table2: " << rows.size() << " cells\n";
    return all ? 0 : 1;
}

int run_ledger(const GlobalOpts& g, double t0_exp, double alpha0) {
    PrecisionContext ctx(std::max(g.bits, 256L));
    Real t0 = pow(ctx.make(10.0), long(t0_exp));
    auto led = constants::e_ledger(ctx.make(0.9), ctx.make(1.1), t0, t0, ctx.make(alpha0), ctx);
    emit::Report rep;
    rep.columns = {"name", "value", "provenance"};
    for (const auto& e : led.entries())
        rep.rows.push_back({e.name, e.value.to_double(), e.provenance});
    emit::write(rep, emit::Format::json, std::cout);
    return 0;
}

int run_jutila_bound(const GlobalOpts& g, double t0val) {
    PrecisionContext ctx(std::max(g.bits, 256L));
    Real t0 = ctx.make(t0val);
    Real a0 = constants::choose_alpha0(ctx.make(0.9), ctx);
    auto ac = constants::assemble_a(ctx.make(0.9), ctx.make(1.1), t0, a0, ctx);
    auto asm_ = jutila::jutila_bound_assembly(t0, ac.a1, ac.a2, ac.a3, ctx);
    emit::Report rep;
    rep.columns = {"t0", "fraka", "J", "secondary_term_at_domain_edge"};
    rep.rows.push_back({t0val, asm_.jc.fraka.to_double(), asm_.jc.j.to_double(),
                        asm_.secondary_term.to_double()});
    emit::write(rep, emit::Format::json, std::cout);
    return 0;
}

// ---- verify subcommands ----------------------------------------------------

int check(bool ok, const std::string& what, int& failures) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << '\n';
    if (!ok) ++failures;
    return failures;
}

int verify_lemmas(const GlobalOpts& g) {
    PrecisionContext ctx(g.bits);
    int failures = 0;
    std::mt19937_64 rng(20260809);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    // Taylor-remainder ceilings for 1/z on nested disks
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        double r2 = 0.1 + 2 * u01(rng);
        double r1 = r2 * (0.05 + 0.9 * u01(rng));
        double dist = r2 + 0.1 + 3 * u01(rng);
        double ang = 2 * 3.14159265358979 * u01(rng);
        saddle::Cplx z0 = std::polar(dist, ang);
        double zr = r1 * u01(rng), za = 2 * 3.14159265358979 * u01(rng);
        saddle::Cplx z = z0 + std::polar(zr, za);
        int k = 1 + int(u01(rng) * 5);
        if (!saddle::taylor_remainder_check(z0, r1, r2, z, k).ok()) ++bad;
    }
    check(bad == 0, "taylor remainder ceilings (1000 draws)", failures);

    bad = 0;
    for (int i = 0; i < 1000; ++i) {
        double A = 10 * u01(rng), B = 1e-6 + 10 * u01(rng), a = 1e-3 + 10 * u01(rng);
        if (!saddle::gaussian_tail_check(A, B, a).ok()) ++bad;
    }
    check(bad == 0, "gaussian tail integral ceiling (1000 draws)", failures);

    // Bessel: dual-branch agreement at the crossover, K1 remainder window
    {
        Real u20 = ctx.make(20.0);
        Real ys = numkit::bessel_y1_series(u20, ctx);
        Real ya = numkit::bessel_y1_asymptotic(u20, ctx);
        check((abs(ys - ya) / abs(ya)).to_double() < 1e-10, "Y1 series vs asymptotic at u=20",
              failures);
        Real u = ctx.make(1000.0);
        Real r1 = numkit::bessel_k1_asymptotic(u, ctx) * sqrt(2 * u / ctx.pi) * exp(u);
        check(abs(r1 - 1).to_double() <= 3.0 / 8000, "K1 asymptotic remainder at u=1000", failures);
    }

    // dilog reflection identity on a grid at 128 bits
    {
        PrecisionContext c128(128);
        Real pi2_6 = c128.pi * c128.pi / 6;
        bool ok = true;
        for (int i = 1; i < 40; ++i) {
            Real x = c128.make(i / 40.0);
            Real lhs = numkit::dilog(x, c128) + numkit::dilog(1 - x, c128);
            Real rhs = pi2_6 - log(x) * log(1 - x);
            if (abs(lhs - rhs).to_double() > 1e-20) ok = false;
        }
        check(ok, "dilog reflection identity (grid, 128-bit)", failures);
    }
    std::cout << (failures ? "FAIL" : "PASS") << " lemmas\n";
    return failures ? 1 : 0;
}

int verify_voronoi(const GlobalOpts& g, int samples) {
    PrecisionContext ctx(g.bits);
    int failures = 0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> xdist(2.0, 10000.0);
    divisor::DivisorTable table(1000002);
    int bad = 0;
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        double x = xdist(rng);
        if (std::abs(x - std::round(x)) < 1e-6) continue;
        long n_terms = std::clamp<long>(long(64 * x), 120000, 640000);
        auto params = divisor::VoronoiParams::make(2.0, n_terms, ctx);
        auto v = divisor::voronoi_delta_star(x, params, table, ctx);
        double defect = std::abs(v.value - table.delta_star(x));
        if (defect > v.certified_error) ++bad;
        worst = std::max(worst, defect / v.certified_error);
    }
    std::cout << "  worst defect/certified ratio: " << worst << '\n';
    check(bad == 0, "voronoi value within certified window (" + std::to_string(samples) + " x)",
          failures);
    std::cout << (failures ? "FAIL" : "PASS") << " voronoi\n";
    return failures ? 1 : 0;
}

int verify_divisor_sums(const GlobalOpts& g, int samples) {
    int failures = 0;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    divisor::DivisorTable table(2100000);
    int bad = 0;
    for (int i = 0; i < samples; ++i) {
        double Y = 5 + u01(rng) * 1e6;
        auto p = divisor::divisor_sum_bounds(divisor::SumBoundKind::sqrt, 0, Y, table);
        if (p.lhs > p.rhs) ++bad;
        Y = 2 + u01(rng) * 1e6;
        p = divisor::divisor_sum_bounds(divisor::SumBoundKind::three_quarters, 0, Y, table);
        if (p.lhs > p.rhs) ++bad;
        double Z = 4.0001 + u01(rng) * 1e6;
        for (auto variant : {divisor::WeightedVariant::below, divisor::WeightedVariant::above,
                             divisor::WeightedVariant::window}) {
            auto q = divisor::weighted_sum_near_Z(Z, variant, table);
            if (q.lhs > q.rhs) ++bad;
        }
    }
    check(bad == 0, "divisor-sum ceilings (" + std::to_string(samples) + " random draws x 5)",
          failures);
    {
        std::vector<double> xs;
        for (int i = 0; i < 32; ++i) xs.push_back(1 + std::pow(10.0, 6.0 * i / 31));
        auto tails = divisor::tail_five_quarters_batch(xs, 100000000ull);
        bool ok = true;
        for (auto& p : tails) ok = ok && p.lhs <= p.rhs;
        check(ok, "tail sum ceiling (32 thresholds, sieve to 1e8)", failures);
    }
    (void)g;
    std::cout << (failures ? "FAIL" : "PASS") << " divisor-sums\n";
    return failures ? 1 : 0;
}

int verify_saddle(const GlobalOpts& g) {
    PrecisionContext ctx(g.bits);
    int failures = 0;
    struct {
        double alpha, beta, gamma, k, T;
    } first_cases[] = {{0.5, 0.5, 1.0, 50, 1e4},
                       {0.5, 0.5, 1.0, 9, 2e3},
                       {1.5, 0.5, 1.0, 20, 5e3},
                       {0.5, 1.5, 1.0, 120, 3e4},
                       {0.5, 1.5, 2.0, 33, 1e4}};
    for (auto& cse : first_cases) {
        auto chk = saddle::check_first_integral(cse.alpha, cse.beta, cse.gamma, 1e-4, 2 * cse.T,
                                                cse.k, cse.T, 0.9, 1.1, 1e3, ctx);
        check(chk.defect_within_ceiling && chk.main_matches_closed_form,
              "log-kernel saddle (k=" + std::to_string(cse.k) + ")", failures);
    }
    struct {
        double alpha, n, T;
    } second_cases[] = {{1.5, 10, 1e4}, {1.5, 40, 1e4}, {2.5, 5, 5e3}, {1.5, 3, 2e3}, {2.5, 25, 3e4}};
    for (auto& cse : second_cases) {
        double A = std::sqrt(0.9);
        auto chk = saddle::check_second_integral(cse.alpha, A * std::sqrt(cse.T), cse.n, cse.T, A,
                                                 std::sqrt(1.1), ctx);
        check(chk.defect_within_ceiling,
              "arsinh-kernel saddle (n=" + std::to_string(cse.n) + ")", failures);
    }
    std::cout << (failures ? "FAIL" : "PASS") << " saddle\n";
    return failures ? 1 : 0;
}

int verify_jutila(const GlobalOpts& g) {
    PrecisionContext ctx(std::max(g.bits, 256L));
    int failures = 0;
    Real t28 = pow(ctx.make(10.0), 28);
    auto sp = jutila::smoothing_params(t28, ctx.make(1.0) / 6, ctx);
    check(sp.conditions_ok, "window inequalities at T=1e28, eps=1/6", failures);
    auto kb = jutila::kappa_constants(t28, ctx);
    check(kb.aprime_derived.to_double() >= 0.9 && kb.adprime_derived.to_double() <= 1.1,
          "derived A' >= 0.9 and A'' <= 1.1 at t0=1e28", failures);
    // m2 supremum against a dense grid
    {
        Real hi = ctx.pi / 2 / pow(1 - kb.delta_minus, 2);
        double best = 0;
        for (int i = 1; i <= 4096; ++i) {
            Real xi = hi * i / 4096;
            Real ash = asinh(sqrt(xi));
            Real v = abs((xi * sqrt(1 + xi) - sqrt(xi) * (1 + xi / 2) * ash)
                         / (pow(1 + xi, 1.25) * ash * ash));
            best = std::max(best, (v / (1 - kb.delta_minus)).to_double());
        }
        check(kb.m2.to_double() >= best - 1e-8, "m2 golden-section beats 4096-point grid",
              failures);
    }
    auto asm_ = jutila::jutila_bound_assembly(t28, ctx.make(95.0), ctx.make(275.0),
                                              ctx.parse("1.5e19"), ctx);
    check((log(abs(asm_.secondary_term)) / log(ctx.make(10.0))).to_double() < -100,
          "secondary term < 1e-100 at domain edge", failures);
    std::cout << (failures ? "FAIL" : "PASS") << " jutila\n";
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicit verification toolkit for the second-moment error term"};
    app.require_subcommand(1);
    GlobalOpts g;
    if (const char* env = std::getenv("ATKEXP_BITS")) g.bits = std::strtol(env, nullptr, 10);
    app.add_option("--bits", g.bits, "working precision in bits")->check(CLI::Range(64L, 16384L));
    app.add_option("--sieve-limit", g.sieve_limit, "divisor table size");
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--jobs", g.jobs, "worker parallelism cap")->check(CLI::Range(1, 1024));

    double t = 0, tmin = 0, tmax = 0, t0 = 0, t0exp = 30, alpha0 = 0.05;
    long n = -1;
    int points = 10, samples = 1000;
    bool with_direct = false;

    auto* direct = app.add_subcommand("direct", "mean square and E(T) at one T");
    direct->add_option("--t", t, "upper limit T")->required();

    auto* atk = app.add_subcommand("atkinson", "Sigma1, Sigma2, Z at one (T, N)");
    atk->add_option("--t", t, "T")->required();
    atk->add_option("--n", n, "N (default floor T)");
    atk->add_flag("--direct", with_direct, "also integrate |zeta|^2 and report the residual");

    auto* scan = app.add_subcommand("residual-scan", "residual across a log-spaced T grid");
    scan->add_option("--t-min", tmin)->required();
    scan->add_option("--t-max", tmax)->required();
    scan->add_option("--points", points)->required();

    auto* cons = app.add_subcommand("constants", "reproduce the constant tables");
    std::string which;
    cons->add_option("table", which, "table1 | table2 | ledger")->required();
    cons->add_option("--t0-exp", t0exp, "ledger: decimal exponent of T0");
    cons->add_option("--alpha0", alpha0, "ledger: alpha0");

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    ver->add_option("suite", suite, "lemmas | voronoi | saddle | divisor-sums | jutila")
        ->required();
    ver->add_option("--samples", samples, "random draws where applicable");

    auto* jb = app.add_subcommand("jutila-bound", "J(T0) with recomputed ingredients");
    jb->add_option("--t0", t0, "T0 (>= 1e28)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*direct) return run_direct(g, t);
        if (*atk) return run_atkinson(g, t, n, with_direct);
        if (*scan) return run_residual_scan(g, tmin, tmax, points);
        if (*cons) {
            if (which == "table1") return run_table1(g);
            if (which == "table2") return run_table2(g);
            if (which == "ledger") return run_ledger(g, t0exp, alpha0);
            std::cerr << "usage error: unknown table " << which << '\n';
            return 2;
        }
        if (*ver) {
            if (suite == "lemmas") return verify_lemmas(g);
            if (suite == "voronoi") return verify_voronoi(g, samples);
            if (suite == "saddle") return verify_saddle(g);
            if (suite == "divisor-sums") return verify_divisor_sums(g, samples);
            if (suite == "jutila") return verify_jutila(g);
            std::cerr << "usage error: unknown suite " << suite << '\n';
            return 2;
        }
        if (*jb) return run_jutila_bound(g, t0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
