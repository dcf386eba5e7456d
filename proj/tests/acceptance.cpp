// Acceptance suite: each numbered criterion prints a PASS/FAIL line with
// its measured figure; the process exits nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "atkexp/atkinson.hpp"
#include "atkexp/constants.hpp"
#include "atkexp/divisor.hpp"
#include "atkexp/jutila.hpp"
#include "atkexp/numkit.hpp"
#include "atkexp/saddle.hpp"
#include "atkexp/zetacrit.hpp"

using namespace atkexp;

namespace {

int g_failures = 0;

void verdict(int idx, bool ok, const std::string& what) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
    if (!ok) ++g_failures;
}

// Ceiling for |residual|/log^2 T on the criterion-3 grid, frozen from the
// calibration run of this implementation: observed maximum 0.0721 across
// 20 log-spaced T in [1e3, 1e5] with N = floor(T) (the residual itself
// hovers around pi + oscillation, 2.0 to 4.3 on this grid).  Twice the
// observed maximum:
constexpr double kResidualCeiling = 0.15;

void criterion1_table2(const PrecisionContext& ctx) {
    auto rows = constants::reproduce_table2(ctx);
    bool ok = true;
    double worst_abs = 0, worst_rel = 0;
    for (const auto& r : rows) {
        ok = ok && r.pass;
        if (r.t0_exponent >= 50) worst_abs = std::max(worst_abs, r.abs_diff);
        else worst_rel = std::max(worst_rel, r.rel_diff);
        if (!r.pass)
            std::printf("  cell T0=1e%.0f: recomputed %.7f vs %.4g (|diff| %.3e)\n",
                        r.t0_exponent, r.j_recomputed, r.j_ref, r.abs_diff);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "table2: worst abs diff %.3e (tol 2e-3, T0>=1e50), worst rel %.3e (tol 5e-3)",
                  worst_abs, worst_rel);
    verdict(1, ok, buf);
}

void criterion2_table1(const PrecisionContext& ctx) {
    auto rows = constants::reproduce_table1(ctx);
    bool ok = rows.size() == 30;
    double worst_ratio12 = 0, worst_ratio3 = 0;
    for (const auto& r : rows) {
        bool cell = r.b1 <= r.a1_ref && r.a1_ref / r.b1 <= 1.5 && r.b2 <= r.a2_ref
                 && r.a2_ref / r.b2 <= 1.5;
        double ratio3 = r.a3_ref / r.b3;
        cell = cell && ratio3 >= 0.1 && ratio3 <= 10.0;
        ok = ok && cell;
        worst_ratio12 = std::max({worst_ratio12, r.a1_ref / r.b1, r.a2_ref / r.b2});
        worst_ratio3 = std::max(worst_ratio3, std::max(ratio3, 1 / ratio3));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "table1: 30 cells, max a_i/b_i = %.4f (tol 1.5), max a3 ratio %.3f (tol 10)",
                  worst_ratio12, worst_ratio3);
    verdict(2, ok, buf);
}

void criterion3_residual(const PrecisionContext& ctx) {
    zetacrit::ZetaEvalConfig cfg;
    const int points = 20;
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = 1e3 * std::pow(100.0, double(i) / (points - 1));
    auto ms = zetacrit::mean_square_scan(grid, cfg);
    divisor::DivisorTable table(100002);

    double worst = 0;
    std::vector<double> lx, ly;
    for (int i = 0; i < points; ++i) {
        atkinson::AtkinsonInput in = atkinson::AtkinsonInput::default_for(grid[i]);
        auto t = atkinson::residual(in, ms[i].e_value, table, ctx);
        double lg2 = std::log(grid[i]) * std::log(grid[i]);
        double ratio = std::abs(*t.residual) / lg2;
        worst = std::max(worst, ratio);
        std::printf("  T %10.1f  sigma1 %+9.3f  sigma2 %+9.3f  E %+9.3f  resid %+8.4f  /log^2T %.4f\n",
                    grid[i], t.sigma1, t.sigma2, ms[i].e_value, *t.residual, ratio);
        lx.push_back(std::log(lg2));
        ly.push_back(std::log(std::abs(*t.residual) + 1e-12));
    }
    // least-squares slope of log|resid| vs log log^2 T
    double mx = 0, my = 0;
    for (int i = 0; i < points; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= points;
    my /= points;
    double num = 0, den = 0;
    for (int i = 0; i < points; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    double slope = num / den;
    bool ok = worst <= kResidualCeiling && slope <= 1.2;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "residual: max |resid|/log^2 T = %.4f (ceiling %.2f), trend slope %.3f (tol 1.2)",
                  worst, kResidualCeiling, slope);
    verdict(3, ok, buf);
}

void criterion4_voronoi(const PrecisionContext& ctx) {
    std::mt19937_64 rng(20260809);
    std::uniform_real_distribution<double> xdist(2.0, 10000.0);
    divisor::DivisorTable table(1000002);
    int bad = 0;
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        double x = xdist(rng);
        if (std::abs(x - std::round(x)) < 1e-9) continue;
        long n_terms = std::clamp<long>(long(64 * x), 120000, 640000);
        auto params = divisor::VoronoiParams::make(2.0, n_terms, ctx);
        auto v = divisor::voronoi_delta_star(x, params, table, ctx);
        double defect = std::abs(v.value - table.delta_star(x));
        worst = std::max(worst, defect / v.certified_error);
        if (defect > v.certified_error) ++bad;
    }
    bool series_ok = bad == 0;

    // |Delta*(x)| <= x^{1/3} log(e x) exhaustively on half-integers to 1e6
    bool ceiling_ok = true;
    for (std::uint64_t n = 1; n < 1000000 && ceiling_ok; ++n) {
        double x = double(n) + 0.5;
        if (std::abs(table.delta_star(x)) > std::pow(x, 1.0 / 3) * std::log(M_E * x))
            ceiling_ok = false;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "voronoi: 1000 draws, %d outside certified window (worst ratio %.3f); "
                  "half-integer ceiling %s",
                  bad, worst, ceiling_ok ? "holds to 1e6" : "violated");
    verdict(4, series_ok && ceiling_ok, buf);
}

void criterion5_divisor_sums() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    divisor::DivisorTable table(2100000);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        double Y = 5 + u01(rng) * 999995;
        if (divisor::divisor_sum_bounds(divisor::SumBoundKind::sqrt, 0, Y, table).lhs
            > divisor::divisor_sum_bounds(divisor::SumBoundKind::sqrt, 0, Y, table).rhs)
            ++bad;
        Y = 2 + u01(rng) * 999998;
        auto p = divisor::divisor_sum_bounds(divisor::SumBoundKind::three_quarters, 0, Y, table);
        if (p.lhs > p.rhs) ++bad;
        double Z = 4.000001 + u01(rng) * 999996;
        for (auto v : {divisor::WeightedVariant::below, divisor::WeightedVariant::above,
                       divisor::WeightedVariant::window}) {
            auto q = divisor::weighted_sum_near_Z(Z, v, table);
            if (q.lhs > q.rhs) ++bad;
        }
    }
    // Lemma on tails: 1000 random thresholds served by one segmented pass
    {
        std::vector<double> xs;
        for (int i = 0; i < 1000; ++i) xs.push_back(1 + u01(rng) * 1e6);
        auto tails = divisor::tail_five_quarters_batch(xs, 100000000ull);
        for (auto& p : tails)
            if (p.lhs > p.rhs) ++bad;
    }
    // exhaustive d(n)/sqrt(n) <= sqrt(3), equality exactly at 12
    bool peak_ok = true;
    for (std::uint64_t n = 1; n <= 1000000; ++n) {
        double v = table.d(n) / std::sqrt(double(n));
        if (n == 12) {
            if (std::abs(v - std::sqrt(3.0)) > 1e-14) peak_ok = false;
        } else if (v >= std::sqrt(3.0) - 1e-12) {
            peak_ok = false;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "divisor sums: %d ceiling violations across 6000 checks; peak at 12 %s", bad,
                  peak_ok ? "confirmed" : "broken");
    verdict(5, bad == 0 && peak_ok, buf);
}

void criterion6_saddle(const PrecisionContext& ctx) {
    int bad = 0, cauchy_bad = 0;
    struct {
        double alpha, beta, gamma, k, T;
    } first_cases[] = {{0.5, 0.5, 1.0, 50, 1e4},
                       {0.5, 0.5, 1.0, 9, 2e3},
                       {1.5, 0.5, 1.0, 20, 5e3},
                       {0.5, 1.5, 1.0, 120, 3e4},
                       {0.5, 1.5, 2.0, 33, 1e4}};
    for (auto& c : first_cases) {
        auto chk = saddle::check_first_integral(c.alpha, c.beta, c.gamma, 1e-4, 2 * c.T, c.k, c.T,
                                                0.9, 1.1, 1e3, ctx);
        if (!chk.defect_within_ceiling || !chk.main_matches_closed_form) ++bad;
    }
    struct {
        double alpha, n, T;
    } second_cases[] = {{1.5, 10, 1e4}, {1.5, 40, 1e4}, {2.5, 5, 5e3}, {1.5, 3, 2e3},
                        {2.5, 25, 3e4}};
    for (auto& c : second_cases) {
        double A = std::sqrt(0.9);
        auto chk = saddle::check_second_integral(c.alpha, A * std::sqrt(c.T), c.n, c.T, A,
                                                 std::sqrt(1.1), ctx);
        if (!chk.defect_within_ceiling) ++bad;
    }
    // Cauchy consistency on two instances cheap enough for the axis route
    {
        constexpr double kPi = 3.14159265358979323846;
        for (auto [T, k] : {std::pair{2e3, 9.0}, std::pair{5e3, 25.0}}) {
            saddle::SaddleProblem p;
            p.a = 1e-3;
            p.b = 2 * T;
            p.k = k;
            double Tc = T;
            p.phi = [](saddle::Cplx z) {
                return std::pow(z, -0.5) * std::pow(1.0 + z, -0.5) / std::log((1.0 + z) / z);
            };
            p.f = [Tc](saddle::Cplx z) { return Tc / (2 * kPi) * std::log((1.0 + z) / z); };
            p.mu = [](double x) { return x / 2; };
            p.phi_major = [](double x) { return std::pow(x, -0.5) * std::pow(1 + x, 0.5); };
            p.f_major = [Tc](double x) { return Tc / (1 + x); };
            p.a1 = 3;
            p.a2 = 1 / kPi;
            p.a3 = 27 * kPi;
            p.alpha0 = 0.645 / (19 * std::sqrt(2.0));
            auto [vc, ec] = saddle::eval_oscillatory(p, 1e-9);
            auto [vr, er] = saddle::eval_real_axis(p, 1e-9);
            if (std::abs(vc - vr) > 1e-6 + ec + er) ++cauchy_bad;
        }
    }
    // remainder-lemma fuzzing
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int fuzz_bad = 0;
    for (int i = 0; i < 1000; ++i) {
        double r2 = 0.1 + 2 * u01(rng);
        double r1 = r2 * (0.05 + 0.9 * u01(rng));
        saddle::Cplx z0 = std::polar(r2 + 0.05 + 3 * u01(rng), 6.2831853 * u01(rng));
        saddle::Cplx z = z0 + std::polar(r1 * u01(rng), 6.2831853 * u01(rng));
        if (!saddle::taylor_remainder_check(z0, r1, r2, z, 1 + int(u01(rng) * 5)).ok()) ++fuzz_bad;
        double A = 10 * u01(rng), B = 1e-6 + 10 * u01(rng), a = 1e-3 + 10 * u01(rng);
        if (!saddle::gaussian_tail_check(A, B, a).ok()) ++fuzz_bad;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "saddle: %d/10 instances outside ceilings, %d Cauchy mismatches, %d fuzz "
                  "violations in 2000 draws",
                  bad, cauchy_bad, fuzz_bad);
    verdict(6, bad == 0 && cauchy_bad == 0 && fuzz_bad == 0, buf);
}

void criterion7_ingham(const PrecisionContext& ctx) {
    auto c = constants::ingham_chain_check(ctx);
    char buf[160];
    std::snprintf(buf, sizeof buf, "sqrt-scale chain at 1e28: slack %.4e, increasing to 1e40: %s",
                  c.slack_at_base.to_double(), c.slack_increasing ? "yes" : "no");
    verdict(7, c.holds_at_base && c.slack_increasing, buf);
}

void criterion8_cross_precision() {
    PrecisionContext c256(256), c512(512);
    Real t0a = pow(c256.make(10.0), 20);
    Real t0b = pow(c512.make(10.0), 20);
    auto la = constants::e_ledger(c256.make(0.9), c256.make(1.1), t0a, t0a, c256.make(0.05), c256);
    auto lb = constants::e_ledger(c512.make(0.9), c512.make(1.1), t0b, t0b, c512.make(0.05), c512);
    bool ok = la.entries().size() == lb.entries().size();
    double worst_bits = 1e9;
    for (std::size_t i = 0; ok && i < la.entries().size(); ++i) {
        const Real& a = la.entries()[i].value;
        const Real& b = lb.entries()[i].value;
        if (b.is_zero()) continue;
        double rel = (abs(a - b) / abs(b)).to_double();
        double bits = rel > 0 ? -std::log2(rel) : 256;
        worst_bits = std::min(worst_bits, bits);
        if (bits < 60) ok = false;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "cross precision 256/512: worst agreement %.1f bits (need 60)",
                  worst_bits);
    verdict(8, ok, buf);
}

}  // namespace

int main() {
    PrecisionContext ctx(256);
    criterion1_table2(ctx);
    criterion2_table1(ctx);
    criterion3_residual(ctx);
    criterion4_voronoi(ctx);
    criterion5_divisor_sums();
    criterion6_saddle(ctx);
    criterion7_ingham(ctx);
    criterion8_cross_precision();
    std::printf("%d of 8 criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
