#include <cmath>

#include "atkexp/constants.hpp"
#include "doctest.h"

using namespace atkexp;
using namespace atkexp::constants;

namespace {
const PrecisionContext& ctx256() {
    static PrecisionContext c(256);
    return c;
}
double rel(const Real& a, const Real& b) { return (abs(a - b) / abs(b)).to_double(); }
}  // namespace

TEST_CASE("alpha0 admissible range") {
    const auto& ctx = ctx256();
    SUBCASE("log-kernel constants give 1/(19 sqrt 2)") {
        Real sup = alpha0_range(1 / ctx.pi, 27 * ctx.pi, ctx);
        Real want = 1 / (19 * sqrt(ctx.make(2.0)));
        CHECK(rel(sup, want) < 1e-60);
    }
    SUBCASE("A3 -> 0 collapses the range") {
        Real sup = alpha0_range(1 / ctx.pi, ctx.make(1e-9), ctx);
        CHECK(sup.to_double() < 1e-4);
    }
    SUBCASE("matches a doubled-precision recomputation on the arsinh-kernel instance") {
        PrecisionContext wide(512);
        Real a3 = script_a3(sqrt(ctx.make(0.9)), ctx);
        Real a3w = script_a3(sqrt(wide.make(0.9)), wide);
        CHECK(rel(alpha0_range(1 / ctx.pi, a3, ctx), alpha0_range(1 / wide.pi, a3w, wide)) < 1e-70);
    }
}

TEST_CASE("saddle constants") {
    const auto& ctx = ctx256();
    Real a2 = 1 / ctx.pi, a3 = 27 * ctx.pi;
    Real a0 = ctx.parse("0.645") / (19 * sqrt(ctx.make(2.0)));
    SaddleConstants c = saddle_constants(ctx.make(1.0), a2, a3, a0, ctx);
    CHECK(c.beta > 0.0);
    CHECK(c.beta < 1.0);
    CHECK(c.b1 > 0.0);
    CHECK(c.b2 > 0.0);
    CHECK(c.b3 > 0.0);
    CHECK(c.b4 > 0.0);
    CHECK(c.omega1 > 0.0);
    CHECK(c.omega2 > 0.0);
    CHECK(c.omega3 > 0.0);

    SUBCASE("B2 reproduces the hard-coded exponential rates") {
        // 9.58e-6 and 4.79e-6 are floor-rounded B2 and B2/2 at this alpha0
        CHECK(c.b2.to_double() == doctest::Approx(9.58e-6).epsilon(5e-4));
        CHECK(c.b2.to_double() >= 9.58e-6);
    }
    SUBCASE("B3 is minimized essentially at 0.645/(19 sqrt 2)") {
        Real sup = alpha0_range(a2, a3, ctx);
        Real lo = sup / 1000, hi = sup * 0.999;
        Real phi = (sqrt(ctx.make(5.0)) - 1) / 2;
        Real x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        auto b3_of = [&](const Real& a) {
            return saddle_constants(ctx.make(1.0), a2, a3, a, ctx).b3;
        };
        for (int i = 0; i < 300; ++i) {
            if (b3_of(x1) < b3_of(x2)) {
                hi = x2;
                x2 = x1;
                x1 = hi - phi * (hi - lo);
            } else {
                lo = x1;
                x1 = x2;
                x2 = lo + phi * (hi - lo);
            }
        }
        double argmin = ((lo + hi) / 2).to_double();
        CHECK(std::abs(argmin - a0.to_double()) < 1e-5);
    }
    SUBCASE("alpha0 -> 0 sends beta and B2 to 0") {
        SaddleConstants tiny = saddle_constants(ctx.make(1.0), a2, a3, ctx.make(1e-9), ctx);
        CHECK(tiny.beta.to_double() < 1e-7);
        CHECK(tiny.b2.to_double() < 1e-15);
    }
    SUBCASE("inadmissible alpha0 is rejected") {
        CHECK_THROWS_AS((void)saddle_constants(ctx.make(1.0), a2, a3, ctx.make(0.05), ctx),
                        std::domain_error);
    }
}

TEST_CASE("U-family") {
    const auto& ctx = ctx256();
    SUBCASE("U(T,k) and eta") {
        Real u11 = u_cap(ctx.make(1.0), ctx.make(1.0), ctx);
        CHECK(rel(u11, sqrt(1 / (2 * ctx.pi) + ctx.make(0.25))) < 1e-60);
    }
    SUBCASE("prefactor at (1/2,1/2,1) equals 2^{3/2} * 3 * (...)") {
        Real u2 = u2_const(ctx.make(0.5), ctx.make(0.5), ctx.make(1.0), ctx);
        Real want = ctx.parse("2.962") * pow(ctx.make(2.0), ctx.make(1.5)) * 3 / 2;
        // |gamma-beta| + alpha + beta - gamma = 1/2 + 0 -> 2^{1/2} * 3; direct check
        Real expect = ctx.parse("2.962") * sqrt(ctx.make(2.0)) * 3;
        CHECK(rel(u2, expect) < 1e-60);
        (void)want;
    }
    SUBCASE("delta(T) branches") {
        UBoundsArgs args{ctx.make(0.5), ctx.make(0.5), ctx.make(0.0),  // gamma-alpha-beta = -1
                         ctx.make(0.5), ctx.make(2e4), ctx.make(50.0), ctx.make(1e4),
                         ctx.make(0.9), ctx.make(1.1), ctx.make(1e3), KRegime::k_small};
        // exercised only through u3; compare the two branches around the knee
        UBounds at = u_bounds(args, ctx);
        CHECK(at.u3 > 0.0);
        args.gamma = ctx.make(0.1);  // power branch
        UBounds off = u_bounds(args, ctx);
        CHECK(off.u3 > 0.0);
    }
    SUBCASE("doubled-precision stability of the full ceiling") {
        PrecisionContext wide(512);
        UBoundsArgs a{ctx.make(0.5), ctx.make(0.5), ctx.make(1.0), ctx.make(1e-4),
                      ctx.make(2e4), ctx.make(100.0), ctx.make(1e4), ctx.make(0.9),
                      ctx.make(1.1),  ctx.make(1e3),  KRegime::k_small};
        UBoundsArgs w{wide.make(0.5), wide.make(0.5), wide.make(1.0), wide.make(1e-4),
                      wide.make(2e4), wide.make(100.0), wide.make(1e4), wide.make(0.9),
                      wide.make(1.1),  wide.make(1e3),  KRegime::k_large};
        w.regime = KRegime::k_small;
        CHECK(rel(u_bounds(a, ctx).total, u_bounds(w, wide).total) < 1e-60);
    }
    SUBCASE("hypothesis violations are named") {
        UBoundsArgs bad{ctx.make(1.0), ctx.make(0.5), ctx.make(1.0), ctx.make(0.5),
                        ctx.make(2e4), ctx.make(50.0), ctx.make(1e4), ctx.make(0.9),
                        ctx.make(1.1), ctx.make(1e3),  KRegime::k_small};
        CHECK_THROWS_WITH_AS((void)u_bounds(bad, ctx), "u_bounds: alpha = 1 violates alpha != 1",
                             std::domain_error);
        bad.alpha = ctx.make(0.5);
        bad.k = ctx.make(0.5);
        CHECK_THROWS_AS((void)u_bounds(bad, ctx), std::domain_error);
    }
}

TEST_CASE("V-family") {
    const auto& ctx = ctx256();
    SUBCASE("script A2 is 1/pi and A3 is 8/A^2 + 9 pi") {
        Real a3 = script_a3(sqrt(ctx.make(0.9)), ctx);
        CHECK(rel(a3, 8 / ctx.make(0.9) + 9 * ctx.pi) < 1e-60);
        VBounds v = v_bounds(ctx.make(1.5), ctx.make(0.05), sqrt(ctx.make(0.9)),
                             sqrt(ctx.make(1.1)), ctx);
        CHECK(rel(v.script_a2, 1 / ctx.pi) < 1e-60);
    }
    SUBCASE("V3 positive and decreasing in A") {
        double prev = 1e300;
        for (double A = 0.3; A <= 1.4; A += 0.1) {
            Real sup = alpha0_range(1 / ctx.pi, script_a3(ctx.make(A), ctx), ctx);
            VBounds v = v_bounds(ctx.make(1.5), sup / 4, ctx.make(A), ctx.make(A * 1.2), ctx);
            double v3 = v.v3.to_double();
            CHECK(v3 > 0);
            CHECK(v3 < prev);
            prev = v3;
        }
    }
}

TEST_CASE("ledger: closed forms and coverage") {
    const auto& ctx = ctx256();
    SUBCASE("nu and m0") {
        Real n9 = nu(ctx.make(0.9), ctx);
        CHECK(rel(n9, 1 + sqrt(1 + 2 / (ctx.make(0.9) * ctx.pi))) < 1e-60);
        CHECK(rel(m0(ctx.make(0.9), ctx), 1 + ctx.make(0.9) * ctx.pi * n9) < 1e-60);
    }
    SUBCASE("every entry is finite and provenance is filled") {
        Real t0 = pow(ctx.make(10.0), 20);
        auto led = e_ledger(ctx.make(0.9), ctx.make(1.1), t0, t0, ctx.make(0.05), ctx);
        CHECK(led.entries().size() >= 30);
        for (const auto& e : led.entries()) {
            CHECK(!e.value.is_nan());
            CHECK(!e.value.is_inf());
            CHECK(!e.provenance.empty());
        }
        CHECK(led.get("E49") > 0.0);
    }
    SUBCASE("exponential collapse of the first-sum tail") {
        Real t = pow(ctx.make(10.0), 20);
        auto led = e_ledger(ctx.make(0.9), ctx.make(1.1), t, t, ctx.make(0.05), ctx);
        // E12(1e20) is exp(-9.58e-6 * 1e10)-small
        CHECK(log(led.get("E12")).to_double() < -300 * std::log(10.0));
    }
    SUBCASE("domain guard on the T floor") {
        CHECK_THROWS_AS((void)e_ledger(ctx.make(0.9), ctx.make(1.1), ctx.make(100.0),
                                       ctx.make(100.0), ctx.make(0.05), ctx),
                        std::domain_error);
    }
}

TEST_CASE("(b1,b2,b3) assembly against the reference table") {
    const auto& ctx = ctx256();
    auto rows = reproduce_table1(ctx);
    REQUIRE(rows.size() == 30);
    for (const auto& r : rows) {
        INFO("block (", r.aprime, ",", r.adprime, ") at T0 = 1e", r.t0_exponent);
        CHECK(r.b1 <= r.a1_ref);
        CHECK(r.a1_ref / r.b1 <= 1.5);
        CHECK(r.b2 <= r.a2_ref);
        CHECK(r.a2_ref / r.b2 <= 1.5);
        double ratio = r.a3_ref / r.b3;
        CHECK(ratio <= 10.0);
        CHECK(ratio >= 0.1);
    }
    SUBCASE("spot values match the independent pipeline to 6 digits") {
        // frozen from the reference implementation used to design the tests
        CHECK(rows[0].b1 == doctest::Approx(94.388604).epsilon(1e-6));
        CHECK(rows[0].b2 == doctest::Approx(274.80674).epsilon(1e-6));
        CHECK(rows[1].b3 == doctest::Approx(7.26591e18).epsilon(1e-5));
        CHECK(rows[19].b3 == doctest::Approx(2193.82).epsilon(1e-5));
        CHECK(rows[29].b3 == doctest::Approx(33902.4).epsilon(1e-5));
    }
}

TEST_CASE("b1 and b2 track T0 only through the resonance coefficient") {
    const auto& ctx = ctx256();
    Real ap = ctx.make(0.9), app = ctx.make(1.1), a0 = ctx.make(0.05);
    Real t0a = pow(ctx.make(10.0), 20), t0b = pow(ctx.make(10.0), 21);
    auto ca = assemble_a(ap, app, t0a, a0, ctx);
    auto cb = assemble_a(ap, app, t0b, a0, ctx);
    Real e49a = e_ledger(ap, app, t0a, t0a, a0, ctx).get("E49");
    Real e49b = e_ledger(ap, app, t0b, t0b, a0, ctx).get("E49");
    // finite difference of b1 equals 1.445 times that of E49
    Real db1 = cb.b1 - ca.b1;
    Real d49 = e49b - e49a;
    CHECK((abs(db1 - ctx.parse("1.445") * d49)).to_double() < 1e-40);
    CHECK(rel(ca.b1 / e49a, cb.b1 / e49b) < 1e-60);
    CHECK(rel(ca.b2 / e49a, cb.b2 / e49b) < 1e-60);
}

TEST_CASE("alpha0 selector lands on the table column to one significant figure") {
    const auto& ctx = ctx256();
    CHECK(choose_alpha0(ctx.make(0.9), ctx).to_double() == doctest::Approx(0.0518).epsilon(0.01));
    CHECK(choose_alpha0(ctx.make(0.5), ctx).to_double() == doctest::Approx(0.0442).epsilon(0.01));
    CHECK(choose_alpha0(ctx.make(0.1), ctx).to_double() == doctest::Approx(0.0190).epsilon(0.01));
    // one significant figure: 0.05, 0.04, 0.02
    CHECK(std::round(choose_alpha0(ctx.make(0.9), ctx).to_double() * 100) / 100 == 0.05);
    CHECK(std::round(choose_alpha0(ctx.make(0.5), ctx).to_double() * 100) / 100 == 0.04);
    CHECK(std::round(choose_alpha0(ctx.make(0.1), ctx).to_double() * 100) / 100 == 0.02);
}

TEST_CASE("smoothing coefficients and J") {
    const auto& ctx = ctx256();
    SUBCASE("fraka at 1e50 with the table row") {
        Real f = fraka(pow(ctx.make(10.0), 50), ctx.make(95.0), ctx.make(275.0),
                       ctx.parse("5.5e15"), ctx);
        CHECK(f.to_double() == doctest::Approx(3.158).epsilon(2e-4));
    }
    SUBCASE("J(1e50) and J(1e30)") {
        auto j50 = j_constant(pow(ctx.make(10.0), 50), ctx.make(95.0), ctx.make(275.0),
                              ctx.parse("5.5e15"), ctx);
        CHECK(std::abs(j50.j.to_double() - 3.194) < 0.002);
        auto j30 = j_constant(pow(ctx.make(10.0), 30), ctx.make(95.0), ctx.make(275.0),
                              ctx.parse("7.3e18"), ctx);
        CHECK(std::abs(j30.j.to_double() - 1.272e6) / 1.272e6 < 0.005);
    }
    SUBCASE("domain guard") {
        CHECK_THROWS_AS((void)fraka(ctx.make(1e20), ctx.make(95.0), ctx.make(275.0),
                                    ctx.make(1.0), ctx),
                        std::domain_error);
    }
    SUBCASE("J decreasing on [1e40, 1e100] and tail estimate below 2.3") {
        auto rows = reproduce_table2(ctx);
        double prev = 1e300;
        for (const auto& r : rows) {
            if (r.t0_exponent < 40) continue;
            CHECK(r.j_recomputed < prev);
            prev = r.j_recomputed;
        }
        // far tail with recomputed coefficients
        Real t0 = pow(ctx.make(10.0), 10000);
        Real a0 = ctx.make(0.05);
        auto ac = assemble_a(ctx.make(0.9), ctx.make(1.1), t0, a0, ctx);
        auto jc = j_constant(t0, ac.b1, ac.b2, ac.b3, ctx);
        CHECK(jc.j.to_double() < 2.3);
    }
}

TEST_CASE("explicit sqrt-scale chain") {
    const auto& ctx = ctx256();
    auto c = ingham_chain_check(ctx);
    CHECK(c.holds_at_base);
    CHECK(c.slack_increasing);
    CHECK(c.slack_at_base > 0.0);
}

TEST_CASE("cross-precision agreement of the full ledger to 60 bits") {
    PrecisionContext c256(256), c512(512);
    Real t0a = pow(c256.make(10.0), 20);
    Real t0b = pow(c512.make(10.0), 20);
    auto la = e_ledger(c256.make(0.9), c256.make(1.1), t0a, t0a, c256.make(0.05), c256);
    auto lb = e_ledger(c512.make(0.9), c512.make(1.1), t0b, t0b, c512.make(0.05), c512);
    REQUIRE(la.entries().size() == lb.entries().size());
    for (std::size_t i = 0; i < la.entries().size(); ++i) {
        const Real& a = la.entries()[i].value;
        const Real& b = lb.entries()[i].value;
        INFO(la.entries()[i].name);
        if (b.is_zero()) {
            CHECK(a.is_zero());
            continue;
        }
        CHECK((abs(a - b) / abs(b)).to_double() <= std::pow(2.0, -60));
    }
}
