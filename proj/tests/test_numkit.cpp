#include <random>

#include "atkexp/numkit.hpp"
#include "doctest.h"

using namespace atkexp;

namespace {
const PrecisionContext& ctx192() {
    static PrecisionContext c(192);
    return c;
}
double rel_err(const Real& got, const Real& want) {
    return (abs(got - want) / abs(want)).to_double();
}
}  // namespace

TEST_CASE("precision context caches pi and gamma to 2 ulp of a wider run") {
    PrecisionContext narrow(192), wide(192 + 32);
    Real dpi = abs(narrow.pi - wide.pi);
    Real dg = abs(narrow.euler_gamma - wide.euler_gamma);
    Real ulp = pow(Real(2.0, 224), -191) * narrow.pi;
    CHECK(dpi <= 2 * ulp);
    CHECK(dg <= 2 * ulp);
}

TEST_CASE("arsinh fixed points and identities") {
    const auto& ctx = ctx192();
    CHECK(numkit::arsinh(ctx.make(0.0)).is_zero());
    Real want = log(1 + sqrt(ctx.make(2.0)));
    CHECK(rel_err(numkit::arsinh(ctx.make(1.0)), want) < 1e-50);

    // value at pi*5000/(2e4) against an independent high-precision digit string
    Real x = ctx.pi * 5000 / 20000;
    Real ref = ctx.parse("0.721225488726779794821715371465278013114203078");
    CHECK(rel_err(numkit::arsinh(x), ref) < 1e-45);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-40.0, 40.0);
    for (int i = 0; i < 10000; ++i) {
        Real v = ctx.make(u(rng));
        CHECK(abs(numkit::arsinh(-v) + numkit::arsinh(v)).to_double() == 0.0);  // odd, exactly
    }
    for (int i = 0; i < 200; ++i) {
        Real v = ctx.make(u(rng));
        Real back = sinh(numkit::arsinh(v));
        // round trip to working precision - 8 bits
        CHECK(abs(back - v).to_double() <= std::abs(v.to_double()) * std::pow(2.0, -184) + 1e-58);
    }
}

TEST_CASE("zeta_real closed forms and oracle agreement") {
    const auto& ctx = ctx192();
    Real pi2 = ctx.pi * ctx.pi;
    CHECK(rel_err(numkit::zeta_real(2.0, ctx), pi2 / 6) < 1e-55);
    CHECK(rel_err(numkit::zeta_real(4.0, ctx), pi2 * pi2 / 90) < 1e-55);

    // 5/4 against the library route and a frozen digit string
    Real z54 = numkit::zeta_real(ctx.parse("1.25"));
    CHECK(rel_err(z54, mpfr_zeta_oracle(ctx.parse("1.25"))) < 1e-50);
    CHECK(rel_err(z54, ctx.parse("4.59511182584294338068537803969462565228102978")) < 1e-44);

    // doubled-precision self-check
    PrecisionContext wide(384);
    CHECK(rel_err(z54, numkit::zeta_real(wide.parse("1.25"))) < 1e-55);

    // monotone decreasing on (1, inf)
    double prev = 1e300;
    for (double s : {1.06, 1.25, 1.5, 2.0, 3.0, 5.0, 9.0, 20.0}) {
        double v = numkit::zeta_real(s, ctx).to_double();
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS((void)numkit::zeta_real(1.0, ctx), std::domain_error);
    CHECK_THROWS_AS((void)numkit::zeta_real(0.3, ctx), std::domain_error);
}

TEST_CASE("dilog on every branch") {
    const auto& ctx = ctx192();
    CHECK(numkit::dilog(ctx.make(0.0), ctx).is_zero());
    CHECK(rel_err(numkit::dilog(ctx.make(1.0), ctx), ctx.pi * ctx.pi / 6) < 1e-50);
    CHECK(rel_err(numkit::dilog(ctx.make(-0.5), ctx),
                  ctx.parse("-0.448414206923646202443064405915774320834269941")) < 1e-44);
    // inversion branch (x < -1)
    CHECK(rel_err(numkit::dilog(ctx.make(-3.0), ctx),
                  ctx.parse("-1.93937542076670895307727171917789144122259018")) < 1e-44);
    // library oracle across the range
    for (double x : {-20.0, -1.7, -1.0, -0.3, 0.2, 0.55, 0.93}) {
        CHECK(rel_err(numkit::dilog(ctx.make(x), ctx), mpfr_li2_oracle(ctx.make(x))) < 1e-45);
    }
    CHECK_THROWS_AS((void)numkit::dilog(ctx.make(1.5), ctx), std::domain_error);

    SUBCASE("reflection identity at 128 bits") {
        PrecisionContext c(128);
        Real pi2_6 = c.pi * c.pi / 6;
        for (int i = 1; i < 32; ++i) {
            Real x = c.make(i / 32.0);
            Real lhs = numkit::dilog(x, c) + numkit::dilog(1 - x, c);
            Real rhs = pi2_6 - log(x) * log(1 - x);
            CHECK(abs(lhs - rhs).to_double() < 1e-20);
        }
    }
}

TEST_CASE("bessel second kind: branches, remainder windows, positivity") {
    const auto& ctx = ctx192();

    SUBCASE("series vs frozen references") {
        CHECK(rel_err(numkit::bessel_y1_series(ctx.make(3.0), ctx),
                      ctx.parse("0.324674424791799978437012839287953239669275143")) < 1e-40);
        CHECK(rel_err(numkit::bessel_y1_series(ctx.make(20.0), ctx),
                      ctx.parse("-0.165511614362521295863976023243696235071913757")) < 1e-35);
        CHECK(rel_err(numkit::bessel_k1_series(ctx.make(20.0), ctx),
                      ctx.parse("5.88305796955703817765028217154281054233226602e-10")) < 1e-30);
    }
    SUBCASE("asymptotic vs frozen references") {
        CHECK(rel_err(numkit::bessel_y1_asymptotic(ctx.make(20.0), ctx),
                      ctx.parse("-0.165511614362521295863976023243696235071913757")) < 1e-12);
        CHECK(rel_err(numkit::bessel_k1_asymptotic(ctx.make(300.0), ctx),
                      ctx.parse("3.7298958583323726985774019105328941342639508e-132")) < 1e-30);
    }
    SUBCASE("dual-method agreement at the crossover") {
        Real u(20.0, 192);
        Real ys = numkit::bessel_y1_series(u, ctx);
        Real ya = numkit::bessel_y1_asymptotic(u, ctx);
        CHECK(rel_err(ys, ya) < 1e-10);
        Real ks = numkit::bessel_k1_series(u, ctx);
        Real ka = numkit::bessel_k1_asymptotic(u, ctx);
        CHECK(rel_err(ks, ka) < 1e-10);
    }
    SUBCASE("K1 asymptotic prefactor window at u = 1000") {
        Real u = ctx.make(1000.0);
        Real r1 = numkit::bessel_second_kind(u, ctx).k1 * sqrt(2 * u / ctx.pi) * exp(u);
        CHECK(abs(r1 - 1).to_double() <= 3.0 / 8000);
    }
    SUBCASE("K1 positive on a log grid") {
        for (double u : {0.01, 0.5, 3.0, 19.0, 21.0, 80.0, 500.0})
            CHECK(numkit::bessel_second_kind(ctx.make(u), ctx).k1 > 0.0);
    }
    CHECK_THROWS_AS((void)numkit::bessel_second_kind(ctx.make(0.0), ctx), std::domain_error);
}

TEST_CASE("stirling remainder ceiling") {
    const auto& ctx = ctx192();
    Real one = numkit::stirling_remainder_bound(ctx.make(1.0));
    Real want = log(ctx.make(1.25)) / 2 + ctx.make(1.0) / 12 + ctx.make(1.0) / 90;
    CHECK(rel_err(one, want) < 1e-55);
    CHECK(numkit::stirling_remainder_bound(ctx.make(1e6)).to_double() < 2.1e-7);
    double prev = 1e300;
    for (double e = 0; e <= 9.01; e += 0.25) {
        double v = numkit::stirling_remainder_bound(ctx.make(std::pow(10.0, e))).to_double();
        CHECK(v < prev);
        prev = v;
    }
}
