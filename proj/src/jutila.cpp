#include "atkexp/jutila.hpp"

#include <cmath>
#include <stdexcept>

namespace atkexp::jutila {

SmoothingParams smoothing_params(const Real& T, const Real& eps, const PrecisionContext& ctx) {
    if (!(eps > 0.0) || eps > 0.5)
        throw std::domain_error("smoothing_params: requires eps in (0, 1/2]");
    if (!(T > 2.0)) throw std::domain_error("smoothing_params: requires T > 2");
    SmoothingParams s{T,
                      eps,
                      Real(0.0, ctx.working_bits),
                      Real(0.0, ctx.working_bits),
                      Real(0.0, ctx.working_bits),
                      Real(0.0, ctx.working_bits),
                      Real(0.0, ctx.working_bits),
                      Real(0.0, ctx.working_bits),
                      Real(0.0, ctx.working_bits),
                      Real(0.0, ctx.working_bits),
                      false,
                      ""};
    s.mu1 = eps + 0.5;
    s.mu2 = s.mu1 - 1 - 2 * eps;
    Real L = log(T);
    s.Y = nthroot(T, 3) * pow(L, s.mu1);
    s.G = pow(L, s.mu2) / nthroot(T, 6);
    s.H = s.G * L;
    s.M = pow(L, 1 + 2 * eps) / (s.G * s.G);
    s.t1 = pow(sqrt(T - s.Y) - s.H, 2);
    s.t2 = pow(sqrt(T + s.Y) + s.H, 2);

    // window inequalities, in normalized form
    Real w = pow(L, s.mu1) / pow(nthroot(T, 3), 2);       // T^{-2/3} log^{mu1} T
    Real v = pow(L, s.mu2 + 1) / pow(nthroot(T, 3), 2);   // T^{-2/3} log^{mu2+1} T
    s.conditions_ok = true;
    if (!(w < 1.0)) {
        s.conditions_ok = false;
        s.failed_condition = "1 - T^{-2/3} log^{mu1} T must stay positive";
    } else if (!(sqrt(1 - w) + v <= 1.0)) {
        s.conditions_ok = false;
        s.failed_condition = "upper window end exceeds T";
    } else if (!(sqrt(1 + w) - v >= 1.0)) {
        s.conditions_ok = false;
        s.failed_condition = "lower window end falls below T";
    } else if (!(sqrt(1 - w) - v >= sqrt(2 / T))) {
        s.conditions_ok = false;
        s.failed_condition = "window start below 2";
    } else if (!(sqrt(1 + w) + v <= sqrt(ctx.make(1.5)))) {
        s.conditions_ok = false;
        s.failed_condition = "window end above 1.5 T";
    }
    if (T >= 1e28 && !s.conditions_ok)
        throw std::domain_error("smoothing_params: " + s.failed_condition);
    return s;
}

namespace {

// the kappa2 kernel whose supremum defines m2
Real m2_kernel(const Real& xi, const PrecisionContext& ctx) {
    Real ash = asinh(sqrt(xi));
    return abs((xi * sqrt(1 + xi) - sqrt(xi) * (1 + xi / 2) * ash)
               / (pow(1 + xi, 1.25) * ash * ash));
}

}  // namespace

KappaBounds kappa_constants(const Real& t0, const PrecisionContext& ctx) {
    if (t0 < 1e28) throw std::domain_error("kappa_constants: requires t0 >= 1e28");
    const Real& pi = ctx.pi;
    Real l = log(t0);
    Real tm23 = pow(nthroot(t0, 3), -2);
    KappaBounds k;
    k.delta_minus = 1 - sqrt(1 - tm23 * l) + tm23 * sqrt(l);
    k.delta_plus = -1 + sqrt(1 + tm23 * l) + tm23 * sqrt(l);
    Real omd = 1 - k.delta_minus;
    Real opd = 1 + k.delta_plus;
    k.m1 = 1 / (2 * sqrt(omd));
    {
        // golden-section maximum of the kappa2 kernel on (0, (pi/2)(1-d)^-2]
        Real hi = pi / 2 / (omd * omd);
        Real lo = hi / ctx.make(1e9);
        Real phi = (sqrt(ctx.make(5.0)) - 1) / 2;
        Real c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
        for (int i = 0; i < 220; ++i) {
            if (m2_kernel(c, ctx) > m2_kernel(d, ctx)) {
                hi = d;
                d = c;
                c = hi - phi * (hi - lo);
            } else {
                lo = c;
                c = d;
                d = lo + phi * (hi - lo);
            }
        }
        k.m2_argmax = (lo + hi) / 2;
        k.m2 = m2_kernel(k.m2_argmax, ctx) / omd;
    }
    k.m3 = 2 * (1 + asinh(sqrt(pi / (2 * omd * omd))));
    k.m4 = ctx.make(2.0) / 3 * pow(pi / 2, 1.5) * pow(omd, -4);
    k.m5 = ctx.make(1.0);  // |e^{iy} - 1| <= |y|
    k.aprime_derived = (1 - 1 / t0) / (opd * opd);
    k.adprime_derived = 1 / (omd * omd);
    Real m0ap = constants::m0(ctx.make(0.9), ctx);
    k.m6 = 2 / omd / pow(log(pow(omd / opd, 2) * m0ap), 2);
    k.m7 = 1 + (2 + log(opd * opd / (2 * pi))) / l;
    k.m8 = 2 / (3 * omd);
    k.rho1 = 4 * omd * omd / tm23 * pow(asinh(sqrt(pi) * l * l / (sqrt(ctx.make(2.0)) * opd * nthroot(t0, 3))), 2)
           / (pow(l, 4) + k.m3 * k.m3 * tm23 * l * l);
    k.rho2 = 4 * omd * omd * pow(log(m0ap), 2) / (1 + k.m7 * k.m7 * tm23);
    Real nu_app = constants::nu(ctx.make(1.1), ctx);
    Real nu_ap = constants::nu(ctx.make(0.9), ctx);
    k.z_minus = omd * omd / (pi * pi * (ctx.make(1.1) + 0.5) * nu_app * nu_app);
    k.z_plus = opd * opd / (ctx.make(0.9) * pi * pi * nu_ap * nu_ap);
    k.z = pow(opd, 3) / (pi * pi * (1 - 1 / (2 * t0)));
    return k;
}

double e1_smoothed(double x, double G, double H, const zetacrit::ZetaEvalConfig& cfg) {
    if (!(G > 0 && H > 0)) throw std::invalid_argument("e1_smoothed: G, H must be positive");
    double lo = (x - H) * (x - H);
    double hi = (x + H) * (x + H);
    if (lo < 2) throw std::domain_error("e1_smoothed: window reaches below T = 2");
    zetacrit::WindowIntegrator win(lo, hi, cfg);

    // panels in u tied to the zeta oscillation scale in t = (x+u)^2
    const double pi = 3.14159265358979323846;
    double osc_t = 2 * pi / std::log(hi / (2 * pi));     // oscillation length in t
    double du = osc_t / (2 * x) / cfg.quad_panels_per_oscillation;
    long n = std::max<long>(16, std::lround(2 * H / du));
    // 8-point Gauss-Legendre per panel
    static const double gx[4] = {0.18343464249564980494, 0.52553240991632898582,
                                 0.79666647741362673959, 0.96028985649753623168};
    static const double gw[4] = {0.36268378337836198297, 0.31370664587788728734,
                                 0.22238103445337447054, 0.10122853629037625915};
    double sum = 0;
    double w = 2 * H / double(n);
    for (long i = 0; i < n; ++i) {
        double a = -H + i * w, mid = a + w / 2, half = w / 2;
        for (int j = 0; j < 4; ++j) {
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                double u = mid + sgn * half * gx[j];
                double e = win.e_value((x + u) * (x + u));
                sum += gw[j] * e * std::exp(-(u / G) * (u / G)) * half;
            }
        }
    }
    return sum / G;
}

BoundAssembly jutila_bound_assembly(const Real& t0, const Real& a1, const Real& a2,
                                    const Real& a3, const PrecisionContext& ctx) {
    if (t0 < 1e28) throw std::domain_error("jutila_bound_assembly: requires t0 >= 1e28");
    BoundAssembly out{constants::j_constant(t0, a1, a2, a3, ctx), Real(0.0, ctx.working_bits)};
    // the exponentially collapsing companion term, at the domain edge T = 1.1 t0
    Real T = ctx.parse("1.1") * t0;
    Real lg = log(T);
    Real expo = ctx.make(0.5) - ctx.parse("6.28") * nthroot(lg, 3);  // 2 eps = 1/3
    out.secondary_term = ctx.parse("6.4") * pow(T, expo) * lg;
    return out;
}

}  // namespace atkexp::jutila
