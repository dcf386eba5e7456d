#include "atkexp/atkinson.hpp"

#include <cmath>
#include <stdexcept>

namespace atkexp::atkinson {

AtkinsonInput::AtkinsonInput(double T_, std::uint64_t N_, double a_lo_, double a_hi_)
    : T(T_), N(N_), a_lo(a_lo_), a_hi(a_hi_) {
    if (!(T >= 2)) throw std::domain_error("AtkinsonInput: requires T >= 2");
    if (!(0 < a_lo && a_lo <= a_hi)) throw std::invalid_argument("AtkinsonInput: need 0 < A' <= A''");
    if (double(N) < a_lo * T || double(N) > a_hi * T)
        throw std::domain_error("AtkinsonInput: N outside [A'T, A''T]");
}

Real cap_z(const Real& T, std::uint64_t N, const PrecisionContext& ctx) {
    Real nh = ctx.make(long(N)) + 0.5;
    Real root = sqrt(nh + 2 * T / ctx.pi) - sqrt(nh);
    return root * root / 4;
}

Real cap_z_rewritten(const Real& T, std::uint64_t N, const PrecisionContext& ctx) {
    Real nh = ctx.make(long(N)) + 0.5;
    Real t2pi = T / (2 * ctx.pi);
    return t2pi + nh / 2 - sqrt(nh * nh / 4 + t2pi * nh);
}

Coefficients coefficients(const Real& T, std::uint64_t n, const PrecisionContext& ctx) {
    if (!(T > 0.0) || n < 1) throw std::domain_error("coefficients: requires T > 0, n >= 1");
    const Real& pi = ctx.pi;
    Real pin = pi * long(n);
    Real q = pin / (2 * T);  // pi n / 2T
    Real ash = asinh(sqrt(q));
    Coefficients c;
    c.e = pow(1 + q, -0.25) / (sqrt(2 * T / pin) * ash);
    c.f = 2 * T * ash + sqrt(pin * pin + 2 * pin * T) - pi / 4;
    if (double(n) < (T / (2 * ctx.pi)).to_double()) {
        c.g = T * log(T / (2 * pin)) - T + pi / 4;
    } else {
        c.g = Real(0.0, ctx.working_bits);
        mpfr_set_nan(c.g.raw());
    }
    return c;
}

Real sigma1(const AtkinsonInput& in, const divisor::DivisorTable& table,
            const PrecisionContext& ctx) {
    if (in.N > table.limit()) throw std::out_of_range("sigma1: table too small");
    const Real T = ctx.make(in.T);
    const Real& pi = ctx.pi;
    Real sum(0.0, ctx.working_bits), comp(0.0, ctx.working_bits);
    for (std::uint64_t n = 1; n <= in.N; ++n) {
        Coefficients c = coefficients(T, n, ctx);
        Real term = double(table.d(n)) * pow(ctx.make(long(n)), -0.75) * c.e * cos(c.f);
        if (n % 2 == 1) term = -term;
        // Kahan at context precision
        Real y = term - comp;
        Real s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sqrt(ctx.make(2.0)) * pow(T / (2 * pi), 0.25) * sum;
}

Real sigma2(const AtkinsonInput& in, const divisor::DivisorTable& table,
            const PrecisionContext& ctx, AtkinsonTerms* diag) {
    const Real T = ctx.make(in.T);
    Real z = cap_z(T, in.N, ctx);
    Real zfloor = floor(z);
    auto M = std::uint64_t(zfloor.to_double());
    if (diag) {
        diag->cap_z = z.to_double();
        // boundary rule: sum over n <= floor(Z); warn when Z sits on the fence
        diag->boundary_warning = (abs(z - floor(z + 0.5)) < 1e-12);
        diag->n_sigma2_terms = M;
    }
    if (M < 1) return Real(0.0, ctx.working_bits);
    if (M > table.limit()) throw std::out_of_range("sigma2: table too small");
    Real sum(0.0, ctx.working_bits), comp(0.0, ctx.working_bits);
    for (std::uint64_t n = 1; n <= M; ++n) {
        Coefficients c = coefficients(T, n, ctx);
        Real lg = log(T / (2 * ctx.pi * long(n)));
        Real term = double(table.d(n)) / sqrt(ctx.make(long(n))) / lg * cos(c.g);
        Real y = term - comp;
        Real s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return -2 * sum;
}

AtkinsonTerms residual(const AtkinsonInput& in, double e_direct_value,
                       const divisor::DivisorTable& table, const PrecisionContext& ctx) {
    AtkinsonTerms out;
    out.T = in.T;
    out.N = in.N;
    Real s1 = sigma1(in, table, ctx);
    Real s2 = sigma2(in, table, ctx, &out);
    out.sigma1 = s1.to_double();
    out.sigma2 = s2.to_double();
    out.residual = e_direct_value - out.sigma1 - out.sigma2;
    return out;
}

Real jutila_bound(const Real& T, const Real& t0, const Real& j) {
    if (T < 1.1 * t0) throw std::domain_error("jutila_bound: requires T >= 1.1 T0");
    Real lg = log(T);
    return j * nthroot(T, 3) * lg * nthroot(lg * lg, 3);
}

}  // namespace atkexp::atkinson
