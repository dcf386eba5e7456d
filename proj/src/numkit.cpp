#include "atkexp/numkit.hpp"

#include <gmp.h>

#include <stdexcept>
#include <deque>
#include <vector>

namespace atkexp::numkit {

Real arsinh(const Real& x) { return atkexp::asinh(x); }

// ---- Bernoulli numbers (exact rationals, cached) ------------------------

namespace {

// B_n via the defining recursion sum_{j<=n} C(n+1,j) B_j = 0, B_0 = 1.
// Only even indices are ever requested.  Storage is a deque so element
// addresses stay stable while the table grows.
class BernoulliCache {
public:
    ~BernoulliCache() {
        for (auto& q : b_) mpq_clear(&q);
    }
    // returns B_n as a new Real at `prec`
    Real get(unsigned n, mpfr_prec_t prec) {
        extend(n);
        Real r(0.0, prec);
        mpfr_set_q(r.raw(), &b_[n], MPFR_RNDN);
        return r;
    }

private:
    void extend(unsigned n) {
        while (b_.size() <= n) {
            unsigned m = static_cast<unsigned>(b_.size());
            b_.emplace_back();
            mpq_init(&b_.back());
            if (m == 0) {
                mpq_set_ui(&b_.back(), 1, 1);
                continue;
            }
            // B_m = -1/(m+1) * sum_{j=0}^{m-1} C(m+1,j) B_j
            mpq_t acc, term;
            mpq_init(acc);
            mpq_init(term);
            mpz_t binom;
            mpz_init(binom);
            for (unsigned j = 0; j < m; ++j) {
                mpz_bin_uiui(binom, m + 1, j);
                mpq_set_z(term, binom);
                mpq_mul(term, term, &b_[j]);
                mpq_add(acc, acc, term);
            }
            mpq_div_2exp(acc, acc, 0);
            mpq_t div;
            mpq_init(div);
            mpq_set_si(div, -1, long(m) + 1);
            mpq_canonicalize(div);
            mpq_mul(acc, acc, div);
            mpq_set(&b_[m], acc);
            mpq_clear(acc);
            mpq_clear(term);
            mpq_clear(div);
            mpz_clear(binom);
        }
    }
    std::deque<__mpq_struct> b_;
};

BernoulliCache g_bernoulli;

}  // namespace

// ---- zeta --------------------------------------------------------------

Real zeta_real(const Real& s) {
    if (!(s > 1.0)) throw std::domain_error("zeta_real: requires s > 1");
    const mpfr_prec_t wp = s.prec();
    const long guard = 16;
    const mpfr_prec_t ip = wp + 2 * guard;
    Real target(1.0, ip);
    mpfr_mul_2si(target.raw(), target.raw(), -(wp + 8), MPFR_RNDN);

    // Euler-Maclaurin at pivot N:
    //   zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
    //           + sum_k B_2k/(2k)! * (s)_{2k-1} * N^(-s-2k+1)
    const long N = std::max<long>(24, ip / 4);
    Real sw(0.0, ip);
    mpfr_set(sw.raw(), s.raw(), MPFR_RNDN);

    Real sum(0.0, ip);
    for (long n = 1; n < N; ++n)
        sum += pow(Real(n, ip), -sw);
    Real Nr(N, ip);
    sum += pow(Nr, 1 - sw) / (sw - 1);
    sum += pow(Nr, -sw) / 2;

    // rising factorial s(s+1)...(s+2k-2); factorial (2k)!
    Real rising(1.0, ip), fact(1.0, ip), Npow(pow(Nr, -sw - 1));
    const Real N2 = Nr * Nr;
    for (unsigned k = 1; k <= 96; ++k) {
        rising *= (sw + long(2 * k - 2));
        if (k > 1) rising *= (sw + long(2 * k - 3));
        fact *= double(2 * k) * double(2 * k - 1);
        if (k > 1) Npow /= N2;
        Real term = g_bernoulli.get(2 * k, ip) / fact * rising * Npow;
        sum += term;
        // remainder below the next term's modulus for real s > 0
        Real bound = abs(g_bernoulli.get(2 * k + 2, ip)) / (fact * long(2 * k + 1) * long(2 * k + 2))
                     * abs(rising * (sw + long(2 * k - 1)) * (sw + long(2 * k))) * abs(Npow) / N2;
        if (bound < target) break;
        if (k == 96) throw std::runtime_error("zeta_real: Euler-Maclaurin tail did not reach target");
    }
    Real out(0.0, wp);
    mpfr_set(out.raw(), sum.raw(), MPFR_RNDN);
    return out;
}

Real zeta_real(double s, const PrecisionContext& ctx) {
    return zeta_real(ctx.make(s));
}

// ---- dilogarithm ---------------------------------------------------------

namespace {

// power series sum_{k>=1} x^k/k^2, |x| <= 1/2
Real dilog_series(const Real& x) {
    const mpfr_prec_t ip = x.prec();
    Real sum(0.0, ip), xp(x), term(0.0, ip);
    for (long k = 1;; ++k) {
        term = xp / (double(k) * double(k));
        sum += term;
        if (abs(term) < pow(Real(2.0, ip), -long(ip + 4))) break;
        xp *= x;
        if (k > 8 * long(ip)) throw std::runtime_error("dilog: series stalled");
    }
    return sum;
}

Real dilog_core(const Real& x, const PrecisionContext& ctx, const Real& pi2_6) {
    if (x.is_zero()) return Real(0.0, x.prec());
    if (x == Real(1.0, x.prec())) return pi2_6;
    Real ax = abs(x);
    if (ax <= 0.5) return dilog_series(x);
    if (x > 0.5) {
        // Li2(x) = pi^2/6 - log(x) log(1-x) - Li2(1-x)
        Real om = 1 - x;
        return pi2_6 - log(x) * log(om) - dilog_core(om, ctx, pi2_6);
    }
    // x in [-1, -1/2): Landen, maps to x/(x-1) in (1/3, 1/2]
    Real y = x / (x - 1);
    Real l = log(1 - x);
    return -dilog_core(y, ctx, pi2_6) - l * l / 2;
}

}  // namespace

Real dilog(const Real& x, const PrecisionContext& ctx) {
    if (x > 1.0) throw std::domain_error("dilog: requires x <= 1");
    const mpfr_prec_t ip = ctx.working_bits + 16;
    Real xi(0.0, ip);
    mpfr_set(xi.raw(), x.raw(), MPFR_RNDN);
    Real pi_i(0.0, ip);
    mpfr_const_pi(pi_i.raw(), MPFR_RNDN);
    Real pi2_6 = pi_i * pi_i / 6;

    Real res(0.0, ip);
    if (xi < -1.0) {
        // inversion onto (-1, 0)
        Real l = log(-xi);
        res = -pi2_6 - l * l / 2 - dilog_core(1 / xi, ctx, pi2_6);
    } else {
        res = dilog_core(xi, ctx, pi2_6);
    }
    Real out(0.0, ctx.working_bits);
    mpfr_set(out.raw(), res.raw(), MPFR_RNDN);
    return out;
}

// ---- Bessel Y1 / K1 ------------------------------------------------------

namespace {

// J1(u) = (u/2) sum_k (-u^2/4)^k / (k!(k+1)!)
Real besselj1(const Real& u, mpfr_prec_t ip) {
    Real q = u * u / 4;
    Real term(1.0, ip), sum(1.0, ip);
    for (long k = 1;; ++k) {
        term *= -q / (double(k) * double(k + 1));
        sum += term;
        if (abs(term) < pow(Real(2.0, ip), -long(ip + 4))) break;
    }
    return u / 2 * sum;
}

Real besseli1(const Real& u, mpfr_prec_t ip) {
    Real q = u * u / 4;
    Real term(1.0, ip), sum(1.0, ip);
    for (long k = 1;; ++k) {
        term *= q / (double(k) * double(k + 1));
        sum += term;
        if (abs(term) < pow(Real(2.0, ip), -long(ip + 4)) * abs(sum)) break;
    }
    return u / 2 * sum;
}

// Hankel coefficients a_k(nu=1): a_0 = 1, a_k = a_{k-1} (4 - (2k-1)^2)/(8k)
// P = sum over even k of a_k (-1)^(k/2) z^-k, Q over odd k.
void hankel_pq(const Real& u, mpfr_prec_t ip, Real& P, Real& Q) {
    P = Real(1.0, ip);
    Q = Real(0.0, ip);
    Real term(1.0, ip);
    Real prev = abs(term);
    for (long k = 1; k <= 64; ++k) {
        term *= Real(4 - (2 * k - 1) * (2 * k - 1), ip) / (8.0 * double(k)) / u;
        Real a = abs(term);
        if (a > prev) break;  // divergent tail reached
        int phase = (k / 2) % 2 ? -1 : 1;
        if (k % 2 == 0) P += phase * term; else Q += phase * term;
        if (a < pow(Real(2.0, ip), -long(ip + 4))) break;
        prev = a;
    }
}

}  // namespace

Real bessel_y1_series(const Real& u, const PrecisionContext& ctx) {
    const mpfr_prec_t ip = ctx.working_bits + 32;
    Real ui(0.0, ip);
    mpfr_set(ui.raw(), u.raw(), MPFR_RNDN);
    Real pi_i(0.0, ip);
    mpfr_const_pi(pi_i.raw(), MPFR_RNDN);
    Real gam(0.0, ip);
    mpfr_const_euler(gam.raw(), MPFR_RNDN);

    // Y1(u) = (2/pi) log(u/2) J1(u) - 2/(pi u)
    //       - (u/(2 pi)) sum_k [psi(k+1)+psi(k+2)] (-u^2/4)^k / (k!(k+1)!)
    Real q = ui * ui / 4;
    Real term(1.0, ip);        // (-q)^k/(k!(k+1)!)
    Real h1(0.0, ip), h2(1.0, ip);  // harmonic numbers H_k, H_{k+1}
    Real sum = (h1 + h2 - 2 * gam);
    for (long k = 1;; ++k) {
        term *= -q / (double(k) * double(k + 1));
        h1 += Real(1.0, ip) / double(k);
        h2 += Real(1.0, ip) / double(k + 1);
        Real t = (h1 + h2 - 2 * gam) * term;
        sum += t;
        if (abs(t) < pow(Real(2.0, ip), -long(ip + 4))) break;
    }
    Real res = 2 / pi_i * log(ui / 2) * besselj1(ui, ip) - 2 / (pi_i * ui) - ui / (2 * pi_i) * sum;
    Real out(0.0, ctx.working_bits);
    mpfr_set(out.raw(), res.raw(), MPFR_RNDN);
    return out;
}

Real bessel_k1_series(const Real& u, const PrecisionContext& ctx) {
    const mpfr_prec_t ip = ctx.working_bits + 32;
    Real ui(0.0, ip);
    mpfr_set(ui.raw(), u.raw(), MPFR_RNDN);
    Real gam(0.0, ip);
    mpfr_const_euler(gam.raw(), MPFR_RNDN);

    // K1(u) = 1/u + log(u/2) I1(u) - (u/4) sum_k [psi(k+1)+psi(k+2)] (u^2/4)^k/(k!(k+1)!)
    Real q = ui * ui / 4;
    Real term(1.0, ip);
    Real h1(0.0, ip), h2(1.0, ip);
    Real sum = (h1 + h2 - 2 * gam);
    for (long k = 1;; ++k) {
        term *= q / (double(k) * double(k + 1));
        h1 += Real(1.0, ip) / double(k);
        h2 += Real(1.0, ip) / double(k + 1);
        Real t = (h1 + h2 - 2 * gam) * term;
        sum += t;
        if (abs(t) < pow(Real(2.0, ip), -long(ip + 4)) * (abs(sum) + 1)) break;
    }
    Real res = 1 / ui + log(ui / 2) * besseli1(ui, ip) - ui / 4 * sum;
    Real out(0.0, ctx.working_bits);
    mpfr_set(out.raw(), res.raw(), MPFR_RNDN);
    return out;
}

Real bessel_y1_asymptotic(const Real& u, const PrecisionContext& ctx) {
    const mpfr_prec_t ip = ctx.working_bits + 16;
    Real ui(0.0, ip);
    mpfr_set(ui.raw(), u.raw(), MPFR_RNDN);
    Real pi_i(0.0, ip);
    mpfr_const_pi(pi_i.raw(), MPFR_RNDN);
    Real P(0.0, ip), Q(0.0, ip);
    hankel_pq(ui, ip, P, Q);
    // Y1(u) = sqrt(2/pi u) (-P cos(u - pi/4) + Q sin(u - pi/4))
    Real chi = ui - pi_i / 4;
    Real res = sqrt(2 / (pi_i * ui)) * (-P * cos(chi) + Q * sin(chi));
    Real out(0.0, ctx.working_bits);
    mpfr_set(out.raw(), res.raw(), MPFR_RNDN);
    return out;
}

Real bessel_k1_asymptotic(const Real& u, const PrecisionContext& ctx) {
    const mpfr_prec_t ip = ctx.working_bits + 16;
    Real ui(0.0, ip);
    mpfr_set(ui.raw(), u.raw(), MPFR_RNDN);
    Real pi_i(0.0, ip);
    mpfr_const_pi(pi_i.raw(), MPFR_RNDN);
    // K1(u) = sqrt(pi/2u) e^-u [1 + 3/(8u) - 15/(128u^2) + ...]; the signed
    // products (mu-1)(mu-9)... carry the alternation from k=2 on.
    Real term(1.0, ip), sum(1.0, ip);
    Real prev = abs(term);
    for (long k = 1; k <= 64; ++k) {
        term *= Real(4 - (2 * k - 1) * (2 * k - 1), ip) / (8.0 * double(k)) / ui;
        Real a = abs(term);
        if (a > prev) break;
        sum += term;
        if (a < pow(Real(2.0, ip), -long(ip + 4))) break;
        prev = a;
    }
    Real res = sqrt(pi_i / (2 * ui)) * exp(-ui) * sum;
    Real out(0.0, ctx.working_bits);
    mpfr_set(out.raw(), res.raw(), MPFR_RNDN);
    return out;
}

BesselPair bessel_second_kind(const Real& u, const PrecisionContext& ctx) {
    if (!(u > 0.0)) throw std::domain_error("bessel_second_kind: requires u > 0");
    if (u <= 20.0)
        return BesselPair{bessel_y1_series(u, ctx), bessel_k1_series(u, ctx)};
    return BesselPair{bessel_y1_asymptotic(u, ctx), bessel_k1_asymptotic(u, ctx)};
}

// ---- Stirling remainder ---------------------------------------------------

Real stirling_remainder_bound(const Real& T) {
    if (!(T > 0.0)) throw std::domain_error("stirling_remainder_bound: requires T > 0");
    Real T2 = T * T;
    return T / 2 * log1p(1 / (4 * T2)) + 1 / (12 * T) + 1 / (90 * T2 * T);
}

}  // namespace atkexp::numkit
