// Numerical verification of the saddle point machinery: contour-deformed
// evaluation of int_a^b phi(x) e^{2 pi i (f(x)+kx)} dx, the
// main-term + certified-remainder decomposition, and the two concrete
// integral families it certifies.

#ifndef ATKEXP_SADDLE_HPP
#define ATKEXP_SADDLE_HPP

#include <complex>
#include <functional>
#include <optional>

#include "atkexp/constants.hpp"
#include "atkexp/real.hpp"

namespace atkexp::saddle {

using Cplx = std::complex<double>;

struct SaddleProblem {
    double a, b;  // interval, a < b
    double k;
    std::function<Cplx(Cplx)> phi;  // holomorphic on the mu-disks
    std::function<Cplx(Cplx)> f;
    std::function<double(double)> mu;         // disk radius
    std::function<double(double)> phi_major;  // Phi(x)
    std::function<double(double)> f_major;    // F(x)
    double a1, a2, a3;  // hypothesis constants A1..A3
    double alpha0;
};

struct SaddleResult {
    Cplx numeric_value;
    std::optional<Cplx> main_term;
    double r1_bound = 0, r2_bound = 0, r3_bound = 0;
    double defect = 0;  // |numeric - main| (or |numeric| when no saddle)
    std::optional<double> saddle_x0;
    double quadrature_error_est = 0;
    double ceiling() const { return r1_bound + r2_bound + r3_bound; }
    bool verified() const { return defect <= ceiling() + quadrature_error_est; }
};

// first derivative of a holomorphic function at a real point (complex step)
double re_fprime(const std::function<Cplx(Cplx)>& f, double x);
double re_fsecond(const std::function<Cplx(Cplx)>& f, double x);

// contour-deformed value of E(a, b, k; phi, f); the paths hug
// x -+ alpha0 (1+i) mu(x) so the integrand decays exponentially.
std::pair<Cplx, double> eval_oscillatory(const SaddleProblem& p, double tol);

// straight real-axis evaluation with oscillation-matched panels; slow, used
// for the Cauchy-consistency cross-check.
std::pair<Cplx, double> eval_real_axis(const SaddleProblem& p, double tol);

// main term + remainder ceilings; locates the saddle by monotone
// root-finding on f' + k (bisection then Newton).
SaddleResult saddle_decompose(const SaddleProblem& p, double tol = 1e-9);

// log-kernel instance: phi = y^-alpha (1+y)^-beta log((1+y)/y)^-gamma,
// f = (T/2pi) log((1+y)/y); asserts |numeric - main| <= U ceiling.
struct FirstIntegralCheck {
    SaddleResult result;
    Cplx closed_form_main;
    Real u_ceiling;
    bool defect_within_ceiling;
    bool main_matches_closed_form;  // to 1e-8 relative
    double phase_identity_defect;   // |2 pi (f(x0)+k x0 + 1/8) - closed-form phase| mod 2pi
    double fsecond_identity_defect; // |f''(x0) - 4 pi k^2 U(T,k)/T| relative
};
FirstIntegralCheck check_first_integral(double alpha, double beta, double gamma, double a,
                                        double b, double k, double T, double aprime,
                                        double adprime, double t0,
                                        const PrecisionContext& ctx);

// arsinh-kernel instance over [a, infinity), truncated at max(T, 2 x0);
// asserts |numeric - main| <= V ceiling.
struct SecondIntegralCheck {
    SaddleResult result;
    Cplx closed_form_main;
    Real v_ceiling;
    bool defect_within_ceiling;
    bool main_matches_closed_form;
    bool degenerate;  // hypotheses failed: main term omitted
};
SecondIntegralCheck check_second_integral(double alpha, double a, double n, double T,
                                          double a_cap, double a_cap_prime,
                                          const PrecisionContext& ctx);

// Taylor-remainder ceilings for f(z) = 1/z on nested disks: both stated
// bounds hold for the degree-k remainder, up to the double-precision noise
// floor of computing the remainder as a difference.
struct TaylorCheck {
    double remainder;
    double bound_m1, bound_m2;
    double noise_floor;  // rounding scale of the remainder subtraction
    bool ok() const {
        return remainder <= bound_m1 * (1 + 1e-12) + noise_floor
            && remainder <= bound_m2 * (1 + 1e-12) + noise_floor;
    }
};
TaylorCheck taylor_remainder_check(Cplx z0, double r1, double r2, Cplx z, int k);

// quadrature of int_0^inf exp(-Ax - aB x^2/4) dx against the closed ceiling
// (2/a + e^{-1/a}) sqrt(2)/(A + sqrt(B)).
struct GaussTailCheck {
    double integral;
    double bound;
    bool ok() const { return integral <= bound * (1 + 1e-10); }
};
GaussTailCheck gaussian_tail_check(double A, double B, double a);

}  // namespace atkexp::saddle

#endif
