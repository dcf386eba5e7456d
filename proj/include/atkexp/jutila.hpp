// Smoothing machinery behind the T^{1/3} log^{5/3} T bound: window
// parameters (Y, G, H, M), the kappa-constant family, the Gaussian-smoothed
// error average E1(x), and the final bound assembly.

#ifndef ATKEXP_JUTILA_HPP
#define ATKEXP_JUTILA_HPP

#include "atkexp/constants.hpp"
#include "atkexp/real.hpp"
#include "atkexp/zetacrit.hpp"

namespace atkexp::jutila {

struct SmoothingParams {
    Real T, eps;
    Real mu1, mu2;     // mu1 = 1/2 + eps, mu2 = mu1 - 1 - 2 eps
    Real Y;            // T^{1/3} log^{mu1} T
    Real G;            // T^{-1/6} log^{mu2} T
    Real H;            // G log T
    Real M;            // G^{-2} log^{1+2 eps} T
    Real t1, t2;       // worst-case window ends (sqrt(T -+ Y) -+ H)^2
    bool conditions_ok = false;
    std::string failed_condition;
};

// Builds the window for T and eps in (0, 1/2]; the four window inequalities
// are verified numerically when T >= 1e28 (below that they are reported,
// not enforced).
SmoothingParams smoothing_params(const Real& T, const Real& eps, const PrecisionContext& ctx);

struct KappaBounds {
    Real delta_minus, delta_plus;
    Real m1, m2, m3, m4, m5, m6, m7, m8;  // m5 = 1, the slope bound of |e^{iy} - 1|
    Real rho1, rho2;
    Real z_minus, z_plus, z;
    Real aprime_derived, adprime_derived;
    Real m2_argmax;
};

// Every Taylor-defect ceiling at a given t0 >= 1e28; m2 by golden-section
// maximization over (0, (pi/2)(1 - delta_-)^{-2}].
KappaBounds kappa_constants(const Real& t0, const PrecisionContext& ctx);

// E1(x) = G^{-1} int_{-H}^{H} E((x+u)^2) e^{-(u/G)^2} du at desk scale,
// by panels tied to the zeta oscillation length.
double e1_smoothed(double x, double G, double H, const zetacrit::ZetaEvalConfig& cfg);

struct BoundAssembly {
    constants::JutilaConstants jc;
    Real secondary_term;  // 6.4 T^{1/2 - 6.28 log^{2 eps} T} log T at T = 1.1 t0, eps = 1/6
};

// assembles the final coefficient from a Table-1 style row (a1, a2, a3)
BoundAssembly jutila_bound_assembly(const Real& t0, const Real& a1, const Real& a2,
                                    const Real& a3, const PrecisionContext& ctx);

}  // namespace atkexp::jutila

#endif
