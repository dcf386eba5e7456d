// Special functions used across the library: arsinh, real zeta, the
// dilogarithm, Bessel Y1/K1 (oracle duty for the Voronoi series), and the
// Stirling remainder ceiling.  All evaluate at the precision of the
// supplied context and are deterministic.

#ifndef ATKEXP_NUMKIT_HPP
#define ATKEXP_NUMKIT_HPP

#include "atkexp/real.hpp"

namespace atkexp::numkit {

// log(x + sqrt(x^2+1)); odd, total on finite reals.
Real arsinh(const Real& x);

// zeta(s) for real s > 1 by Euler-Maclaurin, tail below 2^-(prec+8).
// Throws std::domain_error for s <= 1.
Real zeta_real(const Real& s);
Real zeta_real(double s, const PrecisionContext& ctx);

// Li2(x) for x <= 1.  Series on [-1/2,1/2], reflection on (1/2,1],
// Landen on [-1,-1/2), inversion Li2(x) = -pi^2/6 - log^2(-x)/2 - Li2(1/x)
// below -1.  Throws std::domain_error for x > 1.
Real dilog(const Real& x, const PrecisionContext& ctx);

struct BesselPair {
    Real y1;  // Y1(u)
    Real k1;  // K1(u)
};

// Y1 and K1 for u > 0.  Ascending series below the crossover, Hankel
// asymptotic expansions above; crossover at u = 20 where both branches
// reach <= 1e-15 relative at default precision.
BesselPair bessel_second_kind(const Real& u, const PrecisionContext& ctx);
Real bessel_y1_series(const Real& u, const PrecisionContext& ctx);
Real bessel_y1_asymptotic(const Real& u, const PrecisionContext& ctx);
Real bessel_k1_series(const Real& u, const PrecisionContext& ctx);
Real bessel_k1_asymptotic(const Real& u, const PrecisionContext& ctx);

// Certified |R(T)| ceiling from the Stirling step:
// (T/2) log(1 + 1/(4T^2)) + 1/(12T) + 1/(90T^3).
Real stirling_remainder_bound(const Real& T);

}  // namespace atkexp::numkit

#endif
