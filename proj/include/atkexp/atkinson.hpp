// Atkinson's formula: the oscillating sums Sigma1(T,N) and Sigma2(T,N),
// the cutoff Z(T,N), and the residual  E_direct(T) - Sigma1 - Sigma2.
// Sums run in increasing n with compensated accumulation at the context
// precision.

#ifndef ATKEXP_ATKINSON_HPP
#define ATKEXP_ATKINSON_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "atkexp/divisor.hpp"
#include "atkexp/real.hpp"

namespace atkexp::atkinson {

struct AtkinsonInput {
    double T;
    std::uint64_t N;
    double a_lo = 0.9;  // A'
    double a_hi = 1.1;  // A''

    // enforces T >= 2 and A' T <= N <= A'' T
    AtkinsonInput(double T_, std::uint64_t N_, double a_lo_ = 0.9, double a_hi_ = 1.1);
    static AtkinsonInput default_for(double T) {
        return AtkinsonInput(T, std::uint64_t(T));  // N = floor(T)
    }
};

struct AtkinsonTerms {
    double T = 0;
    std::uint64_t N = 0;
    double sigma1 = 0;
    double sigma2 = 0;
    double cap_z = 0;
    std::uint64_t n_sigma2_terms = 0;
    bool boundary_warning = false;  // Z within 1e-12 of an integer
    std::optional<double> residual;
    std::optional<std::vector<std::pair<std::uint64_t, double>>> per_term_dump;
};

// Z(T,N) = (1/4) (sqrt(N + 1/2 + 2T/pi) - sqrt(N + 1/2))^2
Real cap_z(const Real& T, std::uint64_t N, const PrecisionContext& ctx);
// algebraic rewrite T/2pi + (N+1/2)/2 - sqrt((N+1/2)^2/4 + (T/2pi)(N+1/2))
Real cap_z_rewritten(const Real& T, std::uint64_t N, const PrecisionContext& ctx);

struct Coefficients {
    Real e, f, g;
};

// e(T,n) = (1 + pi n/2T)^{-1/4} (2T/pi n)^{-1/2} arsinh(sqrt(pi n/2T))^{-1}
// f(T,n) = 2T arsinh(sqrt(pi n/2T)) + sqrt((pi n)^2 + 2 pi n T) - pi/4
// g(T,n) = T log(T/2pi n) - T + pi/4   (requires n < T/2pi)
Coefficients coefficients(const Real& T, std::uint64_t n, const PrecisionContext& ctx);

Real sigma1(const AtkinsonInput& in, const divisor::DivisorTable& table,
            const PrecisionContext& ctx);
Real sigma2(const AtkinsonInput& in, const divisor::DivisorTable& table,
            const PrecisionContext& ctx, AtkinsonTerms* diag = nullptr);

// Full package; residual = e_direct_value - sigma1 - sigma2.
AtkinsonTerms residual(const AtkinsonInput& in, double e_direct_value,
                       const divisor::DivisorTable& table, const PrecisionContext& ctx);

// J(T0) T^{1/3} log^{5/3} T, valid for T >= 1.1 T0.
Real jutila_bound(const Real& T, const Real& t0, const Real& j);

}  // namespace atkexp::atkinson

#endif
