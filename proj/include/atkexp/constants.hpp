// The explicit-constant pipeline.  Saddle-lemma constants B1..B4 and
// omega1..omega3 feed two certified remainder families (the U-family for
// the log-kernel integral, the V-family for the arsinh-kernel integral),
// which combine into the E-ledger and finally the coefficient triple
// (b1, b2, b3) bounding the Atkinson residual, the smoothing constant
// fraka(T0), and J(T0).

#ifndef ATKEXP_CONSTANTS_HPP
#define ATKEXP_CONSTANTS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "atkexp/real.hpp"

namespace atkexp::constants {

// ---- saddle-lemma constants ------------------------------------------------

struct SaddleConstants {
    Real a1, a2, a3;          // A1..A3 of the saddle hypotheses
    Real alpha0;
    Real beta;                // 2 a0 sqrt2 A2 A3 / (3 (1 - a0 sqrt2)), must be in (0,1)
    Real b1, b2, b3, b4;      // B1..B4
    Real omega1, omega2, omega3;
};

// sup of admissible alpha0:
// min{ 1/((1 + 2 A2 A3/3) sqrt2), A3 (1+2A2)/2, (48 A3^3/pi^3)^{1/6} }
Real alpha0_range(const Real& a2, const Real& a3, const PrecisionContext& ctx);

SaddleConstants saddle_constants(const Real& a1, const Real& a2, const Real& a3,
                                 const Real& alpha0, const PrecisionContext& ctx);

// ---- U-family (log-kernel oscillatory integral remainders) -----------------

enum class KRegime { k_small, k_large };  // 1 <= k <= A''T   /   k >= A'T

struct UBoundsArgs {
    Real alpha, beta, gamma;
    Real a, b, k, T;
    Real aprime, adprime, t0;
    KRegime regime;
};

struct UBounds {
    Real u1, u2, u3, u4, u4_hat;
    Real total;      // U1 a^{1-alpha} T^-1 + U2 b^{gamma-alpha-beta} k^-1 + U3 + U4
    Real total_hat;  // same with U4_hat (no saddle present)
};

UBounds u_bounds(const UBoundsArgs& args, const PrecisionContext& ctx);

// building blocks, exposed for the E-ledger
Real u_cap(const Real& T, const Real& k, const PrecisionContext& ctx);  // sqrt(T/2pik + 1/4)
Real eta_of(const Real& k, const PrecisionContext& ctx);               // U(1,k) - 1/2
Real u1_const(const Real& alpha, const Real& beta, const Real& gamma, const Real& a,
              const PrecisionContext& ctx);
Real u2_const(const Real& alpha, const Real& beta, const Real& gamma, const PrecisionContext& ctx);
Real u41_const(const Real& alpha, const Real& beta, const Real& gamma, const Real& adprime,
               const PrecisionContext& ctx);
Real u42_const(const Real& alpha, const Real& beta, const Real& gamma, const Real& adprime,
               const PrecisionContext& ctx);
Real u43_const(const Real& alpha, const Real& beta, const Real& gamma, const Real& aprime,
               const Real& t0, const PrecisionContext& ctx);
Real u44_const(const Real& alpha, const Real& beta, const Real& gamma, const Real& aprime,
               const PrecisionContext& ctx);

// ---- V-family (arsinh-kernel integral remainders) --------------------------

struct VBounds {
    Real script_a1, script_a2, script_a3;  // A-family for this kernel
    SaddleConstants b;                     // B_i at (A2, A3(A), alpha0)
    Real v1, v2, v3;
};

// A is the sqrt(T)-scale floor of the integration interval; a_cap_prime
// the matching ceiling scale (enters only V1).
VBounds v_bounds(const Real& alpha, const Real& alpha0, const Real& a_cap,
                 const Real& a_cap_prime, const PrecisionContext& ctx);

Real script_a1(const Real& alpha, const Real& a_cap, const PrecisionContext& ctx);
Real script_a3(const Real& a_cap, const PrecisionContext& ctx);  // 8/A^2 + 9 pi

// nu(x) = 1 + sqrt(1 + 2/(pi x));  m0(x) = 1 + x pi nu(x)
Real nu(const Real& x, const PrecisionContext& ctx);
Real m0(const Real& x, const PrecisionContext& ctx);

// ---- E-ledger ---------------------------------------------------------------

struct LedgerEntry {
    std::string name;
    Real value;
    std::string provenance;  // which internal formula produced it
};

class ConstantLedger {
public:
    void put(const std::string& name, const Real& v, const std::string& prov);
    const Real& get(const std::string& name) const;
    bool has(const std::string& name) const { return index_.count(name) != 0; }
    const std::vector<LedgerEntry>& entries() const { return entries_; }

private:
    std::vector<LedgerEntry> entries_;
    std::map<std::string, std::size_t> index_;
};

// Every named constant of the residual assembly at (A', A'', T0, T, alpha0).
// Enforces the pipeline's floor on T0 (max of 4pi, 1/A'', sqrt(e)/A',
// 5 pi^2 (A''+1/2) nu(A'')^2) and T >= T0.
ConstantLedger e_ledger(const Real& aprime, const Real& adprime, const Real& t0, const Real& T,
                        const Real& alpha0, const PrecisionContext& ctx);

// ---- (b1, b2, b3) assembly ---------------------------------------------------

struct AtkinsonConstants {
    Real b1, b2, b3;  // pre-rounding assemblies
    Real a1, a2, a3;  // certified ceilings (b_i rounded up to 4 significant digits)
    double aprime = 0, adoubleprime = 0, alpha0 = 0;
    Real t0;
    std::vector<std::string> monotonicity_warnings;  // terms that failed the decrease check
};

struct B3Term {
    std::string name;
    std::function<Real(const Real&)> f;  // T -> value
};

// the individual T-dependent terms whose supremum over T >= T0 forms b3
std::vector<B3Term> b3_terms(const Real& aprime, const Real& adprime, const Real& t0,
                             const Real& alpha0, const PrecisionContext& ctx);

// requires t0 >= 2e11.  Supremum over T taken by verifying per-term decrease
// on a 50-point log grid over [T0, 1e6 T0] and evaluating at T0; terms that
// fail the check fall back to the grid maximum and are recorded.
AtkinsonConstants assemble_a(const Real& aprime, const Real& adprime, const Real& t0,
                             const Real& alpha0, const PrecisionContext& ctx);

// 1-D golden-section minimizer of the E411 coefficient over admissible alpha0.
Real choose_alpha0(const Real& aprime, const PrecisionContext& ctx);

// ---- smoothing bound constants ----------------------------------------------

struct JutilaConstants {
    Real fraka;
    Real j;
    Real t0;
};

// fraka(T0) = 2.111 + 25.4 loglog T0/log T0 + |a1| sqrt(pi log T0)/T0^{1/3}
//           + |a2| sqrt(pi)/(T0^{1/3} sqrt(log T0)) + (|a3| sqrt(pi)+6.781)/(T0^{1/3} log^{3/2} T0)
// requires T0 >= 1e28.
Real fraka(const Real& t0, const Real& a1, const Real& a2, const Real& a3,
           const PrecisionContext& ctx);
// J(T0) = fraka/sqrt(pi) + 1 + 2.001 log^{-1/3} T0
JutilaConstants j_constant(const Real& t0, const Real& a1, const Real& a2, const Real& a3,
                           const PrecisionContext& ctx);

// ---- reference tables and reproduction ----------------------------------------

struct Table1Block {
    double aprime, adprime, alpha0;
    double a1, a2;
    double a3[10];  // T0 = 1e20, 1e30, ..., 1e100, 1e1000
};
extern const Table1Block kTable1[3];
extern const double kTable1T0Exponents[10];

struct Table2Cell {
    double t0_exponent;
    double j;
};
extern const Table2Cell kTable2[8];

struct Table1Row {
    double aprime, adprime, alpha0, t0_exponent;
    double a1_ref, a2_ref, a3_ref;
    double b1, b2, b3;
    bool pass;
    std::string note;
};
struct Table2Row {
    double t0_exponent;
    double j_ref;
    double j_recomputed;
    double abs_diff, rel_diff;
    bool pass;
};

std::vector<Table1Row> reproduce_table1(const PrecisionContext& ctx);
std::vector<Table2Row> reproduce_table2(const PrecisionContext& ctx);

// The chain 3.87 sqrtT logT - 1.1 sqrtT + 95 log^2 T + 275 logT + 1.5e19
// <= 2331 sqrtT logT at T = 1e28, slack increasing on a log grid to 1e40.
struct InghamCheck {
    bool holds_at_base;
    bool slack_increasing;
    Real slack_at_base;
};
InghamCheck ingham_chain_check(const PrecisionContext& ctx);

}  // namespace atkexp::constants

#endif
