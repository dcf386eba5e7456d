// Divisor-function machinery: the d(n) sieve with cumulative sums,
// Delta / Delta* remainders, the explicit Voronoi series evaluation, and
// the divisor-sum bounds of the summation lemmas.

#ifndef ATKEXP_DIVISOR_HPP
#define ATKEXP_DIVISOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "atkexp/real.hpp"

namespace atkexp::divisor {

class DivisorTable {
public:
    // Exact d(n) for n <= limit plus cumulative D(n).  Memory is
    // 8 bytes/entry; limits above ~1.5e8 are refused (cumulative counts
    // are kept in 32 bits).
    explicit DivisorTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    std::uint32_t d(std::uint64_t n) const;
    // D(n) = sum_{m<=n} d(m); D(0) = 0.
    std::uint64_t D(std::uint64_t n) const;

    // Delta(x) = D(x) - x(log x + 2 gamma - 1)
    double delta(double x) const;
    // Delta*(x): half weight at integer x, extra -1/4.
    // Delta(x) - Delta*(x) = 1/4 exactly off the integers.
    double delta_star(double x) const;

    // Binary sieve cache: "DTBL", version byte, 3 reserved bytes,
    // little-endian u64 limit, then d[1..limit] as little-endian u32.
    void save(const std::string& path) const;
    static DivisorTable load(const std::string& path);

private:
    DivisorTable() = default;
    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> d_;     // d_[n-1] = d(n)
    std::vector<std::uint32_t> cum_;   // cum_[n-1] = D(n)
};

struct VoronoiParams {
    double x0 = 1.0;        // uniformity floor, >= 1
    long n_terms = 200000;  // series length
    double tail_bound = 0;  // V(x0)/x0^{3/4}; recomputed by make()
    static VoronoiParams make(double x0, long n_terms, const PrecisionContext& ctx);
};

// V(x0) of the explicit Voronoi lemma:
// 15 zeta^2(7/4)/(2^11 pi^3 sqrt2) + 105 zeta^2(9/4)/(2^16 pi^4 sqrt2) x0^-1/2
//   + zeta^2(11/4)/(pi sqrt2) (1 + 3/(32 pi sqrt(x0))) x0^-1.
Real voronoi_v_bound(const Real& x0, const PrecisionContext& ctx);

struct VoronoiResult {
    double value;
    double certified_error;  // V(x0) x^-3/4 plus empirical truncation estimate
    double v_term;           // the certified V(x0) x^-3/4 part alone
    double truncation_estimate;  // empirical, not certified
};

// Partial sum of the two-frequency Voronoi series for Delta*(x): the value
// is the mean of the partial sums over the last quarter of the series, the
// truncation estimate twice the scatter of eight sub-block means.  Requires
// x >= params.x0 and params.n_terms <= table.limit().  Series lengths of
// ~64 x keep the phase increment resolved near the series end.
VoronoiResult voronoi_delta_star(double x, const VoronoiParams& params,
                                 const DivisorTable& table, const PrecisionContext& ctx);

// (x^{1/4}/(pi sqrt2)) sum_{n<=N} d(n) n^-3/4 cos(4 pi sqrt(nx) - pi/4);
// heuristic companion, no error certificate.
double truncated_voronoi(double x, long N, const DivisorTable& table);

enum class SumBoundKind { sqrt, three_quarters, tail_five_quarters };

struct BoundPair {
    double lhs;  // exact sum from the sieve (tail variant adds an integral majorant)
    double rhs;  // the lemma's explicit ceiling
};

// kind = sqrt:              sum_{n<=Y} d(n)/sqrt(n)   vs 2 sqrt(Y) log Y        (Y >= 5)
// kind = three_quarters:    sum_{n<=Y} d(n)/n^{3/4}   vs 4 Y^{1/4} log Y        (Y >= 2)
// kind = tail_five_quarters: sum_{n>X} d(n)/n^{5/4}   vs 4X^-1/4 logX + 8(g+2)X^-1/4 + (8/3)X^-3/4
// X is ignored for the first two kinds.
BoundPair divisor_sum_bounds(SumBoundKind kind, double X, double Y, const DivisorTable& table);

// Batched tails: one segmented pass over n <= sieve_to serves every X.
// lhs values include the integral majorant for n > sieve_to.
std::vector<BoundPair> tail_five_quarters_batch(const std::vector<double>& xs,
                                                std::uint64_t sieve_to);

enum class WeightedVariant { below, above, window };

// below:  sum_{Z/2 < n <= Z-sqrt Z} d(n)/(Z-n)   vs  log^2(Z)/2 - (log2-g) logZ + 2.365
// above:  sum_{Z+sqrt Z < n <= 2Z} d(n)/(n-Z)    vs  log^2(Z)/2 + g logZ + 3.721
// window: sum_{|n-Z|<=sqrt Z} d(n)/n^{3/4}       vs  2^{7/4} Z^-1/4 logZ + 12.21 Z^-1/4
BoundPair weighted_sum_near_Z(double Z, WeightedVariant variant, const DivisorTable& table);

}  // namespace atkexp::divisor

#endif
