#include "atkexp/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "atkexp/numkit.hpp"

namespace atkexp::divisor {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243104;
constexpr std::uint64_t kMaxLimit = 150000000;  // keeps D(limit) inside u32
}  // namespace

DivisorTable::DivisorTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 1) throw std::invalid_argument("DivisorTable: limit must be >= 1");
    if (limit > kMaxLimit) throw std::length_error("DivisorTable: limit exceeds memory budget");
    d_.assign(limit, 0);
    for (std::uint64_t i = 1; i <= limit; ++i)
        for (std::uint64_t j = i; j <= limit; j += i) ++d_[j - 1];
    cum_.resize(limit);
    std::uint32_t run = 0;
    for (std::uint64_t n = 0; n < limit; ++n) {
        run += d_[n];
        cum_[n] = run;
    }
}

std::uint32_t DivisorTable::d(std::uint64_t n) const {
    if (n < 1 || n > limit_) throw std::out_of_range("DivisorTable::d: n outside table");
    return d_[n - 1];
}

std::uint64_t DivisorTable::D(std::uint64_t n) const {
    if (n == 0) return 0;
    if (n > limit_) throw std::out_of_range("DivisorTable::D: n outside table");
    return cum_[n - 1];
}

double DivisorTable::delta(double x) const {
    if (x < 1.0) throw std::domain_error("delta: requires x >= 1");
    auto n = static_cast<std::uint64_t>(std::floor(x));
    if (n > limit_) throw std::out_of_range("delta: x outside table");
    return double(D(n)) - x * (std::log(x) + 2 * kEulerGamma - 1);
}

double DivisorTable::delta_star(double x) const {
    if (x < 1.0) throw std::domain_error("delta_star: requires x >= 1");
    auto n = static_cast<std::uint64_t>(std::floor(x));
    if (n > limit_) throw std::out_of_range("delta_star: x outside table");
    double primed = double(D(n));
    if (double(n) == x) primed -= 0.5 * d(n);  // half weight at integer x
    return primed - x * (std::log(x) + 2 * kEulerGamma - 1) - 0.25;
}

void DivisorTable::save(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("DivisorTable::save: cannot open " + path);
    unsigned char header[8] = {'D', 'T', 'B', 'L', 1, 0, 0, 0};
    std::fwrite(header, 1, 8, f);
    unsigned char lim[8];
    for (int i = 0; i < 8; ++i) lim[i] = static_cast<unsigned char>((limit_ >> (8 * i)) & 0xff);
    std::fwrite(lim, 1, 8, f);
    for (std::uint32_t v : d_) {
        unsigned char b[4];
        for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
        std::fwrite(b, 1, 4, f);
    }
    std::fclose(f);
}

DivisorTable DivisorTable::load(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("DivisorTable::load: cannot open " + path);
    unsigned char header[8];
    if (std::fread(header, 1, 8, f) != 8 || std::memcmp(header, "DTBL", 4) != 0 || header[4] != 1) {
        std::fclose(f);
        throw std::runtime_error("DivisorTable::load: bad header");
    }
    unsigned char lim[8];
    if (std::fread(lim, 1, 8, f) != 8) {
        std::fclose(f);
        throw std::runtime_error("DivisorTable::load: truncated");
    }
    std::uint64_t limit = 0;
    for (int i = 0; i < 8; ++i) limit |= std::uint64_t(lim[i]) << (8 * i);
    DivisorTable t;
    t.limit_ = limit;
    t.d_.resize(limit);
    for (std::uint64_t n = 0; n < limit; ++n) {
        unsigned char b[4];
        if (std::fread(b, 1, 4, f) != 4) {
            std::fclose(f);
            throw std::runtime_error("DivisorTable::load: truncated");
        }
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
        t.d_[n] = v;
    }
    std::fclose(f);
    t.cum_.resize(limit);
    std::uint32_t run = 0;
    for (std::uint64_t n = 0; n < limit; ++n) {
        run += t.d_[n];
        t.cum_[n] = run;
    }
    return t;
}

// ---- Voronoi ---------------------------------------------------------------

Real voronoi_v_bound(const Real& x0, const PrecisionContext& ctx) {
    if (!(x0 >= 1.0)) throw std::domain_error("voronoi_v_bound: requires x0 >= 1");
    const Real& pi = ctx.pi;
    Real s2 = sqrt(ctx.make(2.0));
    Real z74 = numkit::zeta_real(ctx.parse("1.75"));
    Real z94 = numkit::zeta_real(ctx.parse("2.25"));
    Real z114 = numkit::zeta_real(ctx.parse("2.75"));
    return 15 * z74 * z74 / (2048 * pi * pi * pi * s2)
         + 105 * z94 * z94 / (65536 * pow(pi, 4) * s2) / sqrt(x0)
         + z114 * z114 / (pi * s2) * (1 + 3 / (32 * pi * sqrt(x0))) / x0;
}

VoronoiParams VoronoiParams::make(double x0, long n_terms, const PrecisionContext& ctx) {
    if (x0 < 1.0) throw std::domain_error("VoronoiParams: x0 must be >= 1");
    if (n_terms < 1) throw std::invalid_argument("VoronoiParams: n_terms must be >= 1");
    VoronoiParams p;
    p.x0 = x0;
    p.n_terms = n_terms;
    p.tail_bound = (voronoi_v_bound(ctx.make(x0), ctx) * pow(ctx.make(x0), -0.75)).to_double();
    return p;
}

VoronoiResult voronoi_delta_star(double x, const VoronoiParams& params,
                                 const DivisorTable& table, const PrecisionContext& ctx) {
    if (x < params.x0) throw std::domain_error("voronoi_delta_star: x below x0");
    const long M = params.n_terms;
    if (std::uint64_t(M) > table.limit())
        throw std::out_of_range("voronoi_delta_star: n_terms beyond the table");
    const double pi = 3.14159265358979323846;
    const double pref = std::pow(x, 0.25) / (pi * std::sqrt(2.0));

    // Value: mean of the partial sums over the last quarter of the series
    // (the series is boundedly oscillating, so averaging kills the leading
    // oscillation).  Truncation estimate, empirical and not certified:
    //   - scatter of eight sub-block means across that window, plus
    //   - the drift between the half-length and full-length window means,
    //     which picks up the coherent slow modes (x near an integer) that
    //     block scatter cannot see.  For an M^{-1/2} bias the drift is
    //     0.41 of the remaining error, hence the factor 3.5.
    // The certified part is the V(x0) x^{-3/4} tail of the lemma.
    const long w2_start = std::max<long>(1, M - std::max<long>(64, M / 4) + 1);
    const long w1_end = M / 2;
    const long w1_start = std::max<long>(1, w1_end - std::max<long>(32, M / 8) + 1);
    const long w2len = M - w2_start + 1;
    const long w1len = w1_end - w1_start + 1;
    const int blocks = 8;
    double sum = 0, comp = 0;
    double w1sum = 0, w2sum = 0;
    double blocksum[blocks] = {0};
    long blockcount[blocks] = {0};
    for (long n = 1; n <= M; ++n) {
        double u = 4 * pi * std::sqrt(double(n) * x);
        double phase = u - pi / 4;
        double t = table.d(n) / std::pow(double(n), 0.75)
                 * (std::cos(phase) - 3.0 / (32 * pi * std::sqrt(double(n) * x)) * std::sin(phase));
        // Kahan
        double y = t - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if (n >= w1_start && n <= w1_end) w1sum += sum;
        if (n >= w2_start) {
            w2sum += sum;
            int b = int((n - w2_start) * blocks / w2len);
            blocksum[b] += sum;
            ++blockcount[b];
        }
    }
    double mean = w2sum / double(w2len);
    double drift = std::abs(mean - w1sum / double(w1len));
    double scatter = 0;
    for (int b = 0; b < blocks; ++b) {
        if (!blockcount[b]) continue;
        scatter = std::max(scatter, std::abs(blocksum[b] / double(blockcount[b]) - mean));
    }

    VoronoiResult r;
    r.value = pref * mean;
    r.v_term = (voronoi_v_bound(ctx.make(params.x0), ctx)).to_double() * std::pow(x, -0.75);
    r.truncation_estimate = pref * (2.0 * scatter + 3.5 * drift);
    // Delta* jumps by d(m) at integers and the truncated series resolves
    // features no finer than ~sqrt(x/M); inside that width the value cannot
    // track the jump, so charge the unresolved fraction (sinc-tail decay
    // beyond it).
    {
        double m = std::round(x);
        double dist = std::abs(x - m);
        double w_res = std::sqrt(x / double(M));
        if (m >= 1 && std::uint64_t(m) <= table.limit()) {
            double q = std::min(1.0, 2.5 * w_res / std::max(dist, 1e-12));
            double jump = 0.5 * table.d(std::uint64_t(m)) * q * q;
            r.truncation_estimate += jump;
        }
    }
    r.certified_error = r.v_term + r.truncation_estimate;
    return r;
}

double truncated_voronoi(double x, long N, const DivisorTable& table) {
    if (x < 1.0) throw std::domain_error("truncated_voronoi: requires x >= 1");
    if (N < 0) throw std::invalid_argument("truncated_voronoi: N must be >= 0");
    if (std::uint64_t(N) > table.limit()) throw std::out_of_range("truncated_voronoi: N outside table");
    const double pi = 3.14159265358979323846;
    double sum = 0, comp = 0;
    for (long n = 1; n <= N; ++n) {
        double t = table.d(n) / std::pow(double(n), 0.75) * std::cos(4 * pi * std::sqrt(double(n) * x) - pi / 4);
        double y = t - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return std::pow(x, 0.25) / (pi * std::sqrt(2.0)) * sum;
}

// ---- summation lemmas -------------------------------------------------------

BoundPair divisor_sum_bounds(SumBoundKind kind, double X, double Y, const DivisorTable& table) {
    switch (kind) {
        case SumBoundKind::sqrt: {
            if (Y < 5) throw std::domain_error("divisor_sum_bounds(sqrt): requires Y >= 5");
            auto ny = std::uint64_t(std::floor(Y));
            if (ny > table.limit()) throw std::out_of_range("divisor_sum_bounds: Y outside table");
            double lhs = 0, comp = 0;
            for (std::uint64_t n = 1; n <= ny; ++n) {
                double t = table.d(n) / std::sqrt(double(n));
                double y = t - comp, s = lhs + y;
                comp = (s - lhs) - y;
                lhs = s;
            }
            return {lhs, 2 * std::sqrt(Y) * std::log(Y)};
        }
        case SumBoundKind::three_quarters: {
            if (Y < 2) throw std::domain_error("divisor_sum_bounds(three_quarters): requires Y >= 2");
            auto ny = std::uint64_t(std::floor(Y));
            if (ny > table.limit()) throw std::out_of_range("divisor_sum_bounds: Y outside table");
            double lhs = 0, comp = 0;
            for (std::uint64_t n = 1; n <= ny; ++n) {
                double t = table.d(n) / std::pow(double(n), 0.75);
                double y = t - comp, s = lhs + y;
                comp = (s - lhs) - y;
                lhs = s;
            }
            return {lhs, 4 * std::pow(Y, 0.25) * std::log(Y)};
        }
        case SumBoundKind::tail_five_quarters: {
            if (X < 1) throw std::domain_error("divisor_sum_bounds(tail): requires X >= 1");
            auto res = tail_five_quarters_batch({X}, 100000000ull);
            return res[0];
        }
    }
    throw std::logic_error("divisor_sum_bounds: unknown kind");
}

std::vector<BoundPair> tail_five_quarters_batch(const std::vector<double>& xs,
                                                std::uint64_t sieve_to) {
    const double g = kEulerGamma;
    // One segmented d(n) pass over n <= sieve_to.  Prefix sums of d(n)/n^{5/4}
    // are snapshotted at each threshold; tails follow as total - prefix.
    std::vector<std::size_t> order(xs.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> prefix_at(xs.size(), 0.0);
    std::size_t next = 0;

    double sum = 0, comp = 0;
    const std::uint64_t seg = 1u << 21;
    std::vector<std::uint32_t> buf(seg);
    for (std::uint64_t lo = 1; lo <= sieve_to; lo += seg) {
        std::uint64_t hi = std::min(lo + seg - 1, sieve_to);
        std::fill(buf.begin(), buf.begin() + (hi - lo + 1), 0u);
        // divisor pairs (i, n/i), i <= sqrt(n)
        for (std::uint64_t i = 1; i * i <= hi; ++i) {
            std::uint64_t start = std::max(lo, i * i);
            std::uint64_t first = (start + i - 1) / i * i;
            for (std::uint64_t j = first; j <= hi; j += i)
                buf[j - lo] += (j == i * i) ? 1u : 2u;
        }
        for (std::uint64_t n = lo; n <= hi; ++n) {
            while (next < order.size() && double(n) > xs[order[next]]) {
                prefix_at[order[next]] = sum;
                ++next;
            }
            double t = buf[n - lo] * std::pow(double(n), -1.25);
            double y = t - comp, s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        }
    }
    while (next < order.size()) {
        prefix_at[order[next]] = sum;
        ++next;
    }
    // Monotone majorant for the untouched tail n > sieve_to, added to the lhs
    // so the asserted inequality stays conservative:
    //   sum_{n>S} d(n)/n^{5/4} <= 4 S^-1/4 log S + 8(g+2) S^-1/4 + (8/3) S^-3/4
    // (the same lemma shape evaluated at S, which is a true upper bound).
    double S = double(sieve_to);
    double tail_major = 4 * std::pow(S, -0.25) * std::log(S) + 8 * (g + 2) * std::pow(S, -0.25)
                      + 8.0 / 3.0 * std::pow(S, -0.75);
    std::vector<BoundPair> out;
    out.reserve(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        double X = xs[k];
        double rhs = 4 * std::pow(X, -0.25) * std::log(X) + 8 * (g + 2) * std::pow(X, -0.25)
                   + 8.0 / 3.0 * std::pow(X, -0.75);
        out.push_back({(sum - prefix_at[k]) + tail_major, rhs});
    }
    return out;
}

BoundPair weighted_sum_near_Z(double Z, WeightedVariant variant, const DivisorTable& table) {
    const double g = kEulerGamma;
    if (variant == WeightedVariant::window) {
        if (Z < 4) throw std::domain_error("weighted_sum_near_Z(window): requires Z >= 4");
    } else if (!(Z > 4)) {
        throw std::domain_error("weighted_sum_near_Z: requires Z > 4");
    }
    double lo = 0, hi = 0;
    switch (variant) {
        case WeightedVariant::below: lo = Z / 2; hi = Z - std::sqrt(Z); break;
        case WeightedVariant::above: lo = Z + std::sqrt(Z); hi = 2 * Z; break;
        case WeightedVariant::window: lo = Z - std::sqrt(Z); hi = Z + std::sqrt(Z); break;
    }
    auto nlo = std::uint64_t(std::floor(lo));  // range is (lo, hi]
    auto nhi = std::uint64_t(std::floor(hi));
    if (nhi > table.limit()) throw std::out_of_range("weighted_sum_near_Z: range outside table");
    double lhs = 0;
    for (std::uint64_t n = nlo + 1; n <= nhi; ++n) {
        if (double(n) <= lo) continue;
        switch (variant) {
            case WeightedVariant::below: lhs += table.d(n) / (Z - double(n)); break;
            case WeightedVariant::above: lhs += table.d(n) / (double(n) - Z); break;
            case WeightedVariant::window: lhs += table.d(n) / std::pow(double(n), 0.75); break;
        }
    }
    double L = std::log(Z);
    double rhs = 0;
    switch (variant) {
        case WeightedVariant::below: rhs = L * L / 2 - (std::log(2.0) - g) * L + 2.365; break;
        case WeightedVariant::above: rhs = L * L / 2 + g * L + 3.721; break;
        case WeightedVariant::window:
            rhs = std::pow(2.0, 1.75) * std::pow(Z, -0.25) * L + 12.21 * std::pow(Z, -0.25);
            break;
    }
    return {lhs, rhs};
}

}  // namespace atkexp::divisor
