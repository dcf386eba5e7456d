#include "atkexp/zetacrit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "atkexp/real.hpp"

namespace atkexp::zetacrit {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2 * kPi;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243104;

// ---- Gauss-Legendre 16 on [-1,1] (positive half; antisymmetric) ----------
constexpr int kGL = 8;
constexpr double kGLx[kGL] = {
    0.09501250983763744018531933542496, 0.28160355077925891323046050146050,
    0.45801677765722738634241944298358, 0.61787624440264374844667176404879,
    0.75540440835500303389510119484744, 0.86563120238783174388046789771239,
    0.94457502307323257607798841553461, 0.98940093499164993259615417345033};
constexpr double kGLw[kGL] = {
    0.18945061045506849628539672320828, 0.18260341504492358886676366796922,
    0.16915651939500253818931207903036, 0.14959598881657673208150173054748,
    0.12462897125553387205247628219202, 0.09515851168249278480992510760225,
    0.06225352393864789286284383699438, 0.02715245941175409485178057245602};

// ---- Riemann-Siegel theta ---------------------------------------------

}  // namespace

double rs_theta(double t) {
    // theta(t) = (t/2) log(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3)
    //          + 31/(80640 t^5) + 127/(430080 t^7)
    double lt = std::log(t / kTwoPi);
    double inv = 1.0 / t, inv2 = inv * inv;
    return 0.5 * t * lt - 0.5 * t - kPi / 8
         + inv * (1.0 / 48 + inv2 * (7.0 / 5760 + inv2 * (31.0 / 80640 + inv2 * 127.0 / 430080)));
}

namespace {

// ---- Taylor tables for the Gabcke terms C_0..C_4 ------------------------
//
// psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) is entire; its Taylor
// jets are computed once in MPFR at 320 bits on 32 centers, then the
// C_k combinations
//   C0 = psi
//   C1 = -psi'''/(2^5 3 pi^2)
//   C2 =  psi''/(2^6 pi^2) + psi^(6)/(2^11 3^2 pi^4)
//   C3 = -psi'/(2^6 pi^2) - psi^(5)/(2^8 3 5 pi^4) - psi^(9)/(2^16 3^4 pi^6)
//   C4 =  psi/(2^7 pi^2) + 19 psi^(4)/(2^13 3 pi^4)
//       + 11 psi^(8)/(2^17 3^2 5 pi^6) + psi^(12)/(2^23 3^5 pi^8)
// are stored as double Taylor series in (p - center).

constexpr int kCenters = 32;
constexpr int kJetLen = 56;
constexpr int kTabOrder = 26;

struct CorrectionTables {
    // tab[k][c][i]: Taylor coefficient i of C_k at center c
    double tab[5][kCenters][kTabOrder];
};

using Jet = std::vector<Real>;

Jet jet_mul(const Jet& a, const Jet& b) {
    const auto prec = a[0].prec();
    Jet r(a.size(), Real(0.0, prec));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

Jet jet_div(const Jet& n, const Jet& d) {
    const auto prec = n[0].prec();
    Jet q(n.size(), Real(0.0, prec));
    for (std::size_t k = 0; k < n.size(); ++k) {
        Real acc = n[k];
        for (std::size_t j = 0; j < k; ++j) acc -= q[j] * d[k - j];
        q[k] = acc / d[0];
    }
    return q;
}

// sine and cosine of a jet via s' = u' c, c' = -u' s
void jet_sincos(const Jet& u, Jet& s, Jet& c) {
    const auto prec = u[0].prec();
    s.assign(u.size(), Real(0.0, prec));
    c.assign(u.size(), Real(0.0, prec));
    s[0] = sin(u[0]);
    c[0] = cos(u[0]);
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
        Real sa(0.0, prec), ca(0.0, prec);
        for (std::size_t j = 0; j <= k; ++j) {
            sa += (double(j) + 1) * u[j + 1] * c[k - j];
            ca += (double(j) + 1) * u[j + 1] * s[k - j];
        }
        s[k + 1] = sa / (double(k) + 1);
        c[k + 1] = -ca / (double(k) + 1);
    }
}

const CorrectionTables& correction_tables() {
    static const CorrectionTables tables = [] {
        CorrectionTables T{};
        const mpfr_prec_t prec = 320;
        Real pi(0.0, prec);
        mpfr_const_pi(pi.raw(), MPFR_RNDN);
        const Real pi2 = pi * pi;
        struct Term { int deriv; Real coeff; };
        for (int ci = 0; ci < kCenters; ++ci) {
            Real c = Real(2 * ci + 1, prec) / 64;
            // w(p) = p^2 - p - 1/16 around c
            Jet w(kJetLen, Real(0.0, prec));
            w[0] = c * c - c - Real(1, prec) / 16;
            w[1] = 2 * c - 1;
            w[2] = Real(1, prec);
            for (auto& x : w) x *= 2 * pi;
            Jet v(kJetLen, Real(0.0, prec));
            v[0] = 2 * pi * c;
            v[1] = 2 * pi;
            Jet sw, cw, sv, cv;
            jet_sincos(w, sw, cw);
            jet_sincos(v, sv, cv);
            Jet psi = jet_div(cw, cv);

            // psi^(j) as a jet: coefficients shift with factorial weights
            auto deriv_coeff = [&](int j, int i) {
                // i-th Taylor coefficient of psi^(j): psi_{i+j} * (i+j)!/i!
                Real f(1.0, prec);
                for (int m = 1; m <= j; ++m) f *= double(i + m);
                return psi[i + j] * f;
            };

            const Real c1 = -1 / (96 * pi2);
            const Real c2a = 1 / (64 * pi2), c2b = 1 / (18432 * pi2 * pi2);
            const Real c3a = -1 / (64 * pi2), c3b = -1 / (3840 * pi2 * pi2),
                       c3c = -1 / (5308416 * pow(pi2, 3));
            const Real c4a = 1 / (128 * pi2), c4b = Real(19, prec) / (24576 * pi2 * pi2),
                       c4c = Real(11, prec) / (5898240 * pow(pi2, 3)),
                       c4d = 1 / (2038431744 * pow(pi2, 4));
            for (int i = 0; i < kTabOrder; ++i) {
                T.tab[0][ci][i] = psi[i].to_double();
                T.tab[1][ci][i] = (c1 * deriv_coeff(3, i)).to_double();
                T.tab[2][ci][i] = (c2a * deriv_coeff(2, i) + c2b * deriv_coeff(6, i)).to_double();
                T.tab[3][ci][i] = (c3a * deriv_coeff(1, i) + c3b * deriv_coeff(5, i)
                                   + c3c * deriv_coeff(9, i)).to_double();
                T.tab[4][ci][i] = (c4a * deriv_coeff(0, i) + c4b * deriv_coeff(4, i)
                                   + c4c * deriv_coeff(8, i) + c4d * deriv_coeff(12, i)).to_double();
            }
        }
        return T;
    }();
    return tables;
}

// log n and 1/sqrt(n) tables for the main sum, grown on demand
struct MainSumTables {
    std::vector<double> logn{0.0}, rsq{0.0};
    void ensure(std::size_t n) {
        while (logn.size() <= n) {
            auto m = double(logn.size());
            logn.push_back(std::log(m));
            rsq.push_back(1.0 / std::sqrt(m));
        }
    }
};
MainSumTables& main_tables() {
    static MainSumTables t;
    return t;
}

// ---- Euler-Maclaurin branch ----------------------------------------------

// B_{2k}/(2k)! for k = 1..13
constexpr double kBernFact[13] = {
    8.33333333333333287e-02,  -1.38888888888888894e-03, 3.30687830687830710e-05,
    -8.26719576719576754e-07, 2.08767569878681002e-08,  -5.28419013868749322e-10,
    1.33825365306846789e-11,  -3.38968029632258272e-13, 8.58606205627784517e-15,
    -2.17486869855806192e-16, 5.50900282836022953e-18,  -1.39544646858125223e-19,
    3.53470703962946728e-21};

std::complex<double> zeta_em_complex(std::complex<double> s, double t_scale) {
    const int N = std::max(24, int(std::ceil(1.3 * t_scale)) + 8);
    std::complex<double> sum = 0;
    for (int n = 1; n < N; ++n)
        sum += std::exp(-s * std::log(double(n)));
    std::complex<double> Ns = std::exp(-s * std::log(double(N)));
    sum += Ns * double(N) / (s - 1.0);
    sum += 0.5 * Ns;
    std::complex<double> rising = s;
    double Npow = 1.0 / N;
    for (int k = 1; k <= 13; ++k) {
        sum += kBernFact[k - 1] * rising * Ns * Npow;
        if (k < 13) {
            rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
            Npow /= double(N) * double(N);
        }
    }
    return sum;
}

}  // namespace

void ZetaEvalConfig::validate() const {
    if (rs_correction_terms < 0 || rs_correction_terms > 4)
        throw std::invalid_argument("ZetaEvalConfig: rs_correction_terms must be 0..4");
    if (em_threshold < 10)
        throw std::invalid_argument("ZetaEvalConfig: em_threshold must be >= 10");
    if (quad_panels_per_oscillation < 4)
        throw std::invalid_argument("ZetaEvalConfig: quad_panels_per_oscillation must be >= 4");
}

double rs_correction(int k, double p) {
    if (k < 0 || k > 4) throw std::invalid_argument("rs_correction: k must be 0..4");
    const auto& T = correction_tables();
    int ci = std::clamp(int(p * kCenters), 0, kCenters - 1);
    double dp = p - (2 * ci + 1) / 64.0;
    const double* a = T.tab[k][ci];
    double acc = a[kTabOrder - 1];
    for (int i = kTabOrder - 2; i >= 0; --i) acc = acc * dp + a[i];
    return acc;
}

double hardy_z(double t, const ZetaEvalConfig& cfg) {
    cfg.validate();
    if (t < cfg.em_threshold) {
        // Z = e^{i theta} zeta(1/2+it); the theta asymptotic needs t >= ~10
        std::complex<double> z = zeta_em_complex({0.5, t}, t);
        std::complex<double> rot = std::exp(std::complex<double>(0, rs_theta(std::max(t, 1.0))));
        return (rot * z).real();
    }
    double a = std::sqrt(t / kTwoPi);
    auto N = std::uint64_t(a);
    double p = a - double(N);
    double th = rs_theta(t);
    auto& tabs = main_tables();
    tabs.ensure(N);
    double sum = 0, comp = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        double term = tabs.rsq[n] * std::cos(th - t * tabs.logn[n]);
        double y = term - comp, s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    sum *= 2;
    double corr = 0, apow = 1.0 / std::sqrt(a);
    for (int k = 0; k <= cfg.rs_correction_terms; ++k) {
        corr += rs_correction(k, p) * apow;
        apow /= a;
    }
    if (N % 2 == 0) corr = -corr;  // (-1)^(N-1)
    return sum + corr;
}

double zeta_half_abs2(double t, const ZetaEvalConfig& cfg) {
    cfg.validate();
    if (t < 0) throw std::domain_error("zeta_half_abs2: requires t >= 0");
    if (t < cfg.em_threshold) {
        std::complex<double> z = zeta_em_complex({0.5, t}, t);
        return std::norm(z);
    }
    double Z = hardy_z(t, cfg);
    return Z * Z;
}

double main_term(double T) {
    return T * std::log(T) - (1 + std::log(kTwoPi) - 2 * kEulerGamma) * T;
}

namespace {

double panel_width(double T, const ZetaEvalConfig& cfg) {
    double freq = std::max(std::log(std::max(T, 20.0) / kTwoPi), 1.0);
    return kTwoPi / freq / cfg.quad_panels_per_oscillation;
}

double gl_panel(double a, double b, const ZetaEvalConfig& cfg) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0;
    for (int i = 0; i < kGL; ++i) {
        acc += kGLw[i] * (zeta_half_abs2(mid + half * kGLx[i], cfg)
                          + zeta_half_abs2(mid - half * kGLx[i], cfg));
    }
    return acc * half;
}

// refined (split-in-two) panel and the |refined - coarse| delta
double refined_panel(double a, double b, const ZetaEvalConfig& cfg, double& delta) {
    double coarse = gl_panel(a, b, cfg);
    double mid = 0.5 * (a + b);
    double fine = gl_panel(a, mid, cfg) + gl_panel(mid, b, cfg);
    delta = std::abs(fine - coarse);
    return fine;
}

}  // namespace

std::vector<MeanSquareResult> mean_square_scan(const std::vector<double>& points,
                                               const ZetaEvalConfig& cfg) {
    cfg.validate();
    if (points.empty()) return {};
    double tmax = *std::max_element(points.begin(), points.end());
    for (double p : points)
        if (p < 2) throw std::domain_error("mean_square: requires T >= 2");
    const double w = panel_width(tmax, cfg);

    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });

    std::vector<MeanSquareResult> out(points.size());
    double sum = 0, comp = 0, err = 0;
    double t = 0;
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        double target = points[order[oi]];
        while (t < target) {
            double hi = std::min(t + w, target);
            double delta;
            double val = refined_panel(t, hi, cfg, delta);
            double y = val - comp, s = sum + y;
            comp = (s - sum) - y;
            sum = s;
            err += delta;
            t = hi;
        }
        MeanSquareResult r;
        r.T = target;
        r.integral = sum;
        r.main_term = main_term(target);
        r.e_value = r.integral - r.main_term;
        r.est_quad_error = err;
        out[order[oi]] = r;
    }
    return out;
}

MeanSquareResult mean_square(double T, const ZetaEvalConfig& cfg) {
    return mean_square_scan({T}, cfg)[0];
}

double e_direct(double T, const ZetaEvalConfig& cfg) {
    return mean_square(T, cfg).e_value;
}

WindowIntegrator::WindowIntegrator(double a, double b, const ZetaEvalConfig& cfg)
    : a_(a), b_(b), cfg_(cfg) {
    cfg.validate();
    if (!(2 <= a && a < b)) throw std::invalid_argument("WindowIntegrator: need 2 <= a < b");
    base_ = mean_square(a, cfg).integral;
    width_ = panel_width(b, cfg);
    std::size_t n = std::size_t(std::ceil((b - a) / width_));
    prefix_.resize(n + 1);
    prefix_[0] = 0;
    double sum = 0, comp = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double lo = a + double(i) * width_;
        double hi = std::min(lo + width_, b);
        double delta;
        double val = refined_panel(lo, hi, cfg, delta);
        double y = val - comp, s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        prefix_[i + 1] = sum;
    }
}

double WindowIntegrator::integral_to(double t) const {
    if (t < a_ - 1e-9 || t > b_ + 1e-9)
        throw std::domain_error("WindowIntegrator: t outside window");
    t = std::clamp(t, a_, b_);
    auto k = std::size_t((t - a_) / width_);
    k = std::min(k, prefix_.size() - 2);
    double lo = a_ + double(k) * width_;
    double delta;
    double partial = (t > lo) ? refined_panel(lo, t, cfg_, delta) : 0.0;
    return base_ + prefix_[k] + partial;
}

double WindowIntegrator::e_value(double t) const { return integral_to(t) - main_term(t); }

}  // namespace atkexp::zetacrit
