// |zeta(1/2+it)|^2 on the critical line, the mean square I(T), and the
// reference error term E_direct(T) = I(T) - (T log T - (1+log 2pi - 2 gamma) T).
//
// Evaluation strategy: Riemann-Siegel main sum with up to four correction
// terms above cfg.em_threshold, complex Euler-Maclaurin below.  Quadrature
// is composite Gauss-Legendre with panel width tied to the local zero
// spacing 2 pi / log(T/2pi).

#ifndef ATKEXP_ZETACRIT_HPP
#define ATKEXP_ZETACRIT_HPP

#include <cstdint>
#include <vector>

namespace atkexp::zetacrit {

struct ZetaEvalConfig {
    int rs_correction_terms = 4;     // 0..4
    double em_threshold = 200;       // below this t use Euler-Maclaurin
    int quad_panels_per_oscillation = 4;

    void validate() const;
};

struct MeanSquareResult {
    double T = 0;
    double integral = 0;        // int_0^T |zeta(1/2+it)|^2 dt
    double main_term = 0;       // T log T - (1 + log 2pi - 2 gamma) T
    double e_value = 0;         // integral - main_term
    double est_quad_error = 0;  // sum of |refined - coarse| panel deltas; not rigorous
};

// |zeta(1/2+it)|^2, t >= 0.
double zeta_half_abs2(double t, const ZetaEvalConfig& cfg);

// Hardy Z(t) (Riemann-Siegel branch only above em_threshold).
double hardy_z(double t, const ZetaEvalConfig& cfg);

// Riemann-Siegel theta function, asymptotic form.
double rs_theta(double t);

// Gabcke correction term C_k(p), k = 0..4, p in [0,1].
double rs_correction(int k, double p);

double main_term(double T);

MeanSquareResult mean_square(double T, const ZetaEvalConfig& cfg);
double e_direct(double T, const ZetaEvalConfig& cfg);

// One cumulative pass recording the mean square at each requested point
// (points need not be sorted; the scan uses the panel width demanded by
// the largest of them, which over-resolves the rest).
std::vector<MeanSquareResult> mean_square_scan(const std::vector<double>& points,
                                               const ZetaEvalConfig& cfg);

// Prefix integrals over a window [a,b]: pays one scan to a, then serves
// int_0^t for any t in [a,b] from per-panel prefixes.
class WindowIntegrator {
public:
    WindowIntegrator(double a, double b, const ZetaEvalConfig& cfg);
    double integral_to(double t) const;  // int_0^t |zeta|^2, a <= t <= b
    double e_value(double t) const;      // integral_to(t) - main_term(t)

private:
    double a_, b_, width_;
    ZetaEvalConfig cfg_;
    double base_;                  // int_0^a
    std::vector<double> prefix_;   // cumulative panel sums over [a,b]
};

}  // namespace atkexp::zetacrit

#endif
