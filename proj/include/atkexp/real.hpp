// Arbitrary-precision real numbers on top of MPFR, plus the precision
// context shared by every module.  Results of binary operations carry
// max(precision of operands); mixed double/integer operands are exact.
// Rounding is to nearest throughout.

#ifndef ATKEXP_REAL_HPP
#define ATKEXP_REAL_HPP

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace atkexp {

inline constexpr mpfr_prec_t kDefaultPrec = 192;

class Real {
public:
    Real() { mpfr_init2(v_, kDefaultPrec); mpfr_set_zero(v_, 1); }

    // Value constructors; a bare precision is never a constructor argument,
    // spell zero-at-precision as Real(0.0, prec).
    Real(double x, mpfr_prec_t prec = kDefaultPrec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    Real(long x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(int x, mpfr_prec_t prec = kDefaultPrec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    // Decimal string constructor; exact up to the target precision.
    Real(const char* s, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        if (mpfr_set_str(v_, s, 10, MPFR_RNDN) != 0)
            throw std::invalid_argument(std::string("Real: bad literal ") + s);
    }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    std::string str(int digits = 17) const;

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    Real operator-() const {
        Real r(0.0, prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend Real binary(const Real& a, const Real& b,
                       int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
        Real r(0.0, std::max(a.prec(), b.prec()));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

// ---- arithmetic -------------------------------------------------------

inline Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
inline Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
inline Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
inline Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }

inline Real operator+(const Real& a, double b) { Real r(0.0, a.prec()); mpfr_add_d(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline Real operator+(double a, const Real& b) { return b + a; }
inline Real operator-(const Real& a, double b) { Real r(0.0, a.prec()); mpfr_sub_d(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline Real operator-(double a, const Real& b) { Real r(0.0, b.prec()); mpfr_d_sub(r.raw(), a, b.raw(), MPFR_RNDN); return r; }
inline Real operator*(const Real& a, double b) { Real r(0.0, a.prec()); mpfr_mul_d(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline Real operator*(double a, const Real& b) { return b * a; }
inline Real operator/(const Real& a, double b) { Real r(0.0, a.prec()); mpfr_div_d(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline Real operator/(double a, const Real& b) { Real r(0.0, b.prec()); mpfr_d_div(r.raw(), a, b.raw(), MPFR_RNDN); return r; }

inline Real operator+(const Real& a, long b) { Real r(0.0, a.prec()); mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline Real operator+(long a, const Real& b) { return b + a; }
inline Real operator-(const Real& a, long b) { Real r(0.0, a.prec()); mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline Real operator-(long a, const Real& b) { Real r(0.0, b.prec()); mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN); return r; }
inline Real operator*(const Real& a, long b) { Real r(0.0, a.prec()); mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline Real operator*(long a, const Real& b) { return b * a; }
inline Real operator/(const Real& a, long b) { Real r(0.0, a.prec()); mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
inline Real operator/(long a, const Real& b) { Real r(0.0, b.prec()); mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN); return r; }

inline Real operator+(const Real& a, int b) { return a + long(b); }
inline Real operator+(int a, const Real& b) { return b + long(a); }
inline Real operator-(const Real& a, int b) { return a - long(b); }
inline Real operator-(int a, const Real& b) { return long(a) - b; }
inline Real operator*(const Real& a, int b) { return a * long(b); }
inline Real operator*(int a, const Real& b) { return b * long(a); }
inline Real operator/(const Real& a, int b) { return a / long(b); }
inline Real operator/(int a, const Real& b) { return long(a) / b; }

inline int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()); }
inline bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
inline bool operator==(const Real& a, const Real& b) { return cmp(a, b) == 0; }
inline bool operator!=(const Real& a, const Real& b) { return cmp(a, b) != 0; }
inline bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) < 0; }
inline bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) > 0; }
inline bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) <= 0; }
inline bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) >= 0; }
inline bool operator<(double a, const Real& b) { return b > a; }
inline bool operator>(double a, const Real& b) { return b < a; }

// ---- elementary functions ---------------------------------------------

namespace detail {
inline Real unary(const Real& a, int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
    Real r(0.0, a.prec());
    f(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
}  // namespace detail

inline Real sqrt(const Real& a)  { return detail::unary(a, mpfr_sqrt); }
inline Real log(const Real& a)   { return detail::unary(a, mpfr_log); }
inline Real log1p(const Real& a) { return detail::unary(a, mpfr_log1p); }
inline Real exp(const Real& a)   { return detail::unary(a, mpfr_exp); }
inline Real cos(const Real& a)   { return detail::unary(a, mpfr_cos); }
inline Real sin(const Real& a)   { return detail::unary(a, mpfr_sin); }
inline Real atan(const Real& a)  { return detail::unary(a, mpfr_atan); }
inline Real asinh(const Real& a) { return detail::unary(a, mpfr_asinh); }
inline Real sinh(const Real& a)  { return detail::unary(a, mpfr_sinh); }
inline Real abs(const Real& a)   { return detail::unary(a, mpfr_abs); }
inline Real floor(const Real& a) {
    Real r(0.0, a.prec());
    mpfr_floor(r.raw(), a.raw());
    return r;
}
inline Real ceil(const Real& a) {
    Real r(0.0, a.prec());
    mpfr_ceil(r.raw(), a.raw());
    return r;
}

inline Real pow(const Real& a, const Real& b) { return binary(a, b, mpfr_pow); }
inline Real pow(const Real& a, long n) {
    Real r(0.0, a.prec());
    mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
    return r;
}
inline Real pow(const Real& a, int n) { return pow(a, long(n)); }
inline Real pow(const Real& a, double e) {
    Real r(0.0, a.prec());
    Real ee(e, a.prec());
    mpfr_pow(r.raw(), a.raw(), ee.raw(), MPFR_RNDN);
    return r;
}
inline Real max(const Real& a, const Real& b) { return binary(a, b, mpfr_max); }
inline Real min(const Real& a, const Real& b) { return binary(a, b, mpfr_min); }
inline Real nthroot(const Real& a, unsigned long n) {
    Real r(0.0, a.prec());
    mpfr_rootn_ui(r.raw(), a.raw(), n, MPFR_RNDN);
    return r;
}

// Library routes kept for oracle duty in tests: MPFR's own zeta / dilog /
// Bessel Y1 follow code paths independent of the numkit implementations.
inline Real mpfr_zeta_oracle(const Real& s) { return detail::unary(s, mpfr_zeta); }
inline Real mpfr_li2_oracle(const Real& x)  { return detail::unary(x, mpfr_li2); }
inline Real mpfr_y1_oracle(const Real& x)   { return detail::unary(x, mpfr_y1); }

// ---- precision context -------------------------------------------------

// Working precision plus cached fundamental constants.  Immutable after
// construction; safe to share across workers.
struct PrecisionContext {
    mpfr_prec_t working_bits;
    Real pi;
    Real euler_gamma;

    explicit PrecisionContext(mpfr_prec_t bits)
        : working_bits(bits), pi(0.0, bits), euler_gamma(0.0, bits) {
        if (bits < 64) throw std::invalid_argument("PrecisionContext: working_bits must be >= 64");
        mpfr_const_pi(pi.raw(), MPFR_RNDN);
        mpfr_const_euler(euler_gamma.raw(), MPFR_RNDN);
    }

    Real make(double x = 0) const { return Real(x, working_bits); }
    Real make(long x) const { return Real(x, working_bits); }
    Real parse(const char* s) const { return Real(s, working_bits); }
};

}  // namespace atkexp

#endif
