#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace consep {

// Value-semantic wrapper around mpfr_t.  Every operation takes an explicit
// rounding mode; nothing in this codebase relies on the MPFR global default
// precision, so Real values are safe to share across threads once built.
class Real {
public:
    Real() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit Real(mpfr_prec_t prec) {
        mpfr_init2(v_, prec < MPFR_PREC_MIN ? MPFR_PREC_MIN : prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
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

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static Real of_si(long x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_set_si(r.v_, x, rnd);
        return r;
    }
    static Real of_mpz(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        Real r(prec);
        mpfr_set_z(r.v_, x.get_mpz_t(), rnd);
        return r;
    }
    static Real of_mpq(const mpq_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        Real r(prec);
        mpfr_set_q(r.v_, x.get_mpq_t(), rnd);
        return r;
    }
    static Real of_double(double x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_set_d(r.v_, x, rnd);
        return r;
    }

    int sgn() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const Real& o) const { return cmp(o) < 0; }
    bool operator<=(const Real& o) const { return cmp(o) <= 0; }
    bool operator>(const Real& o) const { return cmp(o) > 0; }
    bool operator>=(const Real& o) const { return cmp(o) >= 0; }
    bool operator==(const Real& o) const { return mpfr_equal_p(v_, o.v_) != 0; }

    // Exact hexadecimal dyadic rendering, e.g. "0x1.428a2fp+0".  Lossless.
    std::string str_hex() const;
    // Decimal rendering for humans, round-to-nearest.
    std::string str_dec(int digits = 20) const;

private:
    mpfr_t v_;
};

// Arithmetic with explicit result precision and rounding mode.
Real r_add(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real r_sub(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real r_mul(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real r_div(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
Real r_neg(const Real& a);
Real r_abs(const Real& a);
Real r_min(const Real& a, const Real& b);
Real r_max(const Real& a, const Real& b);

}  // namespace consep
