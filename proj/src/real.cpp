#include "consep/real.hpp"

#include <cstdlib>

namespace consep {

std::string Real::str_hex() const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%Ra", v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string Real::str_dec(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Real r_add(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_add(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real r_sub(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_sub(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real r_mul(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_mul(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real r_div(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_div(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real r_neg(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);  // exact at same precision
    return r;
}

Real r_abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);  // exact
    return r;
}

Real r_min(const Real& a, const Real& b) { return a.cmp(b) <= 0 ? a : b; }
Real r_max(const Real& a, const Real& b) { return a.cmp(b) >= 0 ? a : b; }

}  // namespace consep
