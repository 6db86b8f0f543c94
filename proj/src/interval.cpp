#include "consep/interval.hpp"

#include <algorithm>

namespace consep {

namespace {

mpfr_prec_t pick(mpfr_prec_t requested, const Interval& a) {
    return requested > 0 ? requested : a.prec();
}
mpfr_prec_t pick(mpfr_prec_t requested, const Interval& a, const Interval& b) {
    return requested > 0 ? requested : std::max(a.prec(), b.prec());
}

}  // namespace

Interval Interval::of_si(long x, mpfr_prec_t prec) {
    Real lo(prec), hi(prec);
    mpfr_set_si(lo.raw(), x, MPFR_RNDD);
    mpfr_set_si(hi.raw(), x, MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::of_mpz(const mpz_class& x, mpfr_prec_t prec) {
    Real lo(prec), hi(prec);
    mpfr_set_z(lo.raw(), x.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi.raw(), x.get_mpz_t(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::of_mpq(const mpq_class& x, mpfr_prec_t prec) {
    Real lo(prec), hi(prec);
    mpfr_set_q(lo.raw(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.raw(), x.get_mpq_t(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::of_double(double x, mpfr_prec_t prec) {
    Real lo(prec), hi(prec);
    mpfr_set_d(lo.raw(), x, MPFR_RNDD);
    mpfr_set_d(hi.raw(), x, MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::two_pow(long e, mpfr_prec_t prec) {
    Real v(prec);
    mpfr_set_si_2exp(v.raw(), 1, e, MPFR_RNDN);  // exact
    return Interval::point(v);
}

bool Interval::contains_mpq(const mpq_class& x) const {
    return mpfr_cmp_q(lo_.raw(), x.get_mpq_t()) <= 0 &&
           mpfr_cmp_q(hi_.raw(), x.get_mpq_t()) >= 0;
}

Real Interval::width_up() const {
    Real w(prec());
    mpfr_sub(w.raw(), hi_.raw(), lo_.raw(), MPFR_RNDU);
    return w;
}

Real Interval::mid() const {
    Real m(prec() + 1);
    mpfr_add(m.raw(), lo_.raw(), hi_.raw(), MPFR_RNDN);
    mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);  // both exact at prec+1
    return m;
}

Real Interval::rad_up() const {
    Real m = mid();
    Real r(prec() + 2);
    mpfr_sub(r.raw(), hi_.raw(), m.raw(), MPFR_RNDU);
    Real r2(prec() + 2);
    mpfr_sub(r2.raw(), m.raw(), lo_.raw(), MPFR_RNDU);
    return r_max(r, r2);
}

Interval i_add(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    mpfr_prec_t p = pick(prec, a, b);
    Real lo(p), hi(p);
    mpfr_add(lo.raw(), a.lo().raw(), b.lo().raw(), MPFR_RNDD);
    mpfr_add(hi.raw(), a.hi().raw(), b.hi().raw(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval i_sub(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    mpfr_prec_t p = pick(prec, a, b);
    Real lo(p), hi(p);
    mpfr_sub(lo.raw(), a.lo().raw(), b.hi().raw(), MPFR_RNDD);
    mpfr_sub(hi.raw(), a.hi().raw(), b.lo().raw(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval i_mul(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    mpfr_prec_t p = pick(prec, a, b);
    const Real* as[2] = {&a.lo(), &a.hi()};
    const Real* bs[2] = {&b.lo(), &b.hi()};
    Real lo(p), hi(p), t(p);
    bool first = true;
    for (auto* x : as)
        for (auto* y : bs) {
            mpfr_mul(t.raw(), x->raw(), y->raw(), MPFR_RNDD);
            if (first || t < lo) lo = t;
            mpfr_mul(t.raw(), x->raw(), y->raw(), MPFR_RNDU);
            if (first || t > hi) hi = t;
            first = false;
        }
    return Interval(std::move(lo), std::move(hi));
}

Interval i_div(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    if (b.contains_zero())
        throw std::domain_error("i_div: denominator interval contains zero");
    mpfr_prec_t p = pick(prec, a, b);
    const Real* as[2] = {&a.lo(), &a.hi()};
    const Real* bs[2] = {&b.lo(), &b.hi()};
    Real lo(p), hi(p), t(p);
    bool first = true;
    for (auto* x : as)
        for (auto* y : bs) {
            mpfr_div(t.raw(), x->raw(), y->raw(), MPFR_RNDD);
            if (first || t < lo) lo = t;
            mpfr_div(t.raw(), x->raw(), y->raw(), MPFR_RNDU);
            if (first || t > hi) hi = t;
            first = false;
        }
    return Interval(std::move(lo), std::move(hi));
}

Interval i_neg(const Interval& a) {
    return Interval(r_neg(a.hi()), r_neg(a.lo()));
}

Interval i_sqr(const Interval& a, mpfr_prec_t prec) {
    mpfr_prec_t p = pick(prec, a);
    Real lo(p), hi(p);
    if (a.contains_zero()) {
        mpfr_set_zero(lo.raw(), 1);
        Real c1(p), c2(p);
        mpfr_sqr(c1.raw(), a.lo().raw(), MPFR_RNDU);
        mpfr_sqr(c2.raw(), a.hi().raw(), MPFR_RNDU);
        hi = r_max(c1, c2);
    } else if (a.is_positive()) {
        mpfr_sqr(lo.raw(), a.lo().raw(), MPFR_RNDD);
        mpfr_sqr(hi.raw(), a.hi().raw(), MPFR_RNDU);
    } else {
        mpfr_sqr(lo.raw(), a.hi().raw(), MPFR_RNDD);
        mpfr_sqr(hi.raw(), a.lo().raw(), MPFR_RNDU);
    }
    return Interval(std::move(lo), std::move(hi));
}

Interval i_sqrt(const Interval& a, mpfr_prec_t prec) {
    if (a.hi().sgn() < 0) throw std::domain_error("i_sqrt: negative interval");
    mpfr_prec_t p = pick(prec, a);
    Real lo(p), hi(p);
    // A true value known to be >= 0 may get a slightly negative lower
    // endpoint from outward rounding upstream; clamp.
    if (a.lo().sgn() <= 0)
        mpfr_set_zero(lo.raw(), 1);
    else
        mpfr_sqrt(lo.raw(), a.lo().raw(), MPFR_RNDD);
    mpfr_sqrt(hi.raw(), a.hi().raw(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval i_rootn(const Interval& a, unsigned long n, mpfr_prec_t prec) {
    if (a.lo().sgn() < 0 && n % 2 == 0)
        throw std::domain_error("i_rootn: even root of negative interval");
    mpfr_prec_t p = pick(prec, a);
    Real lo(p), hi(p);
    mpfr_rootn_ui(lo.raw(), a.lo().raw(), n, MPFR_RNDD);
    mpfr_rootn_ui(hi.raw(), a.hi().raw(), n, MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval i_abs(const Interval& a) {
    if (a.lo().sgn() >= 0) return a;
    if (a.hi().sgn() <= 0) return i_neg(a);
    Real lo(a.prec());
    mpfr_set_zero(lo.raw(), 1);
    return Interval(std::move(lo), r_max(r_abs(a.lo()), a.hi()));
}

Interval i_log(const Interval& a, mpfr_prec_t prec) {
    if (a.lo().sgn() <= 0) throw std::domain_error("i_log: non-positive interval");
    mpfr_prec_t p = pick(prec, a);
    Real lo(p), hi(p);
    mpfr_log(lo.raw(), a.lo().raw(), MPFR_RNDD);
    mpfr_log(hi.raw(), a.hi().raw(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval i_exp(const Interval& a, mpfr_prec_t prec) {
    mpfr_prec_t p = pick(prec, a);
    Real lo(p), hi(p);
    mpfr_exp(lo.raw(), a.lo().raw(), MPFR_RNDD);
    mpfr_exp(hi.raw(), a.hi().raw(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval i_pow_si(const Interval& a, long k, mpfr_prec_t prec) {
    mpfr_prec_t p = pick(prec, a);
    if (k == 0) return Interval::of_si(1, p);
    if (k < 0) return i_div(Interval::of_si(1, p), i_pow_si(a, -k, p), p);
    Interval acc = Interval::of_si(1, p);
    Interval base = a;
    long e = k;
    while (e > 0) {
        if (e & 1) acc = i_mul(acc, base, p);
        // square via i_sqr when possible to avoid dependency blowup
        if (e >>= 1) base = i_sqr(base, p);
    }
    return acc;
}

Interval i_pow_q(const Interval& a, const mpq_class& q, mpfr_prec_t prec) {
    mpfr_prec_t p = pick(prec, a);
    if (q == 0) return Interval::of_si(1, p);
    if (q.get_den() == 1 && q.get_num().fits_slong_p())
        return i_pow_si(a, q.get_num().get_si(), p);
    Interval lg = i_log(a, p + 8);
    Interval ex = i_mul(lg, Interval::of_mpq(q, p + 8), p + 8);
    return i_exp(ex, p);
}

Interval i_scale2(const Interval& a, long e) {
    Real lo(a.lo().prec()), hi(a.hi().prec());
    mpfr_mul_2si(lo.raw(), a.lo().raw(), e, MPFR_RNDD);  // exact
    mpfr_mul_2si(hi.raw(), a.hi().raw(), e, MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval i_max1(const Interval& a) {
    Real one(a.prec());
    mpfr_set_si(one.raw(), 1, MPFR_RNDN);
    return Interval(r_max(a.lo(), one), r_max(a.hi(), one));
}

Interval i_max(const Interval& a, const Interval& b) {
    return Interval(r_max(a.lo(), b.lo()), r_max(a.hi(), b.hi()));
}

Interval i_min(const Interval& a, const Interval& b) {
    return Interval(r_min(a.lo(), b.lo()), r_min(a.hi(), b.hi()));
}

Interval i_hull(const Interval& a, const Interval& b) {
    return Interval(r_min(a.lo(), b.lo()), r_max(a.hi(), b.hi()));
}

std::optional<Interval> i_intersect(const Interval& a, const Interval& b) {
    Real lo = r_max(a.lo(), b.lo());
    Real hi = r_min(a.hi(), b.hi());
    if (lo > hi) return std::nullopt;
    return Interval(std::move(lo), std::move(hi));
}

Box b_add(const Box& a, const Box& b, mpfr_prec_t prec) {
    return Box(i_add(a.re, b.re, prec), i_add(a.im, b.im, prec));
}

Box b_sub(const Box& a, const Box& b, mpfr_prec_t prec) {
    return Box(i_sub(a.re, b.re, prec), i_sub(a.im, b.im, prec));
}

Box b_mul(const Box& a, const Box& b, mpfr_prec_t prec) {
    mpfr_prec_t p = prec > 0 ? prec : std::max(a.prec(), b.prec());
    return Box(i_sub(i_mul(a.re, b.re, p), i_mul(a.im, b.im, p), p),
               i_add(i_mul(a.re, b.im, p), i_mul(a.im, b.re, p), p));
}

Box b_div(const Box& a, const Box& b, mpfr_prec_t prec) {
    mpfr_prec_t p = prec > 0 ? prec : std::max(a.prec(), b.prec());
    Interval d = b_abs2(b, p);
    if (d.contains_zero())
        throw std::domain_error("b_div: denominator box may contain zero");
    Box num = b_mul(a, b.conj(), p);
    return Box(i_div(num.re, d, p), i_div(num.im, d, p));
}

Box b_neg(const Box& a) { return Box(i_neg(a.re), i_neg(a.im)); }

Box b_mul_i(const Box& a, const Interval& s, mpfr_prec_t prec) {
    return Box(i_mul(a.re, s, prec), i_mul(a.im, s, prec));
}

Interval b_abs2(const Box& a, mpfr_prec_t prec) {
    mpfr_prec_t p = prec > 0 ? prec : a.prec();
    return i_add(i_sqr(a.re, p), i_sqr(a.im, p), p);
}

Interval b_abs(const Box& a, mpfr_prec_t prec) {
    mpfr_prec_t p = prec > 0 ? prec : a.prec();
    return i_sqrt(b_abs2(a, p), p);
}

bool b_disjoint(const Box& a, const Box& b) {
    return a.re.hi() < b.re.lo() || b.re.hi() < a.re.lo() ||
           a.im.hi() < b.im.lo() || b.im.hi() < a.im.lo();
}

std::optional<Box> b_intersect(const Box& a, const Box& b) {
    auto re = i_intersect(a.re, b.re);
    if (!re) return std::nullopt;
    auto im = i_intersect(a.im, b.im);
    if (!im) return std::nullopt;
    return Box(std::move(*re), std::move(*im));
}

Interval poly_eval_i(const std::vector<mpz_class>& c, const Interval& x,
                     mpfr_prec_t prec) {
    Interval acc = Interval::of_si(0, prec);
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = i_add(i_mul(acc, x, prec), Interval::of_mpz(*it, prec), prec);
    return acc;
}

Box poly_eval_b(const std::vector<mpz_class>& c, const Box& x, mpfr_prec_t prec) {
    Box acc(Interval::of_si(0, prec), Interval::of_si(0, prec));
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = b_mul(acc, x, prec);
        acc.re = i_add(acc.re, Interval::of_mpz(*it, prec), prec);
    }
    return acc;
}

}  // namespace consep
