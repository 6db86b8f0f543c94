#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "consep/real.hpp"

namespace consep {

// Closed real interval [lo, hi] with outward-rounded arithmetic: every
// operation returns an interval guaranteed to contain the exact image of
// its operands.  Endpoints are dyadics at the working precision; the lower
// endpoint of a result is rounded down, the upper endpoint up.
class Interval {
public:
    Interval() : lo_(64), hi_(64) {}
    Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_.is_nan() || hi_.is_nan() || lo_.cmp(hi_) > 0)
            throw std::invalid_argument("Interval: invalid endpoints");
    }

    static Interval point(const Real& x) { return Interval(x, x); }
    static Interval of_si(long x, mpfr_prec_t prec);
    static Interval of_mpz(const mpz_class& x, mpfr_prec_t prec);
    static Interval of_mpq(const mpq_class& x, mpfr_prec_t prec);
    static Interval of_double(double x, mpfr_prec_t prec);
    // Exact power of two, handy for tolerance thresholds.
    static Interval two_pow(long e, mpfr_prec_t prec);

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    mpfr_prec_t prec() const { return std::max(lo_.prec(), hi_.prec()); }

    bool contains_zero() const { return lo_.sgn() <= 0 && hi_.sgn() >= 0; }
    bool is_positive() const { return lo_.sgn() > 0; }
    bool is_negative() const { return hi_.sgn() < 0; }
    bool is_point() const { return lo_ == hi_; }
    bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool contains_strictly(const Interval& o) const {
        return lo_ < o.lo_ && o.hi_ < hi_;
    }
    bool contains_mpq(const mpq_class& x) const;
    bool intersects(const Interval& o) const {
        return !(hi_ < o.lo_ || o.hi_ < lo_);
    }

    Real width_up() const;             // hi - lo rounded up
    Real mid() const;                  // exact midpoint (prec+1 bits)
    Real rad_up() const;               // radius from midpoint, rounded up
    double width_double() const { return width_up().to_double(MPFR_RNDU); }

private:
    Real lo_, hi_;
};

// prec == 0 means "max of the operand precisions".
Interval i_add(const Interval& a, const Interval& b, mpfr_prec_t prec = 0);
Interval i_sub(const Interval& a, const Interval& b, mpfr_prec_t prec = 0);
Interval i_mul(const Interval& a, const Interval& b, mpfr_prec_t prec = 0);
Interval i_div(const Interval& a, const Interval& b, mpfr_prec_t prec = 0);
Interval i_neg(const Interval& a);
Interval i_sqr(const Interval& a, mpfr_prec_t prec = 0);
Interval i_sqrt(const Interval& a, mpfr_prec_t prec = 0);
Interval i_rootn(const Interval& a, unsigned long n, mpfr_prec_t prec = 0);
Interval i_abs(const Interval& a);
Interval i_log(const Interval& a, mpfr_prec_t prec = 0);
Interval i_exp(const Interval& a, mpfr_prec_t prec = 0);
Interval i_pow_si(const Interval& a, long k, mpfr_prec_t prec = 0);
// a^q for rational q via exp(q log a); requires a > 0 unless q is integral.
Interval i_pow_q(const Interval& a, const mpq_class& q, mpfr_prec_t prec = 0);
Interval i_scale2(const Interval& a, long e);  // exact multiply by 2^e
Interval i_max1(const Interval& a);            // max(1, a), exact endpoints
Interval i_max(const Interval& a, const Interval& b);
Interval i_min(const Interval& a, const Interval& b);
Interval i_hull(const Interval& a, const Interval& b);
std::optional<Interval> i_intersect(const Interval& a, const Interval& b);

// Certified comparisons: true only when the relation holds for every pair
// of points in the operands.
inline bool i_lt_certain(const Interval& a, const Interval& b) {
    return a.hi() < b.lo();
}
inline bool i_le_certain(const Interval& a, const Interval& b) {
    return a.hi() <= b.lo();
}

// Axis-aligned rectangle in the complex plane.
struct Box {
    Interval re, im;

    Box() = default;
    Box(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    static Box point(const Real& x, const Real& y) {
        return Box(Interval::point(x), Interval::point(y));
    }
    static Box real_line(Interval x, mpfr_prec_t prec) {
        return Box(std::move(x), Interval::of_si(0, prec));
    }

    Box conj() const { return Box(re, i_neg(im)); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool is_real_line() const { return im.lo().is_zero() && im.hi().is_zero(); }
    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
};

Box b_add(const Box& a, const Box& b, mpfr_prec_t prec = 0);
Box b_sub(const Box& a, const Box& b, mpfr_prec_t prec = 0);
Box b_mul(const Box& a, const Box& b, mpfr_prec_t prec = 0);
Box b_div(const Box& a, const Box& b, mpfr_prec_t prec = 0);  // 0 outside b
Box b_neg(const Box& a);
Box b_mul_i(const Box& a, const Interval& s, mpfr_prec_t prec = 0);
Interval b_abs(const Box& a, mpfr_prec_t prec = 0);
Interval b_abs2(const Box& a, mpfr_prec_t prec = 0);  // |z|^2
bool b_disjoint(const Box& a, const Box& b);          // certified disjoint
std::optional<Box> b_intersect(const Box& a, const Box& b);

// Interval Horner evaluation of an integer polynomial (ascending coeffs).
Interval poly_eval_i(const std::vector<mpz_class>& c, const Interval& x,
                     mpfr_prec_t prec);
Box poly_eval_b(const std::vector<mpz_class>& c, const Box& x, mpfr_prec_t prec);

}  // namespace consep
