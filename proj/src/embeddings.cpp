#include "consep/embeddings.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "consep/errors.hpp"

namespace consep {

namespace {

using Vec = std::vector<mpz_class>;

int vdeg(const Vec& c) { return static_cast<int>(c.size()) - 1; }

void vtrim(Vec& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

int sign_f_at(const Vec& f, const mpq_class& x) {
    mpq_class v = poly_eval_q(f, x);
    return sgn(v);
}

// ---- Sturm machinery -----------------------------------------------------

Vec prem_signed(const Vec& A, const Vec& B) {
    // pseudo-remainder lc(B)^(dA-dB+1) * (A mod B), computed in place
    Vec R = A;
    int dB = vdeg(B);
    const mpz_class& l = B.back();
    long e = vdeg(A) - dB + 1;
    while (!R.empty() && vdeg(R) >= dB) {
        int shift = vdeg(R) - dB;
        mpz_class lead = R.back();
        for (auto& x : R) x *= l;
        for (int j = 0; j <= dB; ++j)
            R[static_cast<size_t>(shift + j)] -= lead * B[static_cast<size_t>(j)];
        vtrim(R);
        --e;
    }
    if (e > 0 && !R.empty()) {
        mpz_class le;
        mpz_pow_ui(le.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& x : R) x *= le;
    }
    return R;
}

std::vector<Vec> sturm_chain(const Vec& f) {
    std::vector<Vec> chain;
    chain.push_back(f);
    chain.push_back(poly_derivative(f));
    while (vdeg(chain.back()) >= 1) {
        const Vec& A = chain[chain.size() - 2];
        const Vec& B = chain.back();
        long d = vdeg(A) - vdeg(B);
        Vec R = prem_signed(A, B);
        if (R.empty()) break;
        // prem scales the true remainder by lc(B)^(d+1); compensate so the
        // next element is minus the remainder times a positive factor.
        bool mult_neg = (B.back() < 0) && ((d + 1) % 2 == 1);
        if (!mult_neg)
            for (auto& x : R) x = -x;
        mpz_class c = poly_content(R);
        for (auto& x : R) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
        chain.push_back(std::move(R));
    }
    return chain;
}

int sign_variations(const std::vector<Vec>& chain, const mpq_class& x) {
    int count = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_f_at(p, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

// Real-root count of the squarefree f over (a, b), endpoints non-roots.
int sturm_count(const std::vector<Vec>& chain, const mpq_class& a, const mpq_class& b) {
    return sign_variations(chain, a) - sign_variations(chain, b);
}

// Strict bound on root magnitudes: 1 + max |c_i| / c_r.
mpq_class cauchy_bound(const Vec& f) {
    mpz_class mx = 0;
    for (size_t i = 0; i + 1 < f.size(); ++i) {
        mpz_class a = abs(f[i]);
        if (a > mx) mx = a;
    }
    mpq_class b(mx, f.back());
    b.canonicalize();
    return b + 1;
}

// A point of (a, b) that is not a root of f (at most deg f roots, so a
// shallow dyadic grid always contains one).
mpq_class nonroot_split(const Vec& f, const mpq_class& a, const mpq_class& b) {
    for (int level = 1; level <= 8; ++level) {
        mpz_class den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(level));
        for (mpz_class num = 1; num < den; num += 2) {
            mpq_class t(num, den);
            t.canonicalize();
            mpq_class m = a + (b - a) * t;
            if (sign_f_at(f, m) != 0) return m;
        }
    }
    throw CertificationFailure("nonroot_split: no split point found");
}

struct RealBracket {
    mpq_class a, b;  // a == b means the root is exactly a
    int sign_a = 0;  // sign of f(a) when a < b
};

std::vector<RealBracket> isolate_real_roots(const Vec& f) {
    auto chain = sturm_chain(f);
    mpq_class B = cauchy_bound(f);
    struct Seg {
        mpq_class a, b;
        int va, vb;
    };
    std::vector<Seg> work, done;
    int vlo = sign_variations(chain, -B), vhi = sign_variations(chain, B);
    work.push_back({-B, B, vlo, vhi});
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        int n = s.va - s.vb;
        if (n <= 0) continue;
        if (n == 1) {
            done.push_back(s);
            continue;
        }
        mpq_class m = nonroot_split(f, s.a, s.b);
        int vm = sign_variations(chain, m);
        work.push_back({s.a, m, s.va, vm});
        work.push_back({m, s.b, vm, s.vb});
    }
    std::sort(done.begin(), done.end(),
              [](const Seg& x, const Seg& y) { return x.a < y.a; });
    std::vector<RealBracket> out;
    for (auto& s : done) {
        RealBracket rb;
        rb.a = s.a;
        rb.b = s.b;
        rb.sign_a = sign_f_at(f, s.a);
        out.push_back(std::move(rb));
    }
    return out;
}

mpq_class real_to_mpq(const Real& x) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), x.raw());
    return q;
}

Interval bracket_interval(const RealBracket& rb, mpfr_prec_t prec) {
    Real lo(prec), hi(prec);
    mpfr_set_q(lo.raw(), rb.a.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.raw(), rb.b.get_mpq_t(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

// radius <= 2^(-target) * max(1, |center|)
bool small_enough(const Interval& X, mpfr_prec_t target) {
    Real m = X.mid();
    Real mag = r_max(r_abs(m), Real::of_si(1, m.prec()));
    Real thr(m.prec());
    mpfr_mul_2si(thr.raw(), mag.raw(), -static_cast<long>(target), MPFR_RNDD);
    return X.rad_up() <= thr;
}

void tighten_real(const Vec& f, const Vec& fd, RealBracket& rb, mpfr_prec_t target) {
    if (rb.a == rb.b) return;
    mpfr_prec_t wprec = target + 64;
    long guard = 16 * static_cast<long>(target) + 4096;
    while (guard-- > 0) {
        Interval X = bracket_interval(rb, wprec);
        if (small_enough(X, target)) return;
        bool progressed = false;
        Interval dX = poly_eval_i(fd, X, wprec);
        if (!dX.contains_zero()) {
            Real m = X.mid();
            mpq_class mq = real_to_mpq(m);
            int sm = sign_f_at(f, mq);
            if (sm == 0) {
                rb.a = rb.b = mq;
                return;
            }
            Interval fm = Interval::of_mpq(poly_eval_q(f, mq), wprec);
            Interval N = i_sub(Interval::point(m), i_div(fm, dX, wprec), wprec);
            auto Xn = i_intersect(N, X);
            if (Xn) {
                mpq_class na = real_to_mpq(Xn->lo()), nb = real_to_mpq(Xn->hi());
                if (na < rb.a) na = rb.a;
                if (nb > rb.b) nb = rb.b;
                if (nb - na < rb.b - rb.a) {
                    // the root stays inside; endpoint signs may vanish if an
                    // endpoint landed exactly on it
                    int sa = sign_f_at(f, na);
                    if (sa == 0) {
                        rb.a = rb.b = na;
                        return;
                    }
                    int sb = sign_f_at(f, nb);
                    if (sb == 0) {
                        rb.a = rb.b = nb;
                        return;
                    }
                    rb.a = na;
                    rb.b = nb;
                    rb.sign_a = sa;
                    progressed = true;
                }
            }
        }
        if (!progressed) {
            mpq_class m = nonroot_split(f, rb.a, rb.b);
            int sm = sign_f_at(f, m);
            if (sm == rb.sign_a)
                rb.a = m;
            else
                rb.b = m;
        }
    }
    throw CertificationFailure("tighten_real: did not converge");
}

// ---- complex approximation (Aberth) --------------------------------------

struct CN {
    Real re, im;
};

CN c_of(double x, double y, mpfr_prec_t p) {
    return {Real::of_double(x, p), Real::of_double(y, p)};
}

CN c_add(const CN& a, const CN& b, mpfr_prec_t p) {
    return {r_add(a.re, b.re, p, MPFR_RNDN), r_add(a.im, b.im, p, MPFR_RNDN)};
}
CN c_sub(const CN& a, const CN& b, mpfr_prec_t p) {
    return {r_sub(a.re, b.re, p, MPFR_RNDN), r_sub(a.im, b.im, p, MPFR_RNDN)};
}
CN c_mul(const CN& a, const CN& b, mpfr_prec_t p) {
    Real re = r_sub(r_mul(a.re, b.re, p, MPFR_RNDN), r_mul(a.im, b.im, p, MPFR_RNDN),
                    p, MPFR_RNDN);
    Real im = r_add(r_mul(a.re, b.im, p, MPFR_RNDN), r_mul(a.im, b.re, p, MPFR_RNDN),
                    p, MPFR_RNDN);
    return {std::move(re), std::move(im)};
}
Real c_abs2(const CN& a, mpfr_prec_t p) {
    return r_add(r_mul(a.re, a.re, p, MPFR_RNDN), r_mul(a.im, a.im, p, MPFR_RNDN), p,
                 MPFR_RNDN);
}
CN c_div(const CN& a, const CN& b, mpfr_prec_t p) {
    Real d = c_abs2(b, p);
    CN num = c_mul(a, {b.re, r_neg(b.im)}, p);
    return {r_div(num.re, d, p, MPFR_RNDN), r_div(num.im, d, p, MPFR_RNDN)};
}

CN c_poly_eval(const Vec& c, const CN& z, mpfr_prec_t p) {
    CN acc{Real::of_si(0, p), Real::of_si(0, p)};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = c_mul(acc, z, p);
        acc.re = r_add(acc.re, Real::of_mpz(*it, p, MPFR_RNDN), p, MPFR_RNDN);
    }
    return acc;
}

std::vector<CN> aberth(const Vec& f, const Vec& fd, mpfr_prec_t w) {
    int r = vdeg(f);
    mpq_class Bq = cauchy_bound(f);
    Real R = Real::of_mpq(mpq_class(Bq * 3 / 4), w, MPFR_RNDN);
    std::vector<CN> z;
    Real pi2(w);
    mpfr_const_pi(pi2.raw(), MPFR_RNDN);
    mpfr_mul_2ui(pi2.raw(), pi2.raw(), 1, MPFR_RNDN);
    for (int j = 0; j < r; ++j) {
        Real theta = r_mul(pi2,
                           Real::of_double((j + 0.35) / r, w, MPFR_RNDN), w, MPFR_RNDN);
        Real c(w), s(w);
        mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
        z.push_back({r_mul(R, c, w, MPFR_RNDN), r_mul(R, s, w, MPFR_RNDN)});
    }
    Real tiny(w);
    mpfr_set_si_2exp(tiny.raw(), 1, -2 * (static_cast<long>(w) - 16), MPFR_RNDN);
    for (int iter = 0; iter < 400; ++iter) {
        bool converged = true;
        for (int i = 0; i < r; ++i) {
            CN fi = c_poly_eval(f, z[static_cast<size_t>(i)], w);
            if (c_abs2(fi, w).is_zero()) continue;
            CN di = c_poly_eval(fd, z[static_cast<size_t>(i)], w);
            if (c_abs2(di, w).is_zero()) {
                // nudge off the critical point
                z[static_cast<size_t>(i)].re =
                    r_add(z[static_cast<size_t>(i)].re,
                          Real::of_double(1e-3, w, MPFR_RNDN), w, MPFR_RNDN);
                converged = false;
                continue;
            }
            CN wi = c_div(fi, di, w);
            CN s{Real::of_si(0, w), Real::of_si(0, w)};
            bool bad = false;
            for (int j = 0; j < r; ++j) {
                if (j == i) continue;
                CN d = c_sub(z[static_cast<size_t>(i)], z[static_cast<size_t>(j)], w);
                if (c_abs2(d, w).is_zero()) {
                    bad = true;
                    break;
                }
                s = c_add(s, c_div({Real::of_si(1, w), Real::of_si(0, w)}, d, w), w);
            }
            if (bad) {
                z[static_cast<size_t>(i)].im =
                    r_add(z[static_cast<size_t>(i)].im,
                          Real::of_double(1e-3, w, MPFR_RNDN), w, MPFR_RNDN);
                converged = false;
                continue;
            }
            CN denom = c_sub({Real::of_si(1, w), Real::of_si(0, w)}, c_mul(wi, s, w), w);
            if (c_abs2(denom, w).is_zero()) {
                converged = false;
                continue;
            }
            CN delta = c_div(wi, denom, w);
            z[static_cast<size_t>(i)] = c_sub(z[static_cast<size_t>(i)], delta, w);
            Real d2 = c_abs2(delta, w);
            Real z2 = r_max(c_abs2(z[static_cast<size_t>(i)], w), Real::of_si(1, w));
            Real thr = r_mul(z2, tiny, w, MPFR_RNDN);
            if (d2 > thr) converged = false;
        }
        if (converged) break;
    }
    return z;
}

// ---- Krawczyk certification ----------------------------------------------

Real box_rad(const Box& X) { return r_max(X.re.rad_up(), X.im.rad_up()); }

struct KrawczykOut {
    Box K;
    bool contracts = false;  // K inside the interior of X
    bool unique = false;     // 0 outside f'(X)
};

KrawczykOut krawczyk_step(const Vec& f, const Vec& fd, const Box& X, mpfr_prec_t w) {
    KrawczykOut out;
    Box Fd = poly_eval_b(fd, X, w);
    out.unique = !Fd.contains_zero();
    CN c{Fd.re.mid(), Fd.im.mid()};
    Box cbox = Box::point(c.re, c.im);
    Interval c2 = b_abs2(cbox, w);
    if (c2.contains_zero()) {
        out.K = X;
        return out;
    }
    Box m = Box::point(X.re.mid(), X.im.mid());
    Box fm = poly_eval_b(f, m, w);
    Box one = Box::point(Real::of_si(1, w), Real::of_si(0, w));
    Box t = b_sub(one, b_div(Fd, cbox, w), w);
    Box K = b_add(b_sub(m, b_div(fm, cbox, w), w), b_mul(t, b_sub(X, m, w), w), w);
    out.contracts = X.re.lo() < K.re.lo() && K.re.hi() < X.re.hi() &&
                    X.im.lo() < K.im.lo() && K.im.hi() < X.im.hi();
    out.K = std::move(K);
    return out;
}

// Shrink a certified box until the target radius is met, escalating
// precision when contraction stalls.
void tighten_box(const Vec& f, const Vec& fd, Box& X, mpfr_prec_t target) {
    mpfr_prec_t w = std::max<mpfr_prec_t>(64, target + 64);
    int stalls = 0;
    while (true) {
        Real m_re = X.re.mid(), m_im = X.im.mid();
        Real mag = r_max(Real::of_si(1, w),
                         r_max(r_abs(m_re), r_abs(m_im)));
        Real thr(w);
        mpfr_mul_2si(thr.raw(), mag.raw(), -static_cast<long>(target), MPFR_RNDD);
        if (box_rad(X) <= thr) return;
        KrawczykOut st = krawczyk_step(f, fd, X, w);
        auto Xn = b_intersect(st.K, X);
        if (!Xn) throw CertificationFailure("tighten_box: empty intersection");
        Real before = box_rad(X), after = box_rad(*Xn);
        X = std::move(*Xn);
        Real half = before;
        mpfr_mul_2si(half.raw(), half.raw(), -1, MPFR_RNDU);
        if (after > half) {
            if (++stalls >= 3) {
                w *= 2;
                stalls = 0;
                if (w > kPrecisionCap)
                    throw PrecisionExhausted("tighten_box: precision cap reached");
            }
        } else {
            stalls = 0;
        }
    }
}

std::optional<Box> certify_root(const Vec& f, const Vec& fd, const CN& z,
                                mpfr_prec_t w) {
    // initial radius: a small multiple of the Newton correction at z
    CN fz = c_poly_eval(f, z, w);
    CN dz = c_poly_eval(fd, z, w);
    Real rho(w);
    if (!c_abs2(dz, w).is_zero()) {
        CN corr = c_div(fz, dz, w);
        Real c2 = c_abs2(corr, w);
        mpfr_sqrt(rho.raw(), c2.raw(), MPFR_RNDU);
        mpfr_mul_2ui(rho.raw(), rho.raw(), 4, MPFR_RNDU);
    } else {
        mpfr_set_zero(rho.raw(), 1);
    }
    Real mag = r_max(Real::of_si(1, w), r_max(r_abs(z.re), r_abs(z.im)));
    Real floor_rho(w);
    mpfr_mul_2si(floor_rho.raw(), mag.raw(), -static_cast<long>(w) + 24, MPFR_RNDU);
    rho = r_max(rho, floor_rho);
    for (int attempt = 0; attempt < 12; ++attempt) {
        Real lo_re = r_sub(z.re, rho, w, MPFR_RNDD), hi_re = r_add(z.re, rho, w, MPFR_RNDU);
        Real lo_im = r_sub(z.im, rho, w, MPFR_RNDD), hi_im = r_add(z.im, rho, w, MPFR_RNDU);
        Box X(Interval(lo_re, hi_re), Interval(lo_im, hi_im));
        KrawczykOut st = krawczyk_step(f, fd, X, w);
        if (st.contracts && st.unique) {
            auto Xn = b_intersect(st.K, X);
            if (Xn) return *Xn;
            return X;
        }
        mpfr_mul_2ui(rho.raw(), rho.raw(), 3, MPFR_RNDU);
    }
    return std::nullopt;
}

// ---- exact ordering of pair real parts -----------------------------------

// G(t) = Res_y(f(y), f(t - y)) has roots z_i + z_j (all ordered pairs), in
// particular every doubled real part.  Computed exactly by interpolation.
Vec sum_poly(const Vec& f) {
    int r = vdeg(f);
    int n = r * r;
    std::vector<mpq_class> xs, ys;
    for (int t = 0; t <= n; ++t) {
        // coefficients of f(t - y) as a polynomial in y
        Vec ft(static_cast<size_t>(r) + 1, mpz_class(0));
        mpz_class tz(t);
        for (int i = 0; i <= r; ++i) {
            if (f[static_cast<size_t>(i)] == 0) continue;
            // (t - y)^i = sum_j binom(i,j) t^(i-j) (-y)^j
            mpz_class tp = 1;
            for (int j = i; j >= 0; --j) {
                // tp = t^(i-j) built from the top down
                mpz_class bin;
                mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(i),
                             static_cast<unsigned long>(j));
                mpz_class term = f[static_cast<size_t>(i)] * bin * tp;
                if (j % 2 == 1) term = -term;
                ft[static_cast<size_t>(j)] += term;
                tp *= tz;
            }
        }
        vtrim(ft);
        xs.emplace_back(t);
        ys.emplace_back(resultant_sylvester(f, ft));
    }
    // exact Lagrange interpolation
    size_t m = xs.size();
    std::vector<mpq_class> master(1, mpq_class(1));
    for (size_t j = 0; j < m; ++j) {
        std::vector<mpq_class> next(master.size() + 1, mpq_class(0));
        for (size_t i = 0; i < master.size(); ++i) {
            next[i + 1] += master[i];
            next[i] -= master[i] * xs[j];
        }
        master = std::move(next);
    }
    std::vector<mpq_class> acc(m, mpq_class(0));
    for (size_t j = 0; j < m; ++j) {
        // master / (x - xs[j]) by synthetic division
        std::vector<mpq_class> q(m, mpq_class(0));
        mpq_class carry = master[m];  // leading coeff of master (degree m)
        for (size_t i = m; i-- > 0;) {
            q[i] = carry;
            carry = master[i] + carry * xs[j];
        }
        mpq_class denom = 0;
        {
            mpq_class val = 0;
            for (size_t i = q.size(); i-- > 0;) val = val * xs[j] + q[i];
            denom = val;
        }
        mpq_class w = ys[j] / denom;
        for (size_t i = 0; i < m; ++i) acc[i] += q[i] * w;
    }
    Vec out;
    for (auto& c : acc) {
        c.canonicalize();
        if (c.get_den() != 1)
            throw CertificationFailure("sum_poly: non-integral interpolation");
        out.push_back(c.get_num());
    }
    vtrim(out);
    return out;
}

// Positive lower bound on the distance between distinct roots of the
// squarefree integer polynomial P (Mahler's separation bound weakened via
// the 2-norm): sqrt(3) * n^(-(n+2)/2) * ||P||_2^(-(n-1)).
Real root_sep_lower(const Vec& P) {
    int n = vdeg(P);
    mpfr_prec_t p = 128;
    mpz_class norm2 = 0;
    for (const auto& c : P) norm2 += c * c;
    Interval nrm = i_sqrt(Interval::of_mpz(norm2, p), p);
    Interval s3 = i_sqrt(Interval::of_si(3, p), p);
    Interval npow = i_pow_q(Interval::of_si(n, p), mpq_class(n + 2, 2), p);
    Interval dpow = i_pow_si(nrm, n - 1, p);
    Interval sep = i_div(s3, i_mul(npow, dpow, p), p);
    return sep.lo();
}

// ---- assembly --------------------------------------------------------------

struct Work {
    Box box;
    bool is_real = false;
    RealBracket rb;  // valid when is_real
};

void tighten_work(const Vec& f, const Vec& fd, Work& w, mpfr_prec_t target,
                  mpfr_prec_t out_prec) {
    if (w.is_real) {
        tighten_real(f, fd, w.rb, target);
        w.box = Box::real_line(bracket_interval(w.rb, out_prec), out_prec);
    } else {
        tighten_box(f, fd, w.box, target);
    }
}

struct SquareForm {
    Real cre, cim, rad;
};

SquareForm square_of(const Box& b) {
    SquareForm s{b.re.mid(), b.im.mid(), r_max(b.re.rad_up(), b.im.rad_up())};
    return s;
}

// Precision target that shrinks the given enclosure radius by a factor of
// at least 2^8 relative to the root magnitude (the unit of the relative
// radius rule).  Returns 0 when the enclosure is already a point.
mpfr_prec_t shrink_target(const Box& box, mpfr_prec_t floor_target) {
    Real rad = box_rad(box);
    if (rad.is_zero()) return 0;
    Real m_re = box.re.mid(), m_im = box.im.mid();
    Real mag = r_max(Real::of_si(1, 64), r_max(r_abs(m_re), r_abs(m_im)));
    long e = mpfr_get_exp(rad.raw());
    long emag = mpfr_get_exp(mag.raw());
    long want = std::max<long>(static_cast<long>(floor_target), emag - e + 8);
    if (want > kPrecisionCap)
        throw PrecisionExhausted("shrink_target: precision cap reached");
    return static_cast<mpfr_prec_t>(want);
}

// certified: |x - y| > r1 + r2
bool gap_certain(const Real& x, const Real& y, const Real& r1, const Real& r2) {
    mpfr_prec_t p = std::max(x.prec(), y.prec()) + 4;
    Real d(p), s(p);
    mpfr_sub(d.raw(), x.raw(), y.raw(), MPFR_RNDZ);
    mpfr_abs(d.raw(), d.raw(), MPFR_RNDZ);  // toward zero: lower bound of |x-y|
    mpfr_add(s.raw(), r1.raw(), r2.raw(), MPFR_RNDU);
    return d > s;
}

}  // namespace

// ---- SigmaSet --------------------------------------------------------------

SigmaSet::SigmaSet(std::vector<int> labels, int degree) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    if (labels_.size() < 2)
        throw std::invalid_argument("SigmaSet: need at least two labels");
    for (size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] < 1 || labels_[i] > degree)
            throw std::invalid_argument("SigmaSet: label out of range");
        if (i > 0 && labels_[i] == labels_[i - 1])
            throw std::invalid_argument("SigmaSet: repeated label");
    }
}

SigmaSet SigmaSet::parse(const std::string& text, int degree) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        v.push_back(std::stoi(item));
    }
    return SigmaSet(std::move(v), degree);
}

SigmaSet SigmaSet::full(int degree) {
    std::vector<int> v(static_cast<size_t>(degree));
    for (int i = 0; i < degree; ++i) v[static_cast<size_t>(i)] = i + 1;
    return SigmaSet(std::move(v), degree);
}

bool SigmaSet::contains(int label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
}

std::string SigmaSet::to_string() const {
    std::string out;
    for (size_t i = 0; i < labels_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(labels_[i]);
    }
    return out;
}

// ---- EmbeddingSet ----------------------------------------------------------

EmbeddingSet::EmbeddingSet(IntPolynomial poly, mpfr_prec_t target_bits,
                           std::vector<Enclosure> enclosures, int reals, int pairs)
    : poly_(std::move(poly)),
      target_bits_(target_bits),
      enc_(std::move(enclosures)),
      reals_(reals),
      pairs_(pairs) {}

namespace {

EmbeddingSet assemble(const IntPolynomial& f, mpfr_prec_t target,
                      std::vector<Work>& reals, std::vector<Work>& uppers) {
    const Vec& fc = f.coeffs();
    Vec fd = poly_derivative(fc);
    mpfr_prec_t out_prec = target + 64;

    // enforce disjointness of the published square forms, tightening the
    // underlying enclosures as needed
    long budget = 64;
    while (true) {
        if (budget-- <= 0)
            throw PrecisionExhausted("compute_embeddings: square separation stalled");
        std::vector<SquareForm> rs, us;
        for (auto& w : reals) rs.push_back(square_of(w.box));
        for (auto& w : uppers) us.push_back(square_of(w.box));
        std::vector<bool> bump_r(reals.size(), false), bump_u(uppers.size(), false);
        bool ok = true;
        Real zero = Real::of_si(0, 32);
        for (size_t i = 0; i < us.size(); ++i) {
            // strictly above the real axis
            Real lo(us[i].cim.prec());
            mpfr_sub(lo.raw(), us[i].cim.raw(), us[i].rad.raw(), MPFR_RNDD);
            if (!(lo > zero)) {
                bump_u[i] = true;
                ok = false;
            }
        }
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = i + 1; j < rs.size(); ++j)
                if (!gap_certain(rs[i].cre, rs[j].cre, rs[i].rad, rs[j].rad)) {
                    bump_r[i] = bump_r[j] = true;
                    ok = false;
                }
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = 0; j < us.size(); ++j) {
                bool re_gap = gap_certain(rs[i].cre, us[j].cre, rs[i].rad, us[j].rad);
                Real lo(us[j].cim.prec());
                mpfr_sub(lo.raw(), us[j].cim.raw(), us[j].rad.raw(), MPFR_RNDD);
                bool im_gap = lo > rs[i].rad;
                if (!re_gap && !im_gap) {
                    bump_r[i] = bump_u[j] = true;
                    ok = false;
                }
            }
        for (size_t i = 0; i < us.size(); ++i)
            for (size_t j = i + 1; j < us.size(); ++j) {
                bool re_gap = gap_certain(us[i].cre, us[j].cre, us[i].rad, us[j].rad);
                bool im_gap = gap_certain(us[i].cim, us[j].cim, us[i].rad, us[j].rad);
                if (!re_gap && !im_gap) {
                    bump_u[i] = bump_u[j] = true;
                    ok = false;
                }
            }
        if (ok) break;
        for (size_t i = 0; i < reals.size(); ++i)
            if (bump_r[i]) {
                mpfr_prec_t want = shrink_target(reals[i].box, target);
                if (want > 0) tighten_work(fc, fd, reals[i], want, out_prec);
            }
        for (size_t i = 0; i < uppers.size(); ++i)
            if (bump_u[i]) {
                mpfr_prec_t want = shrink_target(uppers[i].box, target);
                if (want > 0) tighten_work(fc, fd, uppers[i], want, out_prec);
            }
    }

    std::vector<EmbeddingSet::Enclosure> enc;
    int k = static_cast<int>(reals.size());
    int p = static_cast<int>(uppers.size());
    for (int i = 0; i < k; ++i) {
        EmbeddingSet::Enclosure e;
        e.rect = reals[static_cast<size_t>(i)].box;
        e.is_real = true;
        e.partner = i;
        auto s = square_of(e.rect);
        e.center_re = s.cre;
        e.center_im = s.cim;
        e.radius = s.rad;
        enc.push_back(std::move(e));
    }
    for (int t = 0; t < p; ++t) {
        const Box& up = uppers[static_cast<size_t>(t)].box;
        EmbeddingSet::Enclosure e1, e2;
        e1.rect = up;
        e1.is_real = false;
        e1.partner = k + 2 * t + 1;
        e2.rect = up.conj();
        e2.is_real = false;
        e2.partner = k + 2 * t;
        auto s1 = square_of(e1.rect);
        e1.center_re = s1.cre;
        e1.center_im = s1.cim;
        e1.radius = s1.rad;
        auto s2 = square_of(e2.rect);
        e2.center_re = s2.cre;
        e2.center_im = s2.cim;
        e2.radius = s2.rad;
        enc.push_back(std::move(e1));
        enc.push_back(std::move(e2));
    }
    return EmbeddingSet(f, target, std::move(enc), k, p);
}

// Order the upper boxes by real part, with an exact tie decision through
// the root-sum polynomial when refinement alone cannot separate them.
void order_uppers(const IntPolynomial& f, std::vector<Work>& uppers,
                  mpfr_prec_t target) {
    if (uppers.size() <= 1) return;
    const Vec& fc = f.coeffs();
    Vec fd = poly_derivative(fc);
    bool have_sep = false;
    Real sep_lo;

    auto re_lt = [&](Work& x, Work& y) -> bool {
        // quick attempts, then the exact decision
        for (int round = 0; round < 3; ++round) {
            if (i_lt_certain(x.box.re, y.box.re)) return true;
            if (i_lt_certain(y.box.re, x.box.re)) return false;
            mpfr_prec_t t = target + (round + 1) * 128;
            tighten_box(fc, fd, x.box, t);
            tighten_box(fc, fd, y.box, t);
        }
        if (!have_sep) {
            Vec G = sum_poly(fc);
            Vec Gd = poly_derivative(G);
            Vec g = poly_gcd(G, Gd);
            Vec Gstar = G;
            if (vdeg(g) > 0) {
                // exact division of the primitive parts
                mpz_class cg = poly_content(G);
                Vec Gp = G;
                for (auto& cc : Gp)
                    mpz_divexact(cc.get_mpz_t(), cc.get_mpz_t(), cg.get_mpz_t());
                // long division Gp / g over Z (exact)
                Vec rem = Gp, quo(Gp.size(), mpz_class(0));
                while (vdeg(rem) >= vdeg(g)) {
                    int sh = vdeg(rem) - vdeg(g);
                    mpz_class q;
                    mpz_divexact(q.get_mpz_t(), rem.back().get_mpz_t(),
                                 g.back().get_mpz_t());
                    quo[static_cast<size_t>(sh)] = q;
                    for (int j = 0; j <= vdeg(g); ++j)
                        rem[static_cast<size_t>(sh + j)] -= q * g[static_cast<size_t>(j)];
                    vtrim(rem);
                    if (rem.empty()) break;
                }
                if (!rem.empty())
                    throw CertificationFailure("order_uppers: inexact squarefree division");
                vtrim(quo);
                Gstar = quo;
            }
            if (vdeg(Gstar) <= 1) {
                sep_lo = Real::of_si(0, 64);  // all doubled real parts coincide
            } else {
                sep_lo = root_sep_lower(Gstar);
            }
            have_sep = true;
        }
        if (sep_lo.sgn() > 0) {
            // refine until each doubled real part is enclosed well within
            // the separation bound, then identical roots are detected by
            // interval overlap
            Real want = sep_lo;
            mpfr_div_2ui(want.raw(), want.raw(), 4, MPFR_RNDD);
            while (x.box.re.width_up() > want || y.box.re.width_up() > want) {
                mpfr_prec_t tx = shrink_target(x.box, target);
                if (tx > 0) tighten_box(fc, fd, x.box, tx);
                mpfr_prec_t ty = shrink_target(y.box, target);
                if (ty > 0) tighten_box(fc, fd, y.box, ty);
                if (tx == 0 && ty == 0) break;
            }
            if (i_lt_certain(x.box.re, y.box.re)) return true;
            if (i_lt_certain(y.box.re, x.box.re)) return false;
        }
        // equal real parts: order by imaginary part of the upper member
        long guard = 256;
        while (guard-- > 0) {
            if (i_lt_certain(x.box.im, y.box.im)) return true;
            if (i_lt_certain(y.box.im, x.box.im)) return false;
            mpfr_prec_t tx = shrink_target(x.box, target);
            if (tx > 0) tighten_box(fc, fd, x.box, tx);
            mpfr_prec_t ty = shrink_target(y.box, target);
            if (ty > 0) tighten_box(fc, fd, y.box, ty);
            if (tx == 0 && ty == 0) break;
        }
        throw CertificationFailure("order_uppers: could not order pair");
    };

    // selection sort; the comparator refines the boxes in place
    for (size_t i = 0; i + 1 < uppers.size(); ++i) {
        size_t best = i;
        for (size_t j = i + 1; j < uppers.size(); ++j)
            if (re_lt(uppers[j], uppers[best])) best = j;
        if (best != i) std::swap(uppers[i], uppers[best]);
    }
}

}  // namespace

EmbeddingSet compute_embeddings(const IntPolynomial& f, mpfr_prec_t target_bits) {
    if (target_bits < 4) throw std::invalid_argument("compute_embeddings: precision too small");
    if (target_bits > kPrecisionCap)
        throw PrecisionExhausted("compute_embeddings: requested precision above cap");
    const Vec& fc = f.coeffs();
    Vec fd = poly_derivative(fc);
    int r = f.degree();
    mpfr_prec_t out_prec = target_bits + 64;

    if (r == 1) {
        mpq_class root(-fc[0], fc[1]);
        root.canonicalize();
        std::vector<Work> reals(1), uppers;
        reals[0].is_real = true;
        reals[0].rb.a = reals[0].rb.b = root;
        reals[0].box = Box::real_line(Interval::of_mpq(root, out_prec), out_prec);
        return assemble(f, target_bits, reals, uppers);
    }

    auto brackets = isolate_real_roots(fc);
    int k = static_cast<int>(brackets.size());
    if ((r - k) % 2 != 0)
        throw CertificationFailure("compute_embeddings: parity mismatch");
    int p = (r - k) / 2;

    std::vector<Work> reals;
    for (auto& rb : brackets) {
        Work w;
        w.is_real = true;
        w.rb = rb;
        tighten_real(fc, fd, w.rb, target_bits);
        w.box = Box::real_line(bracket_interval(w.rb, out_prec), out_prec);
        reals.push_back(std::move(w));
    }

    std::vector<Work> uppers;
    if (p > 0) {
        mpfr_prec_t wprec = std::max<mpfr_prec_t>(96, target_bits + 64);
        bool done = false;
        while (!done) {
            uppers.clear();
            auto approx = aberth(fc, fd, wprec);
            // drop the k approximations closest to the real axis, then keep
            // the upper-half ones; the counts must come out exactly right
            std::vector<size_t> idx(approx.size());
            for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
                return r_abs(approx[a].im) < r_abs(approx[b].im);
            });
            std::vector<CN> ups;
            for (size_t t = static_cast<size_t>(k); t < idx.size(); ++t)
                if (approx[idx[t]].im.sgn() > 0) ups.push_back(approx[idx[t]]);
            bool ok = static_cast<int>(ups.size()) == p;
            if (ok) {
                for (auto& z : ups) {
                    auto box = certify_root(fc, fd, z, wprec);
                    if (!box) {
                        ok = false;
                        break;
                    }
                    Work w;
                    w.is_real = false;
                    w.box = std::move(*box);
                    try {
                        tighten_box(fc, fd, w.box, target_bits);
                    } catch (const PrecisionExhausted&) {
                        ok = false;
                        break;
                    }
                    uppers.push_back(std::move(w));
                }
            }
            if (ok) {
                // the p upper boxes must be pairwise disjoint and strictly
                // above the axis: otherwise two approximations landed on the
                // same root or a real root was misclassified
                for (size_t i = 0; i < uppers.size() && ok; ++i) {
                    if (uppers[i].box.im.lo().sgn() <= 0) ok = false;
                    for (size_t j = i + 1; j < uppers.size() && ok; ++j)
                        if (!b_disjoint(uppers[i].box, uppers[j].box)) ok = false;
                }
            }
            if (ok) {
                done = true;
            } else {
                wprec *= 2;
                if (wprec > kPrecisionCap)
                    throw PrecisionExhausted("compute_embeddings: complex roots");
            }
        }
        order_uppers(f, uppers, target_bits);
    }

    return assemble(f, target_bits, reals, uppers);
}

EmbeddingSet refine(const EmbeddingSet& e, mpfr_prec_t extra_bits) {
    const IntPolynomial& f = e.poly();
    const Vec& fc = f.coeffs();
    Vec fd = poly_derivative(fc);
    mpfr_prec_t target = e.precision_bits() + extra_bits;
    mpfr_prec_t out_prec = target + 64;

    std::vector<Work> reals, uppers;
    for (int i = 0; i < e.degree(); ++i) {
        const auto& enc = e.at(i);
        if (enc.is_real) {
            Work w;
            w.is_real = true;
            w.rb.a = real_to_mpq(enc.rect.re.lo());
            w.rb.b = real_to_mpq(enc.rect.re.hi());
            if (w.rb.a != w.rb.b) {
                w.rb.sign_a = sign_f_at(fc, w.rb.a);
                if (w.rb.sign_a == 0) {
                    w.rb.b = w.rb.a;
                } else if (sign_f_at(fc, w.rb.b) == 0) {
                    w.rb.a = w.rb.b;
                }
            }
            tighten_real(fc, fd, w.rb, target);
            w.box = Box::real_line(bracket_interval(w.rb, out_prec), out_prec);
            reals.push_back(std::move(w));
        } else if (i == enc.partner - 1) {  // upper member precedes its mirror
            Work w;
            w.is_real = false;
            w.box = enc.rect;
            tighten_box(fc, fd, w.box, target);
            uppers.push_back(std::move(w));
        }
    }
    return assemble(f, target, reals, uppers);
}

std::vector<int> track_root(const EmbeddingSet& src, const UnimodularMatrix& m,
                            const EmbeddingSet& dst) {
    if (src.degree() != dst.degree())
        throw std::invalid_argument("track_root: degree mismatch");
    const Vec& sf = src.poly().coeffs();
    Vec sfd = poly_derivative(sf);
    const Vec& df = dst.poly().coeffs();
    Vec dfd = poly_derivative(df);
    int r = src.degree();

    std::vector<Box> sboxes, dboxes;
    std::vector<bool> sreal, dreal;
    for (int i = 0; i < r; ++i) {
        sboxes.push_back(src.at(i).rect);
        sreal.push_back(src.at(i).is_real);
        dboxes.push_back(dst.at(i).rect);
        dreal.push_back(dst.at(i).is_real);
    }

    auto tighten_one = [](const Vec& f, const Vec& fd, Box& box, bool is_real,
                          mpfr_prec_t t) {
        if (is_real) {
            RealBracket rb;
            rb.a = real_to_mpq(box.re.lo());
            rb.b = real_to_mpq(box.re.hi());
            if (rb.a != rb.b) {
                rb.sign_a = sign_f_at(f, rb.a);
                if (rb.sign_a == 0)
                    rb.b = rb.a;
                else if (sign_f_at(f, rb.b) == 0)
                    rb.a = rb.b;
            }
            tighten_real(f, fd, rb, t);
            box = Box::real_line(bracket_interval(rb, t + 64), t + 64);
        } else {
            tighten_box(f, fd, box, t);
        }
    };

    mpfr_prec_t prec = src.precision_bits();
    std::vector<int> pi(static_cast<size_t>(r), -1);
    Interval ia = Interval::of_mpz(m.a, 64), ib = Interval::of_mpz(m.b, 64);
    Interval ic = Interval::of_mpz(m.c, 64), id = Interval::of_mpz(m.d, 64);
    for (int i = 0; i < r; ++i) {
        mpfr_prec_t t = prec;
        while (true) {
            mpfr_prec_t w = t + 64;
            Box X = sboxes[static_cast<size_t>(i)];
            Box num = Box(i_add(i_mul(X.re, ia, w), ib, w), i_mul(X.im, ia, w));
            Box den = Box(i_add(i_mul(X.re, ic, w), id, w), i_mul(X.im, ic, w));
            bool pole = b_abs2(den, w).contains_zero();
            std::vector<int> hits;
            if (!pole) {
                Box img = b_div(num, den, w);
                for (int j = 0; j < r; ++j)
                    if (!b_disjoint(img, dboxes[static_cast<size_t>(j)]))
                        hits.push_back(j);
            }
            if (!pole && hits.size() == 1) {
                pi[static_cast<size_t>(i)] = hits[0];
                break;
            }
            if (!pole && hits.empty())
                throw CertificationFailure("track_root: image missed every box");
            t *= 2;
            if (t > kPrecisionCap) {
                if (pole)
                    throw std::invalid_argument(
                        "track_root: transform has a pole at a root");
                throw PrecisionExhausted("track_root: match not unique");
            }
            tighten_one(sf, sfd, sboxes[static_cast<size_t>(i)],
                        sreal[static_cast<size_t>(i)], t);
            for (int j : hits)
                tighten_one(df, dfd, dboxes[static_cast<size_t>(j)],
                            dreal[static_cast<size_t>(j)], t);
        }
    }
    std::vector<bool> seen(static_cast<size_t>(r), false);
    for (int i = 0; i < r; ++i) {
        if (seen[static_cast<size_t>(pi[static_cast<size_t>(i)])])
            throw CertificationFailure("track_root: permutation not injective");
        seen[static_cast<size_t>(pi[static_cast<size_t>(i)])] = true;
    }
    return pi;
}

}  // namespace consep
