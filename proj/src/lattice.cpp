#include "consep/lattice.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "consep/errors.hpp"

namespace consep {

ConvexBodyS body_from_embeddings(const EmbeddingSet& e, int real_label,
                                 const mpq_class& Q) {
  if (real_label < 1 || real_label > e.degree())
    throw std::invalid_argument("body: label out of range");
  if (!e.is_real_label(real_label))
    throw std::invalid_argument("body: distinguished label must be real");
  if (Q <= 1) throw std::invalid_argument("body: need Q > 1");
  ConvexBodyS body;
  body.alpha = e.at(real_label - 1).rect.re;
  for (int i = 0; i < e.degree(); ++i)
    if (i != real_label - 1) body.betas.push_back(e.at(i).rect);
  body.Q = Q;
  return body;
}

namespace {

struct Vec {
  mpz_class x, y;
  bool operator<(const Vec& o) const {
    if (x != o.x) return x < o.x;
    return y < o.y;
  }
  bool is_zero() const { return x == 0 && y == 0; }
};

Vec add(const Vec& a, const Vec& b) { return Vec{a.x + b.x, a.y + b.y}; }
Vec sub(const Vec& a, const Vec& b) { return Vec{a.x - b.x, a.y - b.y}; }
Vec scale(const mpz_class& k, const Vec& a) { return Vec{k * a.x, k * a.y}; }

// Divide out the content and fix the sign so x > 0, or x == 0 and y > 0.
Vec canonical(Vec v) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), v.x.get_mpz_t(), v.y.get_mpz_t());
  if (g > 1) {
    v.x /= g;
    v.y /= g;
  }
  if (v.x < 0 || (v.x == 0 && v.y < 0)) {
    v.x = -v.x;
    v.y = -v.y;
  }
  return v;
}

Interval gauge_vec(const ConvexBodyS& body, const Vec& v, mpfr_prec_t p) {
  return gauge(body, v.x, v.y, p);
}

// Proxy positive quadratic form q(v) = Q^2 (alpha x + y)^2 + sum |beta_i x + y|^2 / Q^2.
// Sandwich: gauge(v)^2 <= q(v) <= (1 + n) gauge(v)^2.
Interval proxy_q(const ConvexBodyS& body, const Vec& v, mpfr_prec_t p) {
  Interval Qi = Interval::of_mpq(body.Q, p);
  Interval Q2 = i_sqr(Qi, p);
  Interval xi = Interval::of_mpz(v.x, p), yi = Interval::of_mpz(v.y, p);
  Interval lin = i_add(i_mul(body.alpha, xi, p), yi, p);
  Interval acc = i_mul(Q2, i_sqr(lin, p), p);
  for (const Box& beta : body.betas) {
    Box form = b_add(b_mul_i(beta, xi, p), Box::real_line(yi, p), p);
    acc = i_add(acc, i_div(b_abs2(form, p), Q2, p), p);
  }
  return acc;
}

mpz_class floor_to_mpz(const Real& x) {
  Real t = x;
  mpfr_t f;
  mpfr_init2(f, mpfr_get_prec(t.raw()));
  mpfr_floor(f, t.raw());
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), f, MPFR_RNDN);  // f is integral, exact
  mpfr_clear(f);
  return z;
}

mpz_class ceil_to_mpz(const Real& x) {
  Real t = x;
  mpfr_t f;
  mpfr_init2(f, mpfr_get_prec(t.raw()));
  mpfr_ceil(f, t.raw());
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), f, MPFR_RNDN);
  mpfr_clear(f);
  return z;
}

// Heuristic reduced basis for the proxy form.  Correctness never depends on
// this; it only seeds the exhaustion bound.  The Gram entries span ~Q^4,
// which overwhelms double precision already near Q ~ 1e4, so the reduction
// runs in mpfr at the caller's working precision.
std::pair<Vec, Vec> gauss_seed(const ConvexBodyS& body, mpfr_prec_t p) {
  const mpfr_rnd_t N = MPFR_RNDN;
  Real Q = Real::of_mpq(body.Q, p, N);
  Real Q2 = r_mul(Q, Q, p, N);
  Real a = body.alpha.mid();
  Real g11 = r_mul(r_mul(a, a, p, N), Q2, p, N);
  Real g12 = r_mul(a, Q2, p, N);
  Real g22 = Q2;
  for (const Box& beta : body.betas) {
    Real br = beta.re.mid(), bi = beta.im.mid();
    Real n2 = r_add(r_mul(br, br, p, N), r_mul(bi, bi, p, N), p, N);
    g11 = r_add(g11, r_div(n2, Q2, p, N), p, N);
    g12 = r_add(g12, r_div(br, Q2, p, N), p, N);
    g22 = r_add(g22, r_div(Real::of_si(1, p, N), Q2, p, N), p, N);
  }
  auto qd = [&](const Vec& v) {
    Real x = Real::of_mpz(v.x, p, N), y = Real::of_mpz(v.y, p, N);
    Real t = r_add(r_mul(g11, r_mul(x, x, p, N), p, N),
                   r_mul(g22, r_mul(y, y, p, N), p, N), p, N);
    Real c = r_mul(g12, r_mul(x, y, p, N), p, N);
    return r_add(t, r_add(c, c, p, N), p, N);
  };
  auto bd = [&](const Vec& u, const Vec& v) {
    Real ux = Real::of_mpz(u.x, p, N), uy = Real::of_mpz(u.y, p, N);
    Real vx = Real::of_mpz(v.x, p, N), vy = Real::of_mpz(v.y, p, N);
    Real t = r_add(r_mul(g11, r_mul(ux, vx, p, N), p, N),
                   r_mul(g22, r_mul(uy, vy, p, N), p, N), p, N);
    Real c = r_mul(
        g12, r_add(r_mul(ux, vy, p, N), r_mul(uy, vx, p, N), p, N), p, N);
    return r_add(t, c, p, N);
  };
  Vec u1{1, 0}, u2{0, 1};
  for (int it = 0; it < 96; ++it) {
    if (qd(u2) < qd(u1)) std::swap(u1, u2);
    Real q1 = qd(u1);
    if (!(q1.sgn() > 0)) break;
    Real ratio = r_div(bd(u1, u2), q1, p, N);
    mpfr_t rt;
    mpfr_init2(rt, p);
    mpfr_round(rt, ratio.raw());
    mpz_class mu;
    mpfr_get_z(mu.get_mpz_t(), rt, MPFR_RNDN);
    mpfr_clear(rt);
    if (mu == 0) break;
    u2 = sub(u2, scale(mu, u1));
  }
  if (qd(u2) < qd(u1)) std::swap(u1, u2);
  return {u1, u2};
}

}  // namespace

Interval gauge(const ConvexBodyS& body, const mpz_class& x, const mpz_class& y,
               mpfr_prec_t prec) {
  if (x == 0 && y == 0) throw std::invalid_argument("gauge: zero vector");
  mpfr_prec_t p = prec > 0 ? prec : std::max<mpfr_prec_t>(128, body.alpha.prec());
  Interval Qi = Interval::of_mpq(body.Q, p);
  Interval xi = Interval::of_mpz(x, p), yi = Interval::of_mpz(y, p);
  Interval g = i_mul(Qi, i_abs(i_add(i_mul(body.alpha, xi, p), yi, p)), p);
  for (const Box& beta : body.betas) {
    Box form = b_add(b_mul_i(beta, xi, p), Box::real_line(yi, p), p);
    g = i_max(g, i_div(b_abs(form, p), Qi, p));
  }
  return g;
}

AdaptedBasis adapted_basis(const ConvexBodyS& body) {
  const long n = static_cast<long>(body.betas.size());
  mpfr_prec_t p = std::max<mpfr_prec_t>(160, body.alpha.prec() + 32);

  for (int attempt = 0; attempt < 5; ++attempt, p *= 2) {
    if (p > kPrecisionCap)
      throw PrecisionExhausted("adapted_basis: precision cap reached");

    auto [u1, u2] = gauss_seed(body, p);
    // Exhaustion threshold from the best seed vector.
    Real g0 = gauge_vec(body, u1, p).hi();
    for (const Vec& s : {u2, add(u1, u2), sub(u1, u2)}) {
      if (s.is_zero()) continue;
      Real g = gauge_vec(body, s, p).hi();
      if (g < g0) g0 = g;
    }
    Real bound = r_mul(r_mul(g0, g0, p, MPFR_RNDU),
                       Real::of_si(1 + n, p, MPFR_RNDU), p, MPFR_RNDU);
    Interval bound_i = Interval::point(bound);

    // Certified proxy form in the (u1, u2) coordinates.
    Interval q11 = proxy_q(body, u1, p);
    Interval q22 = proxy_q(body, u2, p);
    Interval qs = proxy_q(body, add(u1, u2), p);
    Interval q12 = i_scale2(i_sub(i_sub(qs, q11, p), q22, p), -1);
    if (!q11.is_positive()) continue;
    Interval schur = i_sub(q22, i_div(i_sqr(q12, p), q11, p), p);
    if (!schur.is_positive()) continue;

    // Every v = m1 u1 + m2 u2 with q(v) <= bound satisfies
    // m2^2 <= bound / lo(schur) and m1 in the certified slab below.
    Real m2r(p);
    mpfr_div(m2r.raw(), bound.raw(), schur.lo().raw(), MPFR_RNDU);
    mpfr_sqrt(m2r.raw(), m2r.raw(), MPFR_RNDU);
    mpz_class m2max = floor_to_mpz(m2r);
    if (m2max > 4096 || m2max < 0) continue;  // degenerate seed, retry tighter

    std::set<Vec> cands;
    bool aborted = false;
    for (mpz_class m2 = 0; m2 <= m2max; ++m2) {
      Interval m2i = Interval::of_mpz(m2, p);
      Interval rng = i_sub(bound_i, i_mul(schur, i_sqr(m2i, p), p), p);
      if (rng.hi().sgn() < 0) break;
      Interval center = i_neg(i_div(i_mul(q12, m2i, p), q11, p));
      Interval h = i_sqrt(i_div(rng, q11, p), p);
      mpz_class m1_lo = ceil_to_mpz(r_sub(center.lo(), h.hi(), p, MPFR_RNDD));
      mpz_class m1_hi = floor_to_mpz(r_add(center.hi(), h.hi(), p, MPFR_RNDU));
      if (m1_hi - m1_lo > 20000) {
        aborted = true;
        break;
      }
      for (mpz_class m1 = m1_lo; m1 <= m1_hi; ++m1) {
        Vec v = add(scale(m1, u1), scale(m2, u2));
        if (v.is_zero()) continue;
        cands.insert(canonical(v));
      }
    }
    if (aborted || cands.empty()) continue;

    // First minimum: enclosure over the exhaustive candidate list.  Vectors
    // outside the list have q > bound, hence gauge > g0 >= every candidate
    // upper bound that seeded g0, so the enclosure below is valid.
    Vec v1;
    Real l1_lo(p), l1_up(p);
    bool first = true;
    for (const Vec& v : cands) {
      Interval g = gauge_vec(body, v, p);
      if (first) {
        v1 = v;
        l1_lo = g.lo();
        l1_up = g.hi();
        first = false;
        continue;
      }
      if (g.lo() < l1_lo) l1_lo = g.lo();
      if (g.hi() < l1_up) {
        l1_up = g.hi();
        v1 = v;
      }
    }
    if (!(l1_lo.sgn() > 0)) continue;  // need a positive floor for the scans
    Interval lambda1(l1_lo, l1_up);

    // Minimal unimodular completion of v1; in dimension 2 it attains the
    // second minimum.  |k| beyond the triangle-inequality cutoff is
    // certifiably worse than the best completion found.
    mpz_class g, ux, wy;
    mpz_gcdext(g.get_mpz_t(), ux.get_mpz_t(), wy.get_mpz_t(),
               v1.x.get_mpz_t(), v1.y.get_mpz_t());
    Vec v20{-wy, ux};  // det [v1; v20] = v1.x*ux + v1.y*wy = 1
    Interval g20 = gauge_vec(body, v20, p);
    Vec v2 = v20;
    Real l2_lo = g20.lo(), l2_up = g20.hi();
    mpz_class best_k = 0;
    for (mpz_class kk = 1; kk <= 1000000; ++kk) {
      // Certified: gauge(v20 + k v1) >= |k| lambda1 - gauge(v20).
      Real floor_k = r_sub(r_mul(Real::of_mpz(kk, p, MPFR_RNDD), l1_lo, p, MPFR_RNDD),
                           g20.hi(), p, MPFR_RNDD);
      if (floor_k > l2_up) break;
      for (int sgn : {1, -1}) {
        Vec cand = add(v20, scale(sgn * kk, v1));
        Interval gc = gauge_vec(body, cand, p);
        if (gc.lo() < l2_lo) l2_lo = gc.lo();
        bool better = gc.hi() < l2_up ||
                      (gc.hi() == l2_up && abs(kk) < abs(best_k));
        if (better) {
          l2_up = gc.hi();
          v2 = cand;
          best_k = sgn * kk;
        }
      }
    }
    Interval lambda2(l2_lo, l2_up);

    // Certified area lower bound via the unit-Jacobian substitution
    // u = alpha x + y: the box |x| <= min_i (Q - 1/Q)/|beta_i - alpha|,
    // |u| <= 1/Q lies inside the body.
    Interval Qi = Interval::of_mpq(body.Q, p);
    Interval invQ = i_div(Interval::of_si(1, p), Qi, p);
    Real slab = r_sub(Qi.lo(), invQ.hi(), p, MPFR_RNDD);
    Real xmin(p);
    bool have_x = false;
    Box alpha_box = Box::real_line(body.alpha, p);
    for (const Box& beta : body.betas) {
      Real gam_up = b_abs(b_sub(beta, alpha_box, p), p).hi();
      Real xb = r_div(slab, gam_up, p, MPFR_RNDD);
      if (!have_x || xb < xmin) {
        xmin = xb;
        have_x = true;
      }
    }
    Real area_lo(p);
    if (!have_x) {
      // No beta constraints: the u-slab alone is unbounded in x; any fixed
      // slice certifies area >= 2 * (2/Q) * 1 with x in [-1, 1].
      area_lo = r_mul(invQ.lo(), Real::of_si(4, p), p, MPFR_RNDD);
    } else if (slab.sgn() <= 0 || xmin.sgn() <= 0) {
      mpfr_set_zero(area_lo.raw(), 1);
    } else {
      area_lo = r_mul(r_mul(xmin, invQ.lo(), p, MPFR_RNDD),
                      Real::of_si(4, p), p, MPFR_RNDD);
    }

    Real prod = r_mul(r_mul(r_max(l1_lo, Real::of_si(0, p)),
                            r_max(l2_lo, Real::of_si(0, p)), p, MPFR_RNDD),
                      area_lo, p, MPFR_RNDD);
    InequalityReport mink = check_le("lambda1*lambda2*area_lo <= 4",
                                     Interval::point(prod),
                                     Interval::of_si(4, p));

    AdaptedBasis out;
    out.x1 = v1.x;
    out.y1 = v1.y;
    out.x2 = v2.x;
    out.y2 = v2.y;
    out.lambda1 = lambda1;
    out.lambda2 = lambda2;
    out.area_lo = area_lo;
    out.candidates = static_cast<long>(cands.size());
    out.minkowski = mink;
    return out;
  }
  throw CertificationFailure("adapted_basis: enumeration did not stabilize");
}

AdaptedMatrixReport adapted_matrix_check(const EmbeddingSet& e, int real_label,
                                         const mpq_class& Q, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("need delta > 0");
  ConvexBodyS body = body_from_embeddings(e, real_label, Q);
  AdaptedBasis basis = adapted_basis(body);

  AdaptedMatrixReport rep;
  rep.matrix = UnimodularMatrix(basis.x1, basis.y1, basis.x2, basis.y2);
  rep.Q = Q;
  rep.delta = delta;
  rep.epsilon = delta / 7;
  rep.lambda1 = basis.lambda1;
  rep.lambda2 = basis.lambda2;
  rep.area_lo = basis.area_lo;
  rep.minkowski = basis.minkowski;
  rep.candidates = basis.candidates;

  mpfr_prec_t p = std::max<mpfr_prec_t>(192, e.precision_bits() + 32);
  Interval Qi = Interval::of_mpq(Q, p);
  mpq_class dq(delta);  // dyadic, exact
  Interval alpha_lo_bound = i_pow_q(Qi, mpq_class(-1) - dq, p);
  Interval alpha_hi_bound = i_pow_q(Qi, mpq_class(-1) + dq, p);
  Interval beta_lo_bound = i_pow_q(Qi, mpq_class(1) - dq, p);
  Interval beta_hi_bound = i_pow_q(Qi, mpq_class(1) + dq, p);

  struct Row {
    const char* tag;
    mpz_class u, v;
  };
  const Row rows[2] = {{"row1", rep.matrix.a, rep.matrix.b},
                       {"row2", rep.matrix.c, rep.matrix.d}};
  for (const Row& row : rows) {
    Interval ui = Interval::of_mpz(row.u, p), vi = Interval::of_mpz(row.v, p);
    Interval at_alpha = i_abs(i_add(i_mul(body.alpha, ui, p), vi, p));
    std::string base = std::string("|alpha ") + row.tag + "|";
    rep.checks.push_back(
        check_ge(base + " >= Q^(-1-delta)", at_alpha, alpha_lo_bound));
    rep.checks.push_back(
        check_le(base + " <= Q^(-1+delta)", at_alpha, alpha_hi_bound));
    for (size_t i = 0; i < body.betas.size(); ++i) {
      Box form = b_add(b_mul_i(body.betas[i], ui, p), Box::real_line(vi, p), p);
      Interval at_beta = b_abs(form, p);
      std::string bname =
          "|beta" + std::to_string(i + 1) + " " + row.tag + "|";
      rep.checks.push_back(
          check_ge(bname + " >= Q^(1-delta)", at_beta, beta_lo_bound));
      rep.checks.push_back(
          check_le(bname + " <= Q^(1+delta)", at_beta, beta_hi_bound));
    }
  }
  rep.overall = Verdict::holds;
  for (const auto& c : rep.checks) rep.overall = combine(rep.overall, c.verdict);
  return rep;
}

}  // namespace consep
