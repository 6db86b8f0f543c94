#include "consep/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "consep/errors.hpp"

namespace consep {

GapQuantities gap_quantities(const EmbeddingSet& e, const UnimodularMatrix& m,
                             mpfr_prec_t prec) {
  mpfr_prec_t p = prec > 0 ? prec : e.precision_bits() + 32;
  int r = e.degree();
  Interval ia = Interval::of_mpz(m.a, p), ib = Interval::of_mpz(m.b, p);
  Interval ic = Interval::of_mpz(m.c, p), id = Interval::of_mpz(m.d, p);

  GapQuantities q;
  std::vector<Interval> height;  // max(1, |z_i|)
  for (int i = 0; i < r; ++i) {
    const Box& z = e.at(i).rect;
    Interval num = b_abs(b_add(b_mul_i(z, ia, p), Box::real_line(ib, p), p), p);
    Interval den = b_abs(b_add(b_mul_i(z, ic, p), Box::real_line(id, p), p), p);
    q.phi.push_back(i_max(num, den));
    height.push_back(i_max1(b_abs(z, p)));
    q.f.push_back(i_div(height.back(), q.phi.back(), p));
  }
  q.g.assign(static_cast<size_t>(r), std::vector<Interval>(static_cast<size_t>(r)));
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      Interval dist = b_abs(b_sub(e.at(i).rect, e.at(j).rect, p), p);
      q.g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          i_div(dist, i_mul(height[static_cast<size_t>(i)],
                            height[static_cast<size_t>(j)], p), p);
    }
  }
  q.M = mahler_measure(e, p);
  q.Mstar = mahler_via_forms(e, m, p);
  q.abs_disc = abs(discriminant(e.poly()));

  // Built-in consistency: the product identities and the universal pair
  // bounds, certified on the spot.
  Interval prod_f = Interval::of_si(1, p);
  for (const Interval& fi : q.f) prod_f = i_mul(prod_f, fi, p);
  q.consistency.add(check_identity("prod f_i = M/M*", prod_f,
                                   i_div(q.M, q.Mstar, p)));

  Interval prod_g = Interval::of_si(1, p);
  Interval prod_gff = Interval::of_si(1, p);
  Interval worst_g = Interval::of_si(0, p);
  Interval worst_gff = Interval::of_si(0, p);
  Interval worst_gfmin = Interval::of_si(0, p);
  Interval ratio_root = i_pow_q(i_div(q.M, q.Mstar, p), mpq_class(1, r), p);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const Interval& gij = q.g[static_cast<size_t>(i)][static_cast<size_t>(j)];
      Interval gff = i_mul(gij, i_mul(q.f[static_cast<size_t>(i)],
                                      q.f[static_cast<size_t>(j)], p), p);
      prod_g = i_mul(prod_g, gij, p);
      prod_gff = i_mul(prod_gff, gff, p);
      worst_g = i_max(worst_g, gij);
      worst_gff = i_max(worst_gff, gff);
      Interval fmin = i_min(q.f[static_cast<size_t>(i)],
                            q.f[static_cast<size_t>(j)]);
      worst_gfmin = i_max(worst_gfmin, i_mul(i_mul(gij, fmin, p), ratio_root, p));
    }
  }
  Interval d_i = Interval::of_mpz(q.abs_disc, p);
  q.consistency.add(check_identity(
      "(prod g)^2 M^(2r-2) = |D|",
      i_mul(i_sqr(prod_g, p), i_pow_si(q.M, 2 * r - 2, p), p), d_i));
  q.consistency.add(check_identity(
      "(prod g f f)^2 M*^(2r-2) = |D|",
      i_mul(i_sqr(prod_gff, p), i_pow_si(q.Mstar, 2 * r - 2, p), p), d_i));
  q.consistency.add(
      check_le("max g_ij <= 2", worst_g, Interval::of_si(2, p)));
  q.consistency.add(
      check_le("max g_ij f_i f_j <= 2", worst_gff, Interval::of_si(2, p)));
  q.consistency.add(check_le("max g_ij min(f_i,f_j) (M/M*)^(1/r) <= 4",
                             worst_gfmin, Interval::of_si(4, p)));
  return q;
}

std::vector<std::pair<int, int>> a_pairs(int l) {
  std::vector<std::pair<int, int>> out;
  for (int i = 2; i <= l + 1; ++i)
    for (int j = i + 1; j <= std::min(2 * i - 1, l + 1); ++j)
      out.emplace_back(i, j);
  return out;
}

long a_count_closed_form(int l) {
  return (l % 2 == 0) ? static_cast<long>(l) * l / 4
                      : (static_cast<long>(l) * l - 1) / 4;
}

bool a_sources_distinct(int l) {
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : a_pairs(l))
    if (!seen.insert({2 * i - j, i}).second) return false;
  return true;
}

namespace {

InequalityReport exact_count_link(const std::string& claim, long lhs, long rhs,
                                  bool ok) {
  InequalityReport rep;
  rep.claim = claim;
  rep.lhs = Interval::of_si(lhs, 64);
  rep.rhs = Interval::of_si(rhs, 64);
  rep.verdict = ok ? Verdict::holds : Verdict::fails;
  rep.margin = Real::of_si(lhs - rhs, 64);
  return rep;
}

RefinedBoundReport evaluate_refined(const EmbeddingSet& e,
                                    const UnimodularMatrix& m,
                                    const SigmaSet& sigma) {
  const int r = e.degree();
  const int s = sigma.size();
  const int l = r - s;
  mpfr_prec_t p = e.precision_bits() + 32;

  GapQuantities q = gap_quantities(e, m, p);
  Interval ratio = i_div(q.M, q.Mstar, p);
  Interval d_i = Interval::of_mpz(q.abs_disc, p);

  RefinedBoundReport rep;
  rep.l = l;

  // Hypothesis M* <= M.  Exact when the matrix is the identity.
  if (m.is_identity()) {
    InequalityReport hyp;
    hyp.claim = "M* <= M (identity transform, exact)";
    hyp.lhs = q.Mstar;
    hyp.rhs = q.M;
    hyp.verdict = Verdict::holds;
    hyp.margin = Real::of_si(0, p);
    rep.chain.add(std::move(hyp));
  } else {
    InequalityReport hyp = check_le("M* <= M (hypothesis)", q.Mstar, q.M);
    if (hyp.verdict == Verdict::fails)
      throw std::invalid_argument(
          "refined bound: hypothesis M* <= M is certifiably violated");
    rep.chain.add(std::move(hyp));
  }

  const long total_pairs = static_cast<long>(r) * (r - 1) / 2;
  const long inside = static_cast<long>(s) * (s - 1) / 2;
  const long not_inside = total_pairs - inside;

  // Product over all pairs not inside Sigma of 1/g.
  Interval prod_ginv = Interval::of_si(1, p);
  for (int i = 1; i <= r; ++i) {
    for (int j = i + 1; j <= r; ++j) {
      if (sigma.contains(i) && sigma.contains(j)) continue;
      prod_ginv = i_mul(
          prod_ginv,
          i_div(Interval::of_si(1, p),
                q.g[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)], p),
          p);
    }
  }

  auto g_at = [&](int la, int lb) -> const Interval& {
    int i = std::min(la, lb) - 1, j = std::max(la, lb) - 1;
    return q.g[static_cast<size_t>(i)][static_cast<size_t>(j)];
  };

  if (s <= r - 2) {
    // Merge the smallest Sigma label with the complement and sort the block
    // by f ascending (deterministic tie-break by label; ties can only make
    // the reported inequality verdicts more conservative).
    std::vector<int> block{sigma.labels().front()};
    for (int lab = 1; lab <= r; ++lab)
      if (!sigma.contains(lab)) block.push_back(lab);
    std::sort(block.begin(), block.end(), [&](int x, int y) {
      int c = q.f[static_cast<size_t>(x - 1)].hi().cmp(
          q.f[static_cast<size_t>(y - 1)].hi());
      if (c != 0) return c < 0;
      return x < y;
    });

    auto pairs = a_pairs(l);
    rep.a_count = static_cast<long>(pairs.size());
    rep.b_count = not_inside - rep.a_count;
    rep.chain.add(exact_count_link(
        "|A| = l^2/4 (l even) or (l^2-1)/4 (l odd)", rep.a_count,
        a_count_closed_form(l), rep.a_count == a_count_closed_form(l)));
    rep.chain.add(exact_count_link("9 |A| >= 2 l^2", 9 * rep.a_count,
                                   2L * l * l, 9 * rep.a_count >= 2L * l * l));
    rep.chain.add(exact_count_link("source pairs {2i-j, i} distinct", 1, 1,
                                   a_sources_distinct(l)));

    Interval prod_a = Interval::of_si(1, p);
    for (auto [i, j] : pairs) {
      int src = block[static_cast<size_t>(2 * i - j - 1)];
      int mid = block[static_cast<size_t>(i - 1)];
      Interval term = i_mul(g_at(src, mid),
                            i_mul(q.f[static_cast<size_t>(src - 1)],
                                  q.f[static_cast<size_t>(mid - 1)], p), p);
      prod_a = i_mul(prod_a, term, p);
    }
    Interval pow_ratio = i_pow_q(ratio, mpq_class(2 * rep.a_count, r), p);
    Interval rhs_mid = i_scale2(i_mul(pow_ratio, prod_a, p),
                                -(rep.b_count + 4 * rep.a_count));
    rep.chain.add(check_ge(
        "prod 1/g (pairs not inside Sigma) >= "
        "2^(-|B|-4|A|) (M/M*)^(2|A|/r) prod_A g f f",
        prod_ginv, rhs_mid));
  } else {
    // Sigma omits exactly one complex label i0; the conjugate pair carries
    // the whole refinement.
    int i0 = -1;
    for (int lab = 1; lab <= r; ++lab)
      if (!sigma.contains(lab)) i0 = lab;
    int partner = e.at(i0 - 1).partner + 1;
    rep.a_count = 1;
    rep.b_count = not_inside - 1;
    rep.chain.add(check_identity("f equal at the conjugate pair",
                                 q.f[static_cast<size_t>(i0 - 1)],
                                 q.f[static_cast<size_t>(partner - 1)]));
    Interval term = i_mul(g_at(i0, partner),
                          i_mul(q.f[static_cast<size_t>(i0 - 1)],
                                q.f[static_cast<size_t>(partner - 1)], p), p);
    Interval rhs_mid = i_scale2(
        i_mul(i_pow_q(ratio, mpq_class(2, r), p), term, p), -(2 + r));
    rep.chain.add(check_ge(
        "prod 1/g (pairs not inside Sigma) >= "
        "2^(-2-r) (M/M*)^(2/r) g f f at the omitted pair",
        prod_ginv, rhs_mid));
  }

  // Intermediate bound, squared to keep |D|^{1/2} exact.
  mpq_class two_u(8L * l * l, 9L * r);
  two_u.canonicalize();
  Interval x2 = i_mul(i_mul(d_i, i_pow_si(q.Mstar, 2 - 2 * r, p), p),
                      i_pow_q(ratio, two_u, p), p);
  long rr4 = 4L * r * r;
  rep.chain.add(check_ge(
      "(prod 1/g)^2 >= 2^(-4r^2) |D| M*^(2-2r) (M/M*)^(2u)",
      i_sqr(prod_ginv, p), i_scale2(x2, -rr4)));

  // Final bound, squared.
  Interval s_sigma = separation_product(e, sigma, p);
  Interval rhs_final = i_scale2(
      i_mul(i_mul(d_i, i_pow_si(q.M, 2 - 2 * r, p), p), i_max1(x2), p), -rr4);
  rep.chain.add(check_ge(
      "S^2 >= 2^(-4r^2) |D| M^(2-2r) max(1, |D| M*^(2-2r) (M/M*)^(2u))",
      i_sqr(s_sigma, p), rhs_final));

  rep.overall = rep.chain.overall;
  return rep;
}

}  // namespace

RefinedBoundReport verify_refined_bound(const EmbeddingSet& e,
                                        const UnimodularMatrix& m,
                                        const SigmaSet& sigma) {
  const int r = e.degree();
  const int s = sigma.size();
  if (r < 4)
    throw std::invalid_argument("refined bound: degree must be >= 4");
  if (s < 2 || s > r - 1)
    throw std::invalid_argument("refined bound: need 2 <= |Sigma| <= r-1");
  if (s == r - 1) {
    for (int lab = 1; lab <= r; ++lab)
      if (!sigma.contains(lab) && e.is_real_label(lab))
        throw std::invalid_argument(
            "refined bound: the single omitted label must be complex");
  }

  EmbeddingSet cur = e;
  for (int round = 0;; ++round) {
    RefinedBoundReport rep = evaluate_refined(cur, m, sigma);
    if (rep.overall != Verdict::indeterminate || round >= 3) return rep;
    try {
      cur = refine(cur, cur.precision_bits());
    } catch (const PrecisionExhausted&) {
      return rep;
    }
  }
}

mpq_class kappa_upper_ineffective(int r, int sigma_size) {
  if (r < 4)
    throw std::invalid_argument("ineffective exponent: degree must be >= 4");
  if (sigma_size < 2 || sigma_size > r - 1)
    throw std::invalid_argument("ineffective exponent: need 2 <= |Sigma| <= r-1");
  long d = r - sigma_size;
  mpq_class out(r - 1);
  mpq_class corr(d * d, 135L * r);
  corr.canonicalize();
  return out - corr;
}

ThetaKappa kappa_from_theta(const KappaParams& params) {
  if (params.r < 3) throw std::invalid_argument("theta: degree must be >= 3");
  if (params.sigma_size < 2 || params.sigma_size > params.r)
    throw std::invalid_argument("theta: need 2 <= |Sigma| <= r");
  if (params.a_exp <= 0) throw std::invalid_argument("theta: need a_exp > 0");
  long d = params.r - params.sigma_size;
  ThetaKappa out;
  out.u = mpq_class(4L * d * d, 9L * params.r);
  out.u.canonicalize();
  mpq_class denom = 2 * (mpq_class(params.r - 1) + out.u) * params.a_exp - 1;
  if (denom <= 0)
    throw std::invalid_argument("theta: non-positive denominator");
  out.theta = mpq_class(1) / denom;
  out.kappa = mpq_class(params.r - 1) - out.theta * out.u;
  return out;
}

namespace {

double log10_mpz(const mpz_class& x) {
  Real t = Real::of_mpz(x, 64, MPFR_RNDN);
  mpfr_log10(t.raw(), t.raw(), MPFR_RNDN);
  return t.to_double();
}

}  // namespace

EffectiveExponents effective_exponents(int r, const mpz_class& abs_field_disc,
                                       const EffectiveConstants& c) {
  if (r < 2) throw std::invalid_argument("effective exponents: r >= 2");
  if (abs_field_disc < 1)
    throw std::invalid_argument("effective exponents: |D_K| >= 1");
  for (double v : {c.c1, c.c2, c.c3, c.c4, c.c5, c.c6, c.c7, c.c8})
    if (!(v > 0))
      throw std::invalid_argument("effective exponents: constants must be > 0");

  double rd = r;
  double r3 = rd * rd * rd, r4 = r3 * rd;
  double ldk = log10_mpz(abs_field_disc);

  EffectiveExponents out;
  out.r = r;
  out.abs_field_disc = abs_field_disc;
  out.kappa_deficit = {1, -(c.c2 * r4 * std::log10(c.c1 * rd) + 6 * r3 * ldk)};
  out.log_C = {-1, c.c4 * r4 * std::log10(c.c3 * rd) + 2 * r3 * ldk};
  out.log_A2 = {1, c.c6 * r4 * std::log10(c.c5 * rd) + 8 * r3 * ldk};
  out.a_of_K = {1, c.c8 * r4 * std::log10(c.c7 * rd) + 6 * r3 * ldk};
  return out;
}

ChainReport cubic_mixed_chain(const EmbeddingSet& e) {
  if (e.degree() != 3 || e.reals() != 1 || e.pairs() != 1)
    throw std::invalid_argument(
        "cubic chain: need a cubic with one real root and one complex pair");

  EmbeddingSet cur = e;
  for (int round = 0;; ++round) {
    mpfr_prec_t p = cur.precision_bits() + 32;
    Interval d12 = b_abs(b_sub(cur.at(0).rect, cur.at(1).rect, p), p);
    Interval d13 = b_abs(b_sub(cur.at(0).rect, cur.at(2).rect, p), p);
    Interval d23 = b_abs(b_sub(cur.at(1).rect, cur.at(2).rect, p), p);
    Interval s_full = separation_product(cur, SigmaSet::full(3), p);
    Interval m = mahler_measure(cur, p);
    Interval a0 = Interval::of_mpz(cur.poly().leading(), p);
    mpz_class d_abs = abs(discriminant(cur.poly()));

    ChainReport rep;
    rep.add(check_identity("|z1-z3| = |z1-z2|", d13, d12));
    rep.add(check_le("|z2-z3| <= 2 |z1-z2|", d23, i_scale2(d12, 1)));
    rep.add(check_ge("|z1-z2|^3 >= (1/2) S_full", i_pow_si(d12, 3, p),
                     i_scale2(s_full, -1)));
    rep.add(check_identity("S_full^2 a0^4 = |D|",
                           i_mul(i_sqr(s_full, p), i_pow_si(a0, 4, p), p),
                           Interval::of_mpz(d_abs, p)));
    rep.add(check_ge("|z1-z2|^3 >= (1/2) M^(-2)", i_pow_si(d12, 3, p),
                     i_scale2(i_pow_si(m, -2, p), -1)));
    if (rep.overall != Verdict::indeterminate || round >= 3) return rep;
    try {
      cur = refine(cur, cur.precision_bits());
    } catch (const PrecisionExhausted&) {
      return rep;
    }
  }
}

}  // namespace consep
