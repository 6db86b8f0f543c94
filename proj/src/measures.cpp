#include "consep/measures.hpp"

#include "consep/errors.hpp"

namespace consep {

namespace {

mpfr_prec_t working_prec(const EmbeddingSet& e, mpfr_prec_t prec) {
  return prec > 0 ? prec : e.precision_bits() + 32;
}

}  // namespace

CertifiedValue mahler_measure(const EmbeddingSet& e, mpfr_prec_t prec) {
  mpfr_prec_t p = working_prec(e, prec);
  Interval acc = Interval::of_mpz(e.poly().leading(), p);
  for (const auto& enc : e.all())
    acc = i_mul(acc, i_max1(b_abs(enc.rect, p)), p);
  return acc;
}

CertifiedValue separation_product(const EmbeddingSet& e, const SigmaSet& sigma,
                                  mpfr_prec_t prec) {
  mpfr_prec_t p = working_prec(e, prec);
  const auto& labels = sigma.labels();
  if (labels.back() > e.degree())
    throw std::invalid_argument("separation_product: label exceeds degree");
  Interval acc = Interval::of_si(1, p);
  for (size_t i = 0; i < labels.size(); ++i) {
    for (size_t j = i + 1; j < labels.size(); ++j) {
      const Box& zi = e.at(labels[i] - 1).rect;
      const Box& zj = e.at(labels[j] - 1).rect;
      acc = i_mul(acc, b_abs(b_sub(zi, zj, p), p), p);
    }
  }
  return acc;
}

DiscIdentityReport disc_product_identity(const EmbeddingSet& e) {
  mpfr_prec_t p = e.precision_bits() + 32;
  int r = e.degree();
  Interval acc = i_pow_si(Interval::of_mpz(e.poly().leading(), p), 2 * r - 2, p);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      Box diff = b_sub(e.at(i).rect, e.at(j).rect, p);
      acc = i_mul(acc, b_abs2(diff, p), p);
    }
  }
  DiscIdentityReport rep;
  rep.abs_disc = abs(discriminant(e.poly()));
  rep.numeric = acc;
  rep.consistent = acc.contains_mpq(mpq_class(rep.abs_disc));
  return rep;
}

ChainReport verify_chain_values(const Interval& S, const Interval& M,
                                const mpz_class& abs_disc, int r) {
  if (r < 2) throw std::invalid_argument("chain: degree must be >= 2");
  mpfr_prec_t p = std::max(S.prec(), M.prec());
  long pairs2 = static_cast<long>(r) * (r - 1);  // = 2 * (number of pairs)
  Interval d_abs = Interval::of_mpz(abs_disc, p);
  Interval s2 = i_sqr(S, p);
  Interval m_pow = i_pow_si(M, 2 - 2 * r, p);
  Interval mid = i_scale2(i_mul(d_abs, m_pow, p), -pairs2);
  Interval tail = i_scale2(m_pow, -pairs2);

  ChainReport rep;
  rep.add(check_ge("S^2 >= 2^-(r(r-1)) |D| M^(2-2r)", s2, mid));
  {
    // Exact integer link: |D| >= 1.  The margin is exact as well.
    InequalityReport link;
    link.claim = "|D| >= 1";
    link.lhs = d_abs;
    link.rhs = Interval::of_si(1, p);
    link.verdict = abs_disc >= 1 ? Verdict::holds : Verdict::fails;
    link.margin = Real::of_mpz(abs_disc - 1, p, MPFR_RNDD);
    rep.add(std::move(link));
  }
  rep.add(check_ge("S^2 >= 2^-(r(r-1)) M^(2-2r)", s2, tail));
  return rep;
}

ChainReport verify_trivial_chain(const EmbeddingSet& e, const SigmaSet& sigma) {
  mpz_class d_abs = abs(discriminant(e.poly()));
  EmbeddingSet cur = e;
  for (int round = 0;; ++round) {
    ChainReport rep = verify_chain_values(separation_product(cur, sigma),
                                          mahler_measure(cur), d_abs,
                                          cur.degree());
    if (rep.overall != Verdict::indeterminate || round >= 4) return rep;
    try {
      cur = refine(cur, cur.precision_bits());
    } catch (const PrecisionExhausted&) {
      return rep;
    }
  }
}

}  // namespace consep
