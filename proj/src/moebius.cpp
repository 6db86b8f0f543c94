#include "consep/moebius.hpp"

#include <algorithm>

#include "consep/errors.hpp"

namespace consep {

AlgebraicNumber make_algebraic(IntPolynomial poly, int label, mpfr_prec_t bits) {
  EmbeddingSet emb = compute_embeddings(poly, bits);
  if (label < 1 || label > emb.degree())
    throw std::invalid_argument("make_algebraic: label out of range");
  return AlgebraicNumber{std::move(poly), std::move(emb), label};
}

AlgebraicNumber apply(const UnimodularMatrix& m, const AlgebraicNumber& alg) {
  IntPolynomial target = transform_poly(alg.poly, m);
  EmbeddingSet temb = compute_embeddings(target, alg.emb.precision_bits());
  std::vector<int> pi = track_root(alg.emb, m, temb);
  int new_label = pi[static_cast<size_t>(alg.label - 1)] + 1;
  return AlgebraicNumber{std::move(target), std::move(temb), new_label};
}

CertifiedValue mahler_via_forms(const EmbeddingSet& e, const UnimodularMatrix& m,
                                mpfr_prec_t prec) {
  mpfr_prec_t p = prec > 0 ? prec : e.precision_bits() + 32;
  Interval ia = Interval::of_mpz(m.a, p), ib = Interval::of_mpz(m.b, p);
  Interval ic = Interval::of_mpz(m.c, p), id = Interval::of_mpz(m.d, p);
  Interval acc = Interval::of_mpz(e.poly().leading(), p);
  for (const auto& enc : e.all()) {
    Interval num = b_abs(b_add(b_mul_i(enc.rect, ia, p), Box::real_line(ib, p), p), p);
    Interval den = b_abs(b_add(b_mul_i(enc.rect, ic, p), Box::real_line(id, p), p), p);
    acc = i_mul(acc, i_max(num, den), p);
  }
  return acc;
}

namespace {

struct Move {
  std::string name;
  UnimodularMatrix m;
};

mpz_class max_abs_entry(const UnimodularMatrix& m) {
  mpz_class r = abs(m.a);
  r = std::max(r, mpz_class(abs(m.b)));
  r = std::max(r, mpz_class(abs(m.c)));
  r = std::max(r, mpz_class(abs(m.d)));
  return r;
}

// Deterministic order for equal-measure candidates: smaller entries first,
// then lexicographic on (a, b, c, d).
bool move_before(const Move& x, const Move& y) {
  mpz_class mx = max_abs_entry(x.m), my = max_abs_entry(y.m);
  if (mx != my) return mx < my;
  if (x.m.a != y.m.a) return x.m.a < y.m.a;
  if (x.m.b != y.m.b) return x.m.b < y.m.b;
  if (x.m.c != y.m.c) return x.m.c < y.m.c;
  return x.m.d < y.m.d;
}

// Nearest integer to the conjugate mean -c_{r-1}/(r c_r); exact rational
// rounding, ties away from zero.
mpz_class nearest_int_to_mean(const IntPolynomial& f) {
  int r = f.degree();
  mpq_class mean(-f.coeff(r - 1), r * f.leading());
  mean.canonicalize();
  mpz_class num = mean.get_num(), den = mean.get_den();
  mpz_class q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  // mean = q + rem/den with 0 <= rem < den; ties round toward +infinity,
  // deterministic.
  if (2 * rem >= den) q += 1;
  return q;
}

std::vector<Move> candidate_moves(const IntPolynomial& f) {
  std::vector<Move> moves;
  moves.push_back({"x+1", UnimodularMatrix::translation(1)});
  moves.push_back({"x-1", UnimodularMatrix::translation(-1)});
  moves.push_back({"-1/x", UnimodularMatrix::inversion()});
  mpz_class t = nearest_int_to_mean(f);
  if (t != 0 && t != 1 && t != -1)
    moves.push_back({"x-(" + t.get_str() + ")", UnimodularMatrix::translation(-t)});
  return moves;
}

}  // namespace

ReductionOutcome reduce_class(const AlgebraicNumber& alg, int step_budget) {
  if (alg.poly.degree() < 3)
    throw std::invalid_argument("reduce_class: degree must be >= 3");
  ReductionOutcome out{alg, UnimodularMatrix(), false, 0, {}};
  for (;;) {
    std::vector<Move> moves = candidate_moves(out.number.poly);
    std::sort(moves.begin(), moves.end(), move_before);

    // Certified comparison loop: refine the current embeddings until the
    // best candidate is decidedly below the current measure, decidedly not,
    // or the refinement budget runs out (then: no improvement, conservative).
    const Move* accepted = nullptr;
    Interval m_cur = mahler_measure(out.number.emb);
    Interval m_best = m_cur;
    for (int round = 0;; ++round) {
      m_cur = mahler_measure(out.number.emb);
      size_t best = moves.size();
      for (size_t i = 0; i < moves.size(); ++i) {
        Interval mi = mahler_via_forms(out.number.emb, moves[i].m);
        if (best == moves.size() || mi.hi() < m_best.hi()) {
          best = i;
          m_best = mi;
        }
      }
      if (m_best.hi() < m_cur.lo()) {
        accepted = &moves[best];
        break;
      }
      bool overlap = m_best.lo() <= m_cur.hi();
      if (!overlap || round >= 3) break;  // decided "no", or give up refining
      try {
        out.number.emb = refine(out.number.emb, out.number.emb.precision_bits());
      } catch (const PrecisionExhausted&) {
        break;
      }
    }
    if (accepted == nullptr) break;  // greedy local minimum
    if (out.steps >= step_budget) {
      out.budget_exhausted = true;  // an improving move exists but no budget
      break;
    }
    out.trace.push_back("step " + std::to_string(out.steps + 1) + ": " +
                        accepted->name + " M [" + m_cur.lo().str_dec(8) + ", " +
                        m_cur.hi().str_dec(8) + "] -> [" +
                        m_best.lo().str_dec(8) + ", " + m_best.hi().str_dec(8) +
                        "]");
    out.matrix = accepted->m.compose(out.matrix);
    out.number = apply(accepted->m, out.number);
    out.steps += 1;
  }
  return out;
}

InequalityReport measure_bound_record(const ReductionOutcome& out,
                                      const ReductionBoundParams& params) {
  if (params.A < 1 || params.a_exp <= 0)
    throw std::invalid_argument("measure_bound_record: need A >= 1, a_exp > 0");
  mpfr_prec_t p = out.number.emb.precision_bits() + 32;
  Interval m = mahler_measure(out.number.emb);
  mpz_class d_abs = abs(discriminant(out.number.poly));
  Interval rhs = i_mul(Interval::of_double(params.A, p),
                       i_pow_q(Interval::of_mpz(d_abs, p), params.a_exp, p), p);
  return check_le("M(reduced) <= A |D|^a_exp", m, rhs);
}

}  // namespace consep
