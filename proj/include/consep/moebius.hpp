#pragma once

#include <string>
#include <vector>

#include "consep/measures.hpp"

namespace consep {

// An algebraic number = defining polynomial + one distinguished conjugate.
struct AlgebraicNumber {
  IntPolynomial poly;
  EmbeddingSet emb;
  int label;  // 1-based conjugate index of the distinguished root
};

AlgebraicNumber make_algebraic(IntPolynomial poly, int label, mpfr_prec_t bits);

// x -> (a x + b)/(c x + d): new defining polynomial plus the certified image
// of the distinguished root, tracked through the map.
AlgebraicNumber apply(const UnimodularMatrix& m, const AlgebraicNumber& alg);

// Measure of the transformed number evaluated on the original conjugates:
// a0 * prod_i max(|a root_i + b|, |c root_i + d|).  Agrees with
// mahler_measure of the transformed polynomial's own embeddings; the two
// routes are kept separate deliberately and cross-checked in tests.
CertifiedValue mahler_via_forms(const EmbeddingSet& e, const UnimodularMatrix& m,
                                mpfr_prec_t prec = 0);

// User-supplied parameters for the recorded (never asserted) bound
// M(reduced) <= A * |D|^a_exp.
struct ReductionBoundParams {
  double A = 1.0;       // multiplier, >= 1
  mpq_class a_exp;      // discriminant exponent, > 0
};

struct ReductionOutcome {
  AlgebraicNumber number;   // the reduced representative
  UnimodularMatrix matrix;  // total transform: number.root = matrix(input.root)
  bool budget_exhausted = false;
  int steps = 0;
  std::vector<std::string> trace;  // one line per accepted move
};

// Greedy descent over the generator moves x+1, x-1, -1/x, and recentering
// (translation by minus the nearest integer to the mean of the conjugates).
// Every accepted move strictly decreases the Mahler measure, certified by
// disjoint enclosures; overlapping enclosures are refined a few rounds and
// then conservatively treated as "no improvement".  Greedy local minimum
// only; global minimality is not claimed.
ReductionOutcome reduce_class(const AlgebraicNumber& alg, int step_budget = 64);

// Records whether the reduced representative satisfies M <= A * |D|^a_exp
// for the given parameters.  Informational: the theory guarantees existence
// of such parameters but provides no values.
InequalityReport measure_bound_record(const ReductionOutcome& out,
                                      const ReductionBoundParams& params);

}  // namespace consep
