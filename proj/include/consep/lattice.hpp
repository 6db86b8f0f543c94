#pragma once

#include "consep/measures.hpp"

namespace consep {

// The symmetric convex body { (x,y) : |alpha x + y| <= 1/Q, |beta_i x + y| <= Q }
// described by its gauge max(Q|alpha x + y|, max_i |beta_i x + y| / Q).
struct ConvexBodyS {
  Interval alpha;          // the distinguished real conjugate
  std::vector<Box> betas;  // the remaining conjugates
  mpq_class Q;             // scale, > 1
};

ConvexBodyS body_from_embeddings(const EmbeddingSet& e, int real_label,
                                 const mpq_class& Q);

// Certified gauge value of an integer vector (x, y) != 0.
Interval gauge(const ConvexBodyS& body, const mpz_class& x, const mpz_class& y,
               mpfr_prec_t prec = 0);

// Basis of Z^2 adapted to the body: v1 = (x1,y1) attains the first minimum
// (certified by exhausting every lattice vector inside a proxy-form bound),
// v2 = (x2,y2) is the gauge-minimal unimodular completion of v1, which in
// dimension 2 attains the second minimum.
struct AdaptedBasis {
  mpz_class x1, y1, x2, y2;
  Interval lambda1, lambda2;
  Real area_lo;             // certified lower bound on the body's area
  long candidates = 0;      // lattice vectors examined by the exhaustion
  InequalityReport minkowski;  // lambda1 * lambda2 * area_lo <= 4
};

AdaptedBasis adapted_basis(const ConvexBodyS& body);

// Builds the adapted matrix [[a,b],[c,d]] = [v1; v2] for the body at scale Q
// and certifies each of the 2+2n two-sided containments
//   Q^{-1-delta} <= |alpha a + b|, |alpha c + d| <= Q^{-1+delta}
//   Q^{ 1-delta} <= |beta_i a + b|, |beta_i c + d| <= Q^{ 1+delta}
// as one lower and one upper report per form.  "fails" is an expected
// verdict at small Q; the construction only promises success for Q large.
struct AdaptedMatrixReport {
  UnimodularMatrix matrix;
  mpq_class Q;
  double delta = 0;
  double epsilon = 0;  // recorded side parameter, delta/7
  std::vector<InequalityReport> checks;
  Verdict overall = Verdict::indeterminate;
  Interval lambda1, lambda2;
  Real area_lo;
  InequalityReport minkowski;
  long candidates = 0;
};

AdaptedMatrixReport adapted_matrix_check(const EmbeddingSet& e, int real_label,
                                         const mpq_class& Q, double delta);

}  // namespace consep
