#pragma once

#include "consep/embeddings.hpp"
#include "consep/reports.hpp"

namespace consep {

// Enclosure of a derived quantity; the vehicle for every certified value in
// the bounds laboratory.
using CertifiedValue = Interval;

// a0 * prod max(1, |root_i|).  Relative width tracks the embedding precision.
CertifiedValue mahler_measure(const EmbeddingSet& e, mpfr_prec_t prec = 0);

// prod over 2-element subsets {i,j} of sigma of |root_i - root_j|.
CertifiedValue separation_product(const EmbeddingSet& e, const SigmaSet& sigma,
                                  mpfr_prec_t prec = 0);

// Cross-check of the exact resultant route against the certified numeric
// route: a0^(2r-2) * prod_{i<j} |root_i - root_j|^2 must enclose |disc|.
// A disjoint result certifies a bug (in the root engine or the resultant),
// not a rounding artifact.
struct DiscIdentityReport {
  mpz_class abs_disc;   // exact
  Interval numeric;     // certified product route
  bool consistent = false;
};
DiscIdentityReport disc_product_identity(const EmbeddingSet& e);

// The elementary separation chain on given certified values, degree r:
//   S^2 >= 2^{-r(r-1)} |D| M^{2-2r}   (squared to keep |D|^{1/2} exact),
//   |D| >= 1                          (exact integers),
//   S^2 >= 2^{-r(r-1)} M^{2-2r}.
// Comparisons on squares avoid irrational intermediates entirely.
ChainReport verify_chain_values(const Interval& S, const Interval& M,
                                const mpz_class& abs_disc, int r);

// Same chain evaluated from an embedding set, refining the enclosures until
// every link is determinate or the precision cap is reached.
ChainReport verify_trivial_chain(const EmbeddingSet& e, const SigmaSet& sigma);

}  // namespace consep
