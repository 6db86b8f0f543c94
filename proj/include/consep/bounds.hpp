#pragma once

#include "consep/measures.hpp"
#include "consep/moebius.hpp"

namespace consep {

// Normalized gap quantities for a conjugate set and a unimodular matrix
// [[a,b],[c,d]]:
//   phi_i = max(|a z_i + b|, |c z_i + d|)
//   f_i   = max(1, |z_i|) / phi_i
//   g_ij  = |z_i - z_j| / (max(1,|z_i|) max(1,|z_j|))
// consistency carries the built-in certified checks:
//   prod f_i            = M / M*            (identity)
//   prod_{i<j} g_ij     = |D|^{1/2} / M^{r-1}   (identity, on squares)
//   prod_{i<j} g f f    = |D|^{1/2} / M*^{r-1}  (identity, on squares)
//   g_ij <= 2,  g_ij f_i f_j <= 2,  g_ij min(f_i,f_j) (M/M*)^{1/r} <= 4.
struct GapQuantities {
  std::vector<Interval> phi;
  std::vector<Interval> f;
  std::vector<std::vector<Interval>> g;  // g[i][j] valid for i < j (0-based)
  Interval M, Mstar;
  mpz_class abs_disc;
  ChainReport consistency;
};

GapQuantities gap_quantities(const EmbeddingSet& e, const UnimodularMatrix& m,
                             mpfr_prec_t prec = 0);

// Pair-set combinatorics on 1-based positions 1..l+1: the distinguished
// collection A = {(i,j) : 2 <= i < j <= min(2i-1, l+1)} whose source pairs
// {2i-j, i} are pairwise distinct.
std::vector<std::pair<int, int>> a_pairs(int l);
long a_count_closed_form(int l);  // l^2/4 for even l, (l^2-1)/4 for odd
bool a_sources_distinct(int l);

// Certified refined separation bound for a conjugate set, matrix and Sigma:
//   S_Sigma >= 2^{-2r^2} (|D|^{1/2}/M^{r-1})
//              * max(1, (|D|^{1/2}/M*^{r-1}) (M/M*)^{4(r-|Sigma|)^2/9r}).
// Requires the hypothesis M* <= M (certified; exact for the identity matrix)
// and the Sigma shape: 2 <= |Sigma| <= r-2, or Sigma omits exactly one
// complex label.  The report carries the hypothesis, the combinatorial
// checks, the intermediate product inequality over pairs not inside Sigma,
// and the final bound, all with certified verdicts.
struct RefinedBoundReport {
  ChainReport chain;
  int l = 0;
  long a_count = 0;
  long b_count = 0;
  Verdict overall = Verdict::indeterminate;
};

RefinedBoundReport verify_refined_bound(const EmbeddingSet& e,
                                        const UnimodularMatrix& m,
                                        const SigmaSet& sigma);

// r - 1 - (r-s)^2 / (135 r), exact.  Valid for r >= 4 and 2 <= s <= r-1
// (s = r-1 corresponds to Sigma omitting one complex label).
mpq_class kappa_upper_ineffective(int r, int sigma_size);

// theta = 1 / (2 (r-1+u) a_exp - 1) with u = 4 (r-s)^2 / 9r, and
// kappa = r - 1 - theta u, all exact rationals.
struct KappaParams {
  int r = 0;
  int sigma_size = 0;
  mpq_class a_exp;  // discriminant exponent of the measure bound
};
struct ThetaKappa {
  mpq_class u, theta, kappa;
};
ThetaKappa kappa_from_theta(const KappaParams& params);

// Effective-route quantities, computed entirely in log10 space (the raw
// values overflow every fixed-width format).  value = sign * 10^log10_abs.
struct LogMag {
  int sign = 0;
  double log10_abs = 0;
};
struct EffectiveConstants {
  double c1 = 1, c2 = 1, c3 = 1, c4 = 1, c5 = 1, c6 = 1, c7 = 1, c8 = 1;
};
struct EffectiveExponents {
  int r = 0;
  mpz_class abs_field_disc;
  LogMag kappa_deficit;  // r-1-kappa = (c1 r)^{-c2 r^4} |D_K|^{-6 r^3}
  LogMag log_C;          // ln of the constant: -(c3 r)^{c4 r^4} |D_K|^{2 r^3}
  LogMag log_A2;         // ln of the height multiplier: (c5 r)^{c6 r^4} |D_K|^{8 r^3}
  LogMag a_of_K;         // height exponent: (c7 r)^{c8 r^4} |D_K|^{6 r^3}
};
EffectiveExponents effective_exponents(int r, const mpz_class& abs_field_disc,
                                       const EffectiveConstants& c = {});

// Chain for a cubic with one real and one complex pair, Sigma = {real, one
// pair member}: |z1-z3| = |z1-z2|, |z2-z3| <= 2 |z1-z2|, and (on cubes)
// |z1-z2| >= 2^{-1/3} M^{-2/3}.
ChainReport cubic_mixed_chain(const EmbeddingSet& e);

}  // namespace consep
