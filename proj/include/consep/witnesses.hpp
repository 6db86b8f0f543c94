#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "consep/bounds.hpp"
#include "consep/embeddings.hpp"
#include "consep/lattice.hpp"
#include "consep/measures.hpp"
#include "consep/moebius.hpp"

namespace consep {

// One parameter point of an extremal family: the transformed number, its
// certified measure and separation product over Sigma, and the verdicts that
// make the point usable as evidence.
struct WitnessRecord {
    std::string construction;       // "family-ad" | "family-aq"
    mpq_class parameter;            // the shift d, or the ladder height Q
    UnimodularMatrix matrix;
    std::vector<int> sigma_labels;
    Interval M = Interval::of_si(0, 64);
    Interval S = Interval::of_si(0, 64);
    Verdict chain = Verdict::indeterminate;   // trivial lower-bound chain
    Verdict passes = Verdict::indeterminate;  // family-specific certificates
    bool skipped = false;           // precision budget exhausted at this point
};

// Shift family x -> 1/(x + d).  Every d must satisfy |d| >= 2 so the shifted
// conjugates stay uniformly away from zero.
std::vector<WitnessRecord> family_ad(const EmbeddingSet& seed,
                                     const SigmaSet& sigma,
                                     const std::vector<mpz_class>& ds);

// Lattice-adapted family: for each ladder height Q the adapted basis of the
// convex body at the chosen real embedding supplies the transform, and the
// two-sided size certificates at slack delta decide whether the point passes.
// Sigma is every label except real_label.
std::vector<WitnessRecord> family_aq(const EmbeddingSet& seed, int real_label,
                                     const std::vector<mpq_class>& qs,
                                     double delta);

// Least-squares line through log-log data.  Requires >= 3 points with
// nondegenerate abscissae.
struct ExponentFit {
    double slope = 0;
    double intercept = 0;
    double residual_max = 0;
    int points = 0;
    bool uncertified = false;  // an input enclosure was wider than 1% relative
    double max_rel_width = 0;
};

ExponentFit fit_exponent(const std::vector<double>& xs,
                         const std::vector<double>& ys);

// log S against log M over the usable records (not skipped, S and M certified
// positive).  The negated slope estimates the separation exponent.
ExponentFit fit_s_vs_m(const std::vector<WitnessRecord>& recs);

// log M against log parameter over the usable records.
ExponentFit fit_m_vs_param(const std::vector<WitnessRecord>& recs);

struct KappaEstimate {
    std::string family;  // "family-ad" | "family-aq" | "none"
    ExponentFit fit;     // log S vs log M
    double empirical = 0;
    bool has_theoretical = false;
    mpq_class theoretical;  // exact limit exponent for the family shape
    bool has_upper = false;
    mpq_class upper;        // r - 1 - (r-s)^2/135r when the shape admits it
    std::vector<WitnessRecord> records;
};

// Route the (polynomial, Sigma) shape to the matching extremal family, sweep
// a parameter ladder, and fit the separation exponent.  budget bounds the
// shift ladder at 2^budget; bits is the seed enclosure precision.
KappaEstimate estimate_kappa(const IntPolynomial& f, const SigmaSet& sigma,
                             int budget = 14, mpfr_prec_t bits = 128);

}  // namespace consep
