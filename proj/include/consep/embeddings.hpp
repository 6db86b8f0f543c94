#pragma once

#include <vector>

#include "consep/interval.hpp"
#include "consep/intpoly.hpp"

namespace consep {

// Subset of conjugate labels (1-based, distinct, sorted), |Sigma| >= 2.
class SigmaSet {
public:
    SigmaSet(std::vector<int> labels, int degree);
    static SigmaSet parse(const std::string& text, int degree);
    static SigmaSet full(int degree);

    const std::vector<int>& labels() const { return labels_; }
    int size() const { return static_cast<int>(labels_.size()); }
    bool contains(int label) const;
    bool is_full(int degree) const { return size() == degree; }
    std::string to_string() const;

private:
    std::vector<int> labels_;
};

// Certified enclosures of all roots of a squarefree integer polynomial,
// with a deterministic labeling:
//   labels 1..k            real roots in ascending order,
//   labels k+1, k+2, ...   complex pairs ordered by real part (ties broken
//                          by the imaginary part of the upper member, which
//                          is decided exactly via a root-sum separation
//                          bound), upper-half member first, its mirror
//                          conjugate immediately after.
// Every enclosure contains exactly one root; enclosures are pairwise
// disjoint both as rectangles and as the published center/radius squares.
class EmbeddingSet {
public:
    struct Enclosure {
        Box rect;             // certified rectangle containing the root
        Real center_re;       // derived square form: exact dyadic center,
        Real center_im;       // radius rounded up; the square contains rect
        Real radius;
        bool is_real = false;
        int partner = -1;     // 0-based index of the conjugate (self if real)
    };

    EmbeddingSet(IntPolynomial poly, mpfr_prec_t target_bits,
                 std::vector<Enclosure> enclosures, int reals, int pairs);

    const IntPolynomial& poly() const { return poly_; }
    int degree() const { return poly_.degree(); }
    int reals() const { return reals_; }
    int pairs() const { return pairs_; }
    mpfr_prec_t precision_bits() const { return target_bits_; }
    const std::vector<Enclosure>& all() const { return enc_; }
    const Enclosure& at(int idx) const { return enc_[static_cast<size_t>(idx)]; }
    bool is_real_label(int label1) const {
        return enc_[static_cast<size_t>(label1 - 1)].is_real;
    }

private:
    IntPolynomial poly_;
    mpfr_prec_t target_bits_;
    std::vector<Enclosure> enc_;
    int reals_, pairs_;
};

// Isolates and certifies all roots.  Enclosure radii satisfy
// radius <= 2^(-target_bits) * max(1, |root|).  Starts work at 64 bits and
// doubles on demand; throws PrecisionExhausted beyond the global cap.
EmbeddingSet compute_embeddings(const IntPolynomial& f, mpfr_prec_t target_bits);

// Same set, tightened by extra_bits.  Labels are preserved.
EmbeddingSet refine(const EmbeddingSet& e, mpfr_prec_t extra_bits);

// Root tracking along x -> (a x + b)/(c x + d): returns the permutation
// pi with pi[i] = index in dst of the image of root i of src.  Certified by
// box image intersection; refines internally until the match is unique.
std::vector<int> track_root(const EmbeddingSet& src, const UnimodularMatrix& m,
                            const EmbeddingSet& dst);

}  // namespace consep
