#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "consep/embeddings.hpp"
#include "consep/errors.hpp"

using namespace consep;

namespace {

// Frozen seed values (64-bit doubles, correct to the last printed digit).
// Real cube root of 2 and the upper complex root of x^3 - 2.
constexpr double kCbrt2 = 1.2599210498948732;
constexpr double kCubicRe = -0.6299605249474366;
constexpr double kCubicIm = 1.0911236359717214;
// Positive real fourth root of 2.
constexpr double kQuartic = 1.189207115002721;

bool encloses(const Interval& v, double x, double slack = 1e-12) {
    return v.lo().to_double() <= x + slack && x - slack <= v.hi().to_double();
}

}  // namespace

TEST_CASE("cubic signature, labels, and certified enclosures") {
    IntPolynomial f = IntPolynomial::parse("[-2,0,0,1]");
    EmbeddingSet e = compute_embeddings(f, 128);

    CHECK(e.degree() == 3);
    CHECK(e.reals() == 1);
    CHECK(e.pairs() == 1);
    CHECK(e.precision_bits() >= 128);

    // Label 1: the real root; labels 2,3: the pair, upper member first.
    CHECK(e.is_real_label(1));
    CHECK_FALSE(e.is_real_label(2));
    CHECK(e.at(0).rect.is_real_line());
    CHECK(encloses(e.at(0).rect.re, kCbrt2));
    CHECK(encloses(e.at(1).rect.re, kCubicRe));
    CHECK(encloses(e.at(1).rect.im, kCubicIm));
    CHECK(encloses(e.at(2).rect.im, -kCubicIm));
    CHECK(e.at(1).partner == 2);
    CHECK(e.at(2).partner == 1);
    CHECK(e.at(0).partner == 0);

    // Radius contract: radius <= 2^-target * max(1, |root|).
    for (int i = 0; i < 3; ++i)
        CHECK(e.at(i).radius.to_double() < 1.3e-38);  // 1.26 * 2^-128 + slack

    // Zero lies in the evaluation over each rectangle, and each rectangle
    // really isolates: a shifted copy must evaluate away from zero.
    for (int i = 0; i < 3; ++i) {
        Box v = poly_eval_b(f.coeffs(), e.at(i).rect, 192);
        CHECK(v.contains_zero());
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK(b_disjoint(e.at(i).rect, e.at(j).rect));
}

TEST_CASE("real quadratic: ascending real labels") {
    EmbeddingSet e = compute_embeddings(IntPolynomial::parse("[-1,-1,1]"), 128);
    CHECK(e.reals() == 2);
    CHECK(e.pairs() == 0);
    CHECK(encloses(e.at(0).rect.re, -0.6180339887498949));
    CHECK(encloses(e.at(1).rect.re, 1.618033988749895));
    CHECK(e.at(0).rect.re.hi() < e.at(1).rect.re.lo());
}

TEST_CASE("quartic with two reals and one pair") {
    EmbeddingSet e = compute_embeddings(IntPolynomial::parse("[-2,0,0,0,1]"), 128);
    CHECK(e.reals() == 2);
    CHECK(e.pairs() == 1);
    CHECK(encloses(e.at(0).rect.re, -kQuartic));
    CHECK(encloses(e.at(1).rect.re, kQuartic));
    CHECK(encloses(e.at(2).rect.im, kQuartic));
    CHECK(encloses(e.at(3).rect.im, -kQuartic));
    CHECK(e.at(2).rect.re.contains_mpq(0));
    CHECK(e.at(2).partner == 3);
}

TEST_CASE("two pairs with exactly equal real parts are ordered deterministically") {
    // x^4 + 3x^2 + 1: roots +-i w and +-i/w with w = golden ratio; all real
    // parts are exactly 0, so the tie is decided by the exact tie rule, and
    // the pair with the smaller upper imaginary part comes first.
    EmbeddingSet e = compute_embeddings(IntPolynomial::parse("[1,0,3,0,1]"), 128);
    CHECK(e.reals() == 0);
    CHECK(e.pairs() == 2);
    for (int i = 0; i < 4; ++i) CHECK(e.at(i).rect.re.contains_mpq(0));
    CHECK(encloses(e.at(0).rect.im, 0.6180339887498949));
    CHECK(encloses(e.at(1).rect.im, -0.6180339887498949));
    CHECK(encloses(e.at(2).rect.im, 1.618033988749895));
    CHECK(encloses(e.at(3).rect.im, -1.618033988749895));
    CHECK(e.at(0).partner == 1);
    CHECK(e.at(2).partner == 3);
}

TEST_CASE("refine shrinks widths and keeps labels") {
    IntPolynomial f = IntPolynomial::parse("[-2,0,0,1]");
    EmbeddingSet e = compute_embeddings(f, 96);
    EmbeddingSet r = refine(e, 96);
    CHECK(r.precision_bits() > e.precision_bits());
    for (int i = 0; i < 3; ++i) {
        CHECK(r.at(i).radius < e.at(i).radius);
        CHECK(r.at(i).is_real == e.at(i).is_real);
        // The refined rectangle stays inside the old one: same root.
        CHECK_FALSE(b_disjoint(r.at(i).rect, e.at(i).rect));
    }
    CHECK(encloses(r.at(0).rect.re, kCbrt2));
}

TEST_CASE("root tracking through transforms") {
    IntPolynomial f = IntPolynomial::parse("[-2,0,0,1]");
    EmbeddingSet src = compute_embeddings(f, 128);

    // Translation keeps the real root real and the upper member upper.
    UnimodularMatrix shift = UnimodularMatrix::translation(1);
    EmbeddingSet dst = compute_embeddings(transform_poly(f, shift), 128);
    std::vector<int> pi = track_root(src, shift, dst);
    CHECK(pi == std::vector<int>{0, 1, 2});

    // -1/x: image of the upper root is again in the upper half plane.
    UnimodularMatrix inv = UnimodularMatrix::inversion();
    EmbeddingSet dst2 = compute_embeddings(transform_poly(f, inv), 128);
    CHECK(track_root(src, inv, dst2) == std::vector<int>{0, 1, 2});

    // x -> 1/(x+1): the only real root maps to the only real root.
    UnimodularMatrix m(0, 1, 1, 1);
    EmbeddingSet dst3 = compute_embeddings(transform_poly(f, m), 128);
    std::vector<int> pi3 = track_root(src, m, dst3);
    CHECK(pi3[0] == 0);
    // A permutation: every index appears once.
    std::vector<int> seen(3, 0);
    for (int v : pi3) ++seen[static_cast<size_t>(v)];
    CHECK(seen == std::vector<int>{1, 1, 1});
}

TEST_CASE("precision cap surfaces as the dedicated error") {
    IntPolynomial f = IntPolynomial::parse("[-2,0,0,1]");
    CHECK_THROWS_AS(compute_embeddings(f, kPrecisionCap * 2), PrecisionExhausted);
}

TEST_CASE("sigma sets") {
    SigmaSet s = SigmaSet::parse("3,1", 3);
    CHECK(s.labels() == std::vector<int>{1, 3});  // sorted
    CHECK(s.contains(1));
    CHECK_FALSE(s.contains(2));
    CHECK(s.to_string() == "1,3");
    CHECK(SigmaSet::full(4).is_full(4));
    CHECK_THROWS(SigmaSet::parse("1", 3));        // too small
    CHECK_THROWS(SigmaSet::parse("1,1", 3));      // duplicate
    CHECK_THROWS(SigmaSet::parse("0,2", 3));      // out of range
    CHECK_THROWS(SigmaSet::parse("2,4", 3));      // out of range
}
