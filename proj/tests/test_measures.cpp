#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "consep/measures.hpp"

using namespace consep;

namespace {

EmbeddingSet emb(const char* text, mpfr_prec_t bits = 128) {
    return compute_embeddings(IntPolynomial::parse(text), bits);
}

}  // namespace

TEST_CASE("Mahler measure: exact rational values") {
    // All conjugates of the cube root of 2 have modulus 2^(1/3), so the
    // measure is the product of the root moduli = |constant term| = 2.
    CertifiedValue m = mahler_measure(emb("[-2,0,0,1]"));
    CHECK(m.contains_mpq(2));
    CHECK(m.width_double() < 1e-20);

    // Roots of 2x^2-1 lie strictly inside the unit circle: M = lead = 2.
    CHECK(mahler_measure(emb("[-1,0,2]")).contains_mpq(2));

    // x^4-2: all roots have modulus 2^(1/4) > 1, M = 2 again.
    CHECK(mahler_measure(emb("[-2,0,0,0,1]")).contains_mpq(2));

    // 1/(2^(1/3)+1) satisfies 3y^3-3y^2+3y-1; every conjugate has modulus
    // < 1, so M = 3 (equivalently a0 * prod |root_i + 1| = |f(-1)| = 3).
    CHECK(mahler_measure(emb("[-1,3,-3,3]")).contains_mpq(3));
}

TEST_CASE("Mahler measure: algebraic identity oracle for the golden ratio") {
    // M(x^2-x-1) is the golden ratio: M^2 - M - 1 = 0.
    CertifiedValue m = mahler_measure(emb("[-1,-1,1]"));
    Interval residue =
        i_sub(i_sqr(m), i_add(m, Interval::of_si(1, m.prec())));
    CHECK(residue.contains_mpq(0));
    CHECK(m.lo().to_double() > 1.618);
    CHECK(m.hi().to_double() < 1.6181);
}

TEST_CASE("separation products against power oracles") {
    EmbeddingSet e = emb("[-2,0,0,1]");

    // Full product: S^2 = |disc| / a0^(2r-2) = 108.
    CertifiedValue s = separation_product(e, SigmaSet::full(3));
    CHECK(i_sqr(s).contains_mpq(108));
    CHECK(s.lo().to_double() > 10.392304);
    CHECK(s.hi().to_double() < 10.392305);

    // All three pairwise distances of x^3-2 are equal, so each squared
    // distance is 108^(1/3): the cube of |z1-z2|^2 is exactly 108.
    CertifiedValue s12 = separation_product(e, SigmaSet::parse("1,2", 3));
    CHECK(i_pow_si(i_sqr(s12), 3).contains_mpq(108));
    CHECK(s12.lo().to_double() > 2.1822472);
    CHECK(s12.hi().to_double() < 2.1822473);
    // Distance between the pair members is 2 Im = also 108^(1/6).
    CertifiedValue s23 = separation_product(e, SigmaSet::parse("2,3", 3));
    CHECK(i_pow_si(i_sqr(s23), 3).contains_mpq(108));

    CHECK_THROWS(separation_product(e, SigmaSet::parse("1,4", 4)));
}

TEST_CASE("discriminant product identity cross-check") {
    DiscIdentityReport rep = disc_product_identity(emb("[-2,0,0,1]"));
    CHECK(rep.abs_disc == 108);
    CHECK(rep.consistent);
    CHECK(rep.numeric.contains_mpq(108));

    // Non-monic, non-trivial leading coefficient.
    DiscIdentityReport rep2 = disc_product_identity(emb("[-1,3,-3,3]"));
    CHECK(rep2.abs_disc == abs(discriminant(IntPolynomial::parse("[-1,3,-3,3]"))));
    CHECK(rep2.consistent);
}

TEST_CASE("trivial chain on fixed seeds") {
    EmbeddingSet e = emb("[-2,0,0,1]");
    ChainReport full = verify_trivial_chain(e, SigmaSet::full(3));
    REQUIRE(full.links.size() == 3);
    CHECK(full.overall == Verdict::holds);
    for (const auto& link : full.links) {
        CHECK(link.verdict == Verdict::holds);
        CHECK(link.margin.sgn() >= 0);
    }

    CHECK(verify_trivial_chain(e, SigmaSet::parse("1,2", 3)).overall ==
          Verdict::holds);
    CHECK(verify_trivial_chain(e, SigmaSet::parse("2,3", 3)).overall ==
          Verdict::holds);

    EmbeddingSet q = emb("[-2,0,0,0,1]");
    CHECK(verify_trivial_chain(q, SigmaSet::parse("1,3", 4)).overall ==
          Verdict::holds);
}

TEST_CASE("chain on explicit values flags a fabricated violation") {
    // With S far below the certified floor the first link must fail: the
    // checker reports honest "fails", it never silently passes.
    Interval fake_s = Interval::of_mpq(mpq_class(1, 1000000), 128);
    Interval m = Interval::of_si(2, 128);
    ChainReport rep = verify_chain_values(fake_s, m, mpz_class(108), 3);
    CHECK(rep.overall == Verdict::fails);
}

TEST_CASE("chain verdicts are determinate on random certified inputs") {
    std::mt19937 rng(123456);
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::uniform_int_distribution<int> deg(2, 5);
    int done = 0, indeterminate = 0;
    while (done < 40) {
        int r = deg(rng);
        std::vector<mpz_class> raw;
        for (int i = 0; i <= r; ++i) raw.emplace_back(coeff(rng));
        if (raw.back() == 0) continue;
        try {
            IntPolynomial f = IntPolynomial::normalize(raw);
            EmbeddingSet e = compute_embeddings(f, 128);
            ChainReport rep = verify_trivial_chain(e, SigmaSet::full(f.degree()));
            CHECK(rep.overall != Verdict::fails);
            if (rep.overall == Verdict::indeterminate) ++indeterminate;
            ++done;
        } catch (const std::invalid_argument&) {
            continue;  // degenerate or repeated-root sample, resample
        }
    }
    CHECK(indeterminate == 0);
}
