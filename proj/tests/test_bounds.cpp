#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "consep/bounds.hpp"

using namespace consep;

namespace {

EmbeddingSet emb(const char* text, mpfr_prec_t bits = 128) {
    return compute_embeddings(IntPolynomial::parse(text), bits);
}

bool chain_has_no_fails(const ChainReport& c) {
    for (const InequalityReport& r : c.links)
        if (r.verdict == Verdict::fails) return false;
    return true;
}

}  // namespace

TEST_CASE("pair collection: closed-form count, density, distinct sources") {
    for (int l = 1; l <= 64; ++l) {
        std::vector<std::pair<int, int>> A = a_pairs(l);
        long want = (l % 2 == 0) ? static_cast<long>(l) * l / 4
                                 : (static_cast<long>(l) * l - 1) / 4;
        CHECK(static_cast<long>(A.size()) == want);
        CHECK(a_count_closed_form(l) == want);
        // Density |A| >= 2 l^2 / 9 needs l >= 2 (the l = 1 shape never
        // reaches this route).
        if (l >= 2) CHECK(9 * static_cast<long>(A.size()) >= 2L * l * l);
        CHECK(a_sources_distinct(l));

        // Brute-force membership against the defining inequalities.
        std::set<std::pair<int, int>> got(A.begin(), A.end());
        std::set<std::pair<int, int>> ref;
        for (int i = 2; i <= l + 1; ++i)
            for (int j = i + 1; j <= std::min(2 * i - 1, l + 1); ++j)
                ref.insert({i, j});
        CHECK(got == ref);

        // Independent distinctness check of the source pairs {2i-j, i}.
        std::set<std::pair<int, int>> sources;
        for (auto [i, j] : A) {
            int lo = std::min(2 * i - j, i), hi = std::max(2 * i - j, i);
            CHECK(lo >= 1);
            CHECK(lo < hi);
            sources.insert({lo, hi});
        }
        CHECK(sources.size() == A.size());
    }
}

TEST_CASE("ineffective exponent: frozen values and validation") {
    CHECK(kappa_upper_ineffective(4, 2) == mpq_class(404, 135));
    CHECK(kappa_upper_ineffective(10, 4) == mpq_class(673, 75));
    CHECK(kappa_upper_ineffective(4, 3) == mpq_class(1619, 540));
    CHECK_THROWS_AS(kappa_upper_ineffective(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(kappa_upper_ineffective(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(kappa_upper_ineffective(4, 4), std::invalid_argument);
}

TEST_CASE("theta route dominates the stated exponent window") {
    // With the exponent profile a = 21/(r-1), theta*u >= (r-s)^2/(135 r)
    // exactly, i.e. the theta route implies the recorded upper exponent.
    for (int r = 4; r <= 200; ++r) {
        mpq_class a_exp(21, r - 1);
        for (int s = 2; s <= r - 1; ++s) {
            KappaParams kp;
            kp.r = r;
            kp.sigma_size = s;
            kp.a_exp = a_exp;
            ThetaKappa tk = kappa_from_theta(kp);
            mpq_class u_expect(4L * (r - s) * (r - s), 9L * r);
            u_expect.canonicalize();
            CHECK(tk.u == u_expect);
            CHECK(tk.theta > 0);
            CHECK(tk.kappa <= kappa_upper_ineffective(r, s));
        }
    }
}

TEST_CASE("theta route: frozen example and degenerate denominator") {
    // r=4, s=2, a=7: u = 4*4/(9*4) = 4/9, denominator 2(3+4/9)*7-1 = 425/9,
    // kappa = 3 - (9/425)(4/9) = 1271/425.
    KappaParams kp;
    kp.r = 4;
    kp.sigma_size = 2;
    kp.a_exp = 7;
    ThetaKappa tk = kappa_from_theta(kp);
    CHECK(tk.u == mpq_class(4, 9));
    CHECK(tk.theta == mpq_class(9, 425));
    CHECK(tk.kappa == mpq_class(1271, 425));

    // Full Sigma is in scope here (u = 0): kappa collapses to r - 1.
    KappaParams full = kp;
    full.sigma_size = 4;
    ThetaKappa tf = kappa_from_theta(full);
    CHECK(tf.u == 0);
    CHECK(tf.theta == mpq_class(1, 41));
    CHECK(tf.kappa == 3);

    KappaParams bad = kp;
    bad.a_exp = mpq_class(1, 100);  // 2(r-1+u)a - 1 < 0
    CHECK_THROWS_AS(kappa_from_theta(bad), std::invalid_argument);
    bad.a_exp = 0;
    CHECK_THROWS_AS(kappa_from_theta(bad), std::invalid_argument);
}

TEST_CASE("gap quantities at the identity matrix") {
    EmbeddingSet e = emb("[-2,0,0,1]");
    GapQuantities q = gap_quantities(e, UnimodularMatrix());

    CHECK(q.M.intersects(q.Mstar));  // identical products, same number
    CHECK(q.M.contains_mpq(2));
    for (const Interval& fi : q.f) CHECK(fi.contains_mpq(1));
    CHECK(q.abs_disc == 108);
    CHECK(q.consistency.links.size() == 6);
    CHECK(q.consistency.overall == Verdict::holds);
    CHECK(chain_has_no_fails(q.consistency));

    // g is the strict upper triangle.
    CHECK(q.g.size() == 3);
    CHECK(q.g[0].size() == 3);
    CHECK(q.g[0][1].is_positive());
}

TEST_CASE("gap quantities at a translation-inversion matrix") {
    EmbeddingSet e = emb("[-2,0,0,1]");
    // x -> 1/(x+1) sends the class to a measure-3 representative.
    GapQuantities q = gap_quantities(e, UnimodularMatrix(0, 1, 1, 1));
    CHECK(q.Mstar.contains_mpq(3));
    CHECK(q.M.contains_mpq(2));
    CHECK(q.consistency.overall == Verdict::holds);
}

TEST_CASE("refined bound: quartic with both Sigma shapes") {
    EmbeddingSet e = emb("[-2,0,0,0,1]");
    UnimodularMatrix id;

    // 2 <= s <= r-2 route.
    RefinedBoundReport rep = verify_refined_bound(e, id, SigmaSet({1, 2}, 4));
    CHECK(rep.overall == Verdict::holds);
    CHECK(rep.l == 2);
    CHECK(rep.a_count == 1);

    // s = r-1 omitting the complex label 4 (the lower pair member).
    RefinedBoundReport rep2 =
        verify_refined_bound(e, id, SigmaSet({1, 2, 3}, 4));
    CHECK(rep2.overall == Verdict::holds);
    CHECK(rep2.l == 1);

    // Omitting a real label is outside the stated shape.
    CHECK_THROWS_AS(verify_refined_bound(e, id, SigmaSet({2, 3, 4}, 4)),
                    std::invalid_argument);
    // s = r is outside the shape.
    CHECK_THROWS_AS(verify_refined_bound(e, id, SigmaSet::full(4)),
                    std::invalid_argument);
    // Degree below 4 is outside the shape.
    CHECK_THROWS_AS(
        verify_refined_bound(emb("[-2,0,0,1]"), id, SigmaSet({1, 2}, 3)),
        std::invalid_argument);
}

TEST_CASE("refined bound: hypothesis M* <= M is enforced") {
    EmbeddingSet e = emb("[-2,0,0,0,1]");
    // Translation by 3 inflates the measure: M* > M, certified violation.
    CHECK_THROWS_AS(verify_refined_bound(e, UnimodularMatrix::translation(3),
                                         SigmaSet({1, 2}, 4)),
                    std::invalid_argument);

    // The reverse direction satisfies the hypothesis strictly: start from
    // the translated class and map back down to x^4 - 2.
    IntPolynomial shifted = transform_poly(IntPolynomial::parse("[-2,0,0,0,1]"),
                                           UnimodularMatrix::translation(3));
    EmbeddingSet es = compute_embeddings(shifted, 128);
    RefinedBoundReport rep = verify_refined_bound(
        es, UnimodularMatrix::translation(-3), SigmaSet({1, 2}, 4));
    CHECK(rep.overall == Verdict::holds);
}

TEST_CASE("effective route: frozen magnitudes, signs, monotonicity") {
    EffectiveExponents ee = effective_exponents(4, mpz_class(229));

    CHECK(ee.kappa_deficit.sign == 1);
    CHECK(ee.log_C.sign == -1);
    CHECK(ee.log_A2.sign == 1);
    CHECK(ee.a_of_K.sign == 1);

    // Frozen with unit constants: log10 of the deficit is
    // -(c2 r^4 log10(c1 r) + 6 r^3 log10 |D_K|) = -(256 log10 4 + 384 log10 229).
    double want = -(256.0 * std::log10(4.0) + 384.0 * std::log10(229.0));
    CHECK(ee.kappa_deficit.log10_abs ==
          doctest::Approx(want).epsilon(1e-9));
    double want_c = 256.0 * std::log10(4.0) + 128.0 * std::log10(229.0);
    CHECK(ee.log_C.log10_abs == doctest::Approx(want_c).epsilon(1e-9));

    // Larger field discriminant pushes every magnitude the documented way.
    EffectiveExponents big = effective_exponents(4, mpz_class(1000000));
    CHECK(big.kappa_deficit.log10_abs < ee.kappa_deficit.log10_abs);
    CHECK(big.log_C.log10_abs > ee.log_C.log10_abs);
    CHECK(big.log_A2.log10_abs > ee.log_A2.log10_abs);
    CHECK(big.a_of_K.log10_abs > ee.a_of_K.log10_abs);

    CHECK_THROWS_AS(effective_exponents(1, mpz_class(3)), std::invalid_argument);
    CHECK_THROWS_AS(effective_exponents(4, mpz_class(0)), std::invalid_argument);
    EffectiveConstants bad;
    bad.c3 = 0;
    CHECK_THROWS_AS(effective_exponents(4, mpz_class(229), bad),
                    std::invalid_argument);
}

TEST_CASE("cubic mixed chain: exact values on the cube root of 2") {
    EmbeddingSet e = emb("[-2,0,0,1]");
    ChainReport rep = cubic_mixed_chain(e);
    CHECK(rep.overall == Verdict::holds);
    CHECK(rep.links.size() == 5);

    // |z1 - z2|^6 = 108 exactly here, so |z1 - z2| = 2^(1/3) sqrt(3).
    SigmaSet pair({1, 2}, 3);
    Interval d12 = separation_product(e, pair);
    CHECK(i_pow_si(d12, 6).contains_mpq(108));
    // Interval is far tighter than double rounding, so compare approximately.
    CHECK(d12.lo().to_double() == doctest::Approx(2.1822472719434427).epsilon(1e-12));
    CHECK_FALSE(d12.contains(Real::of_double(2.1906, 64)));
}

TEST_CASE("cubic mixed chain: signature is enforced") {
    CHECK_THROWS_AS(cubic_mixed_chain(emb("[-2,0,1]")), std::invalid_argument);
    // Three real roots (discriminant 81 > 0).
    CHECK_THROWS_AS(cubic_mixed_chain(emb("[-1,-3,0,1]")),
                    std::invalid_argument);
}

TEST_CASE("cubic mixed chain holds across several mixed cubics") {
    for (const char* ptext : {"[-2,0,0,1]", "[-1,-1,0,1]", "[3,1,0,1]",
                              "[-5,1,1,1]"}) {
        EmbeddingSet e = emb(ptext);
        if (e.reals() != 1) continue;  // guard: only mixed cubics qualify
        ChainReport rep = cubic_mixed_chain(e);
        CHECK(rep.overall == Verdict::holds);
    }
}
