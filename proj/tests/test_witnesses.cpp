#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "consep/serialize.hpp"
#include "consep/witnesses.hpp"

using namespace consep;

namespace {

EmbeddingSet emb(const char* text, mpfr_prec_t bits = 128) {
    return compute_embeddings(IntPolynomial::parse(text), bits);
}

std::vector<mpz_class> shifts(std::initializer_list<long> v) {
    return std::vector<mpz_class>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("shift family: exact measures and separations on the cube root of 2") {
    EmbeddingSet e = emb("[-2,0,0,1]");
    std::vector<WitnessRecord> recs =
        family_ad(e, SigmaSet::full(3), shifts({2, 4, 8}));
    REQUIRE(recs.size() == 3);

    // M of the image class is |f(-d)|: d=2 -> 10, d=4 -> 66, d=8 -> 514.
    CHECK(recs[0].M.contains_mpq(10));
    CHECK(recs[1].M.contains_mpq(66));
    CHECK(recs[2].M.contains_mpq(514));

    // Full-Sigma separation obeys S^2 M^4 = |D| = 108 for this family
    // (det -1 transforms preserve |disc|; the image stays monic).
    CHECK(i_mul(i_sqr(recs[0].S), i_pow_si(recs[0].M, 4))
              .contains_mpq(108));
    CHECK(recs[0].S.is_positive());

    for (const WitnessRecord& rec : recs) {
        CHECK(rec.construction == "family-ad");
        CHECK(rec.chain == Verdict::holds);
        CHECK_FALSE(rec.skipped);
        CHECK(rec.matrix.a == 0);
        CHECK(rec.matrix.b == 1);
        CHECK(rec.matrix.c == 1);
        CHECK(rec.matrix.d == rec.parameter);
        CHECK(rec.sigma_labels == std::vector<int>{1, 2, 3});
    }
}

TEST_CASE("shift family: parameter validation and negative shifts") {
    EmbeddingSet e = emb("[-2,0,0,1]");
    CHECK_THROWS_AS(family_ad(e, SigmaSet::full(3), shifts({1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(family_ad(e, SigmaSet::full(3), shifts({0})),
                    std::invalid_argument);

    std::vector<WitnessRecord> recs =
        family_ad(e, SigmaSet::full(3), shifts({-2, -5}));
    for (const WitnessRecord& rec : recs) {
        CHECK(rec.chain == Verdict::holds);
        CHECK(rec.M.is_positive());
    }
}

TEST_CASE("shift family: partial Sigma chain also certifies") {
    EmbeddingSet e = emb("[-2,0,0,1]");
    std::vector<WitnessRecord> recs =
        family_ad(e, SigmaSet({1, 2}, 3), shifts({2, 4, 8, 16}));
    for (const WitnessRecord& rec : recs) {
        CHECK(rec.chain == Verdict::holds);
        CHECK(rec.sigma_labels == std::vector<int>{1, 2});
    }
}

TEST_CASE("lattice family: shape of the records") {
    EmbeddingSet e = emb("[-2,0,0,0,1]");
    std::vector<mpq_class> qs = {mpq_class(100), mpq_class(1000)};
    std::vector<WitnessRecord> recs = family_aq(e, 1, qs, 0.3);
    REQUIRE(recs.size() == 2);
    for (const WitnessRecord& rec : recs) {
        CHECK(rec.construction == "family-aq");
        CHECK(rec.sigma_labels == std::vector<int>{2, 3, 4});
        CHECK((rec.matrix.det() == 1 || rec.matrix.det() == -1));
        CHECK(rec.chain == Verdict::holds);
        CHECK((rec.passes == Verdict::holds || rec.passes == Verdict::fails));
        CHECK(rec.M.is_positive());
        CHECK(rec.S.is_positive());
    }
}

TEST_CASE("exponent fit: exact line, degeneracy, and validation") {
    std::vector<double> xs = {0.0, 1.0, 2.0, 3.0};
    std::vector<double> ys = {3.0, 1.0, -1.0, -3.0};
    ExponentFit fit = fit_exponent(xs, ys);
    CHECK(fit.slope == doctest::Approx(-2.0));
    CHECK(fit.intercept == doctest::Approx(3.0));
    CHECK(fit.residual_max == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.points == 4);

    CHECK_THROWS_AS(fit_exponent({0.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent({0.0, 1.0, 2.0}, {1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("full-Sigma shift ladder fits the trivial-bound exponent") {
    EmbeddingSet e = emb("[-2,0,0,1]");
    std::vector<mpz_class> ds;
    for (long d = 2; d <= 1024; d *= 2) ds.emplace_back(d);
    std::vector<WitnessRecord> recs = family_ad(e, SigmaSet::full(3), ds);
    ExponentFit fit = fit_s_vs_m(recs);
    // S^2 M^4 = 108 exactly, so log S = const - 2 log M.
    CHECK(fit.slope == doctest::Approx(-2.0).epsilon(0.05));
    CHECK_FALSE(fit.uncertified);
}

TEST_CASE("kappa estimate: cubic mixed pair routes to the shift family") {
    KappaEstimate est =
        estimate_kappa(IntPolynomial::parse("[-2,0,0,1]"), SigmaSet({1, 2}, 3),
                       10, 128);
    CHECK(est.family == "family-ad");
    CHECK(est.has_theoretical);
    CHECK(est.theoretical == mpq_class(2, 3));
    CHECK_FALSE(est.has_upper);  // upper form needs r >= 4
    CHECK(std::fabs(est.empirical - 2.0 / 3.0) < 0.1);
    CHECK(est.records.size() >= 8);
}

TEST_CASE("kappa estimate: full Sigma routes to the shift family") {
    KappaEstimate est = estimate_kappa(IntPolynomial::parse("[-2,0,0,1]"),
                                       SigmaSet::full(3), 10, 128);
    CHECK(est.family == "family-ad");
    CHECK(est.theoretical == 2);
    CHECK(std::fabs(est.empirical - 2.0) < 0.1);
}

TEST_CASE("kappa estimate: Sigma omitting one real routes to the lattice family") {
    KappaEstimate est = estimate_kappa(IntPolynomial::parse("[-2,0,0,0,1]"),
                                       SigmaSet({2, 3, 4}, 4), 14, 128);
    CHECK(est.family == "family-aq");
    CHECK(est.has_theoretical);
    CHECK(est.theoretical == 3);
    CHECK(est.has_upper);
    CHECK(est.upper == mpq_class(1619, 540));
    CHECK(est.records.size() >= 3);
}

TEST_CASE("kappa estimate: unmatched shape reports no family") {
    KappaEstimate est = estimate_kappa(IntPolynomial::parse("[-2,0,0,0,1]"),
                                       SigmaSet({1, 2}, 4), 6, 128);
    CHECK(est.family == "none");
    CHECK(est.records.empty());
    CHECK_FALSE(est.has_theoretical);
    // The shape still admits the ineffective upper form (r = 4, s = 2).
    CHECK(est.has_upper);
    CHECK(est.upper == mpq_class(404, 135));
}

TEST_CASE("witness CSV: header, row count, determinism") {
    EmbeddingSet e = emb("[-2,0,0,1]");
    std::vector<WitnessRecord> recs =
        family_ad(e, SigmaSet::full(3), shifts({2, 4, 8}));
    std::string csv = witness_csv(recs);
    CHECK(csv.rfind("construction,param,logM_lo,logM_hi,logS_lo,logS_hi,"
                    "sigma,chain,passes,skipped\n",
                    0) == 0);
    int lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 4);  // header + one row per shift

    std::vector<WitnessRecord> again =
        family_ad(e, SigmaSet::full(3), shifts({2, 4, 8}));
    CHECK(witness_csv(again) == csv);
}
