#include "consep/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "consep/errors.hpp"

namespace consep {

namespace {

// Separation product of the transformed numbers over sigma, computed from the
// seed enclosures: |w_i - w_j| = |z_i - z_j| / (|c z_i + d| |c z_j + d|) for
// any unimodular transform with bottom row (c, d).
Interval separation_via_row(const EmbeddingSet& e, const SigmaSet& sigma,
                            const mpz_class& c, const mpz_class& d,
                            mpfr_prec_t p) {
    Interval ci = Interval::of_mpz(c, p), di = Interval::of_mpz(d, p);
    std::vector<Interval> den;
    den.reserve(static_cast<size_t>(e.degree()));
    for (int i = 0; i < e.degree(); ++i) {
        Box lin = b_add(b_mul_i(e.at(i).rect, ci, p), Box::real_line(di, p), p);
        den.push_back(b_abs(lin, p));
    }
    Interval out = Interval::of_si(1, p);
    const auto& labels = sigma.labels();
    for (size_t a = 0; a < labels.size(); ++a) {
        for (size_t b = a + 1; b < labels.size(); ++b) {
            int i = labels[a] - 1, j = labels[b] - 1;
            Interval num =
                b_abs(b_sub(e.at(i).rect, e.at(j).rect, p), p);
            out = i_mul(out, i_div(num, i_mul(den[static_cast<size_t>(i)],
                                              den[static_cast<size_t>(j)], p), p),
                        p);
        }
    }
    return out;
}

bool usable(const WitnessRecord& rec) {
    return !rec.skipped && rec.M.lo().sgn() > 0 && rec.S.lo().sgn() > 0;
}

double mid_log(const Interval& v) {
    mpfr_prec_t p = std::max<mpfr_prec_t>(v.prec(), 64);
    Interval lg = i_log(v, p);
    return lg.mid().to_double();
}

double rel_width(const Interval& v) {
    double m = std::abs(v.mid().to_double());
    if (!(m > 0)) return std::numeric_limits<double>::infinity();
    return v.width_double() / m;
}

}  // namespace

std::vector<WitnessRecord> family_ad(const EmbeddingSet& seed,
                                     const SigmaSet& sigma,
                                     const std::vector<mpz_class>& ds) {
    const int r = seed.degree();
    if (sigma.labels().back() > r)
        throw std::invalid_argument("family-ad: sigma label out of range");

    std::vector<WitnessRecord> out;
    out.reserve(ds.size());
    for (const mpz_class& d : ds) {
        if (abs(d) < 2)
            throw std::invalid_argument("family-ad: need |d| >= 2");
        UnimodularMatrix m(0, 1, 1, d);
        WitnessRecord rec;
        rec.construction = "family-ad";
        rec.parameter = mpq_class(d);
        rec.matrix = m;
        rec.sigma_labels = sigma.labels();
        mpz_class abs_disc =
            abs(discriminant(transform_poly(seed.poly(), m)));
        try {
            EmbeddingSet cur = seed;
            for (int round = 0;; ++round) {
                mpfr_prec_t p = cur.precision_bits() + 64;
                rec.M = mahler_via_forms(cur, m, p);
                rec.S = separation_via_row(cur, sigma, m.c, m.d, p);
                rec.chain = verify_chain_values(rec.S, rec.M, abs_disc, r).overall;
                rec.passes = rec.chain;
                if (rec.chain != Verdict::indeterminate || round >= 2) break;
                cur = refine(cur, cur.precision_bits());
            }
        } catch (const PrecisionExhausted&) {
            rec.skipped = true;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<WitnessRecord> family_aq(const EmbeddingSet& seed, int real_label,
                                     const std::vector<mpq_class>& qs,
                                     double delta) {
    const int r = seed.degree();
    SigmaSet sigma = [&] {
        std::vector<int> labels;
        for (int lab = 1; lab <= r; ++lab)
            if (lab != real_label) labels.push_back(lab);
        return SigmaSet(labels, r);
    }();

    std::vector<WitnessRecord> out;
    out.reserve(qs.size());
    for (const mpq_class& q : qs) {
        WitnessRecord rec;
        rec.construction = "family-aq";
        rec.parameter = q;
        rec.sigma_labels = sigma.labels();
        try {
            AdaptedMatrixReport amr =
                adapted_matrix_check(seed, real_label, q, delta);
            rec.matrix = amr.matrix;
            rec.passes = amr.overall;
            mpz_class abs_disc =
                abs(discriminant(transform_poly(seed.poly(), amr.matrix)));
            EmbeddingSet cur = seed;
            for (int round = 0;; ++round) {
                mpfr_prec_t p = cur.precision_bits() + 64;
                rec.M = mahler_via_forms(cur, amr.matrix, p);
                rec.S = separation_via_row(cur, sigma, amr.matrix.c,
                                           amr.matrix.d, p);
                rec.chain = verify_chain_values(rec.S, rec.M, abs_disc, r).overall;
                if (rec.chain != Verdict::indeterminate || round >= 2) break;
                cur = refine(cur, cur.precision_bits());
            }
        } catch (const PrecisionExhausted&) {
            rec.skipped = true;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

ExponentFit fit_exponent(const std::vector<double>& xs,
                         const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit: mismatched point counts");
    const size_t n = xs.size();
    if (n < 3) throw std::invalid_argument("fit: need at least 3 points");

    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) { sx += xs[i]; sy += ys[i]; }
    double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0)) throw std::invalid_argument("fit: degenerate abscissae");

    ExponentFit fit;
    fit.points = static_cast<int>(n);
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (size_t i = 0; i < n; ++i)
        fit.residual_max = std::max(
            fit.residual_max, std::abs(ys[i] - (fit.slope * xs[i] + fit.intercept)));
    return fit;
}

namespace {

ExponentFit fit_records(const std::vector<WitnessRecord>& recs, bool vs_param) {
    std::vector<double> xs, ys;
    double mrw = 0;
    for (const WitnessRecord& rec : recs) {
        if (!usable(rec)) continue;
        if (vs_param) {
            double pd = rec.parameter.get_d();
            if (!(pd > 0)) continue;
            xs.push_back(std::log(pd));
            ys.push_back(mid_log(rec.M));
            mrw = std::max(mrw, rel_width(rec.M));
        } else {
            xs.push_back(mid_log(rec.M));
            ys.push_back(mid_log(rec.S));
            mrw = std::max({mrw, rel_width(rec.M), rel_width(rec.S)});
        }
    }
    ExponentFit fit = fit_exponent(xs, ys);
    fit.max_rel_width = mrw;
    fit.uncertified = mrw > 0.01;
    return fit;
}

}  // namespace

ExponentFit fit_s_vs_m(const std::vector<WitnessRecord>& recs) {
    return fit_records(recs, false);
}

ExponentFit fit_m_vs_param(const std::vector<WitnessRecord>& recs) {
    return fit_records(recs, true);
}

KappaEstimate estimate_kappa(const IntPolynomial& f, const SigmaSet& sigma,
                             int budget, mpfr_prec_t bits) {
    if (budget < 3) throw std::invalid_argument("estimate: budget too small");
    EmbeddingSet seed = compute_embeddings(f, bits);
    const int r = seed.degree();
    const int s = sigma.size();
    if (sigma.labels().back() > r)
        throw std::invalid_argument("estimate: sigma label out of range");

    KappaEstimate est;
    est.family = "none";
    // The closed-form upper exponent depends only on the shape, not on
    // whether a sampling family matched.
    if (r >= 4 && s >= 2 && s <= r - 1) {
        est.has_upper = true;
        est.upper = kappa_upper_ineffective(r, s);
    }

    int omitted_real = 0;
    if (s == r - 1) {
        for (int lab = 1; lab <= r; ++lab)
            if (!sigma.contains(lab) && seed.is_real_label(lab))
                omitted_real = lab;
    }
    bool mixed_cubic_pair = false;
    if (r == 3 && s == 2) {
        int reals_in = 0;
        for (int lab : sigma.labels())
            if (seed.is_real_label(lab)) ++reals_in;
        mixed_cubic_pair = (reals_in == 1);
    }

    if (sigma.is_full(r)) {
        std::vector<mpz_class> ds;
        for (int k = 1; k <= budget; ++k) ds.emplace_back(mpz_class(1) << k);
        est.family = "family-ad";
        est.records = family_ad(seed, sigma, ds);
        est.has_theoretical = true;
        est.theoretical = mpq_class(r - 1);
    } else if (omitted_real != 0) {
        std::vector<mpq_class> qs;
        for (int k = 2; k <= 8; ++k) {
            mpz_class q = 1;
            for (int t = 0; t < k; ++t) q *= 10;
            qs.emplace_back(q);
        }
        est.family = "family-aq";
        est.records = family_aq(seed, omitted_real, qs, 0.3);
        est.has_theoretical = true;
        est.theoretical = mpq_class(r - 1);
    } else if (mixed_cubic_pair) {
        std::vector<mpz_class> ds;
        for (int k = 1; k <= budget; ++k) ds.emplace_back(mpz_class(1) << k);
        est.family = "family-ad";
        est.records = family_ad(seed, sigma, ds);
        est.has_theoretical = true;
        est.theoretical = mpq_class(2, 3);
    } else {
        return est;
    }

    est.fit = fit_s_vs_m(est.records);
    est.empirical = -est.fit.slope;
    return est;
}

}  // namespace consep
