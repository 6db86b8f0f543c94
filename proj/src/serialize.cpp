#include "consep/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace consep {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json poly_json(const IntPolynomial& f) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const mpz_class& c : f.coeffs()) coeffs.push_back(c.get_str());
    return {{"coeffs", coeffs}, {"text", f.to_string()}};
}

// Certified log bounds of a positive interval as doubles; nan when the
// enclosure does not certify positivity.
std::pair<double, double> log_bounds(const Interval& v) {
    if (v.lo().sgn() <= 0)
        return {std::nan(""), std::nan("")};
    Interval lg = i_log(v, 96);
    return {lg.lo().to_double(MPFR_RNDD), lg.hi().to_double(MPFR_RNDU)};
}

}  // namespace

nlohmann::json iv_json(const Interval& v) {
    return {{"lo_hex", v.lo().str_hex()},
            {"hi_hex", v.hi().str_hex()},
            {"lo", v.lo().to_double(MPFR_RNDD)},
            {"hi", v.hi().to_double(MPFR_RNDU)}};
}

nlohmann::json report_json(const InequalityReport& rep) {
    return {{"claim", rep.claim},
            {"lhs", iv_json(rep.lhs)},
            {"rhs", iv_json(rep.rhs)},
            {"verdict", to_string(rep.verdict)},
            {"margin", rep.margin.to_double(MPFR_RNDD)},
            {"margin_hex", rep.margin.str_hex()}};
}

nlohmann::json chain_json(const ChainReport& rep) {
    nlohmann::json links = nlohmann::json::array();
    for (const InequalityReport& link : rep.links) links.push_back(report_json(link));
    return {{"links", links}, {"overall", to_string(rep.overall)}};
}

nlohmann::json embeddings_json(const EmbeddingSet& e) {
    nlohmann::json roots = nlohmann::json::array();
    for (int i = 0; i < e.degree(); ++i) {
        const auto& enc = e.at(i);
        roots.push_back({{"label", i + 1},
                         {"re", iv_json(enc.rect.re)},
                         {"im", iv_json(enc.rect.im)},
                         {"center_re", enc.center_re.str_hex()},
                         {"center_im", enc.center_im.str_hex()},
                         {"radius", enc.radius.str_hex()},
                         {"is_real", enc.is_real},
                         {"partner", enc.partner + 1}});
    }
    return {{"poly", poly_json(e.poly())},
            {"degree", e.degree()},
            {"precision_bits", static_cast<long>(e.precision_bits())},
            {"roots", roots}};
}

nlohmann::json witness_json(const WitnessRecord& rec) {
    return {{"construction", rec.construction},
            {"parameter", rec.parameter.get_str()},
            {"matrix", rec.matrix.to_string()},
            {"sigma", rec.sigma_labels},
            {"M", iv_json(rec.M)},
            {"S", iv_json(rec.S)},
            {"chain", to_string(rec.chain)},
            {"passes", to_string(rec.passes)},
            {"skipped", rec.skipped}};
}

nlohmann::json adapted_json(const AdaptedMatrixReport& rep) {
    nlohmann::json checks = nlohmann::json::array();
    for (const InequalityReport& c : rep.checks) checks.push_back(report_json(c));
    return {{"matrix", rep.matrix.to_string()},
            {"Q", rep.Q.get_str()},
            {"delta", rep.delta},
            {"epsilon", rep.epsilon},
            {"checks", checks},
            {"overall", to_string(rep.overall)},
            {"lambda1", iv_json(rep.lambda1)},
            {"lambda2", iv_json(rep.lambda2)},
            {"area_lo", rep.area_lo.to_double(MPFR_RNDD)},
            {"minkowski", report_json(rep.minkowski)},
            {"candidates", rep.candidates}};
}

nlohmann::json fit_json(const ExponentFit& fit) {
    return {{"slope", fit.slope},
            {"intercept", fit.intercept},
            {"residual_max", fit.residual_max},
            {"points", fit.points},
            {"uncertified", fit.uncertified},
            {"max_rel_width", fit.max_rel_width}};
}

nlohmann::json estimate_json(const KappaEstimate& est) {
    nlohmann::json records = nlohmann::json::array();
    for (const WitnessRecord& rec : est.records) records.push_back(witness_json(rec));
    nlohmann::json out = {{"family", est.family},
                          {"empirical", est.empirical},
                          {"records", records}};
    out["fit"] = est.family == "none" ? nlohmann::json(nullptr)
                                      : fit_json(est.fit);
    out["theoretical"] = est.has_theoretical
                             ? nlohmann::json(est.theoretical.get_str())
                             : nlohmann::json(nullptr);
    out["upper"] = est.has_upper ? nlohmann::json(est.upper.get_str())
                                 : nlohmann::json(nullptr);
    return out;
}

nlohmann::json logmag_json(const LogMag& v) {
    return {{"sign", v.sign}, {"log10_abs", v.log10_abs}};
}

nlohmann::json effective_json(const EffectiveExponents& e) {
    return {{"r", e.r},
            {"abs_field_disc", e.abs_field_disc.get_str()},
            {"kappa_deficit", logmag_json(e.kappa_deficit)},
            {"log_C", logmag_json(e.log_C)},
            {"log_A2", logmag_json(e.log_A2)},
            {"a_of_K", logmag_json(e.a_of_K)}};
}

nlohmann::json refined_json(const RefinedBoundReport& rep) {
    return {{"chain", chain_json(rep.chain)},
            {"l", rep.l},
            {"a_count", rep.a_count},
            {"b_count", rep.b_count},
            {"overall", to_string(rep.overall)}};
}

nlohmann::json reduction_json(const ReductionOutcome& out) {
    return {{"poly", poly_json(out.number.poly)},
            {"label", out.number.label},
            {"matrix", out.matrix.to_string()},
            {"budget_exhausted", out.budget_exhausted},
            {"steps", out.steps},
            {"trace", out.trace}};
}

nlohmann::json gap_json(const GapQuantities& q) {
    auto ivs = [](const std::vector<Interval>& v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Interval& x : v) arr.push_back(iv_json(x));
        return arr;
    };
    nlohmann::json g = nlohmann::json::array();
    int r = static_cast<int>(q.f.size());
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            g.push_back({{"i", i + 1},
                         {"j", j + 1},
                         {"g", iv_json(q.g[static_cast<size_t>(i)]
                                          [static_cast<size_t>(j)])}});
    return {{"phi", ivs(q.phi)},
            {"f", ivs(q.f)},
            {"g", g},
            {"M", iv_json(q.M)},
            {"Mstar", iv_json(q.Mstar)},
            {"abs_disc", q.abs_disc.get_str()},
            {"consistency", chain_json(q.consistency)}};
}

nlohmann::json manifest_json(const std::string& command,
                             const nlohmann::json& params) {
    return {{"tool", kToolName},
            {"version", kToolVersion},
            {"command", command},
            {"params", params},
            {"timestamp", nullptr}};
}

std::string witness_csv(const std::vector<WitnessRecord>& recs) {
    std::string out =
        "construction,param,logM_lo,logM_hi,logS_lo,logS_hi,sigma,chain,passes,"
        "skipped\n";
    for (const WitnessRecord& rec : recs) {
        auto [mlo, mhi] = log_bounds(rec.M);
        auto [slo, shi] = log_bounds(rec.S);
        std::string sigma;
        for (size_t i = 0; i < rec.sigma_labels.size(); ++i) {
            if (i) sigma += ';';
            sigma += std::to_string(rec.sigma_labels[i]);
        }
        out += rec.construction + ',' + rec.parameter.get_str() + ',' +
               fmt_double(mlo) + ',' + fmt_double(mhi) + ',' + fmt_double(slo) +
               ',' + fmt_double(shi) + ',' + sigma + ',' +
               to_string(rec.chain) + ',' + to_string(rec.passes) + ',' +
               (rec.skipped ? "true" : "false") + '\n';
    }
    return out;
}

std::string ladder_csv(const std::vector<AdaptedMatrixReport>& reps) {
    std::string out = "Q,claim,verdict,margin\n";
    auto row = [&out](const std::string& q, const InequalityReport& rep) {
        std::string claim = rep.claim;
        for (char& ch : claim)
            if (ch == ',') ch = ';';
        out += q + ',' + claim + ',' + to_string(rep.verdict) + ',' +
               fmt_double(rep.margin.to_double(MPFR_RNDD)) + '\n';
    };
    for (const AdaptedMatrixReport& rep : reps) {
        std::string q = rep.Q.get_str();
        for (const InequalityReport& c : rep.checks) row(q, c);
        row(q, rep.minkowski);
    }
    return out;
}

}  // namespace consep
