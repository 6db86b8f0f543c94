#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "consep/bounds.hpp"
#include "consep/embeddings.hpp"
#include "consep/errors.hpp"
#include "consep/lattice.hpp"
#include "consep/measures.hpp"
#include "consep/moebius.hpp"
#include "consep/serialize.hpp"
#include "consep/witnesses.hpp"

namespace {

using namespace consep;
using nlohmann::json;

long env_default_precision() {
    const char* v = std::getenv("CONSEP_PRECISION");
    if (!v) return 128;
    char* end = nullptr;
    long p = std::strtol(v, &end, 10);
    return (end != v && p >= 8 && p <= kPrecisionCap) ? p : 128;
}

// Scalar grammar for ladder endpoints and factors: integers, p/q rationals,
// decimal fractions, and integer-mantissa scientific notation like 1e8.
mpq_class parse_scalar(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty numeric token");

    if (s.find('/') != std::string::npos) {
        mpq_class q(s);
        q.canonicalize();
        return q;
    }
    long exp10 = 0;
    size_t epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::stol(s.substr(epos + 1));
        s = s.substr(0, epos);
        if (s.empty()) throw std::invalid_argument("bad scientific token");
    }
    mpq_class base;
    size_t dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        long frac = static_cast<long>(s.size() - dot - 1);
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("bad decimal token");
        mpz_class den = 1;
        for (long i = 0; i < frac; ++i) den *= 10;
        base = mpq_class(mpz_class(digits), den);
    } else {
        base = mpq_class(mpz_class(s));
    }
    if (exp10 > 0) {
        mpz_class t = 1;
        for (long i = 0; i < exp10; ++i) t *= 10;
        base *= t;
    } else if (exp10 < 0) {
        mpz_class t = 1;
        for (long i = 0; i < -exp10; ++i) t *= 10;
        base /= t;
    }
    base.canonicalize();
    return base;
}

// Ladder grammar: either "start:end:xFACTOR" (geometric) or a comma list.
std::vector<mpq_class> parse_ladder(const std::string& text) {
    std::vector<mpq_class> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() != 3 || parts[2].empty() ||
            (parts[2][0] != 'x' && parts[2][0] != 'X'))
            throw std::invalid_argument(
                "ladder must be start:end:xFACTOR or a comma list");
        mpq_class v = parse_scalar(parts[0]);
        mpq_class end = parse_scalar(parts[1]);
        mpq_class factor = parse_scalar(parts[2].substr(1));
        if (v <= 0 || factor <= 1)
            throw std::invalid_argument("ladder needs start > 0, factor > 1");
        while (v <= end) {
            out.push_back(v);
            if (out.size() > 64)
                throw std::invalid_argument("ladder longer than 64 points");
            v *= factor;
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            out.push_back(parse_scalar(item));
        }
    }
    if (out.empty()) throw std::invalid_argument("empty ladder");
    return out;
}

std::vector<mpz_class> ladder_to_ints(const std::vector<mpq_class>& qs) {
    std::vector<mpz_class> out;
    out.reserve(qs.size());
    for (const mpq_class& q : qs) {
        if (q.get_den() != 1)
            throw std::invalid_argument("shift ladder entries must be integers");
        out.push_back(q.get_num());
    }
    return out;
}

struct CliConfig {
    EffectiveConstants eff;
    bool has_a_exp = false;
    mpq_class a_exp;
    double A = 1.0;
};

CliConfig parse_config_file(const std::string& path) {
    CliConfig cfg;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s;
        for (char ch : line)
            if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        std::string key = s.substr(0, eq), value = s.substr(eq + 1);
        if (key == "a_exp") {
            cfg.a_exp = parse_scalar(value);
            cfg.has_a_exp = true;
        } else if (key == "A") {
            cfg.A = std::stod(value);
        } else if (key.size() == 2 && key[0] == 'c' && key[1] >= '1' &&
                   key[1] <= '8') {
            double* slot[8] = {&cfg.eff.c1, &cfg.eff.c2, &cfg.eff.c3,
                               &cfg.eff.c4, &cfg.eff.c5, &cfg.eff.c6,
                               &cfg.eff.c7, &cfg.eff.c8};
            *slot[key[1] - '1'] = std::stod(value);
        } else {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key " + key);
        }
    }
    return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int first_real_label(const EmbeddingSet& e) {
    for (int lab = 1; lab <= e.degree(); ++lab)
        if (e.is_real_label(lab)) return lab;
    throw std::invalid_argument("polynomial has no real embedding");
}

int code_from(Verdict v) { return v == Verdict::indeterminate ? 2 : 0; }

int witness_exit(const std::vector<WitnessRecord>& recs) {
    int code = 0;
    for (const WitnessRecord& rec : recs) {
        if (rec.skipped) code = 2;
        code = std::max(code, code_from(rec.chain));
        code = std::max(code, code_from(rec.passes));
    }
    return code;
}

json fit_or_null(const std::vector<WitnessRecord>& recs) {
    try {
        return fit_json(fit_s_vs_m(recs));
    } catch (const std::invalid_argument&) {
        return nullptr;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "laboratory for products of differences of conjugate algebraic "
        "numbers: certified measures, separation products, lower-bound "
        "chains, adapted lattice bases, and extremal witness families"};
    app.require_subcommand(1);

    std::string poly_text, sigma_text, matrix_text, out_path, config_path;
    std::string q_ladder_text, d_ladder_text, formula, q_text, d_text, dk_text;
    long precision = env_default_precision();
    double delta = 0.3;
    int label = 1, budget = 0, real_label = 0, opt_r = 0, opt_sigma_size = 0;
    bool want_csv = false, want_json = false;

    auto add_common = [&](CLI::App* cmd, bool needs_poly) {
        if (needs_poly)
            cmd->add_option("--poly", poly_text,
                            "coefficient list [c0,...,cr], constant term first")
                ->required();
        cmd->add_option("--precision", precision,
                        "working precision in bits (env CONSEP_PRECISION)")
            ->capture_default_str();
        cmd->add_option("--out", out_path, "write output to this file");
        cmd->add_flag("--json", want_json, "JSON output (default)");
        return cmd;
    };

    CLI::App* c_measure = add_common(
        app.add_subcommand("measure", "certified Mahler measure"), true);
    c_measure->add_option("--matrix", matrix_text,
                          "also evaluate the measure of the transformed number "
                          "via the linear-form product");

    add_common(app.add_subcommand(
                   "disc", "exact discriminant and its certified product form"),
               true);

    CLI::App* c_sep = add_common(
        app.add_subcommand("sep", "certified separation product over Sigma"),
        true);
    c_sep->add_option("--sigma", sigma_text, "comma list of labels")->required();

    CLI::App* c_reduce = add_common(
        app.add_subcommand("reduce",
                           "greedy measure reduction over the unimodular class"),
        true);
    c_reduce->add_option("--label", label, "tracked root label")
        ->capture_default_str();
    c_reduce->add_option("--budget", budget, "step budget (default 64)");
    c_reduce->add_option("--config", config_path,
                         "key=value file: A, a_exp for the reduced-measure "
                         "bound record");

    CLI::App* c_lemma = add_common(
        app.add_subcommand("lemma21",
                           "adapted lattice basis and two-sided size checks"),
        true);
    c_lemma->add_option("--real-label", real_label,
                        "distinguished real embedding (default: first real)");
    c_lemma->add_option("--q", q_text, "single ladder height Q > 1");
    c_lemma->add_option("--q-ladder", q_ladder_text,
                        "Q ladder, e.g. 1e2:1e8:x10");
    c_lemma->add_option("--delta", delta, "exponent slack")
        ->capture_default_str();
    c_lemma->add_flag("--csv", want_csv, "CSV: one row per (Q, check)");

    CLI::App* c_wad = add_common(
        app.add_subcommand("witness-ad", "shift family x -> 1/(x+d)"), true);
    c_wad->add_option("--sigma", sigma_text, "comma list of labels")->required();
    c_wad->add_option("--d", d_text, "single shift d, |d| >= 2");
    c_wad->add_option("--d-ladder", d_ladder_text,
                      "shift ladder (default 2:16384:x2)");
    c_wad->add_flag("--csv", want_csv, "CSV witness table");

    CLI::App* c_waq = add_common(
        app.add_subcommand("witness-aq", "lattice-adapted family along a Q ladder"),
        true);
    c_waq->add_option("--real-label", real_label,
                      "distinguished real embedding (default: first real)");
    c_waq->add_option("--q-ladder", q_ladder_text,
                      "Q ladder (default 1e2:1e8:x10)");
    c_waq->add_option("--delta", delta, "exponent slack")->capture_default_str();
    c_waq->add_flag("--csv", want_csv, "CSV witness table");

    CLI::App* c_check = add_common(
        app.add_subcommand("check-33",
                           "gap-quantity identities and the refined product "
                           "lower bound"),
        true);
    c_check->add_option("--sigma", sigma_text, "comma list of labels")
        ->required();
    c_check->add_option("--matrix", matrix_text,
                        "unimodular transform (default identity)");

    CLI::App* c_kappa = app.add_subcommand(
        "kappa", "separation exponent: exact formulas or empirical fit");
    c_kappa->add_option("--poly", poly_text, "empirical mode: seed polynomial");
    c_kappa->add_option("--sigma", sigma_text, "empirical mode: labels");
    c_kappa->add_option("--budget", budget,
                        "empirical mode: shift ladder tops out at 2^budget "
                        "(default 14)");
    c_kappa->add_option("--precision", precision, "seed enclosure bits")
        ->capture_default_str();
    c_kappa->add_option("--formula", formula,
                        "formula mode: ineffective | theta | effective");
    c_kappa->add_option("--r", opt_r, "formula mode: degree");
    c_kappa->add_option("--sigma-size", opt_sigma_size,
                        "formula mode: |Sigma|");
    c_kappa->add_option("--a-exp", q_text,
                        "theta mode: reduction exponent (default 21/(r-1))");
    c_kappa->add_option("--dk", dk_text,
                        "effective mode: |field discriminant|");
    c_kappa->add_option("--config", config_path,
                        "effective mode: key=value file for c1..c8");
    c_kappa->add_option("--out", out_path, "write output to this file");
    c_kappa->add_flag("--json", want_json, "JSON output (default)");
    c_kappa->add_flag("--csv", want_csv, "CSV witness table (empirical mode)");

    CLI::App* c_chain = add_common(
        app.add_subcommand("chain-13",
                           "trivial separation lower-bound chain over Sigma"),
        true);
    c_chain->add_option("--sigma", sigma_text,
                        "comma list of labels (default: all)");

    add_common(app.add_subcommand(
                   "cubic-chain",
                   "distance chain for cubics with one real root"),
               true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // help/version exit clean, usage errors are 1
    }

    try {
        if (precision < 8 || precision > kPrecisionCap)
            throw std::invalid_argument("precision out of range");
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision);

        if (app.got_subcommand(c_measure)) {
            IntPolynomial f = IntPolynomial::parse(poly_text);
            EmbeddingSet e = compute_embeddings(f, prec);
            json out = {{"poly", f.to_string()},
                        {"precision_bits", precision},
                        {"M", iv_json(mahler_measure(e))}};
            if (!matrix_text.empty()) {
                UnimodularMatrix m = UnimodularMatrix::parse(matrix_text);
                out["matrix"] = m.to_string();
                out["M_transformed"] = iv_json(mahler_via_forms(e, m));
                out["transformed_poly"] = transform_poly(f, m).to_string();
            }
            out["manifest"] = manifest_json(
                "measure", {{"poly", poly_text},
                            {"matrix", matrix_text},
                            {"precision", precision}});
            emit(dump(out), out_path);
            return 0;
        }

        if (app.got_subcommand("disc")) {
            IntPolynomial f = IntPolynomial::parse(poly_text);
            EmbeddingSet e = compute_embeddings(f, prec);
            mpz_class d = discriminant(f);
            DiscIdentityReport rep = disc_product_identity(e);
            json out = {{"poly", f.to_string()},
                        {"precision_bits", precision},
                        {"disc", d.get_str()},
                        {"abs_disc", rep.abs_disc.get_str()},
                        {"numeric_product", iv_json(rep.numeric)},
                        {"consistent", rep.consistent}};
            out["manifest"] = manifest_json(
                "disc", {{"poly", poly_text}, {"precision", precision}});
            emit(dump(out), out_path);
            return rep.consistent ? 0 : 1;
        }

        if (app.got_subcommand(c_sep)) {
            IntPolynomial f = IntPolynomial::parse(poly_text);
            EmbeddingSet e = compute_embeddings(f, prec);
            SigmaSet sigma = SigmaSet::parse(sigma_text, e.degree());
            json out = {{"poly", f.to_string()},
                        {"sigma", sigma.to_string()},
                        {"precision_bits", precision},
                        {"S", iv_json(separation_product(e, sigma))}};
            out["manifest"] = manifest_json("sep", {{"poly", poly_text},
                                                    {"sigma", sigma_text},
                                                    {"precision", precision}});
            emit(dump(out), out_path);
            return 0;
        }

        if (app.got_subcommand(c_reduce)) {
            IntPolynomial f = IntPolynomial::parse(poly_text);
            AlgebraicNumber alg = make_algebraic(f, label, prec);
            int steps = budget > 0 ? budget : 64;
            ReductionOutcome rout = reduce_class(alg, steps);
            ReductionBoundParams params;
            int r = f.degree();
            params.a_exp = mpq_class(21, r - 1);
            params.a_exp.canonicalize();
            if (!config_path.empty()) {
                CliConfig cfg = parse_config_file(config_path);
                params.A = cfg.A;
                if (cfg.has_a_exp) params.a_exp = cfg.a_exp;
            }
            InequalityReport bound = measure_bound_record(rout, params);
            json out = reduction_json(rout);
            out["seed_poly"] = f.to_string();
            out["bound"] = report_json(bound);
            out["a_exp"] = params.a_exp.get_str();
            out["A"] = params.A;
            out["manifest"] = manifest_json("reduce", {{"poly", poly_text},
                                                       {"label", label},
                                                       {"budget", steps},
                                                       {"config", config_path},
                                                       {"precision", precision}});
            emit(dump(out), out_path);
            int code = code_from(bound.verdict);
            if (rout.budget_exhausted) code = std::max(code, 2);
            return code;
        }

        if (app.got_subcommand(c_lemma)) {
            IntPolynomial f = IntPolynomial::parse(poly_text);
            EmbeddingSet e = compute_embeddings(f, prec);
            int rl = real_label > 0 ? real_label : first_real_label(e);
            std::vector<mpq_class> qs;
            if (!q_text.empty()) qs.push_back(parse_scalar(q_text));
            if (!q_ladder_text.empty()) {
                auto more = parse_ladder(q_ladder_text);
                qs.insert(qs.end(), more.begin(), more.end());
            }
            if (qs.empty()) throw std::invalid_argument("need --q or --q-ladder");
            std::vector<AdaptedMatrixReport> reps;
            reps.reserve(qs.size());
            int code = 0;
            for (const mpq_class& q : qs) {
                reps.push_back(adapted_matrix_check(e, rl, q, delta));
                code = std::max(code, code_from(reps.back().overall));
            }
            if (want_csv) {
                emit(ladder_csv(reps), out_path);
            } else {
                json arr = json::array();
                for (const auto& rep : reps) arr.push_back(adapted_json(rep));
                json out = {{"poly", f.to_string()},
                            {"real_label", rl},
                            {"delta", delta},
                            {"ladder", arr}};
                out["manifest"] = manifest_json(
                    "lemma21", {{"poly", poly_text},
                                {"real_label", rl},
                                {"q", q_text},
                                {"q_ladder", q_ladder_text},
                                {"delta", delta},
                                {"precision", precision}});
                emit(dump(out), out_path);
            }
            return code;
        }

        if (app.got_subcommand(c_wad)) {
            IntPolynomial f = IntPolynomial::parse(poly_text);
            EmbeddingSet e = compute_embeddings(f, prec);
            SigmaSet sigma = SigmaSet::parse(sigma_text, e.degree());
            std::string ladder =
                !d_ladder_text.empty() ? d_ladder_text
                : !d_text.empty()      ? d_text
                                       : std::string("2:16384:x2");
            std::vector<mpz_class> ds = ladder_to_ints(parse_ladder(ladder));
            std::vector<WitnessRecord> recs = family_ad(e, sigma, ds);
            if (want_csv) {
                emit(witness_csv(recs), out_path);
            } else {
                json arr = json::array();
                for (const auto& rec : recs) arr.push_back(witness_json(rec));
                json out = {{"poly", f.to_string()},
                            {"sigma", sigma.to_string()},
                            {"records", arr},
                            {"fit", fit_or_null(recs)}};
                out["manifest"] = manifest_json(
                    "witness-ad", {{"poly", poly_text},
                                   {"sigma", sigma_text},
                                   {"d_ladder", ladder},
                                   {"precision", precision}});
                emit(dump(out), out_path);
            }
            return witness_exit(recs);
        }

        if (app.got_subcommand(c_waq)) {
            IntPolynomial f = IntPolynomial::parse(poly_text);
            EmbeddingSet e = compute_embeddings(f, prec);
            int rl = real_label > 0 ? real_label : first_real_label(e);
            std::string ladder = !q_ladder_text.empty() ? q_ladder_text
                                                        : std::string("1e2:1e8:x10");
            std::vector<mpq_class> qs = parse_ladder(ladder);
            std::vector<WitnessRecord> recs = family_aq(e, rl, qs, delta);
            if (want_csv) {
                emit(witness_csv(recs), out_path);
            } else {
                json arr = json::array();
                for (const auto& rec : recs) arr.push_back(witness_json(rec));
                json out = {{"poly", f.to_string()},
                            {"real_label", rl},
                            {"delta", delta},
                            {"records", arr},
                            {"fit", fit_or_null(recs)}};
                out["manifest"] = manifest_json(
                    "witness-aq", {{"poly", poly_text},
                                   {"real_label", rl},
                                   {"q_ladder", ladder},
                                   {"delta", delta},
                                   {"precision", precision}});
                emit(dump(out), out_path);
            }
            return witness_exit(recs);
        }

        if (app.got_subcommand(c_check)) {
            IntPolynomial f = IntPolynomial::parse(poly_text);
            EmbeddingSet e = compute_embeddings(f, prec);
            SigmaSet sigma = SigmaSet::parse(sigma_text, e.degree());
            UnimodularMatrix m = matrix_text.empty()
                                     ? UnimodularMatrix()
                                     : UnimodularMatrix::parse(matrix_text);
            GapQuantities gq = gap_quantities(e, m);
            RefinedBoundReport rep = verify_refined_bound(e, m, sigma);
            json out = {{"poly", f.to_string()},
                        {"sigma", sigma.to_string()},
                        {"matrix", m.to_string()},
                        {"gap", gap_json(gq)},
                        {"refined", refined_json(rep)}};
            out["manifest"] = manifest_json("check-33",
                                            {{"poly", poly_text},
                                             {"sigma", sigma_text},
                                             {"matrix", matrix_text},
                                             {"precision", precision}});
            emit(dump(out), out_path);
            return std::max(code_from(gq.consistency.overall),
                            code_from(rep.overall));
        }

        if (app.got_subcommand(c_kappa)) {
            if (!formula.empty()) {
                json out;
                if (formula == "ineffective") {
                    out = {{"formula", "ineffective"},
                           {"r", opt_r},
                           {"sigma_size", opt_sigma_size},
                           {"kappa_upper",
                            kappa_upper_ineffective(opt_r, opt_sigma_size)
                                .get_str()}};
                } else if (formula == "theta") {
                    KappaParams kp;
                    kp.r = opt_r;
                    kp.sigma_size = opt_sigma_size;
                    if (!q_text.empty()) {
                        kp.a_exp = parse_scalar(q_text);
                    } else {
                        kp.a_exp = mpq_class(21, opt_r - 1);
                        kp.a_exp.canonicalize();
                    }
                    ThetaKappa tk = kappa_from_theta(kp);
                    out = {{"formula", "theta"},
                           {"r", opt_r},
                           {"sigma_size", opt_sigma_size},
                           {"a_exp", kp.a_exp.get_str()},
                           {"u", tk.u.get_str()},
                           {"theta", tk.theta.get_str()},
                           {"kappa", tk.kappa.get_str()}};
                } else if (formula == "effective") {
                    if (dk_text.empty())
                        throw std::invalid_argument("effective mode needs --dk");
                    EffectiveConstants c;
                    if (!config_path.empty()) c = parse_config_file(config_path).eff;
                    EffectiveExponents ee =
                        effective_exponents(opt_r, mpz_class(dk_text), c);
                    out = effective_json(ee);
                    out["formula"] = "effective";
                    out["parametric"] = true;
                    out["constants"] = {{"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3},
                                        {"c4", c.c4}, {"c5", c.c5}, {"c6", c.c6},
                                        {"c7", c.c7}, {"c8", c.c8}};
                } else {
                    throw std::invalid_argument(
                        "unknown formula: " + formula +
                        " (expected ineffective | theta | effective)");
                }
                out["manifest"] = manifest_json("kappa",
                                                {{"formula", formula},
                                                 {"r", opt_r},
                                                 {"sigma_size", opt_sigma_size},
                                                 {"a_exp", q_text},
                                                 {"dk", dk_text},
                                                 {"config", config_path}});
                emit(dump(out), out_path);
                return 0;
            }

            if (poly_text.empty() || sigma_text.empty())
                throw std::invalid_argument(
                    "kappa needs either --formula or --poly with --sigma");
            IntPolynomial f = IntPolynomial::parse(poly_text);
            SigmaSet sigma = SigmaSet::parse(sigma_text, f.degree());
            int b = budget > 0 ? budget : 14;
            KappaEstimate est = estimate_kappa(f, sigma, b, prec);
            if (want_csv) {
                emit(witness_csv(est.records), out_path);
            } else {
                json out = estimate_json(est);
                out["manifest"] = manifest_json("kappa",
                                                {{"poly", poly_text},
                                                 {"sigma", sigma_text},
                                                 {"budget", b},
                                                 {"precision", precision}});
                emit(dump(out), out_path);
            }
            if (est.family == "none") {
                std::cerr << "kappa: no family matches this (poly, Sigma) shape"
                          << std::endl;
                return 1;
            }
            int code = witness_exit(est.records);
            if (est.fit.uncertified) code = std::max(code, 2);
            return code;
        }

        if (app.got_subcommand(c_chain)) {
            IntPolynomial f = IntPolynomial::parse(poly_text);
            EmbeddingSet e = compute_embeddings(f, prec);
            SigmaSet sigma = sigma_text.empty()
                                 ? SigmaSet::full(e.degree())
                                 : SigmaSet::parse(sigma_text, e.degree());
            ChainReport rep = verify_trivial_chain(e, sigma);
            json out = {{"poly", f.to_string()},
                        {"sigma", sigma.to_string()},
                        {"chain", chain_json(rep)}};
            out["manifest"] = manifest_json("chain-13",
                                            {{"poly", poly_text},
                                             {"sigma", sigma_text},
                                             {"precision", precision}});
            emit(dump(out), out_path);
            return code_from(rep.overall);
        }

        if (app.got_subcommand("cubic-chain")) {
            IntPolynomial f = IntPolynomial::parse(poly_text);
            EmbeddingSet e = compute_embeddings(f, prec);
            ChainReport rep = cubic_mixed_chain(e);
            json out = {{"poly", f.to_string()}, {"chain", chain_json(rep)}};
            out["manifest"] = manifest_json(
                "cubic-chain", {{"poly", poly_text}, {"precision", precision}});
            emit(dump(out), out_path);
            return code_from(rep.overall);
        }

        throw std::logic_error("unhandled subcommand");
    } catch (const PrecisionExhausted& ex) {
        std::cerr << "precision exhausted: " << ex.what() << std::endl;
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << std::endl;
        return 1;
    }
}
