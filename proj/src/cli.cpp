#include "siegel/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "siegel/closed_forms.hpp"
#include "siegel/engine.hpp"
#include "siegel/oracle.hpp"

namespace siegel::cli {

using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldOpts {
    std::optional<long> q, p;
    std::optional<int> q_sign;

    void add(CLI::App* app) {
        auto* oq = app->add_option("--q", q, "residue field size (odd prime power)");
        auto* op = app->add_option("--p", p, "odd prime, F = Q_p");
        auto* os = app->add_option("--q-sign", q_sign, "chi(-1) = +1 or -1 with q left symbolic");
        oq->excludes(op)->excludes(os);
        op->excludes(os);
    }

    FieldParams resolve() const {
        try {
            if (q) return FieldParams::from_q(*q);
            if (p) return FieldParams::from_p(*p);
            if (q_sign) return FieldParams::from_sign(*q_sign);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        throw UsageError("one of --q, --p, --q-sign is required");
    }
};

struct MatrixOpts {
    int n = 0;
    std::string e, u;

    void add(CLI::App* app) {
        app->add_option("--n", n, "matrix size")->required();
        app->add_option("--e", e, "ascending valuations e1,...,en")->required();
        app->add_option("--u", u, "unit classes: 1 (square) or d (non-square); integers with --p");
    }
};

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

int parse_int(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("bad ") + what + " '" + s + "'");
    }
}

struct ParsedMatrix {
    BMatrix B;
    std::vector<Integer> concrete;  // filled only when every unit is known concretely (--p)
    std::vector<std::string> tokens;
};

ParsedMatrix parse_matrix(const MatrixOpts& m, const FieldParams& params) {
    if (m.n < 1) throw UsageError("--n must be >= 1");
    std::vector<int> e;
    for (const auto& tok : split(m.e)) e.push_back(parse_int(tok, "valuation"));
    if (static_cast<int>(e.size()) != m.n) throw UsageError("--e must list exactly n valuations");
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0) throw UsageError("valuations must be nonnegative");
        if (i > 0 && e[i] < e[i - 1]) throw UsageError("valuations must be ascending");
    }
    std::vector<std::string> tokens = m.u.empty() ? std::vector<std::string>(e.size(), "1") : split(m.u);
    if (tokens.size() != e.size()) throw UsageError("--u must list exactly n unit classes");

    ParsedMatrix out;
    out.tokens = tokens;
    std::vector<UnitClass> classes;
    std::vector<Integer> units;
    for (const auto& tok : tokens) {
        if (tok == "d") {
            classes.push_back(UnitClass::Nonsquare);
            if (params.p) units.push_back(Integer(least_nonresidue(*params.p)));
            continue;
        }
        if (tok == "1") {
            classes.push_back(UnitClass::Square);
            units.push_back(Integer(1));
            continue;
        }
        if (!params.p) throw UsageError("bad unit class token '" + tok + "' (use 1 or d, or integers with --p)");
        const int v = parse_int(tok, "unit");
        if (v % *params.p == 0) throw UsageError("unit '" + tok + "' is divisible by p");
        classes.push_back(legendre(static_cast<long>(v), *params.p) == 1 ? UnitClass::Square : UnitClass::Nonsquare);
        units.push_back(Integer(v));
    }
    out.B = BMatrix(e, classes);
    if (params.p) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            Integer pe;
            mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(*params.p), static_cast<unsigned long>(e[i]));
            out.concrete.push_back(units[i] * pe);
        }
    }
    return out;
}

Omega parse_omega(const std::string& s) {
    if (s == "chi") return Omega::Chi;
    if (s == "triv") return Omega::Trivial;
    throw UsageError("--omega must be chi or triv");
}

json request_json(const std::string& command, const ParsedMatrix* m, int t, const std::string& omega,
                  const FieldParams& params) {
    json r;
    r["command"] = command;
    if (m) {
        r["n"] = m->B.n();
        r["e"] = m->B.e;
        r["u"] = m->tokens;
        r["t"] = t;
        r["omega"] = omega;
    }
    if (params.p || command != "identity") r["q"] = params.q;
    r["eps"] = params.eps;
    return r;
}

json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) return Integer(j.get<std::string>());
    throw std::invalid_argument("expected an integer");
}

std::string render(const QsRational& r, const std::string& format) {
    return format == "latex" ? render_latex(r) : render_text(r);
}

struct Check {
    std::string name;
    bool pass;
};

int emit_checks(const std::vector<Check>& checks, const std::string& format, json request, std::ostream& out) {
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;
    if (format == "json") {
        json j;
        j["request"] = std::move(request);
        j["checks"] = json::array();
        for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}});
        j["pass"] = all;
        out << j.dump(2) << "\n";
    } else {
        std::size_t width = 0;
        for (const auto& c : checks) width = std::max(width, c.name.size());
        for (const auto& c : checks)
            out << c.name << std::string(width - c.name.size() + 2, ' ') << (c.pass ? "PASS" : "FAIL") << "\n";
        out << (all ? "all checks passed" : "some checks failed") << "\n";
    }
    return all ? kOk : kCheckFailed;
}

std::vector<Check> crosscheck(const BMatrix& B, const FieldParams& params) {
    std::vector<Check> checks;
    const int n = B.n();
    const QsPolynomial s0 = siegel_S0_chi(B, params);
    if (n <= 4) {
        checks.push_back({"S0 chi: formula == orbit sum", s0 == siegel_S0_orbit_sum(B, Omega::Chi, params)});
        checks.push_back({"S0 triv: formula == orbit sum",
                          siegel_S0_triv(B, params) == siegel_S0_orbit_sum(B, Omega::Trivial, params)});
    }
    checks.push_back({"S_n == 1", rat_equal(siegel_St_chi(B, n, params), QsRational::one(params.eps))});
    checks.push_back({"S_0 == S0 chi", rat_equal(siegel_St_chi(B, 0, params), QsRational(s0))});
    if (n == 1) checks.push_back({"closed form n=1", closed_n1(B, params) == s0});
    if (n == 2)
        for (int t = 0; t <= 1; ++t)
            checks.push_back({"closed form n=2, t=" + std::to_string(t),
                              closed_matches(closed_value_n2(B, t, params), siegel_St_chi(B, t, params))});
    if (n == 3)
        for (int t = 0; t <= 2; ++t)
            checks.push_back({"closed form n=3, t=" + std::to_string(t),
                              closed_matches(closed_value_n3(B, t, params), siegel_St_chi(B, t, params))});
    return checks;
}

std::string complex_text(std::complex<double> z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact ramified Siegel series for diagonal B over a non-dyadic local field"};
    app.require_subcommand(1);
    std::string format = "text";
    const auto formats = CLI::IsMember({"text", "json", "latex"});

    // eval
    auto* eval = app.add_subcommand("eval", "print S_t(B, s)^omega");
    FieldOpts eval_field;
    MatrixOpts eval_matrix;
    int eval_t = 0;
    std::string eval_omega = "chi";
    eval_field.add(eval);
    eval_matrix.add(eval);
    eval->add_option("--t", eval_t, "section index 0 <= t <= n");
    eval->add_option("--omega", eval_omega, "chi or triv");
    eval->add_option("--format", format)->check(formats);

    // crosscheck
    auto* cross = app.add_subcommand("crosscheck", "compare the independent evaluation paths");
    FieldOpts cross_field;
    MatrixOpts cross_matrix;
    cross_field.add(cross);
    cross_matrix.add(cross);
    cross->add_option("--format", format)->check(formats);

    // oracle
    auto* orc = app.add_subcommand("oracle", "compare S_0 with a numeric p-adic integral");
    FieldOpts orc_field;
    MatrixOpts orc_matrix;
    std::string orc_omega = "chi";
    double orc_s = 4.0;
    std::optional<int> orc_K, orc_vmax;
    unsigned orc_jobs = 1;
    std::optional<double> orc_tol;
    orc_field.add(orc);
    orc_matrix.add(orc);
    orc->add_option("--omega", orc_omega, "chi or triv");
    orc->add_option("--s", orc_s, "real s > n + 1");
    orc->add_option("--K", orc_K, "coset precision level");
    orc->add_option("--vmax", orc_vmax, "largest determinant valuation summed");
    orc->add_option("--jobs", orc_jobs, "worker threads");
    orc->add_option("--tol", orc_tol, "relative tolerance (default 1e-6 for n = 1, 1e-4 for n = 2)");
    orc->add_option("--format", format)->check(formats);

    // identity
    auto* ident = app.add_subcommand("identity", "check that the partition sum equals 1");
    FieldOpts ident_field;
    int ident_n = 0;
    ident_field.add(ident);
    ident->add_option("--n", ident_n, "matrix size")->required();
    ident->add_option("--format", format)->check(formats);

    // gauss
    auto* gauss = app.add_subcommand("gauss", "print I, I* and the Weil constant at u*pi^k");
    FieldOpts gauss_field;
    int gauss_k = 0;
    std::string gauss_u = "1";
    gauss_field.add(gauss);
    gauss->add_option("--k", gauss_k, "exponent of pi")->required();
    gauss->add_option("--u", gauss_u, "unit class: 1 or d");
    gauss->add_option("--format", format)->check(formats);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    if (eval->parsed()) {
        const FieldParams params = eval_field.resolve();
        const ParsedMatrix m = parse_matrix(eval_matrix, params);
        const Omega omega = parse_omega(eval_omega);
        if (eval_t < 0 || eval_t > m.B.n()) throw UsageError("--t must satisfy 0 <= t <= n");
        if (omega == Omega::Trivial && eval_t != 0) throw UsageError("--omega triv is supported only with --t 0");
        if (m.B.n() > 8) throw UsageError("--n above 8 is not supported");
        const QsRational value = evaluate({m.B, eval_t, omega, params}).normalized();
        if (format == "json") {
            json j;
            j["request"] = request_json("eval", &m, eval_t, eval_omega, params);
            j["result"] = rational_to_json(value);
            j["checks"] = json::array();
            out << j.dump(2) << "\n";
        } else {
            out << render(value, format) << "\n";
        }
        return kOk;
    }

    if (cross->parsed()) {
        const FieldParams params = cross_field.resolve();
        const ParsedMatrix m = parse_matrix(cross_matrix, params);
        if (m.B.n() > 6) throw UsageError("crosscheck supports n <= 6");
        return emit_checks(crosscheck(m.B, params), format, request_json("crosscheck", &m, 0, "chi", params), out);
    }

    if (orc->parsed()) {
        const FieldParams params = orc_field.resolve();
        if (!orc_field.p) throw UsageError("oracle needs --p");
        const ParsedMatrix m = parse_matrix(orc_matrix, params);
        const Omega omega = parse_omega(orc_omega);
        if (m.B.n() > 2) throw UsageError("the oracle supports n = 1 and n = 2");
        OracleConfig cfg = OracleConfig::defaults(m.B, *params.p, orc_s);
        if (orc_vmax) cfg.Vmax = *orc_vmax;
        if (orc_K) cfg.K = *orc_K;
        cfg.jobs = orc_jobs;
        const double tol = orc_tol.value_or(m.B.n() == 1 ? 1e-6 : 1e-4);
        try {
            cfg.validate(m.B.n());
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        const QsRational sym(omega == Omega::Chi ? siegel_S0_chi(m.B, params) : siegel_S0_triv(m.B, params));
        const NumericResult num = numeric_siegel_S0(m.concrete, omega, cfg);
        OracleReport r;
        r.p = cfg.p;
        r.s = cfg.s_val;
        r.n = m.B.n();
        r.omega = omega;
        r.symbolic_value = sym.eval(static_cast<double>(cfg.p), cfg.s_val, weil_constant(Rational(1, cfg.p), cfg.p));
        r.numeric_value = num.value;
        r.abs_err = std::abs(r.symbolic_value - r.numeric_value);
        const double mag = std::abs(r.symbolic_value);
        r.rel_err = mag > 0 ? r.abs_err / mag : r.abs_err;
        r.tail_bound = num.tail_bound;
        r.cosets_evaluated = num.cosets_evaluated;
        r.skipped_singular = num.skipped_singular;
        r.tol = tol;
        r.pass = r.rel_err < tol;
        out << (format == "json" ? r.to_json() + "\n" : r.to_text());
        return r.pass ? kOk : kCheckFailed;
    }

    if (ident->parsed()) {
        const FieldParams params = ident_field.resolve();
        if (ident_n < 1 || ident_n > 6) throw UsageError("identity supports 1 <= n <= 6");
        const QsRational sum = identity_prop52(ident_n, params);
        const bool pass = rat_equal(sum, QsRational::one(params.eps));
        if (format == "json") {
            json j;
            j["request"] = request_json("identity", nullptr, 0, "chi", params);
            j["request"]["n"] = ident_n;
            j["result"] = rational_to_json(sum);
            j["checks"] = json::array({{{"name", "sum == 1"}, {"pass", pass}}});
            out << j.dump(2) << "\n";
        } else {
            out << (pass ? "PASS: sum == 1" : "FAIL: sum == " + render(sum, format)) << "\n";
        }
        return pass ? kOk : kCheckFailed;
    }

    if (gauss->parsed()) {
        const FieldParams params = gauss_field.resolve();
        UnitClass u;
        long rep = 1;
        if (gauss_u == "1") {
            u = UnitClass::Square;
        } else if (gauss_u == "d") {
            u = UnitClass::Nonsquare;
            if (params.p) rep = least_nonresidue(*params.p);
        } else {
            throw UsageError("--u must be 1 or d");
        }
        const GaussArg arg{u, gauss_k};
        const QsPolynomial I = gauss_I(arg, params.eps);
        const QsPolynomial Is = gauss_Istar(arg, params.eps);
        const QsPolynomial w = QsPolynomial::constant(params.eps, weil_symbolic(u, gauss_k));
        auto show = [&](const QsPolynomial& p) { return format == "latex" ? render_latex(p) : render_text(p); };
        std::optional<Rational> a;
        if (params.p) {
            Rational x(rep);
            for (int i = 0; i < std::abs(gauss_k); ++i) x = gauss_k > 0 ? Rational(x * *params.p) : Rational(x / *params.p);
            a = x;
        }
        if (format == "json") {
            json j;
            j["request"] = {{"command", "gauss"}, {"u", gauss_u}, {"k", gauss_k}, {"q", params.q}, {"eps", params.eps}};
            j["result"] = {{"I", rational_to_json(QsRational(I))},
                           {"Istar", rational_to_json(QsRational(Is))},
                           {"alpha_psi", rational_to_json(QsRational(w))}};
            if (a) {
                auto c = [](std::complex<double> z) { return json::array({z.real(), z.imag()}); };
                j["numeric"] = {{"I", c(gauss_I_numeric(*a, *params.p))},
                                {"Istar", c(gauss_Istar_numeric(*a, *params.p))},
                                {"alpha_psi", c(weil_constant(*a, *params.p))}};
            }
            j["checks"] = json::array();
            out << j.dump(2) << "\n";
        } else {
            out << "I = " << show(I) << "\n" << "I* = " << show(Is) << "\n" << "alpha_psi = " << show(w) << "\n";
            if (a) {
                out << "numeric at p = " << *params.p << ": I = " << complex_text(gauss_I_numeric(*a, *params.p))
                    << ", I* = " << complex_text(gauss_Istar_numeric(*a, *params.p))
                    << ", alpha_psi = " << complex_text(weil_constant(*a, *params.p)) << "\n";
            }
        }
        return kOk;
    }
    return kUsage;
}

}  // namespace

json rational_to_json(const QsRational& r) {
    json j;
    j["terms"] = json::array();
    // descending key order, matching the text rendering
    for (auto it = r.num().terms().rbegin(); it != r.num().terms().rend(); ++it) {
        j["terms"].push_back({{"a", it->first.a}, {"b", it->first.b}, {"x", integer_json(it->second.x)},
                              {"y", integer_json(it->second.y)}});
    }
    j["denominator"] = json::array();
    for (const auto& [m, mult] : r.qm1_factors())
        for (int k = 0; k < mult; ++k) j["denominator"].push_back({{"type", "qm1"}, {"m", m}});
    if (r.qpow_b() != 0) j["denominator"].push_back({{"type", "qpow"}, {"b", r.qpow_b()}});
    return j;
}

QsRational rational_from_json(const json& j, int eps) {
    try {
        QsPolynomial num(eps);
        for (const auto& t : j.at("terms"))
            num.add_term({t.at("a").get<int>(), t.at("b").get<int>()},
                         RingScalar(integer_from_json(t.at("x")), integer_from_json(t.at("y"))));
        QsRational r(num);
        for (const auto& d : j.at("denominator")) {
            const std::string type = d.at("type").get<std::string>();
            if (type == "qm1") r.divide_by_qm1(d.at("m").get<int>());
            else if (type == "qpow") r.divide_by_qpow(d.at("b").get<int>());
            else throw std::invalid_argument("unknown denominator type " + type);
        }
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed result JSON: ") + e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace siegel::cli
