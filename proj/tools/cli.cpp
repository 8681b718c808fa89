#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "zp2/acceptance.hpp"
#include "zp2/artin_hasse.hpp"
#include "zp2/fiber.hpp"
#include "zp2/hopf.hpp"
#include "zp2/io.hpp"
#include "zp2/models.hpp"

namespace zp2::cli {

namespace {

using io::json;

struct Table {
    std::vector<std::string> columns;
    std::vector<json> rows;
};

struct Options {
    int p = 3;
    int precision = 12;
    bool json_out = false;
    bool table_out = false;
    long budget = kDefaultBudget;
    std::string out_file;
    bool p_given = false;
    bool precision_given = false;

    int m = -1;
    int n = -1;
    int m_max = -1;
    std::string model, left, right;
    bool oracle = false;
    int degree = -1;
    bool deformed = false;
    bool corrupt_eisenstein = false;
};

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_table(const Table& t, std::ostream& os) {
    std::vector<std::size_t> width;
    for (const auto& c : t.columns) width.push_back(c.size());
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : t.rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            line.push_back(cell(r.at(t.columns[i])));
            width[i] = std::max(width[i], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i + 1 == line.size()) {
                os << line[i];
                break;
            }
            os << std::left << std::setw(static_cast<int>(width[i])) << line[i] << "  ";
        }
        os << '\n';
    };
    emit(t.columns);
    for (const auto& line : cells) emit(line);
}

json table_json(const std::string& command, const Table& t) {
    return {{"command", command}, {"columns", t.columns}, {"rows", t.rows}};
}

RingDescriptor ring(const Options& o) { return make_ring(o.p, o.precision); }

void check_cell(int m, int n) {
    if (n < 0 || m < n) throw ValidationError("need m >= n >= 0, got m = " + std::to_string(m) + ", n = " + std::to_string(n));
}

ModelDescriptor parse_model(const std::string& text, const Options& o, const char* flag) {
    if (text.empty()) throw ValidationError(std::string("missing ") + flag);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string(flag) + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ValidationError(std::string(flag) + " must be a JSON object");
    if (!j.contains("p")) j["p"] = o.p;
    if (!j.contains("M")) j["M"] = o.precision;
    if (o.p_given && j["p"] != o.p) throw ValidationError(std::string(flag) + " disagrees with --p");
    if (o.precision_given && j["M"] != o.precision) throw ValidationError(std::string(flag) + " disagrees with --precision");
    ModelDescriptor d = io::descriptor_from_json(j);
    if (!phi_condition(d.ring, d.m, d.n, d.a, d.j)) throw ValidationError(std::string(flag) + ": (a, j) is not in Phi");
    return d;
}

json model_row(const ModelDescriptor& d) {
    return {{"m", d.m}, {"n", d.n}, {"a", d.a.digit_string()}, {"a_digits", d.a.digits()}, {"j", d.j}};
}

std::vector<ModelDescriptor> models_in_scope(const Options& o) {
    if (!o.model.empty()) return {parse_model(o.model, o, "--model")};
    RingDescriptor R = ring(o);
    return enumerate_models(R, o.m_max < 0 ? R.p() : o.m_max);
}

Table ring_info(const Options& o) {
    RingDescriptor R = ring(o);
    json coeffs = json::array();
    for (auto c : R.eisenstein_coeffs()) coeffs.push_back(std::to_string(c));
    Table t{{"p", "M", "e", "eisenstein", "v_p", "v_lambda1", "eta_digits"}, {}};
    t.rows.push_back({{"p", R.p()},
                      {"M", R.M()},
                      {"e", R.e()},
                      {"eisenstein", coeffs},
                      {"v_p", R.e()},
                      {"v_lambda1", R.p()},
                      {"eta_digits", pi_adic_digits(eta(R), R.e())}});
    return t;
}

Table phi(const Options& o) {
    check_cell(o.m, o.n);
    RingDescriptor R = ring(o);
    auto xs = o.oracle ? phi_brute(R, o.m, o.n, o.budget) : phi_closed(R, o.m, o.n);
    std::sort(xs.begin(), xs.end(), [](const PhiElement& x, const PhiElement& y) {
        if (x.a.digits() != y.a.digits()) return x.a.digits() < y.a.digits();
        return x.j < y.j;
    });
    Table t{{"m", "n", "a", "a_digits", "j"}, {}};
    for (const auto& x : xs)
        t.rows.push_back({{"m", o.m}, {"n", o.n}, {"a", x.a.digit_string()}, {"a_digits", x.a.digits()}, {"j", x.j}});
    return t;
}

Table enumerate(const Options& o) {
    RingDescriptor R = ring(o);
    if (o.m_max > R.p()) throw ValidationError("--m-max must lie in [0, p]");
    auto ms = enumerate_models(R, o.m_max < 0 ? R.p() : o.m_max);
    std::sort(ms.begin(), ms.end());
    Table t{{"m", "n", "a", "a_digits", "j", "fiber"}, {}};
    for (const auto& d : ms) {
        json r = model_row(d);
        r["fiber"] = classify_fiber(d).to_string();
        t.rows.push_back(r);
    }
    return t;
}

Table isomorphic(const Options& o) {
    auto l = parse_model(o.left, o, "--left");
    auto r = parse_model(o.right, o, "--right");
    Table t{{"left", "right", "isomorphic"}, {}};
    t.rows.push_back({{"left", l.to_string()}, {"right", r.to_string()}, {"isomorphic", is_isomorphic(l, r)}});
    return t;
}

Table hom(const Options& o) {
    auto l = parse_model(o.left, o, "--left");
    auto r = parse_model(o.right, o, "--right");
    HomClass h = o.oracle ? hom_models_brute(l, r) : hom_models(l, r);
    json w = json::array();
    for (auto [a, b] : h.witnesses) w.push_back({a, b});
    Table t{{"left", "right", "tag", "order", "invertible", "witnesses"}, {}};
    t.rows.push_back({{"left", l.to_string()},
                      {"right", r.to_string()},
                      {"tag", to_string(h.tag)},
                      {"order", h.witnesses.size()},
                      {"invertible", h.invertible},
                      {"witnesses", w}});
    return t;
}

Table fiber(const Options& o, bool& failed) {
    Table t{{"m", "n", "a", "a_digits", "j", "class", "verified", "mismatch"}, {}};
    for (const auto& d : models_in_scope(o)) {
        FiberReport rep = verify_fiber_report(d);
        json r = model_row(d);
        r["class"] = rep.claimed.to_string();
        r["verified"] = rep.ok;
        r["mismatch"] = rep.mismatch;
        failed = failed || !rep.ok;
        t.rows.push_back(r);
    }
    return t;
}

Table verify(const Options& o, bool& failed) {
    Table t{{"object", "rank", "well_defined", "coassociativity", "counit", "antipode", "commutativity", "units", "ok"},
            {}};
    auto add = [&](const std::string& name, const HopfPresentation& H) {
        HopfReport rep = check_hopf_axioms(H);
        failed = failed || !rep.ok();
        t.rows.push_back({{"object", name},
                          {"rank", rep.rank},
                          {"well_defined", rep.well_defined},
                          {"coassociativity", rep.coassoc},
                          {"counit", rep.counit_law},
                          {"antipode", rep.antipode_law},
                          {"commutativity", rep.commutativity},
                          {"units", rep.units},
                          {"ok", rep.ok()}});
    };
    if (o.model.empty()) add("mu_p", build_mu(ring(o), 1));
    for (const auto& d : models_in_scope(o)) add(d.to_string(), build_extension(d));
    return t;
}

Table selftest(const Options& o, bool& failed) {
    if (o.precision_given && o.precision != acceptance::kPrecisionM)
        throw ValidationError("selftest runs at M = " + std::to_string(acceptance::kPrecisionM));
    acceptance::Config cfg;
    cfg.p = o.p;
    cfg.budget = o.budget;
    if (o.corrupt_eisenstein) cfg.eisenstein = acceptance::corrupted_eisenstein(o.p);
    Table t{{"id", "title", "pass", "detail", "seconds"}, {}};
    for (const auto& r : acceptance::run_all(cfg)) {
        failed = failed || !r.pass;
        t.rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    }
    return t;
}

Table dump_series(const Options& o) {
    if (o.p < 3 || !is_prime(o.p)) throw ValidationError("p must be an odd prime, got " + std::to_string(o.p));
    const int D = o.degree < 0 ? default_truncation(o.p) : o.degree;
    if (D > 4 * default_truncation(o.p)) throw ValidationError("--degree is limited to 4 p^3");
    Table t;
    if (!o.deformed) {
        t.columns = {"degree", "coeff"};
        const auto& s = ah_series(o.p, D);
        for (int i = 0; i <= D; ++i) t.rows.push_back({{"degree", i}, {"coeff", s[i].get_str()}});
        return t;
    }
    t.columns = {"degree", "u", "lambda", "coeff"};
    const auto& s = deformed_ah(o.p, D);
    for (int i = 0; i <= D; ++i)
        for (const auto& [k, c] : s[i].terms)
            t.rows.push_back({{"degree", i}, {"u", k.first}, {"lambda", k.second}, {"coeff", c.get_str()}});
    return t;
}

const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const EisensteinError*>(&e)) return "EisensteinError";
    if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
    if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
    if (dynamic_cast<const BudgetError*>(&e)) return "BudgetError";
    if (dynamic_cast<const CertificationError*>(&e)) return "CertificationError";
    return "InternalError";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"finite flat models of Z/p^2Z over Z_p[zeta_{p^2}]", "zp2"};
    app.require_subcommand(1);
    app.fallthrough();
    auto* p_opt = app.add_option("--p", o.p, "odd prime")->capture_default_str();
    auto* prec_opt = app.add_option("--precision", o.precision, "p-adic precision M")->capture_default_str();
    auto* j_flag = app.add_flag("--json", o.json_out, "emit one JSON document (default)");
    auto* t_flag = app.add_flag("--table", o.table_out, "emit an aligned table");
    j_flag->excludes(t_flag);
    app.add_option("--budget", o.budget, "candidate evaluations allowed in a brute-force search")->capture_default_str();
    app.add_option("--out", o.out_file, "write the output to FILE");

    auto* c_ring = app.add_subcommand("ring-info", "ring constants");
    auto* c_phi = app.add_subcommand("phi", "the set Phi at (v(mu), v(lambda)) = (m, n)");
    c_phi->add_option("--m", o.m, "v(mu)")->required();
    c_phi->add_option("--n", o.n, "v(lambda)")->required();
    c_phi->add_flag("--oracle", o.oracle, "exhaustive search instead of the closed form");
    auto* c_enum = app.add_subcommand("enumerate", "one model per isomorphism class with v(mu) <= m-max");
    c_enum->add_option("--m-max", o.m_max, "largest v(mu), default p");
    auto* c_iso = app.add_subcommand("isomorphic", "isomorphism test for two descriptors");
    auto* c_hom = app.add_subcommand("hom", "Hom group between two models");
    for (auto* c : {c_iso, c_hom}) {
        c->add_option("--left", o.left, "descriptor JSON {m, n, a_digits, j}")->required();
        c->add_option("--right", o.right, "descriptor JSON {m, n, a_digits, j}")->required();
    }
    c_hom->add_flag("--oracle", o.oracle, "test every psi_{r,s} instead of the closed form");
    auto* c_fiber = app.add_subcommand("fiber", "special fiber classification, verified by an explicit isomorphism");
    auto* c_verify = app.add_subcommand("verify", "Hopf axioms of mu_p and the model algebras");
    for (auto* c : {c_fiber, c_verify}) {
        c->add_option("--model", o.model, "descriptor JSON; default: every enumerated model");
        c->add_option("--m-max", o.m_max, "largest v(mu) of the sweep, default p");
    }
    auto* c_self = app.add_subcommand("selftest", "acceptance suite");
    c_self->add_flag("--corrupt-eisenstein", o.corrupt_eisenstein, "shift c_1 of the Eisenstein polynomial");
    auto* c_dump = app.add_subcommand("dump-series", "Artin-Hasse coefficients as exact fractions");
    c_dump->add_option("--degree", o.degree, "truncation degree, default p^3");
    c_dump->add_flag("--deformed", o.deformed, "coefficients of E_p(U, Lambda; T) in U and Lambda");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o_os, e_os;
        const int code = app.exit(e, o_os, e_os);
        out << o_os.str();
        err << e_os.str();
        return code == 0 ? 0 : 2;
    }
    o.p_given = p_opt->count() > 0;
    o.precision_given = prec_opt->count() > 0;

    try {
        bool failed = false;
        Table t;
        std::string name;
        if (c_ring->parsed()) name = "ring-info", t = ring_info(o);
        else if (c_phi->parsed()) name = "phi", t = phi(o);
        else if (c_enum->parsed()) name = "enumerate", t = enumerate(o);
        else if (c_iso->parsed()) name = "isomorphic", t = isomorphic(o);
        else if (c_hom->parsed()) name = "hom", t = hom(o);
        else if (c_fiber->parsed()) name = "fiber", t = fiber(o, failed);
        else if (c_verify->parsed()) name = "verify", t = verify(o, failed);
        else if (c_self->parsed()) name = "selftest", t = selftest(o, failed);
        else name = "dump-series", t = dump_series(o);

        std::ostringstream os;
        if (o.table_out)
            print_table(t, os);
        else
            os << table_json(name, t).dump(2) << '\n';
        if (o.out_file.empty()) {
            out << os.str();
        } else {
            std::ofstream f(o.out_file);
            if (!f) throw ValidationError("cannot open '" + o.out_file + "' for writing");
            f << os.str();
        }
        return failed ? 1 : 0;
    } catch (const ValidationError& e) {
        err << "error: " << error_kind(e) << ": " << e.what() << '\n';
        return 2;
    } catch (const BudgetError& e) {
        err << "error: " << error_kind(e) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << error_kind(e) << ": " << e.what() << '\n';
        return 1;
    }
}

}  // namespace zp2::cli
