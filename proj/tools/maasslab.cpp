#include "maasslab/catalog.hpp"
#include "maasslab/eisenstein.hpp"
#include "maasslab/eval.hpp"
#include "maasslab/gkmod.hpp"
#include "maasslab/json_io.hpp"
#include "maasslab/laurent.hpp"
#include "maasslab/poincare.hpp"
#include "maasslab/sesqui_classify.hpp"
#include "maasslab/symtensor.hpp"
#include "maasslab/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <variant>

using namespace maasslab;

namespace {

using Form = std::variant<MFExpansion, VVExpansion>;

struct Options {
    std::string form;
    std::string params;
    std::string input;
    std::string chain;
    long trunc = 20;
    std::string mode = "exact";
    unsigned prec = kDefaultPrecisionBits;
    std::vector<std::string> bind;
    std::string tau = "0,1";
    long cutoff = 200;
    std::string out;

    unsigned precision() const { return effective_precision(prec); }
    bool json(const std::string& fallback) const { return (out.empty() ? fallback : out) == "json"; }
};

std::map<std::string, long> parse_params(const std::string& s) {
    std::map<std::string, long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw MathError("bad parameter '" + item + "', expected key=value");
        try {
            out[item.substr(0, eq)] = std::stol(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw MathError("parameter '" + item.substr(0, eq) + "' needs an integer value");
        }
    }
    return out;
}

std::pair<Real, Real> parse_tau(const std::string& s, unsigned prec) {
    PrecisionScope scope(prec);
    auto comma = s.find(',');
    if (comma == std::string::npos) throw MathError("--tau expects u,v");
    try {
        Real u(s.substr(0, comma)), v(s.substr(comma + 1));
        if (v <= 0) throw MathError("--tau needs v > 0");
        return {u, v};
    } catch (const MathError&) {
        throw;
    } catch (const std::exception&) {
        throw MathError("bad --tau '" + s + "'");
    }
}

SymbolBindings parse_bindings(const std::vector<std::string>& binds, unsigned prec) {
    PrecisionScope scope(prec);
    SymbolBindings b;
    for (const auto& s : binds) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw MathError("bad --bind '" + s + "', expected name=value");
        try {
            b.values[s.substr(0, eq)] = Real(s.substr(eq + 1));
        } catch (const std::exception&) {
            throw MathError("bad value in --bind '" + s + "'");
        }
    }
    return b;
}

Form load_form(const Options& o) {
    if (!o.input.empty() && !o.form.empty()) throw MathError("give either --form or --input, not both");
    Form f;
    if (!o.input.empty()) {
        Json j = read_json_file(o.input);
        if (is_vv_json(j)) f = vv_from_json(j);
        else f = expansion_from_json(j);
    } else if (!o.form.empty()) {
        auto params = parse_params(o.params);
        if (o.trunc < 1) throw MathError("--trunc must be >= 1");
        FormSpec spec{o.form, params, o.trunc};
        if (o.form == "e_poly") f = e_poly(static_cast<int>(param(spec, "r")), static_cast<int>(param(spec, "m")));
        else if (o.form == "estar") f = estar_vv(static_cast<int>(param(spec, "m")), o.trunc);
        else f = build_form(spec);
    } else {
        throw MathError("no input: give --form NAME or --input FILE");
    }
    if (!o.chain.empty()) {
        if (auto* s = std::get_if<MFExpansion>(&f)) *s = apply_chain(o.chain, *s);
        else f = vv_apply_chain(o.chain, std::get<VVExpansion>(f));
    }
    if (o.mode == "float") {
        const unsigned p = o.precision();
        SymbolBindings b = parse_bindings(o.bind, p);
        if (auto* s = std::get_if<MFExpansion>(&f)) {
            *s = to_float(*s, b, p);
        } else {
            auto& v = std::get<VVExpansion>(f);
            v = v.map([&](const MFExpansion& c) { return to_float(c, b, p); });
        }
    } else if (o.mode != "exact") {
        throw MathError("--mode must be exact or float");
    }
    return f;
}

Json form_json(const Form& f) {
    return std::visit([](const auto& x) { return to_json(x); }, f);
}

std::string form_text(const Form& f) {
    if (auto* s = std::get_if<MFExpansion>(&f)) return s->to_string() + "\n";
    return std::get<VVExpansion>(f).to_string();
}

void emit_form(const Form& f, const Options& o) {
    if (o.json("json")) std::cout << form_json(f).dump(2) << "\n";
    else std::cout << form_text(f);
}

Json complex_json(const Complex& z, int digits) {
    return Json{{"re", to_string(z.re, digits)}, {"im", to_string(z.im, digits)}};
}

int digits_for(unsigned prec) { return static_cast<int>(bits_to_digits10(prec)); }

GKDescriptor classify_any(const Form& f) {
    return std::visit([](const auto& x) { return classify_form(x); }, f);
}

void emit_descriptor(const GKDescriptor& d, const std::string& picture, const Options& o, Json extra = {}) {
    if (o.json("text")) {
        Json j = to_json(d);
        j["diagram"] = picture;
        if (!extra.is_null()) j["samples"] = extra;
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "case: " << case_name(d.label) << "\n";
    std::cout << "k: " << d.k << "  nu: " << d.nu << "\n";
    std::cout << "certainty: " << certainty_name(d.certainty) << "\n";
    std::cout << "factors: " << join_factors(d.factors(), ", ") << "\n";
    std::cout << "structure: " << d.sequence << "\n";
    std::cout << "split: " << (d.split ? "yes" : "no") << "\n";
    std::cout << "subquotient of I(nu): " << subquotient_name(subquotient_status(d.label)) << "\n";
    for (const auto& w : d.warnings) std::cout << "warning: " << w << "\n";
    std::cout << "\n" << picture;
}

GKDescriptor descriptor_for_case(CaseLabel c, long k) {
    const std::vector<std::pair<bool, std::optional<bool>>> combos{
        {true, true}, {true, false}, {false, true}, {false, false}, {true, std::nullopt}, {false, std::nullopt}};
    for (const auto& [down, second] : combos) {
        try {
            GKDescriptor d = classify_flags(k, down, second);
            if (d.label == c) return d;
        } catch (const MathError&) {
        }
    }
    throw MathError(std::string("case ") + case_name(c) + " does not occur in weight " + std::to_string(k));
}

std::vector<std::pair<Real, Real>> default_points() {
    return {{Real("0.1"), Real("1.1")}, {Real("-0.23"), Real("0.9")}, {Real("0.37"), Real("1.4")}};
}

int run_verify_cmd(const std::string& name, const Options& o) {
    std::optional<MFExpansion> form;
    if (!o.form.empty() || !o.input.empty()) {
        Form f = load_form(o);
        if (!std::holds_alternative<MFExpansion>(f)) throw MathError("verify takes a scalar form");
        form = std::get<MFExpansion>(f);
    }
    std::vector<std::string> names = name == "all" ? verify_names() : std::vector<std::string>{name};
    bool all_pass = true;
    Json reports = Json::array();
    for (const auto& n : names) {
        VerifyReport r = run_verify(n, form, o.trunc);
        all_pass = all_pass && r.pass();
        Json checks = Json::array();
        for (const auto& c : r.checks) checks.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        reports.push_back({{"identity", r.identity}, {"pass", r.pass()}, {"checks", checks}});
        if (!o.json("text")) {
            std::cout << (r.pass() ? "PASS " : "FAIL ") << r.identity << "\n";
            for (const auto& c : r.checks)
                std::cout << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
        }
    }
    if (o.json("text")) std::cout << Json{{"pass", all_pass}, {"reports", reports}}.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

void add_form_options(CLI::App* sub, Options& o) {
    sub->add_option("--form", o.form, "catalog form, or e_poly / estar");
    sub->add_option("--params", o.params, "form parameters, e.g. k=4 or D=7 or r=1,m=2");
    sub->add_option("--input", o.input, "expansion JSON file");
    sub->add_option("--chain", o.chain, "operators applied first, e.g. L,L,R");
    sub->add_option("--trunc", o.trunc, "truncation bound M");
    sub->add_option("--mode", o.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--prec", o.prec, "float precision in bits");
    sub->add_option("--bind", o.bind, "symbol binding name=value, repeatable");
    sub->add_option("--out", o.out, "json | text")->check(CLI::IsMember({"json", "text"}));
}

void print_error(const std::string& type, const std::string& message, const std::string& pointer = "") {
    Json e{{"type", type}, {"message", message}};
    if (!pointer.empty()) e["pointer"] = pointer;
    std::cout << Json{{"error", e}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maasslab: harmonic Maass forms and their (g,K)-modules"};
    app.require_subcommand(1);
    Options o;
    int status = 0;

    auto* build = app.add_subcommand("build", "build a form and print its expansion");
    add_form_options(build, o);
    build->add_option("name", o.form, "form name");
    build->callback([&] { emit_form(load_form(o), o); });

    std::string chain;
    auto* apply = app.add_subcommand("apply", "apply an operator chain to a form");
    apply->add_option("operators", chain, "operators, e.g. L or R,R or flip")->required();
    add_form_options(apply, o);
    apply->callback([&] {
        Form f = load_form(o);
        if (auto* s = std::get_if<MFExpansion>(&f)) f = apply_chain(chain, *s);
        else f = vv_apply_chain(chain, std::get<VVExpansion>(f));
        emit_form(f, o);
    });

    std::string sesqui;
    auto* classify = app.add_subcommand("classify", "classify the module generated by a form");
    add_form_options(classify, o);
    classify->add_option("--sesqui", sesqui, "k,m: sesquiharmonic Poincare series through coset sums");
    classify->add_option("--cutoff", o.cutoff, "coset cutoff for --sesqui");
    classify->callback([&] {
        if (!sesqui.empty()) {
            auto p = parse_params("k=" + sesqui.substr(0, sesqui.find(',')) + ",m=" +
                                  (sesqui.find(',') == std::string::npos ? "" : sesqui.substr(sesqui.find(',') + 1)));
            EvalContext ctx;
            ctx.prec = o.precision();
            ctx.cutoff = o.cutoff;
            SesquiClassification c = classify_sesqui(p.at("k"), p.at("m"), ctx, default_points());
            Json samples = Json::array();
            for (const auto& s : c.samples)
                samples.push_back({{"tau", {to_string(s.u, 6), to_string(s.v, 6)}},
                                   {"abs_f", to_string(s.f_abs, 8)},
                                   {"tail_f", to_string(s.f_tail, 3)},
                                   {"abs_laplacian", to_string(s.laplacian_abs, 3)},
                                   {"abs_lower", to_string(s.lower_abs, 8)},
                                   {"abs_lower_k", to_string(s.deep_abs, 8)}});
            emit_descriptor(c.descriptor, diagram(c.descriptor), o, samples);
            return;
        }
        GKDescriptor d = classify_any(load_form(o));
        emit_descriptor(d, diagram(d), o);
    });

    bool kron = false;
    std::string laurent_spec, case_label;
    long case_k = 0;
    auto* diag = app.add_subcommand("diagram", "ASCII picture of a module");
    add_form_options(diag, o);
    diag->add_flag("--kronecker", kron, "module of the Kronecker function");
    diag->add_option("--laurent", laurent_spec, "k,r: modules of the Laurent coefficients up to row r");
    diag->add_option("--case", case_label, "draw a case label at weight --k");
    diag->add_option("--k", case_k, "weight for --case");
    diag->callback([&] {
        std::string pic;
        if (kron) {
            pic = kronecker_diagram();
        } else if (!laurent_spec.empty()) {
            auto comma = laurent_spec.find(',');
            if (comma == std::string::npos) throw MathError("--laurent expects k,r");
            pic = laurent_diagram(std::stol(laurent_spec.substr(0, comma)), std::stol(laurent_spec.substr(comma + 1)));
        } else if (!case_label.empty()) {
            pic = diagram(descriptor_for_case(parse_case(case_label), case_k));
        } else {
            pic = diagram(classify_any(load_form(o)));
        }
        if (o.json("text")) std::cout << Json{{"diagram", pic}}.dump(2) << "\n";
        else std::cout << pic;
    });

    auto* eval = app.add_subcommand("eval", "evaluate a form at tau");
    add_form_options(eval, o);
    eval->add_option("--tau", o.tau, "u,v");
    eval->callback([&] {
        const unsigned p = o.precision();
        Form f = load_form(o);
        auto [u, v] = parse_tau(o.tau, p);
        EvalContext ctx;
        ctx.prec = p;
        ctx.u = u;
        ctx.v = v;
        ctx.bindings = parse_bindings(o.bind, p);
        std::vector<MFExpansion> comps =
            std::holds_alternative<MFExpansion>(f) ? std::vector<MFExpansion>{std::get<MFExpansion>(f)}
                                                   : std::get<VVExpansion>(f).components();
        auto res = eval_components(comps, ctx);
        const int dg = digits_for(p);
        Json vals = Json::array();
        for (const auto& r : res) vals.push_back({{"value", complex_json(r.value, dg)}, {"tail", to_string(r.tail, 6)}});
        Json j{{"tau", {o.tau}}, {"prec", p}, {"components", vals}};
        if (o.json("json")) {
            std::cout << j.dump(2) << "\n";
        } else {
            for (std::size_t i = 0; i < res.size(); ++i)
                std::cout << "f[" << i << "] = " << to_string(res[i].value.re, dg) << " + " << to_string(res[i].value.im, dg)
                          << " i   (tail " << to_string(res[i].tail, 3) << ")\n";
        }
    });

    long er = 0, fourier_m = 40;
    std::string es = "3";
    auto* eis = app.add_subcommand("eis", "E_{r,s}(tau) by coset sum and by Fourier expansion");
    eis->add_option("--r", er, "weight r (even)");
    eis->add_option("--s", es, "s with Re(s) > 1");
    eis->add_option("--tau", o.tau, "u,v");
    eis->add_option("--cutoff", o.cutoff, "coset cutoff C");
    eis->add_option("--modes", fourier_m, "Fourier modes |n| <= M");
    eis->add_option("--prec", o.prec, "precision in bits");
    eis->add_option("--out", o.out, "json | text");
    eis->callback([&] {
        const unsigned p = o.precision();
        PrecisionScope scope(p);
        auto [u, v] = parse_tau(o.tau, p);
        EvalContext ctx;
        ctx.prec = p;
        ctx.u = u;
        ctx.v = v;
        ctx.cutoff = o.cutoff;
        ctx.trunc = fourier_m;
        Real s(es);
        CosetResult c = eis_coset_sum(er, s, ctx);
        EvalResult fr = eis_fourier_eval(er, s, ctx);
        const int dg = digits_for(p);
        Json j{{"r", er},
               {"s", es},
               {"tau", o.tau},
               {"cosets", {{"value", complex_json(c.value, dg)}, {"tail", to_string(c.tail, 6)}, {"pairs", c.pairs}}},
               {"fourier", {{"value", complex_json(fr.value, dg)}, {"tail", to_string(fr.tail, 6)}}},
               {"difference", to_string(abs(c.value - fr.value), 6)}};
        if (o.json("json")) std::cout << j.dump(2) << "\n";
        else
            std::cout << "cosets : " << to_string(c.value.re, dg) << " + " << to_string(c.value.im, dg) << " i\n"
                      << "fourier: " << to_string(fr.value.re, dg) << " + " << to_string(fr.value.im, dg) << " i\n"
                      << "|diff| : " << to_string(abs(c.value - fr.value), 6) << "\n";
    });

    long pk = -4, pm = 1;
    int lowerings = 0;
    bool psesqui = false, pxi = false;
    auto* poinc = app.add_subcommand("poincare", "Poincare series F_{k,m} or the sesquiharmonic series");
    poinc->add_option("--k", pk, "weight");
    poinc->add_option("--m", pm, "index m != 0");
    poinc->add_option("--tau", o.tau, "u,v");
    poinc->add_option("--cutoff", o.cutoff, "coset cutoff C");
    poinc->add_option("--prec", o.prec, "precision in bits");
    poinc->add_flag("--sesqui", psesqui, "sesquiharmonic series (k >= 2, m > 0)");
    poinc->add_option("--lower", lowerings, "with --sesqui: apply L this many times");
    poinc->add_flag("--xi", pxi, "with --sesqui: apply xi_k");
    poinc->add_option("--out", o.out, "json | text");
    poinc->callback([&] {
        const unsigned p = o.precision();
        PrecisionScope scope(p);
        auto [u, v] = parse_tau(o.tau, p);
        EvalContext ctx;
        ctx.prec = p;
        ctx.u = u;
        ctx.v = v;
        ctx.cutoff = o.cutoff;
        PoincareResult r;
        if (!psesqui) r = poincare_eval(pk, pm, ctx);
        else if (pxi) r = sesqui_xi_eval(pk, pm, ctx);
        else if (lowerings > 0) r = sesqui_lowered_eval(pk, pm, lowerings, ctx);
        else r = sesqui_poincare_eval(pk, pm, ctx);
        const int dg = digits_for(p);
        Json j{{"k", pk},   {"m", pm}, {"tau", o.tau}, {"cutoff", o.cutoff}, {"value", complex_json(r.value, dg)},
               {"tail", to_string(r.tail, 6)}, {"terms", r.terms}};
        if (o.json("json")) std::cout << j.dump(2) << "\n";
        else
            std::cout << to_string(r.value.re, dg) << " + " << to_string(r.value.im, dg) << " i   (tail "
                      << to_string(r.tail, 3) << ", " << r.terms << " terms)\n";
    });

    long ll = 4, ls0 = 3, lmodes = 2;
    int lr = 2;
    bool lcheck = false;
    auto* laur = app.add_subcommand("laurent", "Taylor coefficients in s of E_{l,s} around s0");
    laur->add_option("--l", ll, "weight l (even)");
    laur->add_option("--s0", ls0, "expansion point (integer >= 2)");
    laur->add_option("--r", lr, "largest order");
    laur->add_option("--modes", lmodes, "Fourier modes |n| <= M");
    laur->add_option("--tau", o.tau, "u,v");
    laur->add_option("--prec", o.prec, "precision in bits");
    laur->add_flag("--check", lcheck, "also check the lowering, raising and Laplace relations");
    laur->add_option("--out", o.out, "json | text");
    laur->callback([&] {
        const unsigned p = o.precision();
        PrecisionScope scope(p);
        auto [u, v] = parse_tau(o.tau, p);
        auto slices = laurent_coeffs(ll, ls0, lr, v, lmodes, Real(1) / 32, p);
        Json rows = Json::array();
        for (const auto& s : slices) rows.push_back({{"r", s.r}, {"value", complex_json(s.value(u), 30)}});
        Json j{{"l", ll}, {"s0", ls0}, {"tau", o.tau}, {"modes", lmodes}, {"slices", rows}};
        if (lcheck) {
            LaurentCheck c = laurent_check(ll, ls0, lr, {v}, lmodes, p);
            j["check"] = {{"lower", to_string(c.lower, 3)},
                          {"raise", to_string(c.raise, 3)},
                          {"laplace_stated_sign", to_string(c.delta_stated, 3)},
                          {"laplace_minus_RL_sign", to_string(c.delta_consistent, 3)},
                          {"nilpotence_factor", to_string(c.nilpotence_factor, 12)}};
        }
        if (o.json("json")) {
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& s : slices) {
                Complex z = s.value(u);
                std::cout << "A_" << s.r << " = " << to_string(z.re, 30) << " + " << to_string(z.im, 30) << " i\n";
            }
            if (lcheck) std::cout << j["check"].dump(2) << "\n";
        }
    });

    std::string identity;
    auto* verify = app.add_subcommand("verify", "check a named identity");
    verify->add_option("identity", identity, "one of bol, flip-involution, xiflip, dflip, commutation, casimir, "
                                             "estar-lift, kronecker, laurent-relations, all")
        ->required();
    add_form_options(verify, o);
    verify->callback([&] { status = run_verify_cmd(identity, o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return 2;
    } catch (const SchemaError& e) {
        print_error("schema", e.what(), e.pointer());
        return 1;
    } catch (const MathError& e) {
        print_error("math", e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 1;
    }
    return status;
}
