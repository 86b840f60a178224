#pragma once

#include "maasslab/gkmod.hpp"
#include "maasslab/mfexp.hpp"
#include "maasslab/symtensor.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace maasslab {

using Json = nlohmann::json;

class SchemaError : public MathError {
public:
    SchemaError(std::string pointer, const std::string& what)
        : MathError("schema error at " + pointer + ": " + what), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

// ---- writing ---------------------------------------------------------------

inline Json to_json(const Coefficient& c) {
    Json j;
    j["mode"] = mode_name(c.mode());
    if (c.mode() == Mode::Float) {
        const int digits = static_cast<int>(bits_to_digits10(c.precision())) + 5;
        j["prec"] = c.precision();
        j["re"] = to_string(c.value().re, digits);
        j["im"] = to_string(c.value().im, digits);
        return j;
    }
    j["terms"] = Json::array();
    for (const auto& [mono, g] : c.terms()) {
        Json t{{"re", rational_str(g.re)}, {"im", rational_str(g.im)}, {"sym", Json::object()}};
        for (const auto& [name, e] : mono) t["sym"][name] = e;
        j["terms"].push_back(t);
    }
    return j;
}

inline Json to_json(const MFExpansion& f) {
    Json j;
    j["weight"] = f.weight();
    j["level"] = f.level();
    j["trunc"] = f.trunc() ? rational_str(*f.trunc()) : std::string("inf");
    j["mode"] = mode_name(f.mode());
    if (f.mode() == Mode::Float) j["prec"] = f.precision();
    j["terms"] = Json::array();
    for (const auto& [k, c] : f.terms()) {
        Json t;
        t["coeff"] = to_json(c);
        t["u_pow"] = k.u_pow;
        t["u_freq"] = rational_str(k.u_freq);
        t["v_pow"] = k.v_pow;
        t["log_pow"] = k.log_pow;
        t["v_decay"] = rational_str(k.v_decay);
        t["gamma"] = k.gamma ? Json{{"s", k.gamma->s}, {"lambda", rational_str(k.gamma->lambda)}} : Json(nullptr);
        j["terms"].push_back(t);
    }
    return j;
}

inline Json to_json(const VVExpansion& f) {
    Json j{{"m", f.m()}, {"weight", f.weight()}, {"components", Json::array()}};
    for (const auto& c : f.components()) j["components"].push_back(to_json(c));
    return j;
}

inline Json to_json(const GKDescriptor& d, long window = 8) {
    Json j;
    j["case"] = case_name(d.label);
    j["k"] = d.k;
    j["nu"] = d.nu;
    j["factors"] = Json::array();
    for (const auto& f : d.factors()) j["factors"].push_back(f.name());
    j["socle"] = Json::array();
    for (const auto& layer : d.socle) {
        Json l = Json::array();
        for (const auto& f : layer) l.push_back(f.name());
        j["socle"].push_back(l);
    }
    Json kt = Json::object();
    const long reach = (d.k < 0 ? -d.k : d.k) + window;
    for (long w = -reach; w <= reach; ++w)
        if (parity(w) == parity(d.k)) kt[std::to_string(w)] = d.multiplicity(w);
    j["ktypes"] = kt;
    j["sequence"] = d.sequence;
    j["split"] = d.split;
    j["certainty"] = certainty_name(d.certainty);
    j["subquotient"] = subquotient_name(subquotient_status(d.label));
    j["warnings"] = d.warnings;
    return j;
}

// ---- reading ---------------------------------------------------------------

namespace detail {

inline const Json& field(const Json& j, const std::string& ptr, const char* key) {
    if (!j.is_object()) throw SchemaError(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(ptr + "/" + key, "missing field");
    return *it;
}

inline long get_int(const Json& j, const std::string& ptr, const char* key) {
    const Json& v = field(j, ptr, key);
    if (!v.is_number_integer()) throw SchemaError(ptr + "/" + key, "expected an integer");
    return v.get<long>();
}

inline Rational get_rational(const Json& j, const std::string& ptr, const char* key) {
    const Json& v = field(j, ptr, key);
    if (!v.is_string()) throw SchemaError(ptr + "/" + key, "expected a rational string");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const MathError& e) {
        throw SchemaError(ptr + "/" + key, e.what());
    }
}

inline Mode get_mode(const Json& j, const std::string& ptr) {
    const Json& v = field(j, ptr, "mode");
    if (v == "exact") return Mode::Exact;
    if (v == "float") return Mode::Float;
    throw SchemaError(ptr + "/mode", "expected \"exact\" or \"float\"");
}

inline unsigned get_prec(const Json& j, const std::string& ptr) {
    if (!j.contains("prec")) return kDefaultPrecisionBits;
    long p = get_int(j, ptr, "prec");
    if (p < 32) throw SchemaError(ptr + "/prec", "precision must be >= 32 bits");
    return static_cast<unsigned>(p);
}

inline Real get_real(const Json& j, const std::string& ptr, const char* key) {
    const Json& v = field(j, ptr, key);
    if (!v.is_string()) throw SchemaError(ptr + "/" + key, "expected a decimal string");
    try {
        return Real(v.get<std::string>());
    } catch (const std::exception&) {
        throw SchemaError(ptr + "/" + key, "bad decimal '" + v.get<std::string>() + "'");
    }
}

}  // namespace detail

inline Coefficient coefficient_from_json(const Json& j, const std::string& ptr = "") {
    Mode mode = detail::get_mode(j, ptr);
    if (mode == Mode::Float) {
        unsigned prec = detail::get_prec(j, ptr);
        PrecisionScope scope(prec);
        return Coefficient::floating(Complex(detail::get_real(j, ptr, "re"), detail::get_real(j, ptr, "im")), prec);
    }
    const Json& terms = detail::field(j, ptr, "terms");
    if (!terms.is_array()) throw SchemaError(ptr + "/terms", "expected an array");
    Coefficient c;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tp = ptr + "/terms/" + std::to_string(i);
        Gauss g{detail::get_rational(terms[i], tp, "re"), detail::get_rational(terms[i], tp, "im")};
        Monomial mono;
        if (terms[i].contains("sym")) {
            const Json& sym = terms[i]["sym"];
            if (!sym.is_object()) throw SchemaError(tp + "/sym", "expected an object");
            for (auto it = sym.begin(); it != sym.end(); ++it) {
                if (!it->is_number_integer()) throw SchemaError(tp + "/sym/" + it.key(), "expected an integer");
                if (!valid_symbol_name(it.key())) throw SchemaError(tp + "/sym/" + it.key(), "unknown symbol");
                if (it->get<int>() != 0) mono[it.key()] = it->get<int>();
            }
        }
        try {
            c += Coefficient::monomial(mono, g);
        } catch (const MathError& e) {
            throw SchemaError(tp, e.what());
        }
    }
    return c;
}

inline MFExpansion expansion_from_json(const Json& j, const std::string& ptr = "") {
    const long weight = detail::get_int(j, ptr, "weight");
    const long level = j.contains("level") ? detail::get_int(j, ptr, "level") : 1;
    if (level < 1) throw SchemaError(ptr + "/level", "level must be positive");
    std::optional<Rational> trunc;
    const Json& tr = detail::field(j, ptr, "trunc");
    if (tr.is_null() || tr == "inf") {
        trunc.reset();
    } else {
        trunc = detail::get_rational(j, ptr, "trunc");
        if (*trunc < 0) throw SchemaError(ptr + "/trunc", "truncation must be >= 0");
    }
    const Mode mode = detail::get_mode(j, ptr);
    const unsigned prec = detail::get_prec(j, ptr);
    MFExpansion f(static_cast<int>(weight), mode, trunc, level, prec);
    const Json& terms = detail::field(j, ptr, "terms");
    if (!terms.is_array()) throw SchemaError(ptr + "/terms", "expected an array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tp = ptr + "/terms/" + std::to_string(i);
        const Json& t = terms[i];
        TermKey key;
        key.u_pow = static_cast<int>(detail::get_int(t, tp, "u_pow"));
        key.u_freq = detail::get_rational(t, tp, "u_freq");
        key.v_pow = static_cast<int>(detail::get_int(t, tp, "v_pow"));
        key.log_pow = static_cast<int>(detail::get_int(t, tp, "log_pow"));
        key.v_decay = detail::get_rational(t, tp, "v_decay");
        const Json& g = detail::field(t, tp, "gamma");
        if (!g.is_null()) {
            GammaAtom atom{static_cast<int>(detail::get_int(g, tp + "/gamma", "s")),
                           detail::get_rational(g, tp + "/gamma", "lambda")};
            if (atom.lambda <= 0) throw SchemaError(tp + "/gamma/lambda", "lambda must be positive");
            key.gamma = atom;
        }
        Coefficient c = coefficient_from_json(detail::field(t, tp, "coeff"), tp + "/coeff");
        if (c.mode() != mode) throw SchemaError(tp + "/coeff/mode", "coefficient mode differs from expansion mode");
        try {
            f.add_term(key, c);
        } catch (const MathError& e) {
            throw SchemaError(tp, e.what());
        }
    }
    return f;
}

inline VVExpansion vv_from_json(const Json& j, const std::string& ptr = "") {
    const long m = detail::get_int(j, ptr, "m");
    const long weight = detail::get_int(j, ptr, "weight");
    const Json& comps = detail::field(j, ptr, "components");
    if (!comps.is_array()) throw SchemaError(ptr + "/components", "expected an array");
    if (m < 0 || comps.size() != static_cast<std::size_t>(m + 1))
        throw SchemaError(ptr + "/components", "expected m+1 components");
    std::vector<MFExpansion> cs;
    for (std::size_t i = 0; i < comps.size(); ++i)
        cs.push_back(expansion_from_json(comps[i], ptr + "/components/" + std::to_string(i)));
    return VVExpansion(static_cast<int>(m), static_cast<int>(weight), std::move(cs));
}

inline bool is_vv_json(const Json& j) { return j.is_object() && j.contains("components"); }

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MathError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError("", std::string("not valid JSON: ") + e.what());
    }
}

}  // namespace maasslab
