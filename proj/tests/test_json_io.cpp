#include "maasslab/catalog.hpp"
#include "maasslab/json_io.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

using namespace maasslab;

namespace {

MFExpansion round_trip(const MFExpansion& f) { return expansion_from_json(Json::parse(to_json(f).dump())); }

std::string pointer_of(const Json& j) {
    try {
        expansion_from_json(j);
    } catch (const SchemaError& e) {
        return e.pointer();
    }
    return "<no error>";
}

Json sample() { return to_json(incoherent(7, 3)); }

}  // namespace

TEST_CASE("exact expansions survive a JSON round trip") {
    CHECK(round_trip(incoherent(7, 6)) == incoherent(7, 6));
    CHECK(round_trip(e2star(5)) == e2star(5));
    CHECK(round_trip(harmonic_eis(2, 4)) == harmonic_eis(2, 4));
    MFExpansion g(-2, Mode::Exact, std::nullopt, 4);
    TermKey k = TermKey::q(Rational(-3) / 4);
    k.gamma = GammaAtom{3, Rational(3) / 4};
    g.add_term(k, Coefficient::symbol(Symbol::zeta(3)).scaled(Rational(-5) / 7));
    g.add_term(TermKey::log_v(), Coefficient::symbol(Symbol::euler_gamma()) * Coefficient::pi_power(-2));
    MFExpansion back = round_trip(g);
    CHECK(back == g);
    CHECK(back.level() == 4);
    CHECK_FALSE(back.trunc());
}

TEST_CASE("float expansions survive a JSON round trip") {
    for (unsigned prec : {64u, 200u}) {
        PrecisionScope scope(prec);
        MFExpansion f = to_float(e2star(6), {}, prec);
        MFExpansion back = round_trip(f);
        CHECK(back.mode() == Mode::Float);
        CHECK(back.precision() == prec);
        CHECK(back == f);
    }
}

TEST_CASE("vector-valued expansions survive a JSON round trip") {
    VVExpansion E = estar_vv(2, 4);
    Json j = Json::parse(to_json(E).dump());
    CHECK(is_vv_json(j));
    CHECK_FALSE(is_vv_json(sample()));
    VVExpansion back = vv_from_json(j);
    CHECK(back.m() == 2);
    CHECK(back.weight() == 4);
    CHECK((back - E).is_zero());
    j["components"].erase(0);
    CHECK_THROWS_AS(vv_from_json(j), SchemaError);
}

TEST_CASE("truncation may be infinite or null") {
    Json j = sample();
    j["trunc"] = nullptr;
    CHECK_FALSE(expansion_from_json(j).trunc());
    j["trunc"] = "inf";
    CHECK_FALSE(expansion_from_json(j).trunc());
    j["trunc"] = "5/2";
    CHECK(*expansion_from_json(j).trunc() == Rational(5) / 2);
    j["trunc"] = "-1";
    CHECK(pointer_of(j) == "/trunc");
}

TEST_CASE("schema errors carry a JSON pointer") {
    Json j = sample();
    REQUIRE(j["terms"].size() > 1);

    Json a = j;
    a["terms"][0].erase("u_freq");
    CHECK(pointer_of(a) == "/terms/0/u_freq");

    Json b = j;
    b["terms"][1]["u_freq"] = "1/0";
    CHECK(pointer_of(b) == "/terms/1/u_freq");
    b["terms"][1]["u_freq"] = "x";
    CHECK(pointer_of(b) == "/terms/1/u_freq");

    Json c = j;
    c["mode"] = "symbolic";
    CHECK(pointer_of(c) == "/mode");

    Json d = j;
    d["terms"][0]["gamma"] = Json{{"s", 0}, {"lambda", "-2"}};
    CHECK(pointer_of(d) == "/terms/0/gamma/lambda");

    Json e = to_json(to_float(e2star(2), {}, 64));
    e["prec"] = 16;
    CHECK(pointer_of(e) == "/prec");

    Json f = j;
    f["terms"][0]["coeff"] = Json{{"mode", "float"}, {"prec", 64}, {"re", "1.5"}, {"im", "0"}};
    CHECK(pointer_of(f) == "/terms/0/coeff/mode");

    Json g = j;
    g["terms"][0]["coeff"]["terms"][0]["sym"] = Json{{"notasymbol", 1}};
    CHECK(pointer_of(g) == "/terms/0/coeff/terms/0/sym/notasymbol");

    Json h = j;
    h.erase("weight");
    CHECK(pointer_of(h) == "/weight");
    CHECK(pointer_of(Json::array()) == "");
}

TEST_CASE("reading a file that is not JSON") {
    const std::string path = "maasslab_json_io_test.json";
    {
        std::ofstream out(path);
        out << "{ \"weight\": 2, ";
    }
    CHECK_THROWS_AS(read_json_file(path), SchemaError);
    {
        std::ofstream out(path);
        out << to_json(e2star(3)).dump();
    }
    CHECK(expansion_from_json(read_json_file(path)) == e2star(3));
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_json_file("does/not/exist.json"), MathError);
}

TEST_CASE("descriptor JSON lists the module structure") {
    GKDescriptor d = classify_form(inv_delta(3));
    Json j = to_json(d, 4);
    CHECK(j["case"] == "Ib");
    CHECK(j["k"] == -12);
    CHECK(j["certainty"] == "exact");
    for (const char* key : {"nu", "factors", "socle", "ktypes", "sequence", "split", "subquotient", "warnings"})
        CHECK(j.contains(key));
    CHECK(j["ktypes"].size() == 17);
    for (long w = -16; w <= 16; w += 2) CHECK(j["ktypes"][std::to_string(w)] == d.multiplicity(w));
    CHECK(j["factors"].size() == d.factors().size());
}
