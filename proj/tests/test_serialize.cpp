#include "doctest.h"

#include "forge/serialize.hpp"

using namespace forge;

namespace {

std::string round_trip(const Document& d) {
    std::string a = dump_document(d);
    return dump_document(parse_document(a));
}

}  // namespace

TEST_CASE("documents round-trip byte for byte") {
    MccInstance inst = random_mcc(2, 2, 0.6, 5);
    Document d = document_of(inst);
    CHECK(round_trip(d) == dump_document(d));
    MccInstance back = mcc_of(parse_document(dump_document(d)));
    CHECK(back.k == 2);
    CHECK(back.parts == inst.parts);
    CHECK(back.g.m() == inst.g.m());

    Chain ch = full_chain(inst, Target::Upward, true);
    for (const Document& x : {document_of(ch.aonf), document_of(*ch.co), document_of(*ch.normal), document_of(*ch.upward)})
        CHECK(round_trip(x) == dump_document(x));
    FlowNetwork fn = network_of(parse_document(dump_document(document_of(ch.aonf))));
    CHECK(fn.F == ch.aonf.net.F);
    CHECK(fn.s == ch.aonf.net.s);
    CHECK(fn.net.cap == ch.aonf.net.net.cap);
}

TEST_CASE("dumping is deterministic") {
    Document a = document_of(random_mcc(3, 2, 0.5, 9));
    Document b = document_of(random_mcc(3, 2, 0.5, 9));
    CHECK(dump_document(a) == dump_document(b));
    CHECK(dump_document(a).find("\"schema_version\": 1") != std::string::npos);
}

TEST_CASE("malformed documents raise ParseError") {
    CHECK_THROWS_AS(parse_document("{not json"), ParseError);
    CHECK_THROWS_AS(parse_document("{}"), ParseError);
    Json j = Json::parse(dump_document(document_of(random_mcc(1, 2, 0.5, 1))));
    Json bad = j;
    bad["schema_version"] = 7;
    CHECK_THROWS_AS(parse_document(bad.dump()), ParseError);
    bad = j;
    bad["type"] = "sat";
    CHECK_THROWS_AS(parse_document(bad.dump()), ParseError);
    bad = j;
    bad["vertices"][0]["id"] = 5;
    CHECK_THROWS_AS(parse_document(bad.dump()), ParseError);
    bad = j;
    bad["parameters"].erase("parts");
    CHECK_THROWS_AS(parse_document(bad.dump()), ParseError);
    bad = j;
    bad["edges"] = Json::array({{{"id", 0}, {"u", 0}, {"v", 9}, {"cap", 1}, {"directed", false}, {"tag", ""}}});
    CHECK_THROWS_AS(parse_document(bad.dump()), ParseError);
    bad = j;
    bad["decomposition"] = {{"bags", {{0, 42}}}, {"width", 1}};
    CHECK_THROWS_AS(parse_document(bad.dump()), ParseError);
    CHECK_THROWS_AS(network_of(parse_document(j.dump())), ParseError);
}

TEST_CASE("certificates round-trip") {
    Clique c{2, 1, 3};
    CHECK(clique_of(certificate_json(c)) == c);
    AoNFlow f{{true, false, true, true}};
    CHECK(flow_of(certificate_json(f), 4).active == f.active);
    CHECK_THROWS_AS(flow_of(certificate_json(f), 2), ParseError);
    Orientation o{{false, true}};
    CHECK(orientation_of(certificate_json(o)).forward == o.forward);
    UpwardCertificate u{{true, false}, 3, {1, -1, 0}};
    UpwardCertificate u2 = upward_certificate_of(certificate_json(u));
    CHECK(u2.flip == u.flip);
    CHECK(u2.outer == 3);
    CHECK(u2.base == u.base);
    RectCertificate r{{false}, {1}, {2}, 0, {4, 1}};
    RectCertificate r2 = rect_certificate_of(certificate_json(r));
    CHECK(r2.sq == r.sq);
    CHECK(r2.base == r.base);
    CHECK_THROWS_AS(clique_of(certificate_json(o)), ParseError);
}

TEST_CASE("dot export is deterministic and clusters gadget edges") {
    Document d = document_of(mcc_to_aonf(random_mcc(2, 2, 0.5, 2)));
    std::string a = export_dot(d), b = export_dot(d);
    CHECK(a == b);
    CHECK(a.rfind("digraph", 0) == 0);
    CHECK(a.find("label=\"vs:1\"") != std::string::npos);
    CHECK(a.find("label=\"ch:1\"") != std::string::npos);
    Document m = document_of(random_mcc(2, 2, 0.5, 2));
    CHECK(export_dot(m).rfind("graph", 0) == 0);
}
