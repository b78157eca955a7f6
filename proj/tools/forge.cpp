#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "forge/planar.hpp"
#include "forge/reductions.hpp"
#include "forge/serialize.hpp"

using namespace forge;

namespace {

enum Exit { kOk = 0, kRejected = 1, kParse = 2, kPrecondition = 3, kAudit = 4, kBudget = 5, kCertificate = 6 };

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char* s = std::getenv("FORGE_SEED");
    if (!s) return fallback;
    try {
        return std::stoull(s);
    } catch (...) {
        throw ParseError("FORGE_SEED is not an integer");
    }
}

Target target_of(const std::string& s) {
    if (s == "aonf") return Target::Aonf;
    if (s == "co") return Target::Co;
    if (s == "upward") return Target::Upward;
    if (s == "rect") return Target::Rect;
    throw ParseError("unknown target stage " + s);
}

CapGraph co_graph(const Document& d) {
    if (d.type != "co") throw ParseError("expected a co document, got " + d.type);
    return d.graph;
}

UpwardStage upward_view(const Document& d) {
    UpwardStage st;
    st.skeleton = d.graph.g;
    if (!d.emb) throw ParseError("upward document has no embedding");
    st.skel_emb = *d.emb;
    for (const auto& t : d.provenance.at("tendrils"))
        st.tendrils.push_back({t.at("edge").get<int>(), t.at("primal").get<int>(), t.at("w").get<i64>()});
    return st;
}

RectStage rect_view(const Document& d) {
    RectStage st;
    st.skeleton = d.graph;
    if (!d.emb) throw ParseError("rect document has no embedding");
    st.skel_emb = *d.emb;
    for (const auto& t : d.provenance.at("tendrils"))
        st.tendrils.push_back({t.at("edge").get<int>(), t.at("primal").get<int>(), t.at("w").get<i64>()});
    return st;
}

Json verdict(bool yes, const Json& witness = nullptr) {
    Json j{{"answer", yes ? "yes" : "no"}};
    if (!witness.is_null()) j["witness"] = witness;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forge: planar reduction toolkit"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "random multicolored clique instance");
    int gk = 2, gN = 2;
    double gp = 0.7;
    std::uint64_t gseed = 1;
    std::string gout;
    gen->add_option("--k", gk, "number of parts")->check(CLI::PositiveNumber);
    gen->add_option("--N", gN, "part size")->check(CLI::PositiveNumber);
    gen->add_option("--density", gp, "edge probability")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gseed, "overrides FORGE_SEED");
    gen->add_option("--out,-o", gout, "output file");

    auto* red = app.add_subcommand("reduce", "run stages of the reduction chain");
    std::string rfrom = "mcc", rto, rin, rout;
    bool force = false;
    red->add_option("--from", rfrom, "source stage (mcc or co)");
    red->add_option("--to", rto, "target stage")->required();
    red->add_option("--in", rin, "input document")->required();
    red->add_option("--out,-o", rout, "output document");
    red->add_flag("--force-small-n", force, "allow N < 10k; equivalence is then not guaranteed");

    auto* sol = app.add_subcommand("solve", "brute-force oracle");
    std::string smethod = "brute", sin;
    long sbudget = 10'000'000;
    sol->add_option("--method", smethod, "solver")->check(CLI::IsMember({"brute"}));
    sol->add_option("--in", sin, "input document")->required();
    sol->add_option("--budget", sbudget, "search budget");

    auto* ver = app.add_subcommand("verify", "check a certificate against an instance");
    std::string vin, vcert;
    ver->add_option("--in", vin, "instance document")->required();
    ver->add_option("--cert", vcert, "certificate file")->required();

    auto* exp = app.add_subcommand("export", "write a Graphviz rendering");
    std::string xformat = "dot", xin, xout;
    exp->add_option("--format", xformat, "output format")->check(CLI::IsMember({"dot"}));
    exp->add_option("--in", xin, "instance document")->required();
    exp->add_option("--out,-o", xout, "output file");

    auto* gad = app.add_subcommand("gadget", "build and verify one gadget");
    std::string gkind;
    int gw = 1, gi = 1, gj = 1, gpk = 2, gpN = 2, ga = 1, gl = 2, gb = 1;
    std::string gdout;
    gad->add_option("kind", gkind, "vs | ch | tendril | rect-tendril")
        ->required()
        ->check(CLI::IsMember({"vs", "ch", "tendril", "rect-tendril"}));
    gad->add_option("--w", gw, "tendril parameter")->check(CLI::NonNegativeNumber);
    gad->add_option("--i", gi, "row (vs) or first non-edge part (ch)");
    gad->add_option("--j", gj, "column");
    gad->add_option("--k", gpk, "number of parts");
    gad->add_option("--N", gpN, "part size");
    gad->add_option("--a", ga, "index in part i (ch)");
    gad->add_option("--l", gl, "second non-edge part (ch)");
    gad->add_option("--b", gb, "index in part l (ch)");
    gad->add_option("--out,-o", gdout, "report file");

    auto* pdc = app.add_subcommand("pd", "validate or compute a path decomposition");
    std::string pin;
    pdc->add_option("--in", pin, "instance document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    try {
        if (*gen) {
            std::uint64_t seed = gen->count("--seed") ? gseed : seed_from_env(gseed);
            emit(gout, dump_document(document_of(random_mcc(gk, gN, gp, seed))));
            return kOk;
        }
        if (*red) {
            Document in = parse_document(slurp(rin));
            Target t = target_of(rto);
            if (rfrom == "mcc") {
                MccInstance inst = mcc_of(in);
                Chain c = full_chain(inst, t, force);
                Document out = t == Target::Aonf     ? document_of(c.aonf)
                               : t == Target::Co     ? document_of(*c.co)
                               : t == Target::Upward ? document_of(*c.upward)
                                                     : document_of(*c.rect);
                emit(rout, dump_document(out));
                return kOk;
            }
            if (rfrom == "co" && (t == Target::Upward || t == Target::Rect)) {
                if (!in.emb) throw ParseError("co document has no embedding");
                NormalStage n = co_normalize(co_graph(in), *in.emb, in.pd ? &*in.pd : nullptr);
                emit(rout, dump_document(t == Target::Upward ? document_of(co_to_upward(n))
                                                             : document_of(co_to_rectilinear(n))));
                return kOk;
            }
            throw ParseError("unsupported stage pair " + rfrom + " -> " + rto);
        }
        if (*sol) {
            Document in = parse_document(slurp(sin));
            Json out;
            if (in.type == "mcc") {
                auto c = solve_mcc_bruteforce(mcc_of(in), sbudget);
                out = c ? verdict(true, certificate_json(*c)) : verdict(false);
            } else if (in.type == "aonf") {
                auto f = solve_aonf_bruteforce(network_of(in));
                out = f ? verdict(true, certificate_json(*f)) : verdict(false);
            } else if (in.type == "co") {
                auto o = solve_co_bruteforce(co_graph(in));
                out = o ? verdict(true, certificate_json(*o)) : verdict(false);
            } else {
                throw ParseError("no brute-force solver for " + in.type);
            }
            std::cout << out.dump() << "\n";
            return kOk;
        }
        if (*ver) {
            Document in = parse_document(slurp(vin));
            Json cert = parse_json(slurp(vcert));
            std::string why;
            bool ok = false;
            if (in.type == "mcc") {
                ok = is_multicolored_clique(mcc_of(in), clique_of(cert));
                why = "not a multicolored clique";
            } else if (in.type == "aonf") {
                FlowNetwork fn = network_of(in);
                ok = verify_aonf_flow(fn, flow_of(cert, fn.net.g.m()), &why);
            } else if (in.type == "co") {
                ok = verify_circulating(co_graph(in), orientation_of(cert), &why);
            } else if (in.type == "upward") {
                ok = check_upward_certificate(upward_view(in), upward_certificate_of(cert), &why);
            } else {
                ok = check_rect_certificate(rect_view(in), rect_certificate_of(cert), &why);
            }
            std::cout << Json{{"accepted", ok}}.dump() << "\n";
            if (!ok) {
                std::cerr << "certificate rejected: " << why << "\n";
                return kCertificate;
            }
            return kOk;
        }
        if (*exp) {
            emit(xout, export_dot(parse_document(slurp(xin))));
            return kOk;
        }
        if (*gad) {
            Json rep;
            if (gkind == "vs" || gkind == "ch") {
                Gadget g = gkind == "vs" ? build_vs_gadget(gi, gj, gpk, gpN)
                                         : build_ch_gadget(gj, {gi, ga, gl, gb}, gpk, gpN);
                Json arcs = Json::array();
                for (const auto& e : g.body.g.edges)
                    arcs.push_back({{"from", g.body.g.vname[e.u]},
                                    {"to", g.body.g.vname[e.v]},
                                    {"cap", g.body.cap[e.id]},
                                    {"tag", g.body.g.etag[e.id]}});
                Json bnd = Json::object();
                for (const auto& [role, v] : g.boundary) bnd[role] = g.body.g.vname[v];
                rep = {{"kind", gkind}, {"vertices", g.body.g.n}, {"boundary", bnd}, {"arcs", arcs}};
            } else if (gkind == "tendril") {
                TendrilReport r = verify_tendril(build_tendril(gw), gw);
                rep = {{"kind", gkind},         {"w", gw},
                       {"poles_ok", r.poles_ok}, {"triconnected", r.triconnected},
                       {"feasible_embeddings", r.feasible_embeddings}, {"unique", r.unique},
                       {"contrib_pos", r.contrib_pos}, {"contrib_neg", r.contrib_neg}, {"width", r.width}};
            } else {
                RectTendrilReport r = verify_rect_tendril(build_rect_tendril(gw), gw);
                rep = {{"kind", gkind},
                       {"w", gw},
                       {"poles_ok", r.poles_ok},
                       {"closure_triconnected", r.closure_triconnected},
                       {"embeddings", r.embeddings},
                       {"contributions", r.contributions},
                       {"width", r.width}};
            }
            emit(gdout, rep.dump(2) + "\n");
            return kOk;
        }
        if (*pdc) {
            Document in = parse_document(slurp(pin));
            Json out;
            if (in.pd) {
                out = {{"source", "document"}, {"width", validate_decomposition(in.graph.g, *in.pd)}};
            } else {
                PathDecomposition pd = greedy_path_decomposition(in.graph.g);
                out = {{"source", "greedy"}, {"width", validate_decomposition(in.graph.g, pd)}};
            }
            std::cout << out.dump() << "\n";
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    } catch (const PreconditionN& e) {
        std::cerr << e.what() << "\n";
        return kPrecondition;
    } catch (const BudgetExceeded& e) {
        std::cerr << e.what() << "\n";
        return kBudget;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return kParse;
    } catch (const ForgeError& e) {
        std::cerr << e.what() << "\n";
        return kAudit;
    }
    return kOk;
}
