#include "commands.hpp"

#include "fakeplane/chainform.hpp"
#include "fakeplane/error.hpp"
#include "fakeplane/families.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace fakeplane::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in) {
    std::ostringstream ss;
    if (path == "-") {
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    ss << f.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

int to_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw UsageError(what + " must be an integer, got '" + s + "'");
    }
    if (used != s.size()) throw UsageError(what + " must be an integer, got '" + s + "'");
    return v;
}

ExpansionMultiplicity to_pair(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw UsageError("expected MINUS/PLUS, got '" + s + "'");
    return {to_int(s.substr(0, slash), "mu_minus"), to_int(s.substr(slash + 1), "mu_plus")};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string h1_text(const TopologyReport& r) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < r.h1_free_rank; ++i) parts.push_back("Z");
    for (const auto& d : r.h1_invariants) parts.push_back("Z/" + d.str());
    if (parts.empty()) return "0";
    std::string s = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
    return s;
}

std::string matrix_text(const IntMatrix& m, const std::string& indent) {
    std::ostringstream os;
    std::vector<std::string> cells;
    std::size_t width = 1;
    for (const auto& x : m.entries()) width = std::max(width, x.str().size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << indent << "[";
        for (std::size_t k = 0; k < m.cols(); ++k) {
            const std::string v = m(i, k).str();
            os << (k ? " " : "") << std::string(width - v.size(), ' ') << v;
        }
        os << "]\n";
    }
    return os.str();
}

std::string report_text(const std::string& title, const TopologyReport& r) {
    std::ostringstream os;
    os << title << "\n";
    os << "  boundary is a tree: " << yes_no(r.boundary_is_tree) << "\n";
    os << "  Q-acyclic: " << yes_no(r.q_acyclic) << "\n";
    os << "  Z-acyclic: " << yes_no(r.z_acyclic) << "\n";
    os << "  H1: " << h1_text(r) << "\n";
    os << "  H2 free rank: " << r.h2_free_rank << "\n";
    os << "  real locus: " << to_string(r.real_locus) << "\n";
    if (r.boundary_real_locus) os << "  real locus of the boundary: " << to_string(*r.boundary_real_locus) << "\n";
    if (!r.reason.empty()) os << "  reason: " << r.reason << "\n";
    for (const auto& w : r.witnesses) {
        os << "  witness " << w.name << " (" << w.matrix.rows() << " x " << w.matrix.cols() << ")\n";
        os << matrix_text(w.matrix, "    ");
    }
    return os.str();
}

struct Analysis {
    Json json;
    std::string text;
    std::string dot;
};

Analysis analyze_text(const std::string& content) {
    SurfaceFile f = parse_surface_file(content);
    if (!f.surface) throw Error(ErrorKind::ParseError, "base: missing");
    Analysis a;
    TopologyReport b = boundary_report(*f.surface);
    a.json["boundary"] = report_to_json(b);
    a.text = report_text("boundary report", b);
    if (f.arrangement) {
        TopologyReport r = arrangement_report(*f.surface, arrangement_input(f));
        a.json["arrangement"] = report_to_json(r);
        a.text += report_text("arrangement report", r);
    }
    a.dot = f.surface->to_dot();
    return a;
}

int cmd_analyze(const std::vector<std::string>& files, bool json, const std::string& dot, std::istream& in,
                std::ostream& out) {
    if (!dot.empty() && files.size() != 1) throw UsageError("--dot needs exactly one input file");
    std::vector<std::string> contents;
    for (const auto& f : files) contents.push_back(read_input(f, in));
    std::vector<std::future<Analysis>> jobs;
    for (const auto& c : contents) jobs.push_back(std::async(std::launch::async, analyze_text, c));
    std::vector<Analysis> results;
    for (auto& j : jobs) results.push_back(j.get());
    if (!dot.empty()) write_output(dot, results[0].dot, out);
    if (json) {
        Json j;
        if (files.size() == 1) {
            j = results[0].json;
        } else {
            j = Json::array();
            for (std::size_t i = 0; i < files.size(); ++i) {
                Json e = results[i].json;
                e["file"] = files[i];
                j.push_back(e);
            }
        }
        out << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < files.size(); ++i) {
            if (files.size() > 1) out << "== " << files[i] << "\n";
            out << results[i].text;
        }
    }
    return kExitOk;
}

SurfaceFile construct_family(const std::string& family, const std::vector<std::string>& params, int r0,
                             const std::vector<std::string>& complex) {
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw UsageError(family + " takes " + std::to_string(n) + " parameters, got " + std::to_string(params.size()));
    };
    auto with_arrangement = [](const Construction& c) {
        SurfaceFile f = surface_file(c.surface);
        ArrangementNames names;
        for (int id : c.arrangement.d) names.d.push_back(c.surface.component(id).name);
        if (c.arrangement.b != c.surface.boundary_ids()) {
            names.b.emplace();
            for (int id : c.arrangement.b) names.b->push_back(c.surface.component(id).name);
        }
        names.relations = c.arrangement.relations;
        f.arrangement = names;
        return f;
    };
    for (Exceptional e : {Exceptional::Y333, Exceptional::Y244Real, Exceptional::Y244Complex, Exceptional::Y236})
        if (family == to_string(e)) {
            need(0);
            return with_arrangement(exceptional(e));
        }
    if (family == "ramanujam") {
        need(2);
        return with_arrangement(ramanujam(to_int(params[0], "mu_minus"), to_int(params[1], "mu_plus")));
    }
    if (family == "tricuspidal") {
        need(3);
        QuarticForm form;
        if (params[0] == "real")
            form = QuarticForm::AllRealCusps;
        else if (params[0] == "conjugate")
            form = QuarticForm::ConjugateCusps;
        else
            throw UsageError("tricuspidal form must be real or conjugate, got '" + params[0] + "'");
        return with_arrangement(tricuspidal(form, to_int(params[1], "mu_minus"), to_int(params[2], "mu_plus")));
    }
    if (family == "kod1") {
        Kod1Params p;
        for (const auto& s : params) p.pairs.push_back(to_pair(s));
        p.n = static_cast<int>(p.pairs.size());
        p.r0 = r0;
        for (const auto& s : complex) p.complex_pairs.push_back(to_pair(s));
        return with_arrangement(kod1(p));
    }
    if (family == "xnz") {
        need(2);
        return surface_file(xnz_family(to_int(params[0], "n"), to_int(params[1], "r")));
    }
    throw UsageError("unknown family '" + family +
                     "'; expected Y333, Y244_real, Y244_complex, Y236, ramanujam, tricuspidal, kod1 or xnz");
}

int cmd_rectify(const std::string& file, bool json, std::istream& in, std::ostream& out) {
    SurfaceFile f = parse_surface_file(read_input(file, in));
    RStandardPair cur = r_standard_pair(f);
    const auto certs = rectify(cur);
    Json links = Json::array();
    std::ostringstream text;
    text << "start: multiplicity " << cur.multiplicity() << ", " << cur.e_tree.size() << " curves in E\n";
    std::size_t k = 0;
    for (const auto& c : certs) {
        links.push_back(certificate_to_json(cur, c));
        text << "link " << ++k << ": " << to_string(c.parity) << ", s = " << c.s << ", pairs = " << c.pairs
             << ", multiplicity " << c.m_before << " -> " << c.m_after << ", |E| " << c.e_before << " -> "
             << c.e_after << ", " << c.steps.size() << " steps\n";
        cur = replay_link(cur, c);
    }
    const bool trivial = cur.e_tree.empty() && cur.multiplicity() == 1;
    text << "final: multiplicity " << cur.multiplicity() << ", " << cur.e_tree.size() << " curves in E"
         << (trivial ? ", trivial pair" : "") << "\n";
    if (json) {
        Json j;
        j["links"] = links;
        j["final"] = {{"multiplicity", to_json(cur.multiplicity())},
                      {"e_size", cur.e_tree.size()},
                      {"trivial", trivial},
                      {"file", to_json(surface_file(cur))}};
        out << j.dump(2) << "\n";
    } else {
        out << text.str();
    }
    return kExitOk;
}

int cmd_normalize_chain(const std::string& file, bool json, std::istream& in, std::ostream& out) {
    SurfaceFile f = parse_surface_file(read_input(file, in));
    if (!f.chain) throw Error(ErrorKind::ParseError, "chain: missing");
    const WeightedChain& c = *f.chain;
    ChainNormalForm nf = c.is_symmetric() ? normalize_chain_conjugate(c) : normalize_chain_real(c);
    std::vector<std::string> moves;
    for (const auto& m : nf.moves) moves.push_back(m.to_string());
    if (json) {
        Json j;
        j["input"] = c.weights;
        j["symmetric"] = c.is_symmetric();
        j["normal_form"] = nf.chain.weights;
        j["moves"] = moves;
        j["tail"] = nf.tail.to_string();
        out << j.dump(2) << "\n";
    } else {
        out << "input: " << c.to_string() << "\n";
        out << "normal form: " << nf.chain.to_string() << "\n";
        out << "moves:";
        for (const auto& m : moves) out << " " << m;
        out << (moves.empty() ? " none\n" : "\n");
        out << "tail: " << nf.tail.to_string() << "\n";
    }
    return kExitOk;
}

int cmd_snf(const std::string& file, const std::string& witness, bool json, std::istream& in, std::ostream& out) {
    const std::string content = read_input(file, in);
    IntMatrix a;
    if (witness.empty()) {
        SurfaceFile f = parse_surface_file(content);
        if (!f.matrix) throw Error(ErrorKind::ParseError, "matrix: missing");
        a = *f.matrix;
    } else {
        Json j;
        try {
            j = Json::parse(content);
        } catch (const Json::parse_error& e) {
            throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
        }
        const Json* found = nullptr;
        for (const char* part : {"boundary", "arrangement"})
            if (j.contains(part) && j[part].contains("witnesses"))
                for (const auto& w : j[part]["witnesses"])
                    if (!found && w.value("name", "") == witness) found = &w;
        if (!found) throw Error(ErrorKind::ParseError, "witnesses: no witness named '" + witness + "'");
        SurfaceFile f = surface_file_from_json(Json{{"matrix", (*found)["matrix"]}});
        a = *f.matrix;
    }
    SmithDecomposition d = smith_normal_form(a);
    if (json) {
        Json j;
        j["U"] = to_json(d.U);
        j["D"] = to_json(d.D);
        j["V"] = to_json(d.V);
        Json diag = Json::array();
        for (const auto& x : d.diagonal()) diag.push_back(to_json(x));
        j["diagonal"] = diag;
        j["rank"] = d.rank();
        out << j.dump(2) << "\n";
    } else {
        out << "U\n" << matrix_text(d.U, "  ") << "D\n" << matrix_text(d.D, "  ") << "V\n" << matrix_text(d.V, "  ");
        out << "rank: " << d.rank() << "\n";
    }
    return kExitOk;
}

}  // namespace

Json report_to_json(const TopologyReport& r) {
    Json j;
    j["boundary_is_tree"] = r.boundary_is_tree;
    j["q_acyclic"] = r.q_acyclic;
    j["z_acyclic"] = r.z_acyclic;
    Json h1 = Json::array();
    for (const auto& d : r.h1_invariants) h1.push_back(to_json(d));
    j["h1_invariants"] = h1;
    j["h1_free_rank"] = r.h1_free_rank;
    j["h2_free_rank"] = r.h2_free_rank;
    j["real_locus"] = to_string(r.real_locus);
    j["boundary_real_locus"] = r.boundary_real_locus ? Json(to_string(*r.boundary_real_locus)) : Json(nullptr);
    j["reason"] = r.reason;
    Json ws = Json::array();
    for (const auto& w : r.witnesses)
        ws.push_back({{"name", w.name},
                      {"matrix", to_json(w.matrix)},
                      {"row_labels", w.row_labels},
                      {"col_labels", w.col_labels}});
    j["witnesses"] = ws;
    return j;
}

Json certificate_to_json(const RStandardPair& before, const LinkCertificate& c) {
    auto triple = [](const CoefficientTriple& t) {
        return Json::array({to_json(t.f_inf), to_json(t.e0), to_json(t.e_minus1)});
    };
    Json steps = Json::array();
    SurfacePair s = before.surface;
    for (const auto& st : c.steps) {
        steps.push_back(step_to_json(s, st));
        s = apply_step(s, st);
    }
    Json j;
    j["parity"] = to_string(c.parity);
    j["s"] = c.s;
    j["pairs"] = c.pairs;
    j["before"] = triple(c.before);
    j["after"] = triple(c.after);
    j["old_relation"] = to_json(c.old_relation);
    j["new_relation"] = to_json(c.new_relation);
    j["m_before"] = to_json(c.m_before);
    j["m_after"] = to_json(c.m_after);
    j["e_before"] = c.e_before;
    j["e_after"] = c.e_after;
    j["roles_after"] = {{"f_inf", s.component(c.f_inf).name},
                        {"c0", s.component(c.c0).name},
                        {"a0", s.component(c.a0).name}};
    j["steps"] = steps;
    return j;
}

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Topology of real affine surfaces from blow-up programs", "fakeplane"};
    app.require_subcommand(1);

    bool json = false;
    std::vector<std::string> files;
    std::string dot;
    auto* analyze = app.add_subcommand("analyze", "Print the topology report of a surface file");
    analyze->add_option("files", files, "Surface files, - for standard input")->required();
    analyze->add_flag("--json", json, "JSON output");
    analyze->add_option("--dot", dot, "Write the dual graph in DOT format to this file");

    std::string family, output;
    std::vector<std::string> params, complex;
    int r0 = 1;
    auto* construct = app.add_subcommand("construct", "Write the surface file of a named family");
    construct->add_option("family", family, "Y333, Y244_real, Y244_complex, Y236, ramanujam, tricuspidal, kod1 or xnz")
        ->required();
    construct->add_option("params", params, "Family parameters");
    construct->add_option("--r0", r0, "kod1: length of the chain over the free point");
    construct->add_option("--complex", complex, "kod1: expansion pairs MINUS/PLUS of conjugate lines");
    construct->add_option("-o,--output", output, "Output file, standard output by default");

    std::string file;
    auto* rect = app.add_subcommand("rectify", "Rectify an r-standard pair by elementary links");
    rect->add_option("file", file, "Surface file, - for standard input")->required();
    rect->add_flag("--json", json, "JSON output");

    auto* chain = app.add_subcommand("normalize-chain", "Normal form of a weighted chain");
    chain->add_option("file", file, "File with a chain, - for standard input")->required();
    chain->add_flag("--json", json, "JSON output");

    std::string witness;
    auto* snf = app.add_subcommand("snf", "Smith normal form U A V = D");
    snf->add_option("file", file, "File with a matrix, or an analyze report with --witness")->required();
    snf->add_option("--witness", witness, "Name of a witness in an analyze --json report");
    snf->add_flag("--json", json, "JSON output");

    std::vector<std::string> argv_store{"fakeplane"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "fakeplane: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(files, json, dot, in, out);
        if (construct->parsed()) {
            write_output(output, serialize_surface_file(construct_family(family, params, r0, complex)), out);
            return kExitOk;
        }
        if (rect->parsed()) return cmd_rectify(file, json, in, out);
        if (chain->parsed()) return cmd_normalize_chain(file, json, in, out);
        if (snf->parsed()) return cmd_snf(file, witness, json, in, out);
    } catch (const UsageError& e) {
        err << "fakeplane: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "fakeplane: " << e.what() << "\n";
        return kExitDomainError;
    }
    return kExitUsage;
}

}  // namespace fakeplane::cli
