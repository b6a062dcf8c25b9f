// circreg: regularity computations and verification reports for cubic circulants.

#include <CLI11.hpp>
#include <circreg/circreg.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "report_json.hpp"

namespace {

using namespace circreg;

constexpr int kExitUsage = 2;

struct Globals {
    std::uint64_t seed = 1;
    std::uint32_t prime = kDefaultPrime;
    std::uint32_t check_prime = kCheckPrime;
    std::size_t lattice_limit = kDefaultLatticeLimit;
    std::string out;
    std::string format = "text";
    bool extended = false;
};

struct GraphArgs {
    std::size_t n = 0, a = 0;
    std::string action = "info";
};

struct RegArgs {
    std::size_t n = 0, a = 0, t = 1;
    bool symbolic = false;
    std::optional<std::uint32_t> prime;
};

struct VerifyArgs {
    std::optional<std::size_t> n, a, t;
    std::optional<std::size_t> len, samples;
    std::size_t max_n = 7, max_t = 3;
    bool exhaustive = false;
};

std::string graph_name(std::size_t n, std::size_t a) {
    return "C_" + std::to_string(2 * n) + "(" + std::to_string(a) + "," + std::to_string(n) + ")";
}

// Writes to --out if given, else stdout.
void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f)
        throw argument_error("cannot open " + g.out + " for writing");
    f << text;
}

int graph_info(const Globals& gl, const GraphArgs& args) {
    const Graph g = cubic_circulant(args.n, args.a);
    const auto comps = connected_components(g);
    nlohmann::ordered_json j;
    j["graph"] = graph_name(args.n, args.a);
    j["vertices"] = g.n_vertices();
    j["edges"] = g.n_edges();
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u + 1, v + 1});
    j["edge_list"] = edges;
    j["components"] = comps.size();
    j["bipartite"] = is_bipartite(g);
    try {
        const auto rep = decompose_cubic(args.n, args.a);
        j["decomposition"] = std::to_string(rep.count) + " x " + rep.model_name();
    } catch (const std::exception& e) {
        j["decomposition"] = std::string("unverified: ") + e.what();
    }
    try {
        j["induced_matching_number"] = induced_matching_number(g);
    } catch (const capacity_error& e) {
        j["induced_matching_number"] = nullptr;
    }
    if (gl.format == "json") {
        emit(gl, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream os;
    os << j["graph"].get<std::string>() << ": " << g.n_vertices() << " vertices, " << g.n_edges() << " edges, "
       << comps.size() << " component(s)" << (is_bipartite(g) ? ", bipartite" : "") << '\n';
    os << "decomposition: " << j["decomposition"].get<std::string>() << '\n';
    if (!j["induced_matching_number"].is_null())
        os << "induced matching number: " << j["induced_matching_number"].get<std::size_t>() << '\n';
    os << "edges:";
    for (auto [u, v] : g.edges())
        os << " {" << u + 1 << "," << v + 1 << "}";
    os << '\n';
    emit(gl, os.str());
    return 0;
}

int reg_command(const Globals& gl, const RegArgs& args) {
    const std::uint32_t p = args.prime.value_or(gl.prime);
    if (!is_prime(p))
        throw argument_error("--prime " + std::to_string(p) + " is not prime");
    const Graph g = cubic_circulant(args.n, args.a);
    const auto t = static_cast<unsigned>(args.t);
    if (t < 1)
        throw argument_error("--t must be at least 1");
    const MonomialIdeal I = args.symbolic ? symbolic_power(g, t) : power(edge_ideal(g), t);
    RegularityOptions opt;
    opt.prime = p;
    opt.lattice_limit = gl.lattice_limit;
    const int r = regularity(I, opt);

    std::optional<ExpectedValue> ev;
    if (t >= 2)
        ev = expected_reg_general(args.n, args.a, t);
    else if ((args.a == 1 || (args.a == 2 && args.n % 2 == 1)) && args.a < args.n)
        ev = expected_reg_base(args.n, args.a);

    std::string ideal = "I(" + graph_name(args.n, args.a) + ")";
    if (t > 1)
        ideal += args.symbolic ? "^(" + std::to_string(t) + ")" : "^" + std::to_string(t);
    if (gl.format == "json") {
        nlohmann::ordered_json j;
        j["ideal"] = ideal;
        j["prime"] = p;
        j["generators"] = I.gens().size();
        j["regularity"] = r;
        if (ev) {
            j["expected"] = ev->value;
            j["formula_case"] = ev->formula_case;
        }
        emit(gl, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream os;
    os << "reg " << ideal << " = " << r << "  (p = " << p << ", " << I.gens().size() << " generators)";
    if (ev)
        os << "; predicted " << ev->value << " {" << ev->formula_case << "}";
    os << '\n';
    emit(gl, os.str());
    return 0;
}

VerifyConfig make_config(const Globals& gl, const VerifyArgs& va) {
    VerifyConfig cfg;
    cfg.seed = gl.seed;
    cfg.prime = gl.prime;
    cfg.check_prime = gl.check_prime;
    cfg.lattice_limit = gl.lattice_limit;
    cfg.extended = gl.extended;
    cfg.max_n = va.max_n;
    cfg.max_t = va.max_t;
    cfg.n = va.n;
    cfg.a = va.a;
    cfg.t = va.t;
    cfg.exhaustive = va.exhaustive;
    if (va.len)
        cfg.max_len = *va.len;
    if (va.samples) {
        cfg.tuple_samples = *va.samples;
        cfg.repeated_samples = *va.samples;
        cfg.monomial_samples = *va.samples;
        cfg.intermediate_samples = *va.samples;
    }
    return cfg;
}

// (n, a) pairs selected by --n/--a, defaulting to the connected grid up to --max-n.
std::vector<std::pair<std::size_t, std::size_t>> selected_graphs(const VerifyConfig& cfg) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (auto [n, a] : connected_grid(cfg.n.value_or(cfg.max_n)))
        if ((!cfg.n || n == *cfg.n) && (!cfg.a || a == *cfg.a))
            out.emplace_back(n, a);
    if (out.empty() && cfg.n && cfg.a)
        out.emplace_back(*cfg.n, *cfg.a);
    return out;
}

VerificationReport run_check(const std::string& which, const VerifyConfig& cfg, std::optional<std::size_t> len) {
    if (which == "suite")
        return run_suite(cfg);
    Verifier v(cfg, which);
    const auto graphs = selected_graphs(cfg);
    if (which == "banerjee") {
        for (auto [n, a] : graphs) {
            const bool exhaustive = cfg.exhaustive || (!cfg.n && n == 3);
            v.banerjee(n, a, len.value_or(exhaustive ? 2 : cfg.max_len), exhaustive);
        }
    } else if (which == "symbolic") {
        for (auto [n, a] : graphs)
            for (std::size_t t = cfg.t.value_or(2); t <= cfg.t.value_or(cfg.max_t); ++t)
                if (cfg.t || 2 * n * t <= cfg.budget())
                    v.symbolic(n, a, t);
    } else if (which == "radical-colon") {
        for (auto [n, a] : graphs)
            if (cfg.n || 4 * n <= cfg.budget())
                v.radical_colon(n, a, cfg.t.value_or(2));
    } else if (which == "intermediate") {
        for (auto [n, a] : graphs)
            if (cfg.n || 4 * n <= cfg.budget())
                v.intermediate(n, a, cfg.t.value_or(2), cfg.exhaustive || (!cfg.n && n == 3));
    } else if (which == "multiplicity") {
        for (auto [n, a] : graphs)
            if (cfg.n || n <= 5)
                v.multiplicity(n, a);
    } else if (which == "decompose") {
        if (cfg.n && cfg.a) {
            v.decompose(*cfg.n, *cfg.a);
        } else {
            for (std::size_t n = 2; n <= cfg.n.value_or(std::max<std::size_t>(cfg.max_n, 8)); ++n)
                for (std::size_t a = 1; a < n; ++a)
                    if (!cfg.a || a == *cfg.a)
                        v.decompose(n, a);
        }
    } else if (which == "general") {
        if (!cfg.n || !cfg.a)
            throw argument_error("verify general needs --n and --a");
        v.general(*cfg.n, *cfg.a, cfg.t.value_or(2));
    }
    return v.finish();
}

int verify_command(const Globals& gl, const std::string& which, const VerifyArgs& va, std::optional<std::size_t> k) {
    const auto cfg = make_config(gl, va);
    VerificationReport report;
    if (which == "disjoint") {
        Verifier v(cfg, which);
        v.disjoint(k.value_or(2), cfg.n.value_or(3), cfg.a.value_or(2), cfg.t.value_or(2));
        report = v.finish();
    } else {
        report = run_check(which, cfg, va.len);
    }
    std::ostringstream os;
    if (gl.format == "json")
        os << to_json(report).dump(2) << '\n';
    else if (gl.format == "csv")
        write_report_csv(os, report);
    else
        write_report_text(os, report);
    emit(gl, os.str());
    if (!gl.out.empty())
        write_report_text(std::cout, report);
    return report.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regularity of powers of edge ideals of cubic circulant graphs"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    Globals gl;
    app.add_option("--seed", gl.seed, "Root seed for all randomized selections");
    app.add_option("--prime", gl.prime, "Coefficient characteristic")->envname("CIRCREG_PRIME");
    app.add_option("--check-prime", gl.check_prime, "Second characteristic for stability checks");
    app.add_option("--lattice-limit", gl.lattice_limit, "Maximum lcm-lattice size per ideal");
    app.add_option("--out", gl.out, "Write the report to FILE");
    app.add_option("--format", gl.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_flag("--extended", gl.extended, "Include the 12+ variable instances");

    GraphArgs ga;
    auto* graph_cmd = app.add_subcommand("graph", "Structure of C_{2n}(a, n)");
    graph_cmd->add_option("--n", ga.n)->required();
    graph_cmd->add_option("--a", ga.a)->required();
    graph_cmd->add_option("action", ga.action)->check(CLI::IsMember({"info"}));

    RegArgs ra;
    auto* reg_cmd = app.add_subcommand("reg", "Regularity of a power or symbolic power of I(C_{2n}(a, n))");
    reg_cmd->add_option("--n", ra.n)->required();
    reg_cmd->add_option("--a", ra.a)->required();
    reg_cmd->add_option("--t", ra.t, "Exponent (default 1)");
    reg_cmd->add_flag("--symbolic", ra.symbolic, "Use the symbolic power");
    reg_cmd->add_option("--prime", ra.prime, "Characteristic for this computation");

    VerifyArgs va;
    std::optional<std::size_t> disjoint_k;
    std::string which;
    auto* verify_cmd = app.add_subcommand("verify", "Run verification checks and print a report");
    verify_cmd->require_subcommand(1);
    verify_cmd->fallthrough();
    const std::vector<std::pair<std::string, std::string>> checks = {
        {"banerjee", "Colon identity I^t : x^e = I(G_e), loops and radical splitting"},
        {"symbolic", "Regularity of symbolic powers"},
        {"radical-colon", "sqrt(I^t : x^b) = sqrt(I^(t) : x^b)"},
        {"intermediate", "Regularity of ideals between I^t and I^(t)"},
        {"multiplicity", "Colon by tuples with repeated edges"},
        {"decompose", "Connected components of cubic circulants"},
        {"general", "Regularity of I(C_{2n}(a, n))^t for any a"},
        {"disjoint", "Regularity for disjoint copies of one graph"},
        {"suite", "Everything"},
    };
    for (const auto& [name, help] : checks) {
        auto* sub = verify_cmd->add_subcommand(name, help);
        sub->fallthrough();
        sub->add_option("--n", va.n);
        sub->add_option("--a", va.a);
        sub->add_option("--t", va.t);
        sub->add_option("--len", va.len, "Maximum tuple length");
        sub->add_option("--samples", va.samples, "Seeded samples per graph");
        sub->add_option("--max-n", va.max_n);
        sub->add_option("--max-t", va.max_t);
        sub->add_flag("--exhaustive", va.exhaustive);
        if (name == "disjoint")
            sub->add_option("--k", disjoint_k, "Number of copies");
        sub->callback([&which, name = name] { which = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (!is_prime(gl.prime) || !is_prime(gl.check_prime))
            throw argument_error("--prime and --check-prime must be prime");
        if (graph_cmd->parsed())
            return graph_info(gl, ga);
        if (reg_cmd->parsed())
            return reg_command(gl, ra);
        return verify_command(gl, which, va, disjoint_k);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const capacity_error& e) {
        std::cerr << "capacity: " << e.what() << '\n';
        return 3;
    } catch (const verification_error& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return 1;
    }
}
