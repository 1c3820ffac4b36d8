#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spc/csv.hpp"
#include "spc/errors.hpp"
#include "spc/generators.hpp"
#include "spc/report.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;

struct TableArgs {
    std::string path;
    std::string null_token;
    bool no_header = false;
};

struct RunArgs {
    TableArgs table;
    std::vector<std::string> constraints;
    std::string measures = "g3,g5";
    std::uint64_t budget = 10'000'000;
    bool oracle = false;
    std::string json_path;
    bool timing = false;
};

void add_table_options(CLI::App* cmd, TableArgs& a) {
    cmd->add_option("--table", a.path, "CSV file with the incomplete table")->required();
    cmd->add_option("--null", a.null_token, "cell text read as NULL (default: empty cell)");
    cmd->add_flag("--no-header", a.no_header, "first line is data; attributes are named A1..An");
}

void add_run_options(CLI::App* cmd, RunArgs& a, bool with_measures) {
    add_table_options(cmd, a.table);
    cmd->add_option("--constraint", a.constraints, "constraint, e.g. 'spfd(A,B -> C)' (repeatable)")->required();
    if (with_measures) cmd->add_option("--measures", a.measures, "comma-separated subset of g3,g4,g5");
    cmd->add_option("--budget", a.budget, "node budget per search");
    cmd->add_flag("--oracle", a.oracle, "cross-check against exhaustive spWorld enumeration on small tables");
    cmd->add_option("--json", a.json_path, "write the JSON report to this path ('-' for stdout)");
    cmd->add_flag("--timing", a.timing, "include wall-clock times in the report");
}

int run_verb(const RunArgs& a, bool check_only) {
    spc::CsvOptions co{a.table.null_token, !a.table.no_header};
    spc::IncompleteTable t = spc::load_csv(a.table.path, co);
    std::vector<spc::ConstraintSpec> specs;
    for (const auto& s : a.constraints) specs.push_back({s, spc::parse_constraint(s, t.schema())});

    spc::RunOptions opt;
    opt.check_only = check_only;
    opt.budget = a.budget;
    opt.verify_with_oracle = a.oracle;
    opt.timing = a.timing;
    if (!check_only) {
        opt.g3 = opt.g4 = opt.g5 = false;
        std::stringstream ss(a.measures);
        for (std::string m; std::getline(ss, m, ',');) {
            if (m == "g3")
                opt.g3 = true;
            else if (m == "g4")
                opt.g4 = true;
            else if (m == "g5")
                opt.g5 = true;
            else
                throw spc::InvalidInput("unknown measure '" + m + "' (expected g3, g4, g5)");
        }
    }
    spc::RunReport report = spc::run(t, specs, opt);
    if (a.json_path == "-") {
        std::cout << spc::to_json(report, t, opt);
    } else {
        std::cout << spc::to_text(report, opt);
        if (!a.json_path.empty()) {
            std::ofstream out(a.json_path);
            if (!out) throw spc::InvalidInput("cannot write '" + a.json_path + "'");
            out << spc::to_json(report, t, opt);
        }
    }
    return spc::exit_code(report);
}

// "0-1,1-2" on vertices 0..n-1.
spc::Graph parse_graph(std::size_t n, const std::string& edges) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    std::stringstream ss(edges);
    for (std::string item; std::getline(ss, item, ',');) {
        auto dash = item.find('-');
        if (dash == std::string::npos) throw spc::InvalidInput("edge '" + item + "' is not of the form u-v");
        e.emplace_back(std::stoul(item.substr(0, dash)), std::stoul(item.substr(dash + 1)));
    }
    return spc::Graph(n, std::move(e));
}

// "0:0:0,1:1:1" as (b, c, d) triples.
std::vector<spc::Triple> parse_triples(const std::string& s) {
    std::vector<spc::Triple> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        spc::Triple t;
        char c1 = 0, c2 = 0;
        std::stringstream is(item);
        if (!(is >> t.b >> c1 >> t.c >> c2 >> t.d) || c1 != ':' || c2 != ':')
            throw spc::InvalidInput("triple '" + item + "' is not of the form b:c:d");
        out.push_back(t);
    }
    return out;
}

Json expected_json(const spc::ExpectedValue& v) {
    if (const auto* b = std::get_if<bool>(&v)) return *b;
    return std::get<spc::Ratio>(v).str();
}

void write_instance(const spc::GeneratedInstance& inst, const std::string& prefix, bool verified) {
    const fs::path csv = prefix + ".csv", manifest = prefix + ".json";
    spc::save_csv(csv.string(), inst.table);
    Json j;
    j["construction"] = inst.provenance.construction;
    Json params = Json::object();
    for (const auto& [k, v] : inst.provenance.parameters) params[k] = v;
    j["parameters"] = std::move(params);
    j["table"] = csv.filename().string();
    j["null_token"] = inst.table.null_token();
    j["constraint"] = spc::to_string(inst.constraint, inst.table.schema());
    Json expected = Json::object();
    for (const auto& [k, v] : inst.expected) expected[k] = expected_json(v);
    j["expected"] = std::move(expected);
    if (inst.graph) {
        Json g;
        g["vertices"] = inst.graph->n;
        g["edges"] = inst.graph->edges;
        j["graph"] = std::move(g);
    }
    j["verified"] = verified;
    std::ofstream out(manifest);
    if (!out) throw spc::InvalidInput("cannot write '" + manifest.string() + "'");
    out << j.dump(2) << '\n';
    std::cout << "wrote " << csv.string() << " and " << manifest.string() << '\n';
}

int emit(const spc::GeneratedInstance& inst, const std::string& prefix, bool verify) {
    if (verify) {
        spc::VerifyOutcome v = spc::verify_instance(inst);
        if (!v.ok) {
            for (const auto& m : v.mismatches) std::cerr << "mismatch: " << m << '\n';
            return 1;
        }
    }
    write_instance(inst, prefix, verify);
    return 0;
}

int verify_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw spc::InvalidInput("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw spc::InvalidInput(std::string("manifest is not valid JSON: ") + e.what());
    }
    spc::GeneratedInstance inst;
    const fs::path table = fs::path(path).parent_path() / j.at("table").get<std::string>();
    inst.table = spc::load_csv(table.string(), {j.value("null_token", std::string()), true});
    inst.constraint = spc::parse_constraint(j.at("constraint").get<std::string>(), inst.table.schema());
    inst.provenance.construction = j.at("construction").get<std::string>();
    const Json params = j.value("parameters", Json::object());
    for (const auto& [k, v] : params.items()) inst.provenance.parameters[k] = v.get<std::int64_t>();
    for (const auto& [k, v] : j.at("expected").items()) {
        if (v.is_boolean())
            inst.expected[k] = v.get<bool>();
        else
            inst.expected[k] = spc::parse_ratio(v.get<std::string>());
    }
    if (j.contains("graph")) {
        auto edges = j["graph"].at("edges").get<std::vector<std::pair<std::size_t, std::size_t>>>();
        inst.graph = spc::Graph(j["graph"].at("vertices").get<std::size_t>(), edges);
    }
    spc::VerifyOutcome v = spc::verify_instance(inst);
    for (const auto& [k, val] : v.measured)
        std::cout << k << " = " << spc::expected_to_string(val)
                  << (inst.expected.count(k) ? " (expected " + spc::expected_to_string(inst.expected.at(k)) + ")" : "")
                  << '\n';
    for (const auto& m : v.mismatches) std::cout << "mismatch: " << m << '\n';
    std::cout << (v.ok ? "verified" : "NOT verified") << '\n';
    return v.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strongly possible constraint checker and approximation measures"};
    app.require_subcommand(1);

    RunArgs check_args, measure_args;
    auto* check = app.add_subcommand("check", "decide whether each constraint holds in some spWorld");
    add_run_options(check, check_args, false);
    auto* measure = app.add_subcommand("measure", "verdicts plus the g3, g4, g5 measures");
    add_run_options(measure, measure_args, true);

    auto* generate = app.add_subcommand("generate", "write a constructed instance as CSV plus a JSON manifest");
    generate->require_subcommand(1);
    std::string out_prefix = "instance";
    bool no_verify = false;
    std::int64_t p = 0, q = 1, c = 0;
    std::size_t vertices = 0, k = 1, q_size = 1, rows = 0, cols = 0, values = 2;
    std::string edges, triples, from;
    double null_rate = 0.2;
    std::uint64_t seed = 1;
    auto common = [&](CLI::App* g) {
        g->add_option("--out", out_prefix, "output prefix; writes PREFIX.csv and PREFIX.json");
        g->add_flag("--no-verify", no_verify, "skip engine confirmation of the expected values");
    };
    auto ratio_cmd = [&](const char* name, const char* help) {
        auto* g = generate->add_subcommand(name, help);
        g->add_option("--p", p, "numerator")->required();
        g->add_option("--q", q, "denominator")->required();
        g->add_option("--c", c, "row multiplier (0 picks the smallest valid one)");
        common(g);
        return g;
    };
    auto graph_cmd = [&](const char* name, const char* help) {
        auto* g = generate->add_subcommand(name, help);
        g->add_option("--vertices", vertices, "number of vertices")->required();
        g->add_option("--edges", edges, "edge list such as 0-1,1-2");
        common(g);
        return g;
    };
    auto* g_prop3 = ratio_cmd("prop3", "spKey table with g3 - g5 = p/q over p+2 columns");
    auto* g_thm1 = ratio_cmd("thm1", "two-column spKey table with g3 - g5 = p/q");
    auto* g_thm3 = ratio_cmd("thm3", "spFD table with g3 - g5 = p/q");
    auto* g_lemma = graph_cmd("lemma-graph", "table whose weak similarity graph is the given graph");
    auto* g_clique = graph_cmd("maxclique", "spCJ g3 instance from a k-clique question");
    g_clique->add_option("--k", k, "clique size")->required();
    auto* g_color = graph_cmd("threecolor", "spCJ g5 instance from a 3-colouring question");
    auto* g_3dm = generate->add_subcommand("threedm", "spCJ instance from a 3-dimensional matching question");
    g_3dm->add_option("--q", q_size, "size of each coordinate set")->required();
    g_3dm->add_option("--triples", triples, "triples such as 0:0:0,1:1:1");
    common(g_3dm);
    auto* g_random = generate->add_subcommand("random", "uniform random table, or NULL corruption of --from");
    g_random->add_option("--rows", rows, "number of rows");
    g_random->add_option("--cols", cols, "number of columns");
    g_random->add_option("--values", values, "values per column (1..values)");
    g_random->add_option("--null-rate", null_rate, "probability of a NULL cell")->check(CLI::Range(0.0, 1.0));
    g_random->add_option("--seed", seed, "random seed");
    g_random->add_option("--from", from, "CSV table to corrupt instead of generating one");
    common(g_random);

    std::string manifest;
    auto* verify = app.add_subcommand("verify", "recompute a manifest's expected values with the engines");
    verify->add_option("--manifest", manifest, "manifest written by generate")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*check) return run_verb(check_args, true);
        if (*measure) return run_verb(measure_args, false);
        if (*verify) return verify_manifest(manifest);
        const bool verify_out = !no_verify;
        if (*g_prop3) return emit(spc::gen_prop3(p, q, c), out_prefix, verify_out);
        if (*g_thm1) return emit(spc::gen_thm1(p, q, c), out_prefix, verify_out);
        if (*g_thm3) return emit(spc::gen_thm3(p, q, c), out_prefix, verify_out);
        if (*g_lemma) return emit(spc::gen_lemma_graph(parse_graph(vertices, edges)), out_prefix, verify_out);
        if (*g_clique)
            return emit(spc::reduce_maxclique_to_spcj_g3(parse_graph(vertices, edges), k), out_prefix, verify_out);
        if (*g_color) return emit(spc::reduce_3color_to_spcj_g5(parse_graph(vertices, edges)), out_prefix, verify_out);
        if (*g_3dm) return emit(spc::reduce_3dm_to_spcj(parse_triples(triples), q_size), out_prefix, verify_out);
        if (*g_random) {
            spc::GeneratedInstance inst;
            if (!from.empty()) {
                inst.table = spc::corrupt_nulls(spc::load_csv(from), null_rate, seed);
            } else {
                if (rows == 0 || cols == 0) throw spc::InvalidInput("random needs --rows and --cols, or --from");
                inst.table = spc::random_table(rows, cols, values, null_rate, seed);
            }
            inst.constraint = spc::Constraint::key(spc::AttributeSet::all(inst.table.arity()));
            inst.provenance = {"random", {{"seed", static_cast<std::int64_t>(seed)}}};
            return emit(inst, out_prefix, false);
        }
    } catch (const spc::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const spc::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
