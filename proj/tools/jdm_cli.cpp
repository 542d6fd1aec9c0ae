// jdm: command-line front end for the JDM library.
//
// Exit status: 0 success, 1 domain failure (non-graphical input, failed
// verification, bound exceeded), 2 I/O or parse errors and bad flags.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "jdm/balance.hpp"
#include "jdm/graphic.hpp"
#include "jdm/io.hpp"
#include "jdm/oracle.hpp"
#include "jdm/sampler.hpp"
#include "jdm/transform.hpp"

using json = nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

struct DomainFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json report(const char* command) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

std::string rational_text(const jdm::Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Writes to a file, or stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write " + path);
    out << text;
}

json rso_json(const jdm::Rso& r) { return json::array({r.a, r.b, r.c, r.d, r.pivot_class}); }

json multigraph_json(const jdm::MultiGraphRealization& g) {
    json edges = json::array();
    for (const auto& [key, mult] : g.multiplicity) edges.push_back({key.first, key.second, mult});
    return edges;
}

// Samples may carry loops and parallel edges, so they are written edge by edge with repeats.
std::string multigraph_text(const jdm::MultiGraphRealization& g) {
    std::ostringstream out;
    std::size_t m = 0;
    for (const auto& kv : g.multiplicity) m += static_cast<std::size_t>(kv.second);
    out << g.vertices.size() << ' ' << m << '\n';
    for (const auto& [key, mult] : g.multiplicity)
        for (int x = 0; x < mult; ++x) out << key.first << ' ' << key.second << '\n';
    return out.str();
}

int cmd_check(const std::string& path, bool as_json) {
    const jdm::Jdm j = jdm::io::load_jdm(path);
    const auto r = jdm::check_graphical(j);
    if (as_json) {
        json out = report("check");
        out["graphical"] = r.graphical;
        json sizes = json::array();
        for (const auto& s : r.class_sizes) sizes.push_back(rational_text(s));
        out["class_sizes"] = sizes;
        if (r.first_violation) {
            out["violation"] = {{"condition", static_cast<int>(r.first_violation->condition)},
                                {"i", r.first_violation->i},
                                {"j", r.first_violation->j},
                                {"message", jdm::describe(*r.first_violation)}};
        } else {
            out["violation"] = nullptr;
        }
        std::cout << out.dump(2) << '\n';
    } else if (r.graphical) {
        std::cout << "graphical\n";
    } else {
        std::cout << "not graphical: " << jdm::describe(*r.first_violation) << '\n';
    }
    return r.graphical ? 0 : 1;
}

int cmd_construct(const std::string& path, const std::string& out_path) {
    const jdm::Jdm j = jdm::io::load_jdm(path);
    const auto r = jdm::check_graphical(j);
    if (!r.graphical) throw DomainFailure("not graphical: " + jdm::describe(*r.first_violation));
    emit(out_path, jdm::io::to_text(jdm::construct_realization(j)));
    return 0;
}

int cmd_extract(const std::string& path, const std::string& out_path) {
    emit(out_path, jdm::io::to_text(jdm::extract_jdm(jdm::io::load_graph(path))));
    return 0;
}

int cmd_balance(const std::string& path, const std::string& out_path, const std::string& trace_path) {
    const auto g = jdm::io::load_graph(path);
    const auto b = jdm::balance(g);
    emit(out_path, jdm::io::to_text(b.graph));
    if (!trace_path.empty()) {
        std::ostringstream trace;
        jdm::io::write_trace(trace, b.rsos);
        emit(trace_path, trace.str());
    }
    return 0;
}

int cmd_path(const std::string& from, const std::string& to, const std::string& trace_path, bool verify) {
    const auto g = jdm::io::load_graph(from);
    const auto h = jdm::io::load_graph(to);
    jdm::SwapSequence seq;
    try {
        seq = jdm::rso_path(g, h);
    } catch (const std::invalid_argument& e) {
        throw DomainFailure(e.what());
    }
    json out = report("path");
    out["steps"] = seq.rsos.size();
    out["source_fingerprint"] = seq.source_fingerprint;
    out["target_fingerprint"] = seq.target_fingerprint;
    json trace = json::array();
    for (const auto& r : seq.rsos) trace.push_back(rso_json(r));
    out["trace"] = trace;

    bool ok = true;
    if (verify) {
        const auto rep = jdm::replay(g, seq.rsos, h);
        out["verified"] = true;
        out["valid"] = rep.valid;
        out["message"] = rep.message;
        if (rep.failed_step) out["failed_step"] = *rep.failed_step;
        ok = rep.valid;
    } else {
        out["verified"] = false;
    }
    if (!trace_path.empty()) {
        std::ostringstream text;
        jdm::io::write_trace(text, seq.rsos);
        emit(trace_path, text.str());
    }
    std::cout << out.dump(2) << '\n';
    return ok ? 0 : 1;
}

struct SampleArgs {
    std::string chain = "b";
    std::size_t steps = 1000;
    std::size_t burnin = 0;
    std::size_t thin = 1;
    std::uint64_t seed = 0;
    bool entropy = false;
    std::size_t max_lag = 50;
    std::string out;
};

int cmd_sample(const std::string& path, const SampleArgs& a, bool seed_given) {
    if (!seed_given && !a.entropy) throw CLI::ValidationError("sample", "--seed is required unless --entropy is given");
    const jdm::Jdm j = jdm::io::load_jdm(path);

    jdm::SampleOptions opt;
    opt.chain = a.chain == "a" ? jdm::ChainKind::kA : a.chain == "b" ? jdm::ChainKind::kB : jdm::ChainKind::kDirect;
    opt.steps = a.steps;
    opt.burnin = a.burnin;
    opt.thin = a.thin;
    opt.seed = seed_given ? a.seed : std::random_device{}() * 0x100000000ULL + std::random_device{}();
    opt.max_lag = a.max_lag;

    if (!jdm::check_graphical(j).graphical && opt.chain == jdm::ChainKind::kB)
        throw DomainFailure("chain b needs a graphical matrix");
    std::optional<jdm::ConfigModel> model;
    try {
        model.emplace(jdm::build_model(j));
    } catch (const std::invalid_argument& e) {
        throw DomainFailure(e.what());
    }

    std::ostringstream samples;
    const auto stats = jdm::run_sampler(*model, opt, [&](const jdm::MultiGraphRealization& g) {
        if (a.out.empty()) return;
        if (samples.tellp() > 0) samples << '\n';
        samples << multigraph_text(g);
    });
    if (!a.out.empty()) emit(a.out, samples.str());

    json out = report("sample");
    out["chain"] = a.chain;
    out["seed"] = opt.seed;
    out["steps"] = a.steps;
    out["iterations"] = stats.steps;
    out["burnin"] = opt.burnin;
    out["thin"] = opt.thin;
    out["lazy"] = stats.lazy;
    out["no_op"] = stats.no_op;
    out["accepted"] = stats.accepted;
    out["rejected"] = stats.rejected;
    out["samples"] = stats.samples;
    out["simple_samples"] = stats.simple_samples;
    out["simple_rate"] = stats.samples ? static_cast<double>(stats.simple_samples) / stats.samples : 0.0;
    out["tracked_pair"] = {stats.tracked_pair.first, stats.tracked_pair.second};
    out["autocorrelation"] = {{"rho", stats.tracked_autocorrelation.rho},
                              {"integrated_time", stats.tracked_autocorrelation.integrated_time},
                              {"window", stats.tracked_autocorrelation.window}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_enumerate(const std::string& path, std::size_t bound, bool list) {
    const jdm::Jdm j = jdm::io::load_jdm(path);
    jdm::RealizationSpace space;
    try {
        space = jdm::enumerate_realizations(j, bound);
    } catch (const jdm::BoundExceeded& e) {
        throw DomainFailure(e.what());
    }
    json out = report("enumerate");
    out["realizations"] = space.size();
    if (space.empty()) {
        out["connected"] = nullptr;
        out["component_sizes"] = json::array();
        out["metagraph_edges"] = 0;
    } else {
        const auto census = jdm::metagraph_connected(space);
        out["connected"] = census.connected;
        out["component_sizes"] = census.component_sizes;
        out["metagraph_edges"] = census.edge_count;
    }
    if (list) {
        json graphs = json::array();
        for (std::size_t x = 0; x < space.size(); ++x) {
            json edges = json::array();
            for (const auto& e : space.graph(x).edges()) edges.push_back({e.u, e.v});
            graphs.push_back(edges);
        }
        out["graphs"] = graphs;
    }
    std::cout << out.dump(2) << '\n';
    return space.empty() ? 1 : 0;
}

int cmd_census(const std::string& path, std::uint64_t bound) {
    const jdm::Jdm j = jdm::io::load_jdm(path);
    jdm::FiberCensus census;
    try {
        census = jdm::enumerate_configurations(jdm::build_model(j), bound);
    } catch (const std::invalid_argument& e) {
        throw DomainFailure(e.what());
    } catch (const jdm::BoundExceeded& e) {
        throw DomainFailure(e.what());
    }
    json out = report("census");
    out["total"] = census.total;
    json fibers = json::array();
    for (const auto& f : census.fibers)
        fibers.push_back({{"edges", multigraph_json(f.graph)}, {"count", f.count}, {"simple", f.graph.is_simple()}});
    out["fibers"] = fibers;
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint degree matrix toolkit"};
    app.require_subcommand(1);

    std::string input, second, out_path, trace_path;
    bool as_json = false, verify = false, list = false;
    std::size_t bound = 8;
    std::uint64_t census_bound = 3628800;
    SampleArgs sa;

    auto* check = app.add_subcommand("check", "Test whether a JDM is graphical");
    check->add_option("jdm", input, "JDM file")->required();
    check->add_flag("--json", as_json, "Machine-readable report");

    auto* construct = app.add_subcommand("construct", "Build a realization of a graphical JDM");
    construct->add_option("jdm", input, "JDM file")->required();
    construct->add_option("-o,--out", out_path, "Output graph file");

    auto* extract = app.add_subcommand("extract", "Print the JDM of a graph");
    extract->add_option("graph", input, "Graph file")->required();
    extract->add_option("-o,--out", out_path, "Output JDM file");

    auto* bal = app.add_subcommand("balance", "Balance a realization by RSOs");
    bal->add_option("graph", input, "Graph file")->required();
    bal->add_option("-o,--out", out_path, "Output graph file");
    bal->add_option("--trace", trace_path, "Write the RSO trace here");

    auto* path = app.add_subcommand("path", "RSO sequence between two realizations");
    path->add_option("from", input, "Source graph file")->required();
    path->add_option("to", second, "Target graph file")->required();
    path->add_option("--trace", trace_path, "Write the RSO trace here");
    path->add_flag("--verify", verify, "Replay the trace before reporting");

    auto* sample = app.add_subcommand("sample", "Run a configuration-model sampler");
    sample->add_option("jdm", input, "JDM file")->required();
    sample->add_option("--chain", sa.chain, "a, b or direct")->check(CLI::IsMember({"a", "b", "direct"}));
    sample->add_option("--steps", sa.steps, "Iterations after burn-in");
    sample->add_option("--burnin", sa.burnin, "Iterations discarded first");
    sample->add_option("--thin", sa.thin, "Report every N-th state")->check(CLI::PositiveNumber);
    auto* seed_opt = sample->add_option("--seed", sa.seed, "RNG seed");
    sample->add_flag("--entropy", sa.entropy, "Seed from the system entropy source");
    sample->add_option("--max-lag", sa.max_lag, "Largest autocorrelation lag");
    sample->add_option("--out", sa.out, "Write sampled graphs here");

    auto* enumerate = app.add_subcommand("enumerate", "Enumerate realizations and test RSO connectivity");
    enumerate->add_option("jdm", input, "JDM file")->required();
    enumerate->add_option("--bound", bound, "Largest vertex count")->check(CLI::Range(0, 11));
    enumerate->add_flag("--list", list, "Include every realization");

    auto* census = app.add_subcommand("census", "Group all configurations by multigraph");
    census->add_option("jdm", input, "JDM file")->required();
    census->add_option("--bound", census_bound, "Largest matching count per component");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check) return cmd_check(input, as_json);
        if (*construct) return cmd_construct(input, out_path);
        if (*extract) return cmd_extract(input, out_path);
        if (*bal) return cmd_balance(input, out_path, trace_path);
        if (*path) return cmd_path(input, second, trace_path, verify);
        if (*sample) return cmd_sample(input, sa, seed_opt->count() > 0);
        if (*enumerate) return cmd_enumerate(input, bound, list);
        if (*census) return cmd_census(input, census_bound);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const jdm::io::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
