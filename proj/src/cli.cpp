#include "pathlaw/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pathlaw/dist.hpp"
#include "pathlaw/epidemics.hpp"
#include "pathlaw/error.hpp"
#include "pathlaw/fit.hpp"
#include "pathlaw/graph.hpp"
#include "pathlaw/io.hpp"
#include "pathlaw/paths.hpp"

namespace pathlaw::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

// Options for all subcommands; each subcommand reads the ones it declares.
struct RunConfig {
    std::string in;
    std::string out;
    std::string model;
    std::size_t n = 0;
    std::optional<double> pi;
    std::optional<std::size_t> m;
    std::optional<double> gamma;
    std::optional<double> mu;
    std::optional<double> xi;
    std::optional<std::uint64_t> seed;
    std::size_t replicates = 1;
    std::optional<std::size_t> sample;
    std::optional<std::uint32_t> source;
    bool lcc = false;
    double infect = 1.0;
    double recover = 1.0;
    std::string family = "all";
    std::string curve;
    std::string dag;
    std::string name;
    std::string group;
    unsigned threads = 1;
};

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw ParseError("cannot write '" + path.string() + "'");
    f << content;
    if (!f)
        throw ParseError("failed writing '" + path.string() + "'");
}

void write_json(const fs::path& path, const json& j) {
    write_file(path, j.dump(2) + "\n");
}

json read_json(const fs::path& path) {
    std::ifstream f(path);
    if (!f)
        throw ParseError("cannot open '" + path.string() + "'");
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw ParseError(path.filename().string() + ": " + e.what());
    }
}

fs::path sidecar(const fs::path& p) {
    return fs::path(p.string() + ".json");
}

// out.edges -> out_rep003.edges when there is more than one replicate.
fs::path replicate_path(const fs::path& out, std::size_t index, std::size_t count) {
    if (count <= 1)
        return out;
    std::ostringstream name;
    name << out.stem().string() << "_rep" << std::setw(3) << std::setfill('0') << index << out.extension().string();
    return out.parent_path() / name.str();
}

std::uint64_t require_seed(const RunConfig& c, const char* what) {
    if (!c.seed)
        throw ParameterError(std::string(what) + " is randomized and requires --seed");
    return *c.seed;
}

GraphModelSpec model_spec(const RunConfig& c, std::uint64_t seed) {
    GraphModelSpec spec;
    spec.n = c.n;
    spec.seed = seed;
    const auto need = [&](const auto& opt, const char* flag) {
        if (!opt)
            throw ParameterError("--model " + c.model + " requires " + flag);
        return *opt;
    };
    if (c.model == "er")
        spec.model = ErdosRenyi{need(c.pi, "--pi")};
    else if (c.model == "ba")
        spec.model = BarabasiAlbert{need(c.m, "--m")};
    else if (c.model == "pl")
        spec.model = PowerLaw{need(c.gamma, "--gamma")};
    else if (c.model == "ln")
        spec.model = LogNormalDegrees{need(c.mu, "--mu"), need(c.xi, "--xi")};
    else
        throw ParameterError("unknown model '" + c.model + "'");
    validate(spec);
    return spec;
}

json model_json(const GraphModelSpec& spec) {
    json params = std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ErdosRenyi>)
                return {{"pi", p.pi}};
            else if constexpr (std::is_same_v<T, BarabasiAlbert>)
                return {{"m", p.m}};
            else if constexpr (std::is_same_v<T, PowerLaw>)
                return {{"gamma", p.gamma}};
            else
                return {{"mu", p.mu}, {"xi", p.xi}};
        },
        spec.model);
    return {{"model", model_name(spec)}, {"params", params}, {"n", spec.n}};
}

struct LoadedGraph {
    Graph graph;
    json meta;
};

LoadedGraph load_graph(const RunConfig& c, std::ostream& err, bool require_connected) {
    auto load = load_edge_list_file(c.in);
    if (load.duplicates_dropped || load.self_loops_dropped)
        err << "warning: dropped " << load.duplicates_dropped << " duplicate edge(s) and " << load.self_loops_dropped
            << " self-loop(s)\n";
    LoadedGraph g{std::move(load.graph), json::object()};
    g.meta["input"] = fs::path(c.in).filename().string();
    g.meta["symmetrized"] = true;
    g.meta["duplicates_dropped"] = load.duplicates_dropped;
    g.meta["self_loops_dropped"] = load.self_loops_dropped;
    g.meta["lcc"] = c.lcc;
    if (c.lcc)
        g.graph = largest_connected_component(g.graph);
    else if (require_connected && !is_connected(g.graph))
        throw ParseError("graph is disconnected; rerun with --lcc to use its largest connected component");
    g.meta["nodes"] = g.graph.node_count();
    g.meta["edges"] = g.graph.edge_count();
    return g;
}

// ---------------------------------------------------------------------------

int cmd_generate(const RunConfig& c, std::ostream& out) {
    const std::uint64_t master = require_seed(c, "generate");
    if (c.replicates < 1)
        throw ParameterError("--replicates must be >= 1");
    model_spec(c, master); // validate before writing anything
    for (std::size_t r = 0; r < c.replicates; ++r) {
        const std::uint64_t seed = derive_seed(master, r);
        const auto spec = model_spec(c, seed);
        Graph g = generate(spec);
        if (c.lcc)
            g = largest_connected_component(g);
        std::ostringstream edges;
        write_edge_list(edges, g);
        const auto path = replicate_path(c.out, r, c.replicates);
        write_file(path, edges.str());

        json meta = model_json(spec);
        meta["master_seed"] = master;
        meta["replicate"] = r;
        meta["seed"] = seed;
        meta["lcc"] = c.lcc;
        meta["nodes"] = g.node_count();
        meta["edges"] = g.edge_count();
        write_json(sidecar(path), meta);
        out << path.string() << ": " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
    }
    return ok;
}

int cmd_histogram(const RunConfig& c, std::ostream& out, std::ostream& err) {
    auto [g, meta] = load_graph(c, err, true);
    DistanceHistogram h;
    if (c.source) {
        h = bfs_histogram_from(g, *c.source);
        meta["source_mode"] = "single";
        meta["source"] = *c.source;
    } else if (c.sample) {
        const std::uint64_t seed = require_seed(c, "histogram --sample");
        h = aggregate_histogram(g, SampleSources{*c.sample, seed}, {.threads = c.threads});
        meta["source_mode"] = "sample";
        meta["seed"] = seed;
    } else {
        h = aggregate_histogram(g, AllSources{}, {.threads = c.threads});
        meta["source_mode"] = "all";
    }
    const auto stats = histogram_stats(h);
    meta["sources"] = h.sources();
    meta["reachable_pairs"] = h.reachable_pairs();
    meta["diameter"] = stats.diameter;
    meta["mean"] = stats.mean;

    std::ostringstream csv;
    io::write_histogram_csv(csv, h);
    write_file(c.out, csv.str());
    write_json(sidecar(c.out), meta);
    out << "mean " << io::format_double(stats.mean) << ", diameter " << stats.diameter << '\n';
    return ok;
}

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const std::uint64_t master = require_seed(c, "simulate");
    if (c.replicates < 1)
        throw ParameterError("--replicates must be >= 1");
    auto [g, meta] = load_graph(c, err, false);
    validate(SirParams{c.infect, c.recover, 0});
    if (c.source && *c.source >= g.node_count())
        throw IndexError("--source out of range");

    std::vector<OutbreakTrace> traces;
    json runs = json::array();
    for (std::size_t r = 0; r < c.replicates; ++r) {
        // Replicate r: derive_seed(master, r) drives the source draw (when no
        // --source is given) and then seeds the cascade.
        Rng setup(derive_seed(master, r));
        const NodeId source = c.source ? *c.source : static_cast<NodeId>(setup.below(g.node_count()));
        const std::uint64_t seed = setup.next();
        auto outbreak = simulate_sir(g, source, SirParams{c.infect, c.recover, seed});
        validate_causal(outbreak.causal);
        const auto depth = nilpotency_index(outbreak.causal);
        runs.push_back({{"replicate", r},
                        {"seed", seed},
                        {"source", source},
                        {"final_size", outbreak.trace.final_size()},
                        {"nilpotency_index", depth}});
        if (!c.dag.empty()) {
            const fs::path dag_path = c.dag + "_rep" + std::to_string(r) + ".edges";
            std::ostringstream edges;
            write_edge_list(edges, Graph(outbreak.causal.n, outbreak.causal.edges, true));
            write_file(dag_path, edges.str());
            write_json(sidecar(dag_path), {{"directed", true},
                                           {"source", source},
                                           {"nodes", outbreak.causal.n},
                                           {"edges", outbreak.causal.edges.size()},
                                           {"seed", seed}});
        }
        traces.push_back(std::move(outbreak.trace));
    }

    std::ostringstream csv;
    if (c.replicates == 1)
        io::write_trace_csv(csv, traces.front());
    else
        io::write_ensemble_csv(csv, traces, average_outbreak(traces));
    write_file(c.out, csv.str());

    meta["infect"] = c.infect;
    meta["recover"] = c.recover;
    meta["master_seed"] = master;
    meta["replicates"] = runs;
    write_json(sidecar(c.out), meta);
    out << c.replicates << " outbreak(s) written to " << c.out << '\n';
    return ok;
}

int cmd_fit(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::ifstream in(c.in);
    if (!in)
        throw ParseError("cannot open '" + c.in + "'");
    const auto counts = io::read_counts_csv(in);

    std::vector<Family> families;
    if (c.family == "all") {
        families.assign(std::begin(all_families), std::end(all_families));
    } else if (const auto f = parse_family(c.family)) {
        families.push_back(*f);
    } else {
        throw ParameterError("unknown family '" + c.family + "'");
    }

    double total = 0.0, weighted = 0.0;
    std::size_t K = 0;
    for (std::size_t t = 0; t < counts.size(); ++t) {
        total += counts[t];
        weighted += static_cast<double>(t) * counts[t];
        if (counts[t] > 0)
            K = t;
    }
    if (!(total > 0.0))
        throw EmptyInputError("histogram has no counts");

    json doc;
    doc["name"] = c.name.empty() ? fs::path(c.in).stem().string() : c.name;
    if (!c.group.empty())
        doc["group"] = c.group;
    doc["input"] = fs::path(c.in).filename().string();
    doc["K"] = K;
    doc["empirical"] = {{"mean", weighted / total}, {"total", total}};
    doc["fits"] = json::object();

    FitAllResult results;
    if (families.size() == 4) {
        results = fit_all(counts);
    } else {
        FamilyOutcome o{families.front(), std::nullopt, {}};
        try {
            o.result = fit(counts, families.front());
        } catch (const UnderdeterminedError& e) {
            o.error = e.what();
        }
        results.outcomes.push_back(o);
        if (o.result)
            results.best = o.family;
    }

    std::size_t converged = 0;
    bool underdetermined = false;
    for (const auto& o : results.outcomes) {
        const std::string name(family_name(o.family));
        if (o.result) {
            doc["fits"][name] = io::to_json(*o.result);
            converged += o.result->converged ? 1 : 0;
            if (!o.result->converged)
                err << "warning: " << name << " fit did not converge\n";
        } else {
            doc["fits"][name] = {{"error", o.error}};
            err << name << ": " << o.error << '\n';
            underdetermined = underdetermined || o.error.find("nonempty bins") != std::string::npos;
        }
    }
    if (results.best)
        doc["best"] = family_name(*results.best);
    write_json(c.out, doc);

    if (!c.curve.empty()) {
        std::ostringstream csv;
        csv << "t,empirical";
        std::vector<std::vector<double>> columns;
        for (const auto& o : results.outcomes)
            if (o.result) {
                csv << ',' << family_name(o.family);
                columns.push_back(discretize(o.result->params, static_cast<std::int64_t>(K)).masses);
            }
        csv << '\n';
        for (std::size_t t = 0; t <= K; ++t) {
            csv << t << ',' << io::format_double(t < counts.size() ? counts[t] / total : 0.0);
            for (const auto& col : columns)
                csv << ',' << io::format_double(col[t]);
            csv << '\n';
        }
        write_file(c.curve, csv.str());
    }

    if (results.best)
        out << "best: " << family_name(*results.best) << '\n';
    if (converged > 0)
        return ok;
    return underdetermined ? data_error : numeric_error;
}

std::vector<fs::path> json_files(const std::string& dir) {
    if (!fs::is_directory(dir))
        throw ParseError("'" + dir + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

struct LoadedFit {
    std::string name;
    std::string group;
    double empirical_mean;
    std::map<Family, FitResult> fits;
};

std::optional<LoadedFit> load_fit_document(const fs::path& path, std::ostream& err) {
    const json doc = read_json(path);
    if (!doc.contains("fits") || !doc["fits"].is_object()) {
        err << "warning: " << path.filename().string() << " is not a fit document, skipped\n";
        return std::nullopt;
    }
    LoadedFit f;
    f.name = doc.value("name", path.stem().string());
    f.group = doc.value("group", std::string("ungrouped"));
    f.empirical_mean = doc.contains("empirical") ? doc["empirical"].value("mean", 0.0) : 0.0;
    for (const auto& [key, value] : doc["fits"].items()) {
        const auto family = parse_family(key);
        if (!family || value.contains("error"))
            continue;
        f.fits.emplace(*family, io::fit_result_from_json(value));
    }
    return f;
}

int cmd_embed(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::vector<NamedFit> fits;
    std::size_t skipped = 0;
    for (const auto& path : json_files(c.in)) {
        const auto doc = load_fit_document(path, err);
        if (!doc || !doc->fits.contains(Family::gengamma)) {
            if (doc)
                err << "warning: " << path.filename().string() << " has no gengamma fit, skipped\n";
            ++skipped;
            continue;
        }
        fits.push_back({doc->name, doc->fits.at(Family::gengamma)});
    }
    const auto points = embed(fits);
    std::ostringstream csv;
    io::write_embedding_csv(csv, points);
    write_file(c.out, csv.str());
    if (points.empty())
        err << "warning: no gengamma fits found in '" << c.in << "'\n";
    if (skipped)
        err << "warning: " << skipped << " file(s) skipped\n";
    out << points.size() << " point(s), " << skipped << " skipped\n";
    return ok;
}

// Column order of the report tables.
constexpr Family report_order[] = {Family::weibull, Family::gamma, Family::lognormal, Family::gengamma};

int cmd_report(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::vector<LoadedFit> docs;
    for (const auto& path : json_files(c.in))
        if (auto doc = load_fit_document(path, err); doc && !doc->fits.empty())
            docs.push_back(std::move(*doc));
    if (docs.empty())
        throw EmptyInputError("no fit documents in '" + c.in + "'");

    struct Accumulator {
        std::map<Family, double> hellinger_sum, squared_error_sum;
        std::map<Family, std::size_t> n;
    };
    std::map<std::string, Accumulator> groups;
    Accumulator overall;

    std::ostringstream csv;
    csv << "table,row,group,weibull,gamma,lognormal,gengamma\n";
    const auto cell = [](const std::map<Family, FitResult>& fits, Family f, auto value) {
        return fits.contains(f) ? io::format_double(value(fits.at(f))) : std::string("nan");
    };

    out << "Hellinger distance\n";
    out << std::left << std::setw(28) << "network" << std::right;
    for (Family f : report_order)
        out << std::setw(12) << family_name(f);
    out << '\n';
    for (const auto& d : docs) {
        out << std::left << std::setw(28) << d.name << std::right << std::fixed << std::setprecision(4);
        csv << "hellinger," << d.name << ',' << d.group;
        for (Family f : report_order) {
            csv << ',' << cell(d.fits, f, [](const FitResult& r) { return r.hellinger; });
            if (d.fits.contains(f))
                out << std::setw(12) << d.fits.at(f).hellinger;
            else
                out << std::setw(12) << "-";
            if (!d.fits.contains(f))
                continue;
            const auto& r = d.fits.at(f);
            const double e = predict_mean(r).value - d.empirical_mean;
            for (auto* acc : {&groups[d.group], &overall}) {
                acc->hellinger_sum[f] += r.hellinger;
                acc->squared_error_sum[f] += e * e;
                acc->n[f] += 1;
            }
        }
        csv << '\n';
        out << '\n';
    }

    const auto summary = [&](const std::string& label, const std::string& key, Accumulator& acc,
                             std::map<Family, double>& sums) {
        out << std::left << std::setw(28) << label << std::right;
        csv << key << ',' << label << ',';
        for (Family f : report_order) {
            if (acc.n[f] == 0) {
                out << std::setw(12) << "-";
                csv << ",nan";
                continue;
            }
            const double v = sums[f] / static_cast<double>(acc.n[f]);
            out << std::setw(12) << v;
            csv << ',' << io::format_double(v);
        }
        out << '\n';
        csv << '\n';
    };
    out << std::string(76, '-') << "\nmean by group\n";
    for (auto& [name, acc] : groups)
        summary(name, "hellinger_mean", acc, acc.hellinger_sum);
    summary("overall", "hellinger_mean", overall, overall.hellinger_sum);

    out << "\nMean squared error of predicted mean path length\n" << std::scientific << std::setprecision(3);
    out << std::left << std::setw(28) << "group" << std::right;
    for (Family f : report_order)
        out << std::setw(12) << family_name(f);
    out << '\n';
    for (auto& [name, acc] : groups)
        summary(name, "mse", acc, acc.squared_error_sum);
    summary("overall", "mse", overall, overall.squared_error_sum);

    if (!c.out.empty())
        write_file(c.out, csv.str());
    return ok;
}

int translate(const std::exception_ptr& ep, std::ostream& err) {
    try {
        std::rethrow_exception(ep);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const IndexError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return numeric_error;
    } catch (const UnderdeterminedError& e) {
        err << "error: " << e.what() << '\n';
        return data_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return data_error;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Shortest-path and outbreak distributions: generate, measure, fit", "pathlaw"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "Generate synthetic graphs as edge lists");
    gen->add_option("--model", c.model, "Ensemble")->required()->check(CLI::IsMember({"er", "ba", "pl", "ln"}));
    gen->add_option("--n", c.n, "Node count")->required();
    gen->add_option("--pi", c.pi, "ER edge probability");
    gen->add_option("--m", c.m, "BA attachment parameter");
    gen->add_option("--gamma", c.gamma, "PL degree exponent");
    gen->add_option("--mu", c.mu, "LN degree log-location");
    gen->add_option("--xi", c.xi, "LN degree log-scale");
    gen->add_option("--seed", c.seed, "Master seed")->required();
    gen->add_option("--replicates", c.replicates, "Number of instances");
    gen->add_flag("--lcc", c.lcc, "Keep only the largest connected component");
    gen->add_option("--out", c.out, "Output edge list")->required();

    auto* hist = app.add_subcommand("histogram", "Shortest-path-length histogram of an edge list");
    hist->add_option("--in", c.in, "Edge list")->required();
    hist->add_option("--out", c.out, "Histogram CSV")->required();
    hist->add_option("--sample", c.sample, "Number of BFS sources drawn without replacement");
    hist->add_option("--seed", c.seed, "Seed for --sample");
    hist->add_option("--source", c.source, "Single BFS source");
    hist->add_flag("--lcc", c.lcc, "Use the largest connected component");
    hist->add_option("--threads", c.threads, "BFS worker threads (0 = all cores)");

    auto* sim = app.add_subcommand("simulate", "Discrete-time SIR outbreaks");
    sim->add_option("--in", c.in, "Edge list")->required();
    sim->add_option("--out", c.out, "Trace CSV")->required();
    sim->add_option("--infect", c.infect, "Infection probability per contact and step");
    sim->add_option("--recover", c.recover, "Recovery probability per step");
    sim->add_option("--seed", c.seed, "Master seed")->required();
    sim->add_option("--replicates", c.replicates, "Number of outbreaks");
    sim->add_option("--source", c.source, "Fixed source node (default: random per replicate)");
    sim->add_option("--dag", c.dag, "Write causal DAGs to <prefix>_rep<i>.edges");
    sim->add_flag("--lcc", c.lcc, "Use the largest connected component");

    auto* fitc = app.add_subcommand("fit", "Fit distribution families to a histogram or trace CSV");
    fitc->add_option("--in", c.in, "Histogram or trace CSV")->required();
    fitc->add_option("--out", c.out, "Fit JSON")->required();
    fitc->add_option("--family", c.family, "Family")->check(
        CLI::IsMember({"gamma", "weibull", "lognormal", "gengamma", "all"}));
    fitc->add_option("--curve", c.curve, "Also write fitted pmfs as CSV");
    fitc->add_option("--name", c.name, "Network name (default: input file stem)");
    fitc->add_option("--group", c.group, "Group label used by report");

    auto* emb = app.add_subcommand("embed", "Collect GenGamma parameters into an embedding CSV");
    emb->add_option("--in", c.in, "Directory of fit JSON files")->required();
    emb->add_option("--out", c.out, "Embedding CSV")->required();

    auto* rep = app.add_subcommand("report", "Goodness-of-fit and mean-prediction tables");
    rep->add_option("--in", c.in, "Directory of fit JSON files")->required();
    rep->add_option("--out", c.out, "Summary CSV");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        if (*gen)
            return cmd_generate(c, out);
        if (*hist)
            return cmd_histogram(c, out, err);
        if (*sim)
            return cmd_simulate(c, out, err);
        if (*fitc)
            return cmd_fit(c, out, err);
        if (*emb)
            return cmd_embed(c, out, err);
        if (*rep)
            return cmd_report(c, out, err);
    } catch (...) {
        return translate(std::current_exception(), err);
    }
    return usage_error;
}

} // namespace pathlaw::cli
