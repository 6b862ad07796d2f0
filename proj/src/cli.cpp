#include "clusterlens/cli.hpp"

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "clusterlens/bench.hpp"
#include "clusterlens/errors.hpp"
#include "clusterlens/histogram.hpp"
#include "clusterlens/payloads.hpp"
#include "clusterlens/service.hpp"

namespace clusterlens::cli {

namespace {

struct Common {
    std::string input;
    std::string schema;
    std::string out;
    unsigned threads = 1;
};

void add_common(CLI::App& sub, Common& common) {
    sub.add_option("--input", common.input, "CSV or TSV data file")->required();
    sub.add_option("--schema", common.schema, "JSON schema describing the columns")->required();
    sub.add_option("--out", common.out, "Write output here instead of stdout");
    sub.add_option("--threads", common.threads, "Worker threads (0 uses all cores)");
}

void add_mode(CLI::App& sub, std::string& mode) {
    sub.add_option("--mode", mode, "Ranking mode")->check(CLI::IsMember({"signed", "absolute", "auto"}));
}

Analysis load(const Common& common) {
    ContrastOptions options;
    options.threads = common.threads;
    return Analysis(load_dataset(common.input, load_schema(common.schema)), options);
}

void emit(const std::string& payload, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << payload << '\n';
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot write " + path);
    }
    file << payload;
}

}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Contrastive cluster explanations: per-cluster feature statistics, grids and topics"};
    app.name("clusterlens");
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    Common common;
    std::string mode = "auto";

    auto* score = app.add_subcommand("score", "Rank features of one cluster against the rest");
    std::string cluster;
    add_common(*score, common);
    add_mode(*score, mode);
    score->add_option("--cluster", cluster, "Cluster label")->required();

    auto* pair = app.add_subcommand("pair", "Compare two clusters directly");
    std::string first;
    std::string second;
    add_common(*pair, common);
    add_mode(*pair, mode);
    pair->add_option("--first", first, "First cluster label")->required();
    pair->add_option("--second", second, "Second cluster label")->required();

    auto* matrix = app.add_subcommand("matrix", "Every cluster against its complement, for every feature");
    add_common(*matrix, common);

    auto* topics = app.add_subcommand("topics", "Top signed terms per cluster and their coherence");
    std::size_t terms = 10;
    add_common(*topics, common);
    topics->add_option("--terms", terms, "Terms per topic")->check(CLI::PositiveNumber);

    auto* coherence = app.add_subcommand("coherence", "Mean coherence over a range of term counts");
    std::string sweep = "2:30";
    add_common(*coherence, common);
    coherence->add_option("--terms-sweep", sweep, "Term count range low:high");

    auto* grid = app.add_subcommand("grid", "Per-cell feature segments over the layout");
    GridRequest grid_request;
    std::vector<std::string> grid_features;
    add_common(*grid, common);
    grid->add_option("--features", grid_features, "Selected features (names or indices)")->required()->delimiter(',');
    grid->add_option("--cell-size", grid_request.cell_size, "Cell edge in pixels");
    grid->add_option("--width", grid_request.width, "Viewport width in pixels");
    grid->add_option("--height", grid_request.height, "Viewport height in pixels");

    auto* histograms = app.add_subcommand("histograms", "In-cluster and out-of-cluster histograms");
    std::string hist_cluster;
    std::vector<std::string> hist_features;
    std::size_t bins = kDefaultBins;
    add_common(*histograms, common);
    histograms->add_option("--cluster", hist_cluster, "Cluster label")->required();
    histograms->add_option("--features", hist_features, "Features (default: the preselected ones)")->delimiter(',');
    histograms->add_option("--bins", bins, "Bin count")->check(CLI::PositiveNumber);

    auto* bench = app.add_subcommand("bench", "Time the contrast matrix on synthetic data");
    std::string bench_samples = "2000,10000,40000";
    std::string bench_features = "10,100,500,2000";
    std::size_t steps = 4;
    BenchConfig bench_config;
    std::string bench_out;
    bench->add_option("--samples", bench_samples, "Sample counts: list or low:high");
    bench->add_option("--features", bench_features, "Feature counts: list or low:high");
    bench->add_option("--steps", steps, "Points per low:high range")->check(CLI::PositiveNumber);
    bench->add_option("--clusters", bench_config.clusters, "Cluster count")->check(CLI::Range(2, 1000));
    bench->add_option("--seed", bench_config.seed, "Random seed");
    bench->add_option("--repetitions", bench_config.repetitions, "Repetitions per point (median reported)")->check(CLI::PositiveNumber);
    bench->add_option("--threads", bench_config.threads, "Worker threads (0 uses all cores)");
    bench->add_option("--out", bench_out, "Write the CSV here instead of stdout");

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    std::string host = "127.0.0.1";
    int port = -1;
    long ttl = 3600;
    serve_cmd->add_option("--host", host, "Listen address");
    serve_cmd->add_option("--port", port, "Listen port (default: CLUSTERLENS_PORT or 8080)")->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--ttl", ttl, "Idle session lifetime in seconds")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (score->parsed()) {
            auto analysis = load(common);
            emit(analysis.compute_contrast_json(cluster, mode), common.out, out);
        } else if (pair->parsed()) {
            auto analysis = load(common);
            emit(analysis.pair_json(first, second, mode), common.out, out);
        } else if (matrix->parsed()) {
            emit(load(common).matrix_json(), common.out, out);
        } else if (topics->parsed()) {
            emit(load(common).topics_json(terms), common.out, out);
        } else if (coherence->parsed()) {
            const auto range = parse_size_list(sweep, 2);
            if (sweep.find(':') == std::string::npos || range.empty()) {
                throw ArgumentError("--terms-sweep must be low:high");
            }
            emit(load(common).coherence_sweep_json(range.front(), range.back()), common.out, out);
        } else if (grid->parsed()) {
            auto analysis = load(common);
            for (const auto& f : grid_features) {
                grid_request.selected.push_back(analysis.resolve_feature(f));
            }
            emit(analysis.grid_json(grid_request), common.out, out);
        } else if (histograms->parsed()) {
            emit(load(common).histograms_json(hist_cluster, hist_features, bins), common.out, out);
        } else if (bench->parsed()) {
            bench_config.samples = parse_size_list(bench_samples, steps);
            bench_config.features = parse_size_list(bench_features, steps);
            const auto points = run_bench(bench_config);
            if (bench_out.empty()) {
                write_bench_csv(points, out);
            } else {
                std::ofstream file(bench_out);
                if (!file) {
                    throw IoError("cannot write " + bench_out);
                }
                write_bench_csv(points, file);
            }
            if (points.size() >= 2) {
                const auto fit = fit_linear(points);
                err << "seconds ~ " << fit.slope << " * n*m*k  (R^2 = " << fit.r_squared << ")\n";
            }
        } else if (serve_cmd->parsed()) {
            Service service{std::chrono::seconds(ttl)};
            const int chosen = port > 0 ? port : port_from_env(8080);
            err << "listening on " << host << ':' << chosen << '\n';
            serve(service, host, chosen);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << " (row " << e.row() << ", column " << e.column() << ")\n";
        return kExitDataError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitOk;
}

}
