#include "clusterlens/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "clusterlens/contrast.hpp"
#include "clusterlens/errors.hpp"

namespace clusterlens {

Dataset synthetic_dataset(std::size_t samples, std::size_t features, std::size_t clusters, std::uint64_t seed) {
    if (clusters < 2 || samples < 2 * clusters || features == 0) {
        throw ArgumentError("synthetic data needs at least 2 clusters of 2 samples and 1 feature");
    }
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> shift(-1.0, 1.0);

    std::vector<double> shifts(clusters * features);
    for (auto& s : shifts) {
        s = shift(engine);
    }

    std::vector<std::string> labels(samples);
    std::vector<Point2> coords(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        labels[i] = "c" + std::to_string(i % clusters);
        coords[i] = {noise(engine), noise(engine)};
    }

    std::vector<double> values(samples * features);
    for (std::size_t f = 0; f < features; ++f) {
        for (std::size_t i = 0; i < samples; ++i) {
            values[f * samples + i] = noise(engine) + shifts[(i % clusters) * features + f];
        }
    }

    std::vector<std::string> names(features);
    for (std::size_t f = 0; f < features; ++f) {
        names[f] = "f" + std::to_string(f);
    }
    return Dataset(std::move(names), std::move(values), std::move(coords), labels);
}

std::vector<BenchPoint> run_bench(const BenchConfig& config) {
    if (config.repetitions == 0) {
        throw ArgumentError("bench needs at least one repetition");
    }
    ContrastOptions options;
    options.threads = static_cast<unsigned>(config.threads);

    std::vector<BenchPoint> out;
    for (auto n : config.samples) {
        for (auto m : config.features) {
            const auto data = synthetic_dataset(n, m, config.clusters, config.seed);
            std::vector<double> times;
            for (std::size_t r = 0; r < config.repetitions; ++r) {
                const auto start = std::chrono::steady_clock::now();
                const auto matrix = full_matrix(data, options);
                const auto stop = std::chrono::steady_clock::now();
                if (matrix.scores.empty()) {
                    throw Error("empty contrast matrix");
                }
                times.push_back(std::chrono::duration<double>(stop - start).count());
            }
            std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
            out.push_back({n, m, config.clusters, times[times.size() / 2]});
        }
    }
    return out;
}

LinearFit fit_linear(const std::vector<BenchPoint>& points) {
    if (points.size() < 2) {
        throw ArgumentError("a fit needs at least two points");
    }
    double sxy = 0;
    double sxx = 0;
    double mean_y = 0;
    for (const auto& p : points) {
        const double x = static_cast<double>(p.samples) * static_cast<double>(p.features) * static_cast<double>(p.clusters);
        sxy += x * p.seconds;
        sxx += x * x;
        mean_y += p.seconds;
    }
    mean_y /= static_cast<double>(points.size());

    LinearFit fit;
    fit.slope = sxy / sxx;
    double ss_res = 0;
    double ss_tot = 0;
    for (const auto& p : points) {
        const double x = static_cast<double>(p.samples) * static_cast<double>(p.features) * static_cast<double>(p.clusters);
        ss_res += std::pow(p.seconds - fit.slope * x, 2);
        ss_tot += std::pow(p.seconds - mean_y, 2);
    }
    fit.r_squared = ss_tot > 0 ? 1 - ss_res / ss_tot : 1.0;
    return fit;
}

void write_bench_csv(const std::vector<BenchPoint>& points, std::ostream& out) {
    out << "n,m,k_clusters,seconds\n";
    for (const auto& p : points) {
        out << p.samples << ',' << p.features << ',' << p.clusters << ',' << p.seconds << '\n';
    }
}

namespace {

std::size_t parse_size(std::string_view text) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
        throw ArgumentError("expected a positive integer, got '" + std::string(text) + "'");
    }
    return value;
}

}

std::vector<std::size_t> parse_size_list(std::string_view text, std::size_t steps) {
    std::vector<std::size_t> out;
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        const auto lo = parse_size(text.substr(0, colon));
        const auto hi = parse_size(text.substr(colon + 1));
        if (hi < lo || steps < 1) {
            throw ArgumentError("range must be 'low:high' with low <= high");
        }
        if (steps == 1 || lo == hi) {
            out.push_back(lo);
            if (hi != lo) {
                out.push_back(hi);
            }
            return out;
        }
        const double ratio = std::pow(static_cast<double>(hi) / static_cast<double>(lo), 1.0 / static_cast<double>(steps - 1));
        for (std::size_t i = 0; i < steps; ++i) {
            auto value = static_cast<std::size_t>(std::llround(static_cast<double>(lo) * std::pow(ratio, static_cast<double>(i))));
            value = std::clamp(value, lo, hi);
            if (i + 1 == steps) {
                value = hi;
            }
            if (out.empty() || value > out.back()) {
                out.push_back(value);
            }
        }
        return out;
    }

    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        out.push_back(parse_size(text.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

}
