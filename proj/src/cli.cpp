#include "pbm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbm/blocks1d.hpp"
#include "pbm/blocks2d.hpp"
#include "pbm/distributions.hpp"

namespace pbm::cli {

using nlohmann::json;

namespace {

const std::map<std::string, Dist> kDistNames{
    {"arcsine-mod", Dist::arcsine_mod},
    {"gauss-mix-2d", Dist::gauss_mix_2d},
    {"half-normal-zigg", Dist::half_normal_zigg},
};

std::vector<double> uniform_edges(double lo, double hi, std::size_t bins) {
    std::vector<double> edges(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    edges.back() = hi;
    return edges;
}

void normalize(std::vector<double>& probs) {
    double total = 0.0;
    for (double p : probs) total += p;
    for (double& p : probs) p /= total;
}

GofSetup arcsine_gof(std::size_t bins) {
    numeric::Histogram h(uniform_edges(0.0, 1.0, bins));
    std::vector<double> expected(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        const auto iv = h.bin_interval(i);
        expected[i] = dist::arcsine_mod_mass(iv.lo, iv.hi);
    }
    normalize(expected);
    return {std::move(h), std::move(expected)};
}

GofSetup gauss_mix_gof(std::size_t bins) {
    const Rect dom = dist::mix_domain();
    numeric::Histogram h(uniform_edges(dom.x.lo, dom.x.hi, bins), uniform_edges(dom.y.lo, dom.y.hi, bins));
    const std::size_t cells = std::max<std::size_t>(2, 2048 / bins);
    std::vector<double> expected(h.bin_count());
    for (std::size_t k = 0; k < expected.size(); ++k)
        expected[k] = numeric::quad_2d_grid(dist::gauss_mix_pdf, h.bin_rect(k), cells).value;
    normalize(expected);
    return {std::move(h), std::move(expected)};
}

// Equal-width bins on [0, 4] plus an overflow bin [4, inf).
GofSetup half_normal_gof(std::size_t bins) {
    auto edges = uniform_edges(0.0, 4.0, bins);
    edges.push_back(std::numeric_limits<double>::infinity());
    std::vector<double> expected(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        expected[i] = dist::half_normal_tail_mass(edges[i]) - dist::half_normal_tail_mass(edges[i + 1]);
    normalize(expected);
    return {numeric::Histogram(std::move(edges)), std::move(expected)};
}

int dim_of(Dist d) { return d == Dist::gauss_mix_2d ? 2 : 1; }

class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
            if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

json check_json(const CheckResult& c) {
    return {{"status", to_string(c.status)},
            {"probes", c.probes},
            {"violations", c.violations},
            {"estimate", c.estimate},
            {"detail", c.detail}};
}

json point_json(const Point& p) {
    if (p.dim() == 1) return p.x();
    return json::array({p.x(), p.y()});
}

}  // namespace

const char* to_string(Dist d) noexcept {
    switch (d) {
        case Dist::arcsine_mod: return "arcsine-mod";
        case Dist::gauss_mix_2d: return "gauss-mix-2d";
        case Dist::half_normal_zigg: return "half-normal-zigg";
    }
    return "unknown";
}

std::optional<Dist> parse_dist(const std::string& s) {
    const auto it = kDistNames.find(s);
    if (it == kDistNames.end()) return std::nullopt;
    return it->second;
}

Configuration make_configuration(Dist d, std::size_t layers) {
    switch (d) {
        case Dist::arcsine_mod:
            return {d, dist::arcsine_mod_density(), dist::arcsine_mod_blockset(), {}, arcsine_gof, 64};
        case Dist::gauss_mix_2d:
            return {d, dist::gauss_mix_density(), dist::gauss_mix_blockset(), {}, gauss_mix_gof, 16};
        case Dist::half_normal_zigg: {
            const auto hn = dist::half_normal_decreasing();
            const auto layout = build_ziggurat(hn, layers);
            ValidationOptions v;
            v.probe_bounds = std::vector<Interval>{{0.0, 2.0 * layout.r()}};
            return {d, dist::half_normal_density(), ziggurat_blockset(layout, hn), v, half_normal_gof, 40};
        }
    }
    throw std::invalid_argument("unknown distribution");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_samples_csv(std::ostream& os, const std::vector<Point>& points, int dim) {
    os << (dim == 1 ? "x\n" : "x1,x2\n");
    std::string line;
    for (const auto& p : points) {
        line = format_double(p.x());
        if (dim == 2) {
            line += ',';
            line += format_double(p.y());
        }
        line += '\n';
        os << line;
    }
}

void write_zigg_table(std::ostream& os, const RunConfig& config) {
    const auto hn = dist::half_normal_decreasing();
    const auto layout = build_ziggurat(hn, config.layers);
    os << "i,x,f_x,block_area\n";
    for (std::size_t i = 0; i < layout.layers; ++i) {
        const double area =
            i + 1 < layout.layers ? layout.rect_layer_area(i + 1) : layout.layer_area;
        os << i << ',' << format_double(layout.x[i]) << ',' << format_double(layout.f_at[i]) << ','
           << format_double(area) << '\n';
    }
}

int cmd_sample(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.threads != 1) {
        err << "error: sample runs a single sampler; --threads must be 1\n";
        return kUsage;
    }
    const Configuration cfg = make_configuration(config.dist, config.layers);
    PatternBlockSampler sampler(cfg.density, cfg.blockset, UniformSource(config.seed));
    const auto points = sampler.sample_many(config.n);

    OutputTarget target(config.out, out);
    if (config.format == Format::csv) {
        write_samples_csv(target.stream(), points, dim_of(config.dist));
    } else {
        json samples = json::array();
        for (const auto& p : points) samples.push_back(point_json(p));
        target.stream() << json{{"dist", to_string(config.dist)}, {"seed", config.seed},
                                {"samples", std::move(samples)}}
                                .dump()
                        << '\n';
    }
    target.stream().flush();

    err << json{{"attempts", sampler.attempts()},
                {"accepted", sampler.accepted()},
                {"empirical_rate", sampler.empirical_rate()},
                {"exact_rate", exact_adoption_rate(cfg.density, cfg.blockset)},
                {"seed", config.seed}}
               .dump()
        << '\n';
    return kOk;
}

int validate_configuration(const RunConfig& config, const Configuration& cfg, std::ostream& out) {
    const ValidationReport report = validate_blockset(cfg.blockset, cfg.density, cfg.validation);

    PatternBlockSampler sampler(cfg.density, cfg.blockset, UniformSource(config.seed));
    const auto points = sampler.sample_many(config.n);
    GofSetup gof = cfg.gof_setup(config.bins == 0 ? cfg.default_bins : config.bins);
    gof.histogram.add_all(points);
    const numeric::GofReport g = numeric::chi_square_gof(gof.histogram, gof.expected);
    const bool gof_ok = g.p_value > config.significance;
    const bool ok = report.all_passed() && gof_ok;

    const double exact = exact_adoption_rate(cfg.density, cfg.blockset);
    out << json{{"dist", to_string(cfg.dist)},
                {"seed", config.seed},
                {"n", config.n},
                {"validation",
                 {{"positivity", check_json(report.positivity)},
                  {"cover", check_json(report.cover)},
                  {"overlap", check_json(report.overlap)},
                  {"passed", report.all_passed()}}},
                {"gof",
                 {{"statistic", g.statistic},
                  {"dof", g.dof},
                  {"p_value", g.p_value},
                  {"bins_merged", g.bins_merged},
                  {"outside", g.outside},
                  {"significance", config.significance},
                  {"passed", gof_ok}}},
                {"rates",
                 {{"attempts", sampler.attempts()},
                  {"accepted", sampler.accepted()},
                  {"empirical", sampler.empirical_rate()},
                  {"exact", exact},
                  {"inverse_total_measure", 1.0 / cfg.blockset.total_measure()},
                  {"normalizer", cfg.density.normalizer()}}},
                {"passed", ok}}
               .dump(2)
        << '\n';
    return ok ? kOk : kCheckFailed;
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream&) {
    const Configuration cfg = make_configuration(config.dist, config.layers);
    OutputTarget target(config.out, out);
    return validate_configuration(config, cfg, target.stream());
}

int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream&) {
    const Configuration cfg = make_configuration(config.dist, config.layers);
    const std::size_t threads = std::max<std::size_t>(config.threads, 1);

    struct Tally {
        std::uint64_t attempts = 0;
        std::uint64_t accepted = 0;
        std::exception_ptr error;
    };
    std::vector<Tally> tallies(threads);
    const auto start = std::chrono::steady_clock::now();
    {
        std::vector<std::jthread> workers;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::uint64_t share = config.n / threads + (t < config.n % threads ? 1 : 0);
            workers.emplace_back([&cfg, &tally = tallies[t], share, seed = stream_seed(config.seed, t)] {
                try {
                    PatternBlockSampler sampler(cfg.density, cfg.blockset, UniformSource(seed));
                    for (std::uint64_t i = 0; i < share; ++i) sampler.sample_one();
                    tally.attempts = sampler.attempts();
                    tally.accepted = sampler.accepted();
                } catch (...) {
                    tally.error = std::current_exception();
                }
            });
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::uint64_t attempts = 0;
    std::uint64_t accepted = 0;
    for (const auto& t : tallies) {
        if (t.error) std::rethrow_exception(t.error);
        attempts += t.attempts;
        accepted += t.accepted;
    }
    OutputTarget target(config.out, out);
    target.stream() << json{{"dist", to_string(config.dist)},
                            {"n", config.n},
                            {"threads", threads},
                            {"seconds", seconds},
                            {"samples_per_second", seconds > 0.0 ? static_cast<double>(accepted) / seconds : 0.0},
                            {"attempts", attempts},
                            {"accepted", accepted},
                            {"attempts_per_sample", accepted ? static_cast<double>(attempts) / static_cast<double>(accepted) : 0.0},
                            {"empirical_rate", attempts ? static_cast<double>(accepted) / static_cast<double>(attempts) : 0.0},
                            {"exact_rate", exact_adoption_rate(cfg.density, cfg.blockset)}}
                               .dump()
                        << '\n';
    return kOk;
}

int cmd_zigg_table(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.dist != Dist::half_normal_zigg) {
        err << "error: zigg-table only supports --dist half-normal-zigg\n";
        return kUsage;
    }
    OutputTarget target(config.out, out);
    write_zigg_table(target.stream(), config);
    return kOk;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const RejectionCapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const RestrictionCapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const ZigguratError& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const numeric::QuadratureError& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pattern block rejection sampler"};
    app.require_subcommand(1);

    RunConfig config;
    std::string dist_name;
    std::string format_name = "csv";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--dist", dist_name, "arcsine-mod | gauss-mix-2d | half-normal-zigg")
            ->check(CLI::IsMember({"arcsine-mod", "gauss-mix-2d", "half-normal-zigg"}));
        sub->add_option("--n", config.n, "number of accepted samples");
        sub->add_option("--seed", config.seed, "64-bit seed");
        sub->add_option("--out", config.out, "output file (default stdout)");
        sub->add_option("--format", format_name, "csv | json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--bins", config.bins, "histogram bins per axis for validate");
        sub->add_option("--layers", config.layers, "Ziggurat layer count")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
        sub->add_option("--threads", config.threads, "independent samplers for bench")->check(CLI::PositiveNumber);
        sub->add_option("--significance", config.significance, "goodness-of-fit significance")
            ->check(CLI::Range(0.0, 1.0));
    };
    const std::vector<std::pair<Command, CLI::App*>> subs{
        {Command::sample, app.add_subcommand("sample", "write samples as CSV or JSON")},
        {Command::validate, app.add_subcommand("validate", "check blocks and goodness of fit")},
        {Command::bench, app.add_subcommand("bench", "throughput and adoption rates")},
        {Command::zigg_table, app.add_subcommand("zigg-table", "print the Ziggurat layer table")},
    };
    for (const auto& [cmd, sub] : subs) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    for (const auto& [cmd, sub] : subs)
        if (sub->parsed()) config.command = cmd;
    if (dist_name.empty())
        dist_name = config.command == Command::zigg_table ? "half-normal-zigg" : "arcsine-mod";
    config.dist = *parse_dist(dist_name);
    config.format = format_name == "json" ? Format::json : Format::csv;
    if (config.bins == 1) {
        err << "error: --bins must be at least 2\n";
        return kUsage;
    }

    return guarded(
        [&] {
            switch (config.command) {
                case Command::sample: return cmd_sample(config, out, err);
                case Command::validate: return cmd_validate(config, out, err);
                case Command::bench: return cmd_bench(config, out, err);
                case Command::zigg_table: return cmd_zigg_table(config, out, err);
            }
            return static_cast<int>(kUsage);
        },
        err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("pbm");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pbm::cli
