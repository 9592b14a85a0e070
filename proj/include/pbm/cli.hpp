#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pbm/core.hpp"
#include "pbm/numeric.hpp"

namespace pbm::cli {

// Process exit codes.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3 };

enum class Command { sample, validate, bench, zigg_table };
enum class Dist { arcsine_mod, gauss_mix_2d, half_normal_zigg };
enum class Format { csv, json };

struct RunConfig {
    Command command = Command::sample;
    Dist dist = Dist::arcsine_mod;
    std::uint64_t n = 10000;
    std::uint64_t seed = 1;
    std::string out;  // empty: stdout
    Format format = Format::csv;
    std::size_t bins = 0;  // 0: per-distribution default
    std::size_t layers = 128;
    std::size_t threads = 1;
    double significance = 1e-3;
};

const char* to_string(Dist d) noexcept;
std::optional<Dist> parse_dist(const std::string& s);

// Histogram and quadrature bin probabilities for the goodness-of-fit test.
struct GofSetup {
    numeric::Histogram histogram;
    std::vector<double> expected;
};

// Everything needed to sample and check one shipped distribution.
struct Configuration {
    Dist dist;
    Density density;
    BlockSet blockset;
    ValidationOptions validation;
    std::function<GofSetup(std::size_t bins)> gof_setup;
    std::size_t default_bins;
};

// Throws ZigguratError for a layout that cannot be built.
Configuration make_configuration(Dist dist, std::size_t layers = 128);

// Rows of "i,x,f_x,block_area": row i describes x_i and the block whose top
// edge is f(x_i), so the last row is the base block.
void write_zigg_table(std::ostream& os, const RunConfig& config);

// Shortest round-trip decimal, independent of the locale.
std::string format_double(double v);

void write_samples_csv(std::ostream& os, const std::vector<Point>& points, int dim);

int cmd_sample(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_zigg_table(const RunConfig& config, std::ostream& out, std::ostream& err);

// cmd_validate against a caller-supplied configuration.
int validate_configuration(const RunConfig& config, const Configuration& configuration,
                           std::ostream& out);

// Runs body and maps library exceptions to exit codes: cap and numerical
// failures to kNumerical, other runtime errors (I/O) to kUsage. The message
// goes to err.
int guarded(const std::function<int()>& body, std::ostream& err);

// Parses argv and dispatches. Data goes to out (or --out), summaries to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbm::cli
