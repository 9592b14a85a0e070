#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbm/rng.hpp"

namespace pbm {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const noexcept { return hi - lo; }
    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

struct Rect {
    Interval x;
    Interval y;

    double area() const noexcept { return x.width() * y.width(); }
    bool contains(double px, double py) const noexcept { return x.contains(px) && y.contains(py); }
};

// A point of the sample space: one or two coordinates.
class Point {
public:
    constexpr Point() = default;
    constexpr explicit Point(double x) : coords_{x, 0.0}, dim_(1) {}
    constexpr Point(double x1, double x2) : coords_{x1, x2}, dim_(2) {}

    constexpr int dim() const noexcept { return dim_; }
    constexpr double operator[](std::size_t i) const { return coords_[i]; }
    constexpr double x() const noexcept { return coords_[0]; }
    constexpr double y() const noexcept { return coords_[1]; }

    friend constexpr bool operator==(const Point&, const Point&) = default;

private:
    std::array<double, 2> coords_{};
    int dim_ = 1;
};

enum class KProvenance { exact, quadrature };

// A nonnegative function on a box domain together with its total mass K.
// f itself need not be normalized; accepted samples have density f/K.
class Density {
public:
    using Fn = std::function<double(const Point&)>;

    Density(int dim, Fn evaluate, std::vector<Interval> domain_bounds, double normalizer,
            KProvenance provenance);

    double operator()(const Point& p) const { return evaluate_(p); }
    int dim() const noexcept { return dim_; }
    const std::vector<Interval>& domain_bounds() const noexcept { return bounds_; }
    double normalizer() const noexcept { return k_; }
    KProvenance normalizer_provenance() const noexcept { return provenance_; }

private:
    int dim_;
    Fn evaluate_;
    std::vector<Interval> bounds_;
    double k_;
    KProvenance provenance_;
};

// A candidate (V_i, W_i): a point of the sample space and a height.
struct Candidate {
    Point point;
    double height = 0.0;
};

// Per-sampler scratch counters a block may update while drawing, e.g. the
// inner retries of a restriction sampler. Kept outside the block so blocks
// stay immutable and shareable.
struct BlockDrawStats {
    std::uint64_t inner_retries = 0;
};

class BlockError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A region of the product space (sample space x heights) with known measure
// and an exact uniform sampler onto it. The membership test is optional; it
// is only used by validate_blockset.
class PatternBlock {
public:
    using Sampler = std::function<Candidate(UniformSource&, BlockDrawStats&)>;
    using Membership = std::function<bool(const Point&, double)>;

    // measure must be finite and >= 0. Zero is accepted here so that a bad
    // block can be represented and caught by validation; the named
    // constructors in blocks1d/blocks2d reject it up front.
    PatternBlock(std::string name, double measure, Sampler sampler, Membership contains = {});

    const std::string& name() const noexcept { return name_; }
    double measure() const noexcept { return measure_; }
    Candidate sample_uniform(UniformSource& source, BlockDrawStats& stats) const {
        return sampler_(source, stats);
    }
    Candidate sample_uniform(UniformSource& source) const {
        BlockDrawStats scratch;
        return sampler_(source, scratch);
    }
    bool has_membership() const noexcept { return static_cast<bool>(contains_); }
    // Precondition: has_membership().
    bool contains(const Point& p, double height) const { return contains_(p, height); }

private:
    std::string name_;
    double measure_;
    Sampler sampler_;
    Membership contains_;
};

// Blocks B_1..B_N with cumulative selection weights c_i = sum_{j<=i} nu(B_j)/nu(B).
// The blocks are expected to overlap only on null sets; validate_blockset
// checks that statistically.
class BlockSet {
public:
    explicit BlockSet(std::vector<PatternBlock> blocks);

    std::size_t size() const noexcept { return blocks_.size(); }
    const PatternBlock& operator[](std::size_t i) const { return blocks_[i]; }
    const std::vector<PatternBlock>& blocks() const noexcept { return blocks_; }
    std::span<const double> cumulative() const noexcept { return cumulative_; }
    double total_measure() const noexcept { return total_; }
    // nu(B_i)/nu(B).
    double weight(std::size_t i) const { return blocks_.at(i).measure() / total_; }

private:
    std::vector<PatternBlock> blocks_;
    std::vector<double> cumulative_;
    double total_;
};

// Zero-based index of the first block whose cumulative weight strictly
// exceeds u. Requires 0 <= u < 1 and a valid cumulative array.
std::size_t select_block(std::span<const double> cumulative, double u);

enum class CheckStatus { passed, failed, skipped };

const char* to_string(CheckStatus status) noexcept;

struct CheckResult {
    CheckStatus status = CheckStatus::skipped;
    std::uint64_t probes = 0;
    std::uint64_t violations = 0;
    // Overlap check: Monte Carlo estimate of sum_{i<j} nu(B_i & B_j)/nu(B).
    double estimate = 0.0;
    std::string detail;
};

struct ValidationReport {
    CheckResult positivity;
    CheckResult cover;
    CheckResult overlap;

    // Skipped checks do not count as passed.
    bool all_passed() const noexcept;
};

struct ValidationOptions {
    std::size_t n_probe = 100000;
    double tolerance = 1e-12;
    std::size_t heights_per_point = 8;
    std::size_t overlap_samples_per_block = 20000;
    std::uint64_t seed = 0x9a77e5b1ull;
    // Region to probe for cover; required when the domain is unbounded.
    std::optional<std::vector<Interval>> probe_bounds;
};

// (a) every block has positive measure; (b) every (x, y) with
// y <= f(x) - tolerance on a midpoint grid of n_probe points (stratified
// heights plus the top) lies in some block; (c) no sample of block i lands
// in a block j > i. Cover and overlap are reported as skipped when any block
// lacks a membership test.
ValidationReport validate_blockset(const BlockSet& blockset, const Density& density,
                                   const ValidationOptions& options);
ValidationReport validate_blockset(const BlockSet& blockset, const Density& density,
                                   std::size_t n_probe, double tolerance);

// K / nu(B).
double exact_adoption_rate(const Density& density, const BlockSet& blockset);

class RejectionCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SamplerOptions {
    std::uint64_t rejection_cap = 1000000;
};

// The accept/reject loop: draw u, pick block i = select_block(u), draw a
// uniform candidate (v, w) on B_i, return v if w <= f(v).
class PatternBlockSampler {
public:
    PatternBlockSampler(Density density, BlockSet blockset, UniformSource source,
                        SamplerOptions options = {});

    Point sample_one();
    std::vector<Point> sample_many(std::size_t n);

    std::uint64_t attempts() const noexcept { return attempts_; }
    std::uint64_t accepted() const noexcept { return accepted_; }
    // Retries spent inside restriction samplers; not part of attempts().
    std::uint64_t inner_retries() const noexcept { return stats_.inner_retries; }
    double empirical_rate() const noexcept {
        return attempts_ == 0 ? 0.0 : static_cast<double>(accepted_) / static_cast<double>(attempts_);
    }

    const Density& density() const noexcept { return density_; }
    const BlockSet& blockset() const noexcept { return blockset_; }
    const UniformSource& source() const noexcept { return source_; }

private:
    Density density_;
    BlockSet blockset_;
    UniformSource source_;
    SamplerOptions options_;
    BlockDrawStats stats_;
    std::uint64_t attempts_ = 0;
    std::uint64_t accepted_ = 0;
};

}  // namespace pbm
