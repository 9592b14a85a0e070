#include "pbm/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pbm {

Density::Density(int dim, Fn evaluate, std::vector<Interval> domain_bounds, double normalizer,
                 KProvenance provenance)
    : dim_(dim),
      evaluate_(std::move(evaluate)),
      bounds_(std::move(domain_bounds)),
      k_(normalizer),
      provenance_(provenance) {
    if (dim_ != 1 && dim_ != 2) throw std::invalid_argument("density dimension must be 1 or 2");
    if (bounds_.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("density needs one domain interval per coordinate");
    if (!evaluate_) throw std::invalid_argument("density needs an evaluation function");
    if (!(k_ > 0.0) || !std::isfinite(k_))
        throw std::invalid_argument("density normalizer K must lie in (0, inf)");
}

PatternBlock::PatternBlock(std::string name, double measure, Sampler sampler, Membership contains)
    : name_(std::move(name)),
      measure_(measure),
      sampler_(std::move(sampler)),
      contains_(std::move(contains)) {
    if (!(measure_ >= 0.0) || !std::isfinite(measure_))
        throw BlockError("block '" + name_ + "' has a non-finite or negative measure");
    if (!sampler_) throw BlockError("block '" + name_ + "' has no sampler");
}

BlockSet::BlockSet(std::vector<PatternBlock> blocks) : blocks_(std::move(blocks)), total_(0.0) {
    if (blocks_.empty()) throw BlockError("a block set needs at least one block");
    cumulative_.reserve(blocks_.size());
    for (const auto& b : blocks_) {
        total_ += b.measure();
        cumulative_.push_back(total_);
    }
    if (!(total_ > 0.0) || !std::isfinite(total_))
        throw BlockError("block set total measure must lie in (0, inf)");
    for (auto& c : cumulative_) c /= total_;
    cumulative_.back() = 1.0;
}

std::size_t select_block(std::span<const double> cumulative, double u) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto idx = static_cast<std::size_t>(it - cumulative.begin());
    return std::min(idx, cumulative.size() - 1);
}

const char* to_string(CheckStatus status) noexcept {
    switch (status) {
        case CheckStatus::passed: return "passed";
        case CheckStatus::failed: return "failed";
        case CheckStatus::skipped: return "skipped";
    }
    return "unknown";
}

bool ValidationReport::all_passed() const noexcept {
    return positivity.status == CheckStatus::passed && cover.status == CheckStatus::passed &&
           overlap.status == CheckStatus::passed;
}

namespace {

std::string format_point(const Point& p, double y) {
    std::ostringstream os;
    os.precision(17);
    os << "(";
    for (int i = 0; i < p.dim(); ++i) os << (i ? ", " : "") << p[static_cast<std::size_t>(i)];
    os << "; y=" << y << ")";
    return os.str();
}

CheckResult check_positivity(const BlockSet& blockset) {
    CheckResult r;
    r.probes = blockset.size();
    for (const auto& b : blockset.blocks()) {
        if (!(b.measure() > 0.0)) {
            ++r.violations;
            if (r.detail.empty()) r.detail = "block '" + b.name() + "' has zero measure";
        }
    }
    r.status = r.violations == 0 ? CheckStatus::passed : CheckStatus::failed;
    return r;
}

bool covered(const BlockSet& blockset, const Point& p, double y) {
    for (const auto& b : blockset.blocks())
        if (b.contains(p, y)) return true;
    return false;
}

CheckResult check_cover(const BlockSet& blockset, const Density& density,
                        const ValidationOptions& opt) {
    CheckResult r;
    const auto& bounds = opt.probe_bounds ? *opt.probe_bounds : density.domain_bounds();
    if (bounds.size() != static_cast<std::size_t>(density.dim()))
        throw std::invalid_argument("probe bounds dimension does not match the density");
    for (const auto& iv : bounds)
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
            throw std::invalid_argument("cover probing needs finite bounds; set probe_bounds");

    const std::size_t heights = std::max<std::size_t>(opt.heights_per_point, 1);
    auto probe = [&](const Point& p) {
        const double fx = density(p);
        if (!std::isfinite(fx) || fx <= opt.tolerance) return;
        const double top = fx - opt.tolerance;
        for (std::size_t j = 0; j <= heights; ++j) {
            const double y = j == heights ? top
                                          : std::min(top, fx * (static_cast<double>(j) + 0.5) /
                                                              static_cast<double>(heights));
            ++r.probes;
            if (!covered(blockset, p, y)) {
                ++r.violations;
                if (r.detail.empty()) r.detail = "uncovered point " + format_point(p, y);
            }
        }
    };

    if (density.dim() == 1) {
        const std::size_t n = std::max<std::size_t>(opt.n_probe, 1);
        const double h = bounds[0].width() / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k)
            probe(Point(bounds[0].lo + (static_cast<double>(k) + 0.5) * h));
    } else {
        const auto side = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(std::max<std::size_t>(opt.n_probe, 1)))));
        const double hx = bounds[0].width() / static_cast<double>(side);
        const double hy = bounds[1].width() / static_cast<double>(side);
        for (std::size_t a = 0; a < side; ++a)
            for (std::size_t b = 0; b < side; ++b)
                probe(Point(bounds[0].lo + (static_cast<double>(a) + 0.5) * hx,
                            bounds[1].lo + (static_cast<double>(b) + 0.5) * hy));
    }
    r.status = r.violations == 0 ? CheckStatus::passed : CheckStatus::failed;
    return r;
}

CheckResult check_overlap(const BlockSet& blockset, const ValidationOptions& opt) {
    CheckResult r;
    UniformSource source(opt.seed);
    BlockDrawStats stats;
    const std::size_t m = std::max<std::size_t>(opt.overlap_samples_per_block, 1);
    for (std::size_t i = 0; i < blockset.size(); ++i) {
        std::uint64_t hits = 0;
        for (std::size_t s = 0; s < m; ++s) {
            const Candidate c = blockset[i].sample_uniform(source, stats);
            ++r.probes;
            for (std::size_t j = i + 1; j < blockset.size(); ++j) {
                if (blockset[j].contains(c.point, c.height)) {
                    ++hits;
                    if (r.detail.empty())
                        r.detail = "block '" + blockset[i].name() + "' sample " +
                                   format_point(c.point, c.height) + " lies in block '" +
                                   blockset[j].name() + "'";
                    break;
                }
            }
        }
        r.violations += hits;
        r.estimate += blockset.weight(i) * static_cast<double>(hits) / static_cast<double>(m);
    }
    r.status = r.violations == 0 ? CheckStatus::passed : CheckStatus::failed;
    return r;
}

}  // namespace

ValidationReport validate_blockset(const BlockSet& blockset, const Density& density,
                                   const ValidationOptions& options) {
    if (options.n_probe < 1) throw std::invalid_argument("n_probe must be at least 1");
    ValidationReport report;
    report.positivity = check_positivity(blockset);

    const bool membership = std::all_of(blockset.blocks().begin(), blockset.blocks().end(),
                                        [](const PatternBlock& b) { return b.has_membership(); });
    if (!membership) {
        report.cover.detail = "a block has no membership test";
        report.overlap.detail = report.cover.detail;
        return report;
    }
    report.cover = check_cover(blockset, density, options);
    report.overlap = check_overlap(blockset, options);
    return report;
}

ValidationReport validate_blockset(const BlockSet& blockset, const Density& density,
                                   std::size_t n_probe, double tolerance) {
    ValidationOptions opt;
    opt.n_probe = n_probe;
    opt.tolerance = tolerance;
    return validate_blockset(blockset, density, opt);
}

double exact_adoption_rate(const Density& density, const BlockSet& blockset) {
    return density.normalizer() / blockset.total_measure();
}

PatternBlockSampler::PatternBlockSampler(Density density, BlockSet blockset, UniformSource source,
                                         SamplerOptions options)
    : density_(std::move(density)),
      blockset_(std::move(blockset)),
      source_(std::move(source)),
      options_(options) {
    if (options_.rejection_cap == 0) throw std::invalid_argument("rejection cap must be positive");
}

Point PatternBlockSampler::sample_one() {
    for (std::uint64_t rejected = 0; rejected < options_.rejection_cap; ++rejected) {
        ++attempts_;
        const double u = source_.next_unit();
        const PatternBlock& block = blockset_[select_block(blockset_.cumulative(), u)];
        const Candidate c = block.sample_uniform(source_, stats_);
        // Also true for f(v) = +inf with finite w.
        if (c.height <= density_(c.point)) {
            ++accepted_;
            return c.point;
        }
    }
    throw RejectionCapExceeded("no candidate accepted in " + std::to_string(options_.rejection_cap) +
                               " consecutive attempts; the block set does not match the density");
}

std::vector<Point> PatternBlockSampler::sample_many(std::size_t n) {
    std::vector<Point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_one());
    return out;
}

}  // namespace pbm
