#include "pbm/blocks2d.hpp"

#include <cmath>
#include <numbers>

#include "pbm/numeric.hpp"

namespace pbm {

namespace {

void check_band(double y_lo, double y_hi, const std::string& name) {
    if (!(y_lo >= 0.0) || !(y_lo < y_hi) || !std::isfinite(y_hi))
        throw BlockError("block '" + name + "' needs a height band 0 <= y_lo < y_hi < inf");
}

}  // namespace

PatternBlock slab_block(const Rect& rect, double y_lo, double y_hi, std::string name) {
    check_band(y_lo, y_hi, name);
    if (!(rect.x.width() > 0.0) || !(rect.y.width() > 0.0))
        throw BlockError("slab block '" + name + "' has a degenerate footprint");
    const double measure = rect.area() * (y_hi - y_lo);
    auto sampler = [=](UniformSource& src, BlockDrawStats&) {
        const double xi1 = src.next_unit();
        const double xi2 = src.next_unit();
        const double eta = src.next_unit();
        return Candidate{Point(rect.x.lo + rect.x.width() * xi1, rect.y.lo + rect.y.width() * xi2),
                         y_lo + (y_hi - y_lo) * eta};
    };
    auto contains = [=](const Point& p, double y) {
        return rect.contains(p.x(), p.y()) && y_lo <= y && y <= y_hi;
    };
    return PatternBlock(std::move(name), measure, std::move(sampler), std::move(contains));
}

SuperlevelArea superlevel_area(double level, const Rect& rect, const Fn2D& f,
                               std::size_t cells_per_axis) {
    const auto q = numeric::quad_2d_grid(
        [&](double x1, double x2) { return f(x1, x2) >= level ? 1.0 : 0.0; }, rect, cells_per_axis);
    return {q.value, q.error_estimate};
}

PatternBlock superlevel_block(double level, const Rect& bounding, Fn2D f, double y_lo, double y_hi,
                              const SuperlevelOptions& options, std::string name) {
    check_band(y_lo, y_hi, name);
    if (!f) throw BlockError("superlevel block '" + name + "' needs a function");
    if (!(bounding.area() > 0.0)) throw BlockError("superlevel block '" + name + "' has an empty box");

    if (options.scan_region) {
        const Rect& scan = *options.scan_region;
        const std::size_t n = options.scan_cells_per_axis;
        const double hx = scan.x.width() / static_cast<double>(n);
        const double hy = scan.y.width() / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x1 = scan.x.lo + (static_cast<double>(i) + 0.5) * hx;
            for (std::size_t j = 0; j < n; ++j) {
                const double x2 = scan.y.lo + (static_cast<double>(j) + 0.5) * hy;
                if (f(x1, x2) >= level && !bounding.contains(x1, x2))
                    throw BlockError("superlevel set of block '" + name +
                                     "' leaves its bounding box near (" + std::to_string(x1) +
                                     ", " + std::to_string(x2) + ")");
            }
        }
    }

    const auto area = superlevel_area(level, bounding, f, options.area_cells_per_axis);
    if (!(area.area > 0.0))
        throw BlockError("superlevel block '" + name + "' has an empty superlevel set");
    const double measure = area.area * (y_hi - y_lo);
    const std::uint64_t cap = options.inner_cap;

    auto sampler = [=](UniformSource& src, BlockDrawStats& stats) {
        for (std::uint64_t tries = 0; tries < cap; ++tries) {
            const double x1 = bounding.x.lo + bounding.x.width() * src.next_unit();
            const double x2 = bounding.y.lo + bounding.y.width() * src.next_unit();
            if (f(x1, x2) >= level) {
                const double eta = src.next_unit();
                return Candidate{Point(x1, x2), (y_hi - y_lo) * eta + y_lo};
            }
            ++stats.inner_retries;
        }
        throw RestrictionCapExceeded("restriction sampler of block '" + name + "' hit its cap of " +
                                     std::to_string(cap) + " draws");
    };
    auto contains = [=](const Point& p, double y) {
        return bounding.contains(p.x(), p.y()) && y_lo <= y && y <= y_hi && f(p.x(), p.y()) >= level;
    };
    return PatternBlock(std::move(name), measure, std::move(sampler), std::move(contains));
}

PatternBlock cylinder_block(Point center, double radius, double y_lo, double y_hi,
                            std::string name) {
    check_band(y_lo, y_hi, name);
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw BlockError("cylinder block '" + name + "' needs a positive radius");
    const double measure = std::numbers::pi * radius * radius * (y_hi - y_lo);
    const double cx = center.x();
    const double cy = center.y();
    auto sampler = [=](UniformSource& src, BlockDrawStats&) {
        const double xi1 = src.next_unit();
        const double xi2 = src.next_unit();
        const double eta = src.next_unit();
        const double r = radius * std::sqrt(xi1);
        const double theta = 2.0 * std::numbers::pi * xi2;
        return Candidate{Point(cx + r * std::cos(theta), cy + r * std::sin(theta)),
                         (y_hi - y_lo) * eta + y_lo};
    };
    auto contains = [=](const Point& p, double y) {
        const double dx = p.x() - cx;
        const double dy = p.y() - cy;
        return dx * dx + dy * dy <= radius * radius && y_lo <= y && y <= y_hi;
    };
    return PatternBlock(std::move(name), measure, std::move(sampler), std::move(contains));
}

}  // namespace pbm
