#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "pbm/core.hpp"

namespace pbm {

using Fn2D = std::function<double(double, double)>;

// rect x [y_lo, y_hi], sampled by three affine uniforms.
PatternBlock slab_block(const Rect& rect, double y_lo, double y_hi, std::string name = "slab");

struct SuperlevelOptions {
    // Midpoint grid used for area({f >= level}) over the bounding box.
    std::size_t area_cells_per_axis = 2000;
    // Region scanned once to confirm {f >= level} lies inside the bounding
    // box; no scan when empty.
    std::optional<Rect> scan_region;
    std::size_t scan_cells_per_axis = 1000;
    // Consecutive inner rejections before the restriction sampler gives up.
    std::uint64_t inner_cap = 1000000;
};

// Area of {f >= level} inside rect by the midpoint rule; error estimate from
// the half-resolution sum.
struct SuperlevelArea {
    double area = 0.0;
    double error_estimate = 0.0;
};
SuperlevelArea superlevel_area(double level, const Rect& rect, const Fn2D& f,
                               std::size_t cells_per_axis);

// {x in bounding : f(x) >= level} x [y_lo, y_hi]. The point is drawn
// uniformly on the bounding box and redrawn until f >= level; redraws are
// reported through BlockDrawStats::inner_retries. Throws BlockError when the
// scan finds superlevel points outside the box.
PatternBlock superlevel_block(double level, const Rect& bounding, Fn2D f, double y_lo, double y_hi,
                              const SuperlevelOptions& options = {},
                              std::string name = "superlevel");

class RestrictionCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Disk of the given radius about center, times [y_lo, y_hi]. Radius is
// drawn as radius * sqrt(xi1), the inverse of F_R(r) = r^2 / radius^2.
PatternBlock cylinder_block(Point center, double radius, double y_lo, double y_hi,
                            std::string name = "cylinder");

}  // namespace pbm
