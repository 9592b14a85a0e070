#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pbm/core.hpp"

namespace pbm::numeric {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive Simpson quadrature with absolute error target tol. Throws
// QuadratureError when a panel would need more than max_depth bisections.
double quad_1d(const std::function<double(double)>& g, double lo, double hi, double tol,
               int max_depth = 60);

struct GridQuadrature {
    double value = 0.0;
    // |I(n) - I(n/2)| / 3, the Richardson estimate for the midpoint rule.
    double error_estimate = 0.0;
};

// Tensor midpoint rule on cells_per_axis^2 cells, with a half-resolution
// companion sum for the error estimate.
GridQuadrature quad_2d_grid(const std::function<double(double, double)>& g, const Rect& rect,
                            std::size_t cells_per_axis);

// Counts over a 1- or 2-dimensional grid of bins. Bin edges per axis must be
// strictly increasing; the last edge may be +inf for an overflow bin.
class Histogram {
public:
    explicit Histogram(std::vector<double> edges);
    Histogram(std::vector<double> x_edges, std::vector<double> y_edges);

    int dim() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<double>& edges(int axis) const { return edges_.at(axis); }
    std::size_t bin_count() const noexcept { return counts_.size(); }
    std::size_t bins_along(int axis) const { return edges_.at(axis).size() - 1; }

    // Returns false (and counts the point as outside) when p is in no bin.
    bool add(const Point& p);
    void add_all(std::span<const Point> points);

    std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t outside() const noexcept { return outside_; }

    double bin_volume(std::size_t flat_index) const;
    // count / (total * bin volume); the density-scale view.
    double density(std::size_t flat_index) const;

    // Bounds of bin flat_index along each axis (row-major, x fastest).
    Rect bin_rect(std::size_t flat_index) const;
    Interval bin_interval(std::size_t flat_index) const;

private:
    std::vector<std::vector<double>> edges_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    std::uint64_t outside_ = 0;
};

struct GofReport {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
    std::size_t bins_merged = 0;
    std::uint64_t outside = 0;
};

// Pearson chi-square against expected bin probabilities. Adjacent bins are
// merged (in flat order) until each group expects at least 5 counts.
// Observations outside every bin force p = 0.
GofReport chi_square_gof(std::span<const std::uint64_t> observed,
                         std::span<const double> expected_probs, std::uint64_t outside = 0);
GofReport chi_square_gof(const Histogram& histogram, std::span<const double> expected_probs);
GofReport chi_square_gof(std::span<const double> samples, std::span<const double> bin_edges,
                         std::span<const double> expected_probs);

// Upper tail of the chi-square distribution with dof degrees of freedom.
double chi_square_survival(double statistic, double dof);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Two-sided one-sample Kolmogorov-Smirnov test with the asymptotic
// (Stephens-corrected) p-value.
KsResult ks_test_1d(std::span<const double> samples, const std::function<double(double)>& cdf);

// Survival function of the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

}  // namespace pbm::numeric
