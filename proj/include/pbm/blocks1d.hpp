#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbm/core.hpp"

namespace pbm {

// Axis-aligned box [x_lo, x_hi] x [y_lo, y_hi]. Throws BlockError on a
// degenerate box or a negative y_lo.
PatternBlock rect_block(double x_lo, double x_hi, double y_lo, double y_hi,
                        std::string name = "rect");

// A 1-d envelope density with closed-form CDF and inverse CDF.
struct Envelope1D {
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
    std::function<double(double)> cdf_inv;
};

// The region {a_lo <= x <= a_hi, 0 <= y <= b * pdf(x)}. Sampled exactly by
// inverting the envelope CDF restricted to the strip and drawing the height
// uniformly under the scaled envelope.
PatternBlock envelope_block(double a_lo, double a_hi, double b, const Envelope1D& envelope,
                            std::string name = "envelope");

// A density strictly decreasing on [0, inf) with unit mass, plus what the
// Ziggurat construction needs from it.
struct DecreasingDensity1D {
    std::function<double(double)> pdf;
    // Inverse of pdf on (0, pdf(0)]. Found by bisection when empty.
    std::function<double(double)> pdf_inv;
    // x -> integral of pdf over [x, inf).
    std::function<double(double)> tail_mass;
    // (r, source) -> exact draw from pdf restricted to [r, inf).
    std::function<double(double, UniformSource&)> tail_sampler;
};

// Equal-area Ziggurat layout: 0 = x[0] < x[1] < ... < x[N-1] = r. Layer i
// (1 <= i <= N-1) is [0, x_i] x [f(x_i), f(x_{i-1})]; the base block is
// [0, r] x [0, f(r)] plus the region under the tail. All N blocks have
// measure layer_area.
struct ZigguratLayout {
    std::size_t layers = 0;
    std::vector<double> x;
    std::vector<double> f_at;  // f(x_i)
    double layer_area = 0.0;
    double residual = 0.0;      // top-layer mismatch left by the bisection
    std::size_t iterations = 0;
    std::function<double(double, UniformSource&)> tail_sampler;

    double r() const { return x.back(); }
    // Area of rectangle layer i, 1 <= i <= N-1.
    double rect_layer_area(std::size_t i) const { return x[i] * (f_at[i - 1] - f_at[i]); }
    // Probability that the base block draws from its rectangle part.
    double base_rect_probability() const { return r() * f_at.back() / layer_area; }
};

class ZigguratError : public std::runtime_error {
public:
    ZigguratError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

struct ZigguratOptions {
    double tolerance = 1e-12;
    std::size_t max_iterations = 200;
};

// Bisection on r so that the layer recursion x_{i-1} = f^-1(f(x_i) + v/x_i),
// with v = r f(r) + tail(r), closes the top layer at f(0).
ZigguratLayout build_ziggurat(const DecreasingDensity1D& f, std::size_t layers,
                              ZigguratOptions options = {});

// Mismatch f(x_1) + v/x_1 - f(0) for a trial r; exposed for diagnostics.
double ziggurat_residual(const DecreasingDensity1D& f, std::size_t layers, double r);

PatternBlock ziggurat_base_block(const ZigguratLayout& layout, const DecreasingDensity1D& f);

// Layers 1..N-1 followed by the base block.
BlockSet ziggurat_blockset(const ZigguratLayout& layout, const DecreasingDensity1D& f);

}  // namespace pbm
