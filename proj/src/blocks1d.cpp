#include "pbm/blocks1d.hpp"

#include <cmath>
#include <limits>

namespace pbm {

PatternBlock rect_block(double x_lo, double x_hi, double y_lo, double y_hi, std::string name) {
    if (!(x_lo < x_hi) || !(y_lo < y_hi) || !(y_lo >= 0.0))
        throw BlockError("degenerate or invalid rectangle block '" + name + "'");
    const double measure = (x_hi - x_lo) * (y_hi - y_lo);
    if (!(measure > 0.0) || !std::isfinite(measure))
        throw BlockError("rectangle block '" + name + "' has no positive finite area");
    auto sampler = [=](UniformSource& src, BlockDrawStats&) {
        const double xi = src.next_unit();
        const double eta = src.next_unit();
        return Candidate{Point(x_lo + (x_hi - x_lo) * xi), y_lo + (y_hi - y_lo) * eta};
    };
    auto contains = [=](const Point& p, double y) {
        return x_lo <= p.x() && p.x() <= x_hi && y_lo <= y && y <= y_hi;
    };
    return PatternBlock(std::move(name), measure, std::move(sampler), std::move(contains));
}

PatternBlock envelope_block(double a_lo, double a_hi, double b, const Envelope1D& envelope,
                            std::string name) {
    if (!envelope.pdf || !envelope.cdf || !envelope.cdf_inv)
        throw BlockError("envelope block '" + name + "' needs pdf, cdf and inverse cdf");
    if (!(a_lo < a_hi) || !(b > 0.0))
        throw BlockError("envelope block '" + name + "' needs a_lo < a_hi and b > 0");
    const double cdf_lo = envelope.cdf(a_lo);
    const double mass = envelope.cdf(a_hi) - cdf_lo;
    const double measure = b * mass;
    if (!(measure > 0.0) || !std::isfinite(measure))
        throw BlockError("envelope block '" + name + "' has nonpositive measure");
    auto sampler = [=, inv = envelope.cdf_inv, pdf = envelope.pdf](UniformSource& src,
                                                                   BlockDrawStats&) {
        const double xi = src.next_unit();
        const double eta = src.next_unit();
        const double v = inv(cdf_lo + xi * mass);
        return Candidate{Point(v), b * pdf(v) * eta};
    };
    auto contains = [=, pdf = envelope.pdf](const Point& p, double y) {
        return a_lo <= p.x() && p.x() <= a_hi && 0.0 <= y && y <= b * pdf(p.x());
    };
    return PatternBlock(std::move(name), measure, std::move(sampler), std::move(contains));
}

namespace {

double invert_decreasing(const DecreasingDensity1D& f, double y) {
    if (f.pdf_inv) return f.pdf_inv(y);
    double lo = 0.0;
    double hi = 1.0;
    while (f.pdf(hi) > y) {
        hi *= 2.0;
        if (hi > 1e300) throw ZigguratError("cannot bracket the inverse density", y);
    }
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (f.pdf(mid) > y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double ziggurat_residual(const DecreasingDensity1D& f, std::size_t layers, double r) {
    const double top = f.pdf(0.0);
    const double v = r * f.pdf(r) + f.tail_mass(r);
    double x = r;
    for (std::size_t i = layers - 1; i >= 2; --i) {
        const double y = f.pdf(x) + v / x;
        // The stack reached the mode before using all layers: r is too small.
        if (y >= top) return y - top + 1.0;
        x = invert_decreasing(f, y);
    }
    return f.pdf(x) + v / x - top;
}

ZigguratLayout build_ziggurat(const DecreasingDensity1D& f, std::size_t layers,
                              ZigguratOptions options) {
    if (layers < 2) throw std::invalid_argument("a Ziggurat needs at least 2 layers");
    if (!f.pdf || !f.tail_mass || !f.tail_sampler)
        throw std::invalid_argument("Ziggurat density needs pdf, tail mass and tail sampler");

    // Residual is positive for small r and negative for large r.
    double lo = 1e-3;
    double hi = 1.0;
    double res_lo = ziggurat_residual(f, layers, lo);
    if (!(res_lo > 0.0)) throw ZigguratError("no bracket: residual at small r is not positive", res_lo);
    double res_hi = ziggurat_residual(f, layers, hi);
    while (res_hi > 0.0) {
        lo = hi;
        res_lo = res_hi;
        hi *= 2.0;
        if (hi > 1e6) throw ZigguratError("no bracket: residual stays positive", res_hi);
        res_hi = ziggurat_residual(f, layers, hi);
    }

    std::size_t it = 0;
    bool converged = false;
    double r = hi;
    double res = res_hi;
    for (; it < options.max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double res_mid = ziggurat_residual(f, layers, mid);
        if (std::abs(res_mid) <= options.tolerance) {
            r = mid;
            res = res_mid;
            converged = true;
            break;
        }
        if (res_mid > 0.0) {
            lo = mid;
            res_lo = res_mid;
        } else {
            hi = mid;
            res_hi = res_mid;
        }
    }
    if (!converged) {
        r = std::abs(res_lo) < std::abs(res_hi) ? lo : hi;
        res = std::abs(res_lo) < std::abs(res_hi) ? res_lo : res_hi;
    }
    if (!(std::abs(res) <= options.tolerance))
        throw ZigguratError("Ziggurat bisection did not converge; residual " + std::to_string(res),
                            res);

    ZigguratLayout out;
    out.layers = layers;
    out.iterations = it;
    out.residual = res;
    out.tail_sampler = f.tail_sampler;
    out.layer_area = r * f.pdf(r) + f.tail_mass(r);
    out.x.assign(layers, 0.0);
    out.f_at.assign(layers, 0.0);
    out.x[layers - 1] = r;
    out.f_at[layers - 1] = f.pdf(r);
    for (std::size_t i = layers - 1; i >= 2; --i) {
        out.x[i - 1] = invert_decreasing(f, out.f_at[i] + out.layer_area / out.x[i]);
        out.f_at[i - 1] = f.pdf(out.x[i - 1]);
    }
    out.x[0] = 0.0;
    out.f_at[0] = f.pdf(0.0);
    return out;
}

PatternBlock ziggurat_base_block(const ZigguratLayout& layout, const DecreasingDensity1D& f) {
    if (!layout.tail_sampler) throw BlockError("Ziggurat base block needs a tail sampler");
    if (layout.layers < 2 || layout.x.size() != layout.layers)
        throw BlockError("invalid Ziggurat layout");
    const double r = layout.r();
    const double f_r = layout.f_at.back();
    const double p_rect = layout.base_rect_probability();
    auto sampler = [=, tail = layout.tail_sampler, pdf = f.pdf](UniformSource& src,
                                                                BlockDrawStats&) {
        if (src.next_unit() < p_rect) {
            const double xi = src.next_unit();
            const double eta = src.next_unit();
            return Candidate{Point(r * xi), f_r * eta};
        }
        const double x = tail(r, src);
        return Candidate{Point(x), pdf(x) * src.next_unit()};
    };
    auto contains = [=, pdf = f.pdf](const Point& p, double y) {
        const double x = p.x();
        if (y < 0.0 || x < 0.0) return false;
        if (x <= r && y <= f_r) return true;
        return x >= r && y <= pdf(x);
    };
    return PatternBlock("base", layout.layer_area, std::move(sampler), std::move(contains));
}

BlockSet ziggurat_blockset(const ZigguratLayout& layout, const DecreasingDensity1D& f) {
    std::vector<PatternBlock> blocks;
    blocks.reserve(layout.layers);
    for (std::size_t i = 1; i < layout.layers; ++i)
        blocks.push_back(rect_block(0.0, layout.x[i], layout.f_at[i], layout.f_at[i - 1],
                                    "layer" + std::to_string(i)));
    blocks.push_back(ziggurat_base_block(layout, f));
    return BlockSet(std::move(blocks));
}

}  // namespace pbm
