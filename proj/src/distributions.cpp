#include "pbm/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pbm/numeric.hpp"

namespace pbm::dist {

using std::numbers::pi;

double arcsine_pdf(double x) noexcept {
    if (x < 0.0 || x > 1.0) return 0.0;
    if (x == 0.0 || x == 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (pi * std::sqrt(x * (1.0 - x)));
}

double arcsine_cdf(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("arcsine_cdf: x outside [0,1]");
    return 2.0 / pi * std::asin(std::sqrt(x));
}

double arcsine_cdf_inv(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("arcsine_cdf_inv: p outside [0,1]");
    const double s = std::sin(0.5 * pi * p);
    return s * s;
}

Envelope1D arcsine_envelope() {
    return {arcsine_pdf, [](double x) { return arcsine_cdf(x); },
            [](double p) { return arcsine_cdf_inv(p); }};
}

double modulation(double x) noexcept { return 1.0 + std::sin(8.0 * pi * x); }

double arcsine_mod_pdf(double x) noexcept {
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    return modulation(x) * arcsine_pdf(x);
}

Density arcsine_mod_density() {
    return Density(
        1, [](const Point& p) { return arcsine_mod_pdf(p.x()); }, {Interval{0.0, 1.0}}, 1.0,
        KProvenance::exact);
}

double arcsine_mod_mass(double s, double t, double tol) {
    if (!(0.0 <= s && s <= t && t <= 1.0)) throw DomainError("arcsine_mod_mass: need 0 <= s <= t <= 1");
    // x = sin^2(theta): pdf(x) dx = (2/pi) h(sin^2 theta) d theta.
    const auto g = [](double theta) {
        const double st = std::sin(theta);
        return 2.0 / pi * modulation(st * st);
    };
    return numeric::quad_1d(g, std::asin(std::sqrt(s)), std::asin(std::sqrt(t)), tol);
}

double arcsine_strip_scale(int i) noexcept { return i % 2 == 1 ? 2.0 : 1.0; }

BlockSet arcsine_mod_blockset() {
    const Envelope1D env = arcsine_envelope();
    std::vector<PatternBlock> blocks;
    blocks.reserve(kArcsineStrips);
    for (int i = 1; i <= kArcsineStrips; ++i) {
        blocks.push_back(envelope_block(static_cast<double>(i - 1) / kArcsineStrips,
                                        static_cast<double>(i) / kArcsineStrips,
                                        arcsine_strip_scale(i), env, "strip" + std::to_string(i)));
    }
    return BlockSet(std::move(blocks));
}

Rect mix_domain() noexcept { return {{kMixDomainLo, kMixDomainHi}, {kMixDomainLo, kMixDomainHi}}; }

LevelConstants level_constants() noexcept {
    const double e8 = std::exp(-8.0);
    return {1.0 / 40.0, 1.0 / 15.0, kMixNormalizer * (e8 + 0.5), kMixNormalizer * (1.0 + 0.5 * e8)};
}

double gauss_mix_pdf(double x1, double x2) noexcept {
    if (!mix_domain().contains(x1, x2)) return 0.0;
    const double d1 = x1 - 2.0;
    const double d2 = x2 - 2.0;
    return kMixNormalizer * (std::exp(-x1 * x1 - x2 * x2) + 0.5 * std::exp(-d1 * d1 - d2 * d2));
}

double gauss_mix_normalizer() {
    static const double k = numeric::quad_2d_grid(gauss_mix_pdf, mix_domain(), 4000).value;
    return k;
}

Density gauss_mix_density() {
    return Density(
        2, [](const Point& p) { return gauss_mix_pdf(p.x(), p.y()); },
        {mix_domain().x, mix_domain().y}, gauss_mix_normalizer(), KProvenance::quadrature);
}

BlockSet gauss_mix_blockset(const GaussMixBlockParams& params) {
    const LevelConstants b = level_constants();
    SuperlevelOptions sl;
    sl.area_cells_per_axis = params.area_cells_per_axis;
    sl.scan_region = mix_domain();
    sl.scan_cells_per_axis = 1000;

    std::vector<PatternBlock> blocks;
    blocks.push_back(slab_block(mix_domain(), 0.0, b.b0, "B1"));
    blocks.push_back(superlevel_block(b.b0, params.superlevel_box, gauss_mix_pdf, b.b0, b.b1, sl, "B2"));
    blocks.push_back(cylinder_block(params.disk3_center, params.disk3_radius, b.b1, b.b2, "B3"));
    blocks.push_back(cylinder_block(params.disk4_center, params.disk4_radius, b.b1, b.b2, "B4"));
    blocks.push_back(cylinder_block(params.disk5_center, params.disk5_radius, b.b2, b.b3, "B5"));
    return BlockSet(std::move(blocks));
}

namespace {
const double kHalfNormalPeak = std::sqrt(2.0 / pi);
}

double half_normal_pdf(double x) noexcept {
    if (x < 0.0) return 0.0;
    return kHalfNormalPeak * std::exp(-0.5 * x * x);
}

double half_normal_pdf_inv(double y) noexcept {
    if (y >= kHalfNormalPeak) return 0.0;
    return std::sqrt(-2.0 * std::log(y / kHalfNormalPeak));
}

double half_normal_cdf(double x) noexcept {
    return x <= 0.0 ? 0.0 : std::erf(x / std::numbers::sqrt2);
}

double half_normal_tail_mass(double x) noexcept {
    return x <= 0.0 ? 1.0 : std::erfc(x / std::numbers::sqrt2);
}

double half_normal_tail_sampler(double r, UniformSource& source) {
    if (!(r > 0.0)) throw DomainError("half-normal tail sampler needs r > 0");
    for (;;) {
        // 1 - u lies in (0, 1], so the logarithms stay finite.
        const double x = -std::log(1.0 - source.next_unit()) / r;
        const double y = -std::log(1.0 - source.next_unit());
        if (2.0 * y > x * x) return r + x;
    }
}

DecreasingDensity1D half_normal_decreasing() {
    return {half_normal_pdf, half_normal_pdf_inv, half_normal_tail_mass, half_normal_tail_sampler};
}

Density half_normal_density() {
    return Density(
        1, [](const Point& p) { return half_normal_pdf(p.x()); },
        {Interval{0.0, std::numeric_limits<double>::infinity()}}, 1.0, KProvenance::exact);
}

}  // namespace pbm::dist
