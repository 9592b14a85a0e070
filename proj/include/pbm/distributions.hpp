#pragma once

#include <stdexcept>

#include "pbm/blocks1d.hpp"
#include "pbm/blocks2d.hpp"
#include "pbm/core.hpp"

namespace pbm::dist {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// ---- Arcsine (Beta(1/2, 1/2)) envelope and the modulated density -----------

// 1 / (pi sqrt(x(1-x))) on (0,1); +inf at the endpoints, 0 outside.
double arcsine_pdf(double x) noexcept;
// (2/pi) asin(sqrt(x)). Throws DomainError outside [0,1].
double arcsine_cdf(double x);
// sin^2(pi p / 2). Throws DomainError outside [0,1].
double arcsine_cdf_inv(double p);
Envelope1D arcsine_envelope();

// 1 + sin(8 pi x).
double modulation(double x) noexcept;
// modulation(x) * arcsine_pdf(x) on (0,1), 0 elsewhere. Integrates to 1.
double arcsine_mod_pdf(double x) noexcept;
Density arcsine_mod_density();

// Integral of arcsine_mod_pdf over [s, t] within [0,1], computed with the
// substitution x = sin^2(theta) so the endpoint singularities disappear.
double arcsine_mod_mass(double s, double t, double tol = 1e-13);

// Strip i (1-based) of the 8-strip cover: [(i-1)/8, i/8] with envelope scale
// 2 on odd strips and 1 on even strips.
inline constexpr int kArcsineStrips = 8;
double arcsine_strip_scale(int i) noexcept;

// Eight envelope blocks; total measure 3/2, adoption rate 2/3.
BlockSet arcsine_mod_blockset();

// ---- Truncated two-component Gaussian mixture on [-4, 4]^2 ------------------

inline constexpr double kMixNormalizer = 2119.0 / 9970.0;
inline constexpr double kMixDomainLo = -4.0;
inline constexpr double kMixDomainHi = 4.0;

Rect mix_domain() noexcept;

struct LevelConstants {
    double b0;
    double b1;
    double b2;
    double b3;
};
LevelConstants level_constants() noexcept;

// c (exp(-x1^2 - x2^2) + exp(-(x1-2)^2 - (x2-2)^2) / 2) on the domain, 0 outside.
double gauss_mix_pdf(double x1, double x2) noexcept;

// K of gauss_mix_pdf over the domain by 4000^2 midpoint quadrature; computed
// once per process.
double gauss_mix_normalizer();
Density gauss_mix_density();

// Geometry of the five-block cover. Defaults reproduce the published layout;
// the fields exist so tests can build deliberately broken variants.
struct GaussMixBlockParams {
    Rect superlevel_box{{-2.0, 3.5}, {-2.0, 3.5}};
    Point disk3_center{0.0, 0.0};
    Point disk4_center{2.0, 2.0};
    Point disk5_center{0.0, 0.0};
    double disk3_radius = 5.0 / 4.0;
    double disk4_radius = 1.0;
    double disk5_radius = 1.0;
    std::size_t area_cells_per_axis = 2000;
};

// Slab [0,b0], superlevel {f >= b0} x [b0,b1], cylinders over two disks in
// [b1,b2] and the central disk in [b2,b3].
BlockSet gauss_mix_blockset(const GaussMixBlockParams& params = {});

// ---- Half-normal, for the Ziggurat demo ------------------------------------

// sqrt(2/pi) exp(-x^2/2) for x >= 0, 0 for x < 0.
double half_normal_pdf(double x) noexcept;
double half_normal_pdf_inv(double y) noexcept;
double half_normal_cdf(double x) noexcept;
double half_normal_tail_mass(double x) noexcept;
// Exact draw from the half-normal restricted to [r, inf), r > 0, by the
// exponential-proposal tail method (Marsaglia 1964).
double half_normal_tail_sampler(double r, UniformSource& source);

DecreasingDensity1D half_normal_decreasing();
Density half_normal_density();

}  // namespace pbm::dist
