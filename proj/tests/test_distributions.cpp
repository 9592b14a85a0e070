#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "pbm/distributions.hpp"
#include "pbm/numeric.hpp"

using namespace pbm;
using std::numbers::pi;

TEST_CASE("arcsine CDF and inverse") {
    CHECK(dist::arcsine_cdf(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dist::arcsine_cdf(0.0) == 0.0);
    CHECK(dist::arcsine_cdf(1.0) == 1.0);
    // Oracle: Simpson on the substituted density 2 / (pi sqrt(1 - t^2)), x = t^2.
    const double oracle_phi = oracle::simpson([](double t) { return 2.0 / (pi * std::sqrt(1.0 - t * t)); },
                                              0.0, std::sqrt(1.0 / 8.0));
    CHECK(dist::arcsine_cdf(1.0 / 8.0) == doctest::Approx(oracle_phi).epsilon(1e-12));

    CHECK(dist::arcsine_cdf_inv(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dist::arcsine_cdf_inv(0.0) == 0.0);
    CHECK(dist::arcsine_cdf_inv(1.0) == 1.0);

    // Phi is steep near x = 1, so the p-side round trip is only checked
    // away from the endpoints; the x side is well conditioned everywhere.
    double worst_p = 0.0, worst_x = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double p = 0.01 + 0.98 * i / 9999.0;
        worst_p = std::max(worst_p, std::abs(dist::arcsine_cdf(dist::arcsine_cdf_inv(p)) - p));
        const double x = i / 9999.0;
        worst_x = std::max(worst_x, std::abs(dist::arcsine_cdf_inv(dist::arcsine_cdf(x)) - x));
    }
    CHECK(worst_p < 1e-13);
    CHECK(worst_x < 1e-13);

    CHECK_THROWS_AS(dist::arcsine_cdf(-0.1), dist::DomainError);
    CHECK_THROWS_AS(dist::arcsine_cdf(1.1), dist::DomainError);
    CHECK_THROWS_AS(dist::arcsine_cdf_inv(2.0), dist::DomainError);
    CHECK_THROWS_AS(dist::arcsine_cdf_inv(NAN), dist::DomainError);
}

TEST_CASE("modulated arcsine density") {
    CHECK(std::isinf(dist::arcsine_pdf(0.0)));
    CHECK(dist::arcsine_mod_pdf(0.0) == 0.0);
    CHECK(dist::arcsine_mod_pdf(1.5) == 0.0);
    CHECK(dist::arcsine_mod_pdf(0.5) == doctest::Approx(2.0 / pi));  // sin(4 pi) = 0

    CHECK(std::abs(dist::arcsine_mod_mass(0.0, 1.0) - 1.0) < 1e-6);
    const auto d = dist::arcsine_mod_density();
    CHECK(d.normalizer() == 1.0);
    CHECK(d.normalizer_provenance() == KProvenance::exact);
}

TEST_CASE("strip cover: h <= b_i on every strip") {
    for (int i = 1; i <= 8; ++i) {
        double worst = -INFINITY;
        for (int k = 0; k <= 100000; ++k) {
            const double x = (i - 1 + k / 100000.0) / 8.0;
            worst = std::max(worst, dist::modulation(x));
        }
        CHECK(worst <= dist::arcsine_strip_scale(i) + 1e-12);
    }
}

TEST_CASE("arcsine block set") {
    const auto bs = dist::arcsine_mod_blockset();
    CHECK(bs.size() == 8);
    CHECK(std::abs(bs.total_measure() - 1.5) < 1e-12);
    CHECK(exact_adoption_rate(dist::arcsine_mod_density(), bs) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // Strip masses are symmetric: Delta_i = Delta_{9-i}.
    for (int i = 1; i <= 8; ++i) {
        const double di = bs[i - 1].measure() / dist::arcsine_strip_scale(i);
        const double dm = bs[8 - i].measure() / dist::arcsine_strip_scale(9 - i);
        CHECK(di == doctest::Approx(dm).epsilon(1e-12));
    }
    const auto report = validate_blockset(bs, dist::arcsine_mod_density(), 100000, 1e-12);
    CHECK(report.cover.violations == 0);
    CHECK(report.all_passed());
}

TEST_CASE("arcsine sampler passes a 64-bin chi-square test") {
    std::vector<double> edges(65), probs(64);
    for (int i = 0; i <= 64; ++i) edges[i] = i / 64.0;
    for (int i = 0; i < 64; ++i) probs[i] = dist::arcsine_mod_mass(edges[i], edges[i + 1]);
    double total = 0.0;
    for (double p : probs) total += p;
    CHECK(std::abs(total - 1.0) < 1e-9);

    PatternBlockSampler s(dist::arcsine_mod_density(), dist::arcsine_mod_blockset(), UniformSource(1));
    std::vector<double> xs;
    for (const auto& p : s.sample_many(100000)) xs.push_back(p.x());
    CHECK(numeric::chi_square_gof(xs, edges, probs).p_value > 0.001);
}

TEST_CASE("mixture constants") {
    const auto lc = dist::level_constants();
    CHECK(lc.b0 == 1.0 / 40.0);
    CHECK(lc.b1 == 1.0 / 15.0);
    CHECK(lc.b0 < lc.b1);
    CHECK(lc.b1 < lc.b2);
    CHECK(lc.b2 < lc.b3);
    CHECK(dist::gauss_mix_pdf(0.0, 0.0) == doctest::Approx(lc.b3).epsilon(1e-15));
    CHECK(dist::gauss_mix_pdf(2.0, 2.0) == doctest::Approx(lc.b2).epsilon(1e-15));
    double grid_max = 0.0;
    for (int i = 0; i <= 800; ++i)
        for (int j = 0; j <= 800; ++j)
            grid_max = std::max(grid_max, dist::gauss_mix_pdf(-4.0 + i * 0.01, -4.0 + j * 0.01));
    CHECK(grid_max <= lc.b3 + 1e-15);
    CHECK(dist::gauss_mix_pdf(4.5, 0.0) == 0.0);

    const auto d = dist::gauss_mix_density();
    CHECK(std::abs(d.normalizer() - 1.0) < 0.002);
    CHECK(d.normalizer_provenance() == KProvenance::quadrature);
}

TEST_CASE("mixture block set") {
    const auto d = dist::gauss_mix_density();
    const auto bs = dist::gauss_mix_blockset();
    CHECK(bs.size() == 5);
    CHECK(bs[0].measure() == doctest::Approx(1.6));
    CHECK(std::abs(bs.total_measure() - 2.744) < 0.008);
    const double rate = exact_adoption_rate(d, bs);
    CHECK(std::abs(rate - 0.3644) < 0.0010);
    // Unit-K form of the rate agrees with K / sum.
    CHECK(std::abs(rate - 1.0 / bs.total_measure()) < 0.002);

    const auto report = validate_blockset(bs, d, 100000, 1e-12);
    CHECK(report.cover.violations == 0);
    CHECK(report.overlap.violations == 0);
    CHECK(report.all_passed());
}

TEST_CASE("shrinking the central disk breaks the cover") {
    dist::GaussMixBlockParams broken;
    broken.disk5_radius = 0.5;
    broken.area_cells_per_axis = 400;
    const auto report = validate_blockset(dist::gauss_mix_blockset(broken), dist::gauss_mix_density(), 40000, 1e-12);
    CHECK(report.cover.status == CheckStatus::failed);
    CHECK(report.cover.violations > 0);
}

TEST_CASE("half-normal companions") {
    CHECK(dist::half_normal_pdf(0.0) == doctest::Approx(0.79788).epsilon(1e-5));
    CHECK(dist::half_normal_pdf(-1.0) == 0.0);
    CHECK(dist::half_normal_pdf_inv(dist::half_normal_pdf(1.7)) == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(dist::half_normal_cdf(1.0) + dist::half_normal_tail_mass(1.0) == doctest::Approx(1.0));
    CHECK(dist::half_normal_tail_mass(0.0) == 1.0);
}
