#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "pbm/blocks2d.hpp"
#include "pbm/distributions.hpp"
#include "pbm/numeric.hpp"

using namespace pbm;
using std::numbers::pi;

namespace {

// The mixture written out again, independent of the library.
double mixture(double x1, double x2) {
    const double c = 2119.0 / 9970.0;
    return c * (std::exp(-x1 * x1 - x2 * x2) + 0.5 * std::exp(-(x1 - 2) * (x1 - 2) - (x2 - 2) * (x2 - 2)));
}

const Rect kBox{{-2.0, 3.5}, {-2.0, 3.5}};

}  // namespace

TEST_CASE("slab block") {
    const auto slab = slab_block(dist::mix_domain(), 0.0, 1.0 / 40.0);
    CHECK(slab.measure() == doctest::Approx(1.6).epsilon(1e-15));
    UniformSource src(12);
    double sx = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto c = slab.sample_uniform(src);
        REQUIRE(c.height >= 0.0);
        REQUIRE(c.height <= 1.0 / 40.0);
        REQUIRE(slab.contains(c.point, c.height));
        sx += c.point.x();
    }
    CHECK(std::abs(sx / n) < 0.03);
    CHECK_THROWS_AS(slab_block(Rect{{0.0, 0.0}, {0.0, 1.0}}, 0.0, 1.0), BlockError);
    CHECK_THROWS_AS(slab_block(dist::mix_domain(), 0.5, 0.5), BlockError);
}

TEST_CASE("superlevel area against a finer independent grid") {
    // Oracle: 2400^2 midpoint indicator sum over the box.
    const std::size_t m = 2400;
    const double h = 5.5 / m;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            hits += mixture(-2.0 + (i + 0.5) * h, -2.0 + (j + 0.5) * h) >= 1.0 / 40.0;
    const double oracle_area = static_cast<double>(hits) * h * h;
    CHECK(std::abs(oracle_area - 11.8) < 0.1);

    const auto a = superlevel_area(1.0 / 40.0, kBox, dist::gauss_mix_pdf, 2000);
    CHECK(std::abs(a.area - oracle_area) < 5e-3);
    CHECK(a.error_estimate < 5e-3);
}

TEST_CASE("superlevel block sampler") {
    const auto lc = dist::level_constants();
    SuperlevelOptions opt;
    opt.scan_region = dist::mix_domain();
    const auto blk = superlevel_block(lc.b0, kBox, dist::gauss_mix_pdf, lc.b0, lc.b1, opt);
    const double area = blk.measure() / (lc.b1 - lc.b0);
    CHECK(std::abs(area - 11.8) < 0.1);

    UniformSource src(13);
    BlockDrawStats stats;
    const int n = 100000;
    // Test sub-rectangle wholly inside the superlevel set.
    const Rect test{{-0.5, 0.5}, {-0.25, 0.75}};
    int in_test = 0;
    for (int i = 0; i < n; ++i) {
        const auto c = blk.sample_uniform(src, stats);
        REQUIRE(mixture(c.point.x(), c.point.y()) >= lc.b0);
        REQUIRE(c.height >= lc.b0);
        REQUIRE(c.height <= lc.b1);
        in_test += test.contains(c.point.x(), c.point.y());
    }
    const double draws = static_cast<double>(n + stats.inner_retries);
    const double p_inner = area / (5.5 * 5.5);
    CHECK(std::abs(n / draws - p_inner) < 4.0 * oracle::binomial_sigma(p_inner, draws));

    const double p_test = test.area() / area;
    CHECK(std::abs(static_cast<double>(in_test) / n - p_test) < 4.0 * oracle::binomial_sigma(p_test, n));
}

TEST_CASE("superlevel block errors") {
    const auto lc = dist::level_constants();
    SuperlevelOptions opt;
    opt.scan_region = dist::mix_domain();
    opt.area_cells_per_axis = 200;
    // A box that cuts through the superlevel set is rejected by the scan.
    const Rect small{{-1.0, 1.0}, {-1.0, 1.0}};
    CHECK_THROWS_AS(superlevel_block(lc.b0, small, dist::gauss_mix_pdf, lc.b0, lc.b1, opt), BlockError);
    // Level above the maximum: empty set.
    CHECK_THROWS_AS(superlevel_block(1.0, kBox, dist::gauss_mix_pdf, lc.b0, lc.b1, opt), BlockError);

    // A tiny superlevel set with a cap of one inner draw fails loudly.
    SuperlevelOptions capped;
    capped.area_cells_per_axis = 2000;
    capped.inner_cap = 1;
    const auto blk = superlevel_block(0.99 * lc.b3, kBox, dist::gauss_mix_pdf, 0.0, 1.0, capped);
    UniformSource src(1);
    CHECK_THROWS_AS(
        [&] {
            for (int i = 0; i < 1000; ++i) blk.sample_uniform(src);
        }(),
        RestrictionCapExceeded);
}

TEST_CASE("cylinder block polar sampler") {
    const auto cyl = cylinder_block(Point(0.0, 0.0), 1.0, 0.0, 1.0);
    CHECK(cyl.measure() == doctest::Approx(pi));
    UniformSource src(14);
    const int n = 100000;
    int inner = 0, annulus = 0;
    std::vector<std::uint64_t> sectors(12, 0);
    for (int i = 0; i < n; ++i) {
        const auto c = cyl.sample_uniform(src);
        REQUIRE(cyl.contains(c.point, c.height));
        const double r = std::hypot(c.point.x(), c.point.y());
        inner += r <= 0.5;
        annulus += (r >= 0.3 && r <= 0.8);
        const double theta = std::atan2(c.point.y(), c.point.x()) + pi;
        ++sectors[std::min<std::size_t>(11, static_cast<std::size_t>(theta / (2 * pi) * 12))];
    }
    CHECK(std::abs(static_cast<double>(inner) / n - 0.25) < 0.005);
    const double p_ann = 0.8 * 0.8 - 0.3 * 0.3;
    CHECK(std::abs(static_cast<double>(annulus) / n - p_ann) < 4.0 * oracle::binomial_sigma(p_ann, n));
    CHECK(numeric::chi_square_gof(sectors, std::vector<double>(12, 1.0 / 12)).p_value > 0.001);

    CHECK_THROWS_AS(cylinder_block(Point(0.0, 0.0), 0.0, 0.0, 1.0), BlockError);
    CHECK_THROWS_AS(cylinder_block(Point(0.0, 0.0), 1.0, 1.0, 0.5), BlockError);
}

TEST_CASE("cylinder measures of the mixture cover") {
    const double c = 2119.0 / 9970.0;
    const double b1 = 1.0 / 15.0;
    const double b2 = c * (std::exp(-8.0) + 0.5);
    const double b3 = c * (1.0 + 0.5 * std::exp(-8.0));
    const auto bs = dist::gauss_mix_blockset();
    CHECK(bs[2].measure() == doctest::Approx(pi * 25.0 / 16.0 * (b2 - b1)).epsilon(1e-14));
    CHECK(std::abs(bs[2].measure() - 0.1948) < 0.0005);
    CHECK(bs[4].measure() == doctest::Approx(pi * (b3 - b2)).epsilon(1e-14));
    CHECK(std::abs(bs[4].measure() - 0.3337) < 0.0005);
}

TEST_CASE("the two disks in the same band are disjoint") {
    const auto bs = dist::gauss_mix_blockset();
    CHECK(std::hypot(2.0, 2.0) > 5.0 / 4.0 + 1.0);
    UniformSource src(15);
    int double_hits = 0;
    for (int i = 0; i < 100000; ++i) {
        const auto a = bs[2].sample_uniform(src);
        const auto b = bs[3].sample_uniform(src);
        double_hits += bs[3].contains(a.point, a.height) + bs[2].contains(b.point, b.height);
    }
    CHECK(double_hits == 0);
}
