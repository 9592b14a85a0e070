#include "pbm/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

namespace pbm::numeric {

namespace {

struct SimpsonPanel {
    double lo, mid, hi;
    double f_lo, f_mid, f_hi;
    double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Panels shallower than this are always split, so that oscillatory
// integrands cannot pass the error test by accident on the first panel.
constexpr int kMinDepth = 5;

double adapt(const std::function<double(double)>& g, const SimpsonPanel& p, double tol, int depth,
             int max_depth) {
    const double lm = 0.5 * (p.lo + p.mid);
    const double rm = 0.5 * (p.mid + p.hi);
    const double f_lm = g(lm);
    const double f_rm = g(rm);
    const double left = simpson(p.lo, p.mid, p.f_lo, f_lm, p.f_mid);
    const double right = simpson(p.mid, p.hi, p.f_mid, f_rm, p.f_hi);
    const double delta = left + right - p.whole;
    if (depth >= kMinDepth && std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth)
        throw QuadratureError("adaptive quadrature exceeded subdivision depth near x=" +
                              std::to_string(p.mid));
    return adapt(g, {p.lo, lm, p.mid, p.f_lo, f_lm, p.f_mid, left}, 0.5 * tol, depth + 1, max_depth) +
           adapt(g, {p.mid, rm, p.hi, p.f_mid, f_rm, p.f_hi, right}, 0.5 * tol, depth + 1, max_depth);
}

double midpoint_sum(const std::function<double(double, double)>& g, const Rect& rect,
                    std::size_t n) {
    const double hx = rect.x.width() / static_cast<double>(n);
    const double hy = rect.y.width() / static_cast<double>(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rect.x.lo + (static_cast<double>(i) + 0.5) * hx;
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += g(x, rect.y.lo + (static_cast<double>(j) + 0.5) * hy);
        total += row;
    }
    return total * hx * hy;
}

void check_edges(const std::vector<double>& edges) {
    if (edges.size() < 2) throw std::invalid_argument("histogram axis needs at least two edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw std::invalid_argument("histogram edges must be strictly increasing");
}

// Bin index along one axis; bins are half-open except the last, which is closed.
std::optional<std::size_t> locate(const std::vector<double>& edges, double v) {
    if (!(v >= edges.front()) || v > edges.back()) return std::nullopt;
    if (v == edges.back()) return edges.size() - 2;
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    return static_cast<std::size_t>(it - edges.begin()) - 1;
}

}  // namespace

double quad_1d(const std::function<double(double)>& g, double lo, double hi, double tol,
               int max_depth) {
    if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    if (lo == hi) return 0.0;
    if (lo > hi) return -quad_1d(g, hi, lo, tol, max_depth);
    const double mid = 0.5 * (lo + hi);
    SimpsonPanel p{lo, mid, hi, g(lo), g(mid), g(hi), 0.0};
    p.whole = simpson(lo, hi, p.f_lo, p.f_mid, p.f_hi);
    return adapt(g, p, tol, 0, max_depth);
}

GridQuadrature quad_2d_grid(const std::function<double(double, double)>& g, const Rect& rect,
                            std::size_t cells_per_axis) {
    if (cells_per_axis < 2) throw std::invalid_argument("quad_2d_grid needs at least 2 cells per axis");
    GridQuadrature out;
    out.value = midpoint_sum(g, rect, cells_per_axis);
    const double coarse = midpoint_sum(g, rect, cells_per_axis / 2);
    out.error_estimate = std::abs(out.value - coarse) / 3.0;
    return out;
}

Histogram::Histogram(std::vector<double> edges) {
    check_edges(edges);
    counts_.assign(edges.size() - 1, 0);
    edges_.push_back(std::move(edges));
}

Histogram::Histogram(std::vector<double> x_edges, std::vector<double> y_edges) {
    check_edges(x_edges);
    check_edges(y_edges);
    counts_.assign((x_edges.size() - 1) * (y_edges.size() - 1), 0);
    edges_.push_back(std::move(x_edges));
    edges_.push_back(std::move(y_edges));
}

bool Histogram::add(const Point& p) {
    if (p.dim() != dim()) throw std::invalid_argument("point dimension does not match histogram");
    ++total_;
    const auto ix = locate(edges_[0], p[0]);
    if (!ix) {
        ++outside_;
        return false;
    }
    std::size_t flat = *ix;
    if (dim() == 2) {
        const auto iy = locate(edges_[1], p[1]);
        if (!iy) {
            ++outside_;
            return false;
        }
        flat += *iy * bins_along(0);
    }
    ++counts_[flat];
    return true;
}

void Histogram::add_all(std::span<const Point> points) {
    for (const auto& p : points) add(p);
}

Interval Histogram::bin_interval(std::size_t flat_index) const {
    const auto& e = edges_[0];
    const std::size_t i = flat_index % bins_along(0);
    return {e[i], e[i + 1]};
}

Rect Histogram::bin_rect(std::size_t flat_index) const {
    if (dim() != 2) throw std::logic_error("bin_rect needs a 2-d histogram");
    const std::size_t nx = bins_along(0);
    const std::size_t i = flat_index % nx;
    const std::size_t j = flat_index / nx;
    return {{edges_[0][i], edges_[0][i + 1]}, {edges_[1][j], edges_[1][j + 1]}};
}

double Histogram::bin_volume(std::size_t flat_index) const {
    return dim() == 1 ? bin_interval(flat_index).width() : bin_rect(flat_index).area();
}

double Histogram::density(std::size_t flat_index) const {
    if (total_ == 0) return 0.0;
    return static_cast<double>(counts_.at(flat_index)) /
           (static_cast<double>(total_) * bin_volume(flat_index));
}

double chi_square_survival(double statistic, double dof) {
    if (!(dof > 0.0)) throw std::invalid_argument("chi-square dof must be positive");
    if (std::isnan(statistic)) return 0.0;
    if (statistic <= 0.0) return 1.0;
    if (std::isinf(statistic)) return 0.0;
    return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

GofReport chi_square_gof(std::span<const std::uint64_t> observed,
                         std::span<const double> expected_probs, std::uint64_t outside) {
    if (observed.size() != expected_probs.size())
        throw std::invalid_argument("observed and expected bin counts differ");
    double psum = 0.0;
    for (double p : expected_probs) {
        if (!(p >= 0.0)) throw std::invalid_argument("expected probabilities must be nonnegative");
        psum += p;
    }
    if (std::abs(psum - 1.0) > 1e-9)
        throw std::invalid_argument("expected probabilities must sum to 1 within 1e-9");

    const std::uint64_t n_inside = std::accumulate(observed.begin(), observed.end(), std::uint64_t{0});
    const double n = static_cast<double>(n_inside + outside);

    struct Group {
        double obs = 0.0;
        double exp = 0.0;
    };
    std::vector<Group> groups;
    Group current;
    std::size_t in_current = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        current.obs += static_cast<double>(observed[i]);
        current.exp += n * expected_probs[i];
        ++in_current;
        if (current.exp >= 5.0) {
            groups.push_back(current);
            current = {};
            in_current = 0;
        }
    }
    if (in_current > 0) {
        if (groups.empty()) {
            groups.push_back(current);
        } else {
            groups.back().obs += current.obs;
            groups.back().exp += current.exp;
        }
    }
    if (groups.size() < 2)
        throw std::invalid_argument("chi-square test needs at least two effective bins");

    GofReport report;
    report.dof = groups.size() - 1;
    report.bins_merged = observed.size() - groups.size();
    report.outside = outside;
    if (outside > 0) {
        report.statistic = std::numeric_limits<double>::infinity();
        report.p_value = 0.0;
        return report;
    }
    for (const auto& g : groups) {
        const double d = g.obs - g.exp;
        report.statistic += d * d / g.exp;
    }
    report.p_value = chi_square_survival(report.statistic, static_cast<double>(report.dof));
    return report;
}

GofReport chi_square_gof(const Histogram& histogram, std::span<const double> expected_probs) {
    return chi_square_gof(histogram.counts(), expected_probs, histogram.outside());
}

GofReport chi_square_gof(std::span<const double> samples, std::span<const double> bin_edges,
                         std::span<const double> expected_probs) {
    Histogram h(std::vector<double>(bin_edges.begin(), bin_edges.end()));
    for (double s : samples) h.add(Point(s));
    return chi_square_gof(h, expected_probs);
}

double kolmogorov_survival(double lambda) {
    if (!(lambda > 0.0)) return 1.0;
    if (lambda < 1.0) {
        // Small-lambda form of the CDF converges faster here.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double sum = 0.0;
        for (int k = 1; k <= 50; ++k) {
            const double m = 2.0 * k - 1.0;
            sum += std::exp(-m * m * pi2 / (8.0 * lambda * lambda));
        }
        const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-300) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test_1d(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("KS test needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    const double sqrt_n = std::sqrt(n);
    return {d, kolmogorov_survival((sqrt_n + 0.12 + 0.11 / sqrt_n) * d)};
}

}  // namespace pbm::numeric
