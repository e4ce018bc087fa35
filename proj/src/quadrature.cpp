#include "curvelab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "curvelab/errors.hpp"
#include "curvelab/parallel.hpp"

namespace curvelab {

namespace {
constexpr double kPi = std::numbers::pi;
}

void gauss_legendre(int g, std::vector<double>& nodes, std::vector<double>& weights) {
    if (g < 1) throw DomainError("gauss_legendre: need at least one node");
    nodes.assign(g, 0.0);
    weights.assign(g, 0.0);
    for (int i = 0; i < (g + 1) / 2; ++i) {
        // Newton from the Chebyshev-style initial guess
        double x = std::cos(kPi * (i + 0.75) / (g + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= g; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = g * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[g - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[g - 1 - i] = w;
    }
    if (g % 2 == 1) nodes[g / 2] = 0.0;
}

SphereRule make_sphere_rule(int sphere_dim, int lmax) {
    if (lmax < 0) throw DomainError("make_sphere_rule: lmax must be >= 0");
    SphereRule rule;
    rule.dim = sphere_dim;
    switch (sphere_dim) {
        case 0: {
            // S^0 = two points, weight 1 each
            rule.coords = {1.0, -1.0};
            rule.weights = {1.0, 1.0};
            rule.exactness = 1 << 20;
            return rule;
        }
        case 1: {
            int m = 4 * lmax + 16;
            rule.coords.reserve(2 * m);
            rule.weights.assign(m, 2.0 * kPi / m);
            for (int j = 0; j < m; ++j) {
                double th = 2.0 * kPi * j / m;
                rule.coords.push_back(std::cos(th));
                rule.coords.push_back(std::sin(th));
            }
            rule.exactness = m - 1;
            return rule;
        }
        case 2: {
            int g = lmax + 2;
            int m = 4 * lmax + 16;
            std::vector<double> z, wz;
            gauss_legendre(g, z, wz);
            rule.coords.reserve(3 * g * m);
            rule.weights.reserve(g * m);
            for (int i = 0; i < g; ++i) {
                double ct = z[i];
                double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
                for (int j = 0; j < m; ++j) {
                    double ph = 2.0 * kPi * j / m;
                    rule.coords.push_back(st * std::cos(ph));
                    rule.coords.push_back(st * std::sin(ph));
                    rule.coords.push_back(ct);
                    rule.weights.push_back(wz[i] * 2.0 * kPi / m);
                }
            }
            rule.exactness = std::min(2 * g - 1, m - 1);
            return rule;
        }
        case 3: {
            // Gauss-Chebyshev (2nd kind) in cos(polar): exact for the
            // sin^2 chi weight, so products of degree <= lmax harmonics
            // integrate to machine precision.
            int gc = lmax + 2;
            int g = lmax + 2;
            int m = 4 * lmax + 16;
            std::vector<double> z, wz;
            gauss_legendre(g, z, wz);
            rule.coords.reserve(4 * gc * g * m);
            rule.weights.reserve(gc * g * m);
            for (int a = 1; a <= gc; ++a) {
                double chi = kPi * a / (gc + 1.0);
                double cchi = std::cos(chi), schi = std::sin(chi);
                double wchi = kPi / (gc + 1.0) * schi * schi;
                for (int i = 0; i < g; ++i) {
                    double ct = z[i];
                    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
                    for (int j = 0; j < m; ++j) {
                        double ph = 2.0 * kPi * j / m;
                        rule.coords.push_back(cchi);
                        rule.coords.push_back(schi * st * std::cos(ph));
                        rule.coords.push_back(schi * st * std::sin(ph));
                        rule.coords.push_back(schi * ct);
                        rule.weights.push_back(wchi * wz[i] * 2.0 * kPi / m);
                    }
                }
            }
            rule.exactness = std::min(2 * gc - 1, std::min(2 * g - 1, m - 1));
            return rule;
        }
        default:
            throw DomainError("make_sphere_rule: sphere dimension must be 0..3");
    }
}

double q_quadrature(const PointwiseField& field, double r, const SphereRule& rule) {
    const ModelSpace& sp = field.space;
    if (rule.dim != sp.n - 1)
        throw DomainError("q_quadrature: rule dimension must equal n-1");
    double chart = std::min(sp.inj, sp.K > 0.0 ? kPi / std::sqrt(sp.K) : kUnbounded);
    if (!(r > 0.0) || !(r < chart))
        throw DomainError("q_quadrature: radius outside the polar chart");
    double area_factor = std::pow(sin_k(sp.K, r), sp.n - 1);
    std::vector<double> terms(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j) {
        double u = field.eval(r, rule.node(j));
        terms[j] = rule.weights[j] * u * u;
    }
    return area_factor * pairwise_sum(terms);
}

double ball_integral(const PointwiseField& field, double r, const SphereRule& rule,
                     int radial_nodes) {
    if (!(r > 0.0)) throw DomainError("ball_integral: radius must be positive");
    std::vector<double> x, w;
    gauss_legendre(radial_nodes, x, w);
    std::vector<double> terms(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double rho = 0.5 * r * (x[i] + 1.0);
        terms[i] = 0.5 * r * w[i] * q_quadrature(field, rho, rule);
    }
    return pairwise_sum(terms);
}

namespace {

// Shared ring layout: rings sit at exact multiples of 1/density so sample
// sets nest as r grows.
int ring_count(double r, double density) {
    double step = 1.0 / density;
    return static_cast<int>(std::floor(r / step + 1e-9));
}

double ring_max_circle(const std::function<double(double)>& f, double lo, double hi,
                       int coarse) {
    // coarse sweep plus one 8x refinement window around the argmax
    double best = -std::numeric_limits<double>::infinity();
    int besti = 0;
    for (int i = 0; i <= coarse; ++i) {
        double t = lo + (hi - lo) * i / std::max(1, coarse);
        double v = std::abs(f(t));
        if (v > best) {
            best = v;
            besti = i;
        }
    }
    double span = (hi - lo) / std::max(1, coarse);
    double a = std::max(lo, lo + (besti - 1) * span);
    double b = std::min(hi, lo + (besti + 1) * span);
    for (int i = 0; i <= 16; ++i) {
        double t = a + (b - a) * i / 16.0;
        best = std::max(best, std::abs(f(t)));
    }
    return best;
}

} // namespace

double sup_norm_ball(const PointwiseField& field, double r, double density) {
    const ModelSpace& sp = field.space;
    if (sp.n != 2)
        throw DomainError("sup_norm_ball: only 2-d model spaces are sampled; "
                          "use the circle overload for 1-d bases");
    if (!(r > 0.0)) throw DomainError("sup_norm_ball: radius must be positive");
    if (!(density >= 8.0)) throw DomainError("sup_norm_ball: density must be >= 8");

    double step = 1.0 / density;
    int nr = ring_count(r, density);
    std::array<double, 2> center{1.0, 0.0};
    double best = std::abs(field.eval(0.0, std::span<const double>(center)));
    for (int i = 1; i <= nr; ++i) {
        double rho = i * step;
        double circumference = 2.0 * kPi * sin_k(sp.K, rho);
        int na = std::max(8, static_cast<int>(std::ceil(density * circumference)));
        auto on_ring = [&](double psi) {
            std::array<double, 2> v{std::cos(psi), std::sin(psi)};
            return field.eval(rho, std::span<const double>(v));
        };
        // periodic ring: sample [0, 2pi) coarsely, refine around argmax
        double ringbest = -std::numeric_limits<double>::infinity();
        int besti = 0;
        for (int j = 0; j < na; ++j) {
            double v = std::abs(on_ring(2.0 * kPi * j / na));
            if (v > ringbest) {
                ringbest = v;
                besti = j;
            }
        }
        double lo = 2.0 * kPi * (besti - 1) / na;
        double hi = 2.0 * kPi * (besti + 1) / na;
        for (int j = 0; j <= 16; ++j)
            ringbest = std::max(ringbest, std::abs(on_ring(lo + (hi - lo) * j / 16.0)));
        best = std::max(best, ringbest);
    }
    return best;
}

double sup_norm_ball(const CircleField& field, double r, double density) {
    if (!(r > 0.0)) throw DomainError("sup_norm_ball: radius must be positive");
    if (!(density >= 8.0)) throw DomainError("sup_norm_ball: density must be >= 8");
    double a = std::min(r, field.diameter);
    double step = 1.0 / density;
    int n = ring_count(a, density);
    double best = std::abs(field.eval(0.0));
    for (int i = 1; i <= n; ++i) {
        for (double s : {-1.0, 1.0}) {
            double t = s * i * step;
            best = std::max(best, std::abs(field.eval(t)));
        }
        // refinement window between this ring and the previous one
        best = std::max(best, ring_max_circle(field.eval, (i - 1) * step, i * step, 16));
        best = std::max(best, ring_max_circle(field.eval, -static_cast<double>(i) * step,
                                              -(i - 1) * step, 16));
    }
    return best;
}

} // namespace curvelab
