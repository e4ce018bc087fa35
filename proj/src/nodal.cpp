#include "curvelab/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "curvelab/errors.hpp"
#include "curvelab/parallel.hpp"
#include "curvelab/rng.hpp"
#include "curvelab/sphere_basis.hpp"

namespace curvelab {

namespace {

constexpr double kPi = std::numbers::pi;

struct EdgePoint {
    double th, ph;
};

// linear zero crossing between (c0, v0) and (c1, v1) along one coordinate
double crossing(double c0, double c1, double v0, double v1) {
    double t = v0 / (v0 - v1);
    return c0 + t * (c1 - c0);
}

double wrap_dphi(double d) {
    while (d > kPi) d -= 2.0 * kPi;
    while (d < -kPi) d += 2.0 * kPi;
    return d;
}

double segment_length(const NodalSegment& s) {
    double dth = s.th1 - s.th0;
    double dph = wrap_dphi(s.ph1 - s.ph0);
    double mid = 0.5 * (s.th0 + s.th1);
    double sm = std::sin(mid);
    return std::sqrt(dth * dth + sm * sm * dph * dph);
}

} // namespace

NodalTrace trace_nodal(const SphereFunc& u, int degree, int resolution) {
    if (degree < 0) throw DomainError("trace_nodal: degree must be >= 0");
    if (degree > 0 && resolution < 8 * degree)
        throw DomainError("trace_nodal: resolution below the Nyquist guard (8 per degree)");
    if (resolution < 8) throw DomainError("trace_nodal: resolution must be >= 8");

    const int nphi = resolution;
    const int nth = resolution / 2;
    const double dth = kPi / nth;
    const double dph = 2.0 * kPi / nphi;

    // node values; theta rows 0..nth inclusive, phi columns periodic
    std::vector<double> val(static_cast<std::size_t>(nth + 1) * nphi);
    for (int i = 0; i <= nth; ++i) {
        double th = i * dth;
        for (int j = 0; j < nphi; ++j) val[i * nphi + j] = u(th, j * dph);
    }

    NodalTrace trace;
    trace.degree = degree;
    trace.lambda = static_cast<double>(degree) * (degree + 1);
    trace.resolution = resolution;

    auto emit = [&](const EdgePoint& a, const EdgePoint& b) {
        trace.segments.push_back({a.th, a.ph, b.th, b.ph});
    };

    for (int i = 0; i < nth; ++i) {
        double th0 = i * dth, th1 = (i + 1) * dth;
        for (int j = 0; j < nphi; ++j) {
            double ph0 = j * dph, ph1 = (j + 1) * dph; // ph1 may wrap
            int jn = (j + 1) % nphi;
            double v00 = val[i * nphi + j];       // (th0, ph0)
            double v01 = val[i * nphi + jn];      // (th0, ph1)
            double v10 = val[(i + 1) * nphi + j]; // (th1, ph0)
            double v11 = val[(i + 1) * nphi + jn];

            int idx = (v00 > 0.0 ? 1 : 0) | (v01 > 0.0 ? 2 : 0) | (v11 > 0.0 ? 4 : 0) |
                      (v10 > 0.0 ? 8 : 0);
            if (idx == 0 || idx == 15) continue;

            // edge crossings (top: th0 row, bottom: th1 row, left: ph0, right: ph1)
            EdgePoint top{th0, crossing(ph0, ph1, v00, v01)};
            EdgePoint bottom{th1, crossing(ph0, ph1, v10, v11)};
            EdgePoint left{crossing(th0, th1, v00, v10), ph0};
            EdgePoint right{crossing(th0, th1, v01, v11), ph1};

            switch (idx) {
                case 1: case 14: emit(top, left); break;
                case 2: case 13: emit(top, right); break;
                case 3: case 12: emit(left, right); break;
                case 4: case 11: emit(right, bottom); break;
                case 6: case 9: emit(top, bottom); break;
                case 7: case 8: emit(left, bottom); break;
                case 5: case 10: {
                    // saddle: split by the center sample
                    double vc = u(0.5 * (th0 + th1), ph0 + 0.5 * dph);
                    bool center_pos = vc > 0.0;
                    bool diag_pos = idx == 5; // v00, v11 positive
                    if (center_pos == diag_pos) {
                        emit(top, right);
                        emit(left, bottom);
                    } else {
                        emit(top, left);
                        emit(right, bottom);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    double len = 0.0;
    for (const auto& s : trace.segments) len += segment_length(s);
    trace.length = len;
    return trace;
}

double RandomHarmonic::eval(double theta, double phi) const {
    double acc = 0.0;
    for (int m = -degree; m <= degree; ++m)
        acc += coeffs[m + degree] * real_sph_harm(degree, m, theta, phi);
    return acc;
}

RandomHarmonic random_harmonic(int degree, std::uint64_t seed) {
    RandomHarmonic h;
    h.degree = degree;
    h.coeffs.resize(2 * degree + 1);
    Rng rng(seed);
    for (double& c : h.coeffs) c = rng.normal();
    return h;
}

YauFit yau_scaling_fit(const std::vector<int>& degrees, std::uint64_t seed,
                       int resolution_factor) {
    std::vector<int> ls = degrees;
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    if (ls.size() < 2)
        throw DomainError("yau_scaling_fit: need at least two distinct degrees");
    if (ls.front() < 1) throw DomainError("yau_scaling_fit: degrees must be >= 1");

    YauFit fit;
    fit.rows.resize(ls.size());
    parallel_for(ls.size(), [&](std::size_t i) {
        int l = ls[i];
        RandomHarmonic h = random_harmonic(l, Rng::sub_seed(seed, static_cast<std::uint64_t>(l)));
        NodalTrace tr = trace_nodal([&h](double th, double ph) { return h.eval(th, ph); }, l,
                                    resolution_factor * l);
        YauFitRow row;
        row.l = l;
        row.lambda = tr.lambda;
        row.length = tr.length;
        row.length_over_sqrt_lambda = tr.length / std::sqrt(tr.lambda);
        fit.rows[i] = row;
    });

    double mx = 0.0, my = 0.0;
    for (const auto& r : fit.rows) {
        mx += 0.5 * std::log(r.lambda);
        my += std::log(r.length);
    }
    mx /= fit.rows.size();
    my /= fit.rows.size();
    double sxx = 0.0, sxy = 0.0;
    for (const auto& r : fit.rows) {
        double x = 0.5 * std::log(r.lambda) - mx;
        sxx += x * x;
        sxy += x * (std::log(r.length) - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.c1 = std::numeric_limits<double>::infinity();
    fit.c2 = 0.0;
    for (const auto& r : fit.rows) {
        fit.c1 = std::min(fit.c1, r.length_over_sqrt_lambda);
        fit.c2 = std::max(fit.c2, r.length_over_sqrt_lambda);
    }
    return fit;
}

void write_trace_svg(const NodalTrace& trace, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("write_trace_svg: cannot open " + path);
    const double W = 720.0, H = 360.0;
    std::fprintf(f,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                 "viewBox=\"0 0 %.0f %.0f\">\n<rect width=\"100%%\" height=\"100%%\" "
                 "fill=\"white\"/>\n",
                 W, H, W, H);
    for (const auto& s : trace.segments) {
        if (std::abs(wrap_dphi(s.ph1 - s.ph0)) < kPi / 2.0 &&
            std::abs(s.ph1 - s.ph0) > kPi) // crosses the seam; skip the wrap line
            continue;
        std::fprintf(f,
                     "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                     "stroke=\"black\" stroke-width=\"0.6\"/>\n",
                     s.ph0 / (2 * kPi) * W, s.th0 / kPi * H, s.ph1 / (2 * kPi) * W,
                     s.th1 / kPi * H);
    }
    std::fprintf(f, "</svg>\n");
    std::fclose(f);
}

} // namespace curvelab
