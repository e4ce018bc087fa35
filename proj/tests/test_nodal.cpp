#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/nodal.hpp"
#include "curvelab/sphere_basis.hpp"

using namespace curvelab;

namespace {
constexpr double kPi = std::numbers::pi;

SphereFunc sectoral(int l) {
    return [l](double th, double ph) { return std::pow(std::sin(th), l) * std::cos(l * ph); };
}
} // namespace

TEST_CASE("sectoral families trace to 2 pi l within one percent") {
    for (int l : {1, 2, 4, 8}) {
        NodalTrace tr = trace_nodal(sectoral(l), l, 16 * l < 8 ? 8 : 16 * l);
        CHECK(tr.length == doctest::Approx(2.0 * kPi * l).epsilon(0.01));
    }
}

TEST_CASE("x-coordinate great circle") {
    // u = x = sin(theta) cos(phi): one great circle of length 2 pi
    NodalTrace tr = trace_nodal(sectoral(1), 1, 64);
    CHECK(tr.length == doctest::Approx(2.0 * kPi).epsilon(0.01));
}

TEST_CASE("constant has empty trace") {
    NodalTrace tr = trace_nodal([](double, double) { return 0.7; }, 0, 16);
    CHECK(tr.segments.empty());
    CHECK(tr.length == 0.0);
}

TEST_CASE("segment endpoints sit within a cell of a sign change") {
    RandomHarmonic h = random_harmonic(6, 77ULL);
    int res = 8 * 6;
    NodalTrace tr = trace_nodal([&](double th, double ph) { return h.eval(th, ph); }, 6, res);
    CHECK(!tr.segments.empty());
    double dth = kPi / (res / 2);
    for (const auto& s : tr.segments) {
        // each endpoint must see both signs within about one cell
        for (auto [th, ph] : {std::pair{s.th0, s.ph0}, std::pair{s.th1, s.ph1}}) {
            bool pos = false, neg = false;
            for (int a = -1; a <= 1; ++a) {
                for (int b = -1; b <= 1; ++b) {
                    double v = h.eval(std::clamp(th + a * dth, 0.0, kPi), ph + b * dth);
                    pos = pos || v > 0.0;
                    neg = neg || v <= 0.0;
                }
            }
            CHECK((pos && neg));
        }
    }
}

TEST_CASE("resolution convergence on the sectoral family") {
    int l = 4;
    double len1 = trace_nodal(sectoral(l), l, 16 * l).length;
    double len2 = trace_nodal(sectoral(l), l, 32 * l).length;
    CHECK(std::abs(len2 - len1) / len1 < 0.005);
}

TEST_CASE("rotation invariance within one percent") {
    RandomHarmonic h = random_harmonic(5, 2024ULL);
    auto plain = [&](double th, double ph) { return h.eval(th, ph); };
    // rotate by 0.7 about the y-axis: evaluate at R^T x
    double c = std::cos(0.7), s = std::sin(0.7);
    auto rotated = [&](double th, double ph) {
        double x = std::sin(th) * std::cos(ph), y = std::sin(th) * std::sin(ph),
               z = std::cos(th);
        double xr = c * x - s * z, zr = s * x + c * z;
        double thr = std::acos(std::clamp(zr, -1.0, 1.0));
        double phr = std::atan2(y, xr);
        return h.eval(thr, phr);
    };
    double l1 = trace_nodal(plain, 5, 16 * 5).length;
    double l2 = trace_nodal(rotated, 5, 16 * 5).length;
    CHECK(std::abs(l2 - l1) / l1 < 0.01);
}

TEST_CASE("nyquist and degeneracy guards") {
    CHECK_THROWS_AS(trace_nodal(sectoral(4), 4, 16), DomainError);
    CHECK_THROWS_AS(yau_scaling_fit({5}, 1ULL), DomainError);
    CHECK_THROWS_AS(yau_scaling_fit({5, 5, 5}, 1ULL), DomainError);
}

TEST_CASE("scaling fit on random harmonics") {
    std::vector<int> degrees{4, 6, 9, 12, 16};
    YauFit fit = yau_scaling_fit(degrees, 31337ULL);
    CHECK(fit.rows.size() == degrees.size());
    CHECK(fit.slope > 0.8);
    CHECK(fit.slope < 1.2);
    for (const auto& row : fit.rows) {
        CHECK(row.length_over_sqrt_lambda >= fit.c1);
        CHECK(row.length_over_sqrt_lambda <= fit.c2);
    }
    // determinism
    YauFit again = yau_scaling_fit(degrees, 31337ULL);
    for (std::size_t i = 0; i < fit.rows.size(); ++i)
        CHECK(fit.rows[i].length == again.rows[i].length);
}
