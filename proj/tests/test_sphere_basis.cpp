#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/quadrature.hpp"
#include "curvelab/rng.hpp"
#include "curvelab/sphere_basis.hpp"

using namespace curvelab;

namespace {
constexpr double kPi = std::numbers::pi;

// Integrates f over the unit sphere S^{n-1} with a product rule.
double sphere_integral(int n, int lmax, const std::function<double(std::span<const double>)>& f) {
    SphereRule rule = make_sphere_rule(n - 1, lmax);
    double s = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) s += rule.weights[j] * f(rule.node(j));
    return s;
}
} // namespace

TEST_CASE("mode metadata") {
    CHECK(mode_count(2, 0) == 1);
    CHECK(mode_count(2, 5) == 2);
    CHECK(mode_count(3, 4) == 9);
    CHECK(mode_count(4, 3) == 16);
    CHECK(make_mode(3, 7, 0).eig == 7.0 * 8.0);
    CHECK(make_mode(4, 5, 2).eig == 5.0 * 7.0);
    CHECK(make_mode(2, 9, 1).eig == 81.0);
    CHECK_THROWS_AS(make_mode(3, 2, 5), DomainError);
    CHECK_THROWS_AS(make_mode(5, 1, 0), DomainError);
}

TEST_CASE("legendre and gegenbauer closed forms") {
    CHECK(legendre_p(2, 0.5) == doctest::Approx(0.5 * (3 * 0.25 - 1)).epsilon(1e-14));
    CHECK(legendre_p(3, -0.3) ==
          doctest::Approx(0.5 * (5 * std::pow(-0.3, 3) - 3 * -0.3)).epsilon(1e-13));
    // C_k^(1) = Chebyshev U_k: sin((k+1)t)/sin t
    for (int k : {0, 1, 4, 9}) {
        double t = 0.83;
        CHECK(gegenbauer(k, 1.0, std::cos(t)) ==
              doctest::Approx(std::sin((k + 1) * t) / std::sin(t)).epsilon(1e-12));
    }
}

TEST_CASE("unit normalization across dimensions") {
    Rng rng(321ULL);
    for (int n : {2, 3, 4}) {
        for (int l : {0, 1, 3, 7}) {
            for (int trial = 0; trial < 3; ++trial) {
                int mu = static_cast<int>(rng.below(mode_count(n, l)));
                SphericalMode mode = make_mode(n, l, mu);
                double nrm = sphere_integral(n, l + 1, [&](std::span<const double> v) {
                    double y = mode_eval(n, mode, v, AngularNorm::Unit);
                    return y * y;
                });
                CHECK(nrm == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("distinct modes are orthogonal") {
    Rng rng(654ULL);
    for (int n : {2, 3, 4}) {
        for (int trial = 0; trial < 12; ++trial) {
            int l1 = static_cast<int>(rng.below(7));
            int l2 = static_cast<int>(rng.below(7));
            int mu1 = static_cast<int>(rng.below(mode_count(n, l1)));
            int mu2 = static_cast<int>(rng.below(mode_count(n, l2)));
            if (l1 == l2 && mu1 == mu2) continue;
            SphericalMode a = make_mode(n, l1, mu1), b = make_mode(n, l2, mu2);
            double ip = sphere_integral(n, 8, [&](std::span<const double> v) {
                return mode_eval(n, a, v, AngularNorm::Unit) *
                       mode_eval(n, b, v, AngularNorm::Unit);
            });
            CHECK(std::abs(ip) < 1e-12);
        }
    }
}

TEST_CASE("raw circle convention has norm^2 = pi for every degree") {
    for (int l : {0, 1, 2, 6}) {
        for (int mu = 0; mu < mode_count(2, l); ++mu) {
            SphericalMode mode = make_mode(2, l, mu);
            CHECK(mode_norm2(2, mode, AngularNorm::Raw) == kPi);
            double nrm = sphere_integral(2, l + 1, [&](std::span<const double> v) {
                double y = mode_eval(2, mode, v, AngularNorm::Raw);
                return y * y;
            });
            CHECK(nrm == doctest::Approx(kPi).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(mode_norm2(3, make_mode(3, 1, 0), AngularNorm::Raw), DomainError);
}

TEST_CASE("real spherical harmonic sanity") {
    // Y_10 = sqrt(3/4pi) cos(theta)
    double v = real_sph_harm(1, 0, 0.7, 0.0);
    CHECK(v == doctest::Approx(std::sqrt(3.0 / (4 * kPi)) * std::cos(0.7)).epsilon(1e-13));
    // sectoral l=m: proportional to sin^l theta cos(l phi)
    double a = real_sph_harm(4, 4, 1.1, 0.3);
    double b = real_sph_harm(4, 4, 1.1, 0.0);
    CHECK(a / b == doctest::Approx(std::cos(4 * 0.3)).epsilon(1e-12));
}
