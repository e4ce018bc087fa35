#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/radial_profile.hpp"

using namespace curvelab;

namespace {
constexpr double kPi = std::numbers::pi;

std::shared_ptr<const std::vector<double>> shared_grid(std::vector<double> g) {
    return std::make_shared<const std::vector<double>>(std::move(g));
}
} // namespace

TEST_CASE("flat profiles are monomials") {
    auto grid = shared_grid(log_grid(1e-3, 2.0, 200));
    for (int n : {2, 3, 4}) {
        for (int l : {0, 1, 3, 8}) {
            RadialProfile p(ModelSpace(n, 0.0), l, grid);
            for (std::size_t i = 0; i < grid->size(); ++i) {
                double r = (*grid)[i];
                double exact = std::pow(r, l);
                double dexact = l == 0 ? 0.0 : l * std::pow(r, l - 1);
                CHECK(std::abs(p.value(i) - exact) <= 1e-10 * std::abs(exact));
                CHECK(std::abs(p.derivative(i) - dexact) <=
                      1e-10 * std::max(1e-30, std::abs(dexact)));
            }
        }
    }
}

TEST_CASE("spherical profiles match the stereographic closed form") {
    // n=2, K=1: leading-coefficient-normalized solution is (2 tan(r/2))^l
    auto grid = shared_grid(log_grid(1e-3, 0.98 * kPi / 2, 160));
    for (int l : {1, 2, 5}) {
        RadialProfile p(ModelSpace(2, 1.0), l, grid);
        for (std::size_t i = 0; i < grid->size(); ++i) {
            double r = (*grid)[i];
            double exact = std::pow(2.0 * std::tan(r / 2.0), l);
            CHECK(std::abs(p.value(i) - exact) <= 1e-8 * std::abs(exact));
        }
    }
}

TEST_CASE("hyperbolic profiles match the tanh closed form") {
    auto grid = shared_grid(log_grid(1e-3, 2.5, 160));
    for (int l : {1, 4}) {
        RadialProfile p(ModelSpace(2, -1.0), l, grid);
        for (std::size_t i = 0; i < grid->size(); ++i) {
            double r = (*grid)[i];
            double exact = std::pow(2.0 * std::tanh(r / 2.0), l);
            CHECK(std::abs(p.value(i) - exact) <= 1e-8 * std::abs(exact));
        }
    }
}

TEST_CASE("profile positivity and leading behaviour") {
    auto grid = shared_grid(log_grid(1e-4, 1.2, 120));
    for (double K : {1.0, 0.0, -1.0}) {
        for (int n : {2, 3, 4}) {
            RadialProfile p(ModelSpace(n, K), 3, grid);
            for (std::size_t i = 0; i < grid->size(); ++i) CHECK(p.value(i) > 0.0);
            // w(r)/r^l -> 1 at the small end of the grid
            double r0 = grid->front();
            CHECK(p.value(0) / std::pow(r0, 3) == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("ode defect stays below solver tolerance") {
    auto grid = shared_grid(log_grid(1e-3, 1.4, 96));
    for (double K : {1.0, -1.0, 0.0}) {
        for (int n : {2, 4}) {
            for (int l : {0, 2, 9}) {
                RadialProfile p(ModelSpace(n, K), l, grid);
                CHECK(p.ode_defect() <= 1e-9);
            }
        }
    }
}

TEST_CASE("profile set shares a grid and validates lookups") {
    RadialProfileSet set(ModelSpace(3, 1.0), {0, 1, 2, 2, 1}, log_grid(1e-3, 1.2, 64));
    CHECK(set.has(2));
    CHECK(!set.has(5));
    CHECK(set.at(1).degree() == 1);
    CHECK(set.index_of(set.grid()[10]) == 10);
    CHECK_THROWS_AS(set.index_of(0.1234567), DomainError);
    CHECK_THROWS_AS(set.at(7), DomainError);
}

TEST_CASE("grid validation") {
    auto bad = shared_grid({0.5, 0.4});
    CHECK_THROWS_AS(RadialProfile(ModelSpace(2, 1.0), 1, bad), DomainError);
    auto outside = shared_grid({0.5, 1.7}); // beyond pi/2 for K=1
    CHECK_THROWS_AS(RadialProfile(ModelSpace(2, 1.0), 1, outside), DomainError);
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 8), DomainError);
}
