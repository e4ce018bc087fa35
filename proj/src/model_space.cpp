#include "curvelab/model_space.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "curvelab/errors.hpp"

namespace curvelab {

namespace {

constexpr double kPi = std::numbers::pi;

// Series switchover: r sqrt|K| below this uses 4-term Taylor expansions,
// keeping truncation below 1e-16 relative.
constexpr double kSeriesThreshold = 1e-4;

[[noreturn]] void pole_error(double K, double r) {
    throw DomainError("sin_k/cot_k: r*sqrt(K) = " +
                      std::to_string(r * std::sqrt(K)) +
                      " reaches the trigonometric pole (>= pi)");
}

} // namespace

ModelSpace::ModelSpace(int n_, double K_)
    : ModelSpace(n_, K_,
                 K_ > 0.0 ? kPi / std::sqrt(K_)
                          : std::numeric_limits<double>::infinity()) {}

ModelSpace::ModelSpace(int n_, double K_, double inj_) : n(n_), K(K_), inj(inj_) {
    if (n < 2) throw DomainError("ModelSpace: dimension must be >= 2");
    if (!(inj > 0.0)) throw DomainError("ModelSpace: injectivity radius must be positive");
    if (!std::isfinite(K)) throw DomainError("ModelSpace: curvature must be finite");
}

ComparisonPair::ComparisonPair(double kappa_, double K_) : kappa(kappa_), K(K_) {
    if (!(kappa <= K)) throw DomainError("ComparisonPair: requires kappa <= K");
}

double sin_k(double K, double r) {
    if (r < 0.0) throw DomainError("sin_k: radius must be nonnegative");
    if (K == 0.0) return r;
    double x = K * r * r; // signed; series valid for both signs
    if (K > 0.0 && r * std::sqrt(K) >= kPi) pole_error(K, r);
    if (std::abs(x) < kSeriesThreshold * kSeriesThreshold) {
        return r * (1.0 + x * (-1.0 / 6.0 + x * (1.0 / 120.0 - x / 5040.0)));
    }
    if (K > 0.0) {
        double sk = std::sqrt(K);
        return std::sin(r * sk) / sk;
    }
    double sk = std::sqrt(-K);
    return std::sinh(r * sk) / sk;
}

double cos_k(double K, double r) {
    if (r < 0.0) throw DomainError("cos_k: radius must be nonnegative");
    if (K == 0.0) return 1.0;
    double x = K * r * r;
    if (K > 0.0 && r * std::sqrt(K) >= kPi) pole_error(K, r);
    if (std::abs(x) < kSeriesThreshold * kSeriesThreshold) {
        return 1.0 + x * (-0.5 + x * (1.0 / 24.0 - x / 720.0));
    }
    return K > 0.0 ? std::cos(r * std::sqrt(K)) : std::cosh(r * std::sqrt(-K));
}

double cot_k(double K, double r) {
    if (!(r > 0.0)) throw DomainError("cot_k: radius must be positive");
    if (K == 0.0) return 1.0 / r;
    if (K > 0.0 && r * std::sqrt(K) >= kPi) pole_error(K, r);
    double x = K * r * r;
    if (std::abs(x) < kSeriesThreshold * kSeriesThreshold) {
        // z cot z = 1 - z^2/3 - z^4/45 - 2 z^6/945, z^2 = x
        return (1.0 + x * (-1.0 / 3.0 + x * (-1.0 / 45.0 - x * 2.0 / 945.0))) / r;
    }
    return cos_k(K, r) / sin_k(K, r);
}

double admissible_radius(const ModelSpace& space) {
    double trig = space.K > 0.0 ? kPi / (2.0 * std::sqrt(space.K))
                                : std::numeric_limits<double>::infinity();
    return std::min(space.inj, trig);
}

double gamma_k(const ModelSpace& space, double K_ref, double r) {
    if (!(r > 0.0)) throw DomainError("gamma_k: radius must be positive");
    double K_top = std::max(space.K, K_ref);
    double limit = std::min(space.inj, K_top > 0.0
                                           ? kPi / (2.0 * std::sqrt(K_top))
                                           : std::numeric_limits<double>::infinity());
    if (!(r < limit)) throw DomainError("gamma_k: radius outside admissible range");
    return (space.n - 1) * (cot_k(space.K, r) - cot_k(K_ref, r));
}

namespace {

double bound_closed_form(CotBound part, double x) {
    // Values near x = 0 by the same series used in cot_k.
    auto sx_cot = [](double x_) {
        if (x_ < 1e-8)
            return 1.0 + x_ * (-1.0 / 3.0 + x_ * (-1.0 / 45.0 - x_ * 2.0 / 945.0));
        double z = std::sqrt(x_);
        return z * std::cos(z) / std::sin(z);
    };
    auto sx_coth = [](double x_) {
        if (x_ < 1e-8)
            return 1.0 + x_ * (1.0 / 3.0 + x_ * (-1.0 / 45.0 + x_ * 2.0 / 945.0));
        double z = std::sqrt(x_);
        return z * std::cosh(z) / std::sinh(z);
    };
    switch (part) {
        case CotBound::SqrtCot: return sx_cot(x);
        case CotBound::SqrtCoth: return sx_coth(x);
        case CotBound::XCot2: {
            double f = sx_cot(x);
            return f * f; // x cot^2 sqrt(x) == (sqrt(x) cot sqrt(x))^2
        }
        case CotBound::XCoth2: {
            double f = sx_coth(x);
            return f * f;
        }
    }
    throw DomainError("cot_bound_derivative: unknown part");
}

bool trig_part(CotBound part) {
    return part == CotBound::SqrtCot || part == CotBound::XCot2;
}

} // namespace

std::array<double, 2> cot_bound_range(CotBound part) {
    switch (part) {
        case CotBound::SqrtCot: return {-1.0 / 3.0, 0.0};
        case CotBound::SqrtCoth: return {0.0, 1.0 / 3.0};
        case CotBound::XCot2: return {-1.0, 0.0};
        case CotBound::XCoth2: return {0.0, 1.0};
    }
    throw DomainError("cot_bound_range: unknown part");
}

double cot_bound_derivative(CotBound part, double x) {
    const double quarter_pi2 = (kPi / 2.0) * (kPi / 2.0);
    if (x < 0.0) throw DomainError("cot_bound_derivative: x must be >= 0");
    if (trig_part(part) && x >= quarter_pi2)
        throw DomainError("cot_bound_derivative: x must be < (pi/2)^2 for cot parts");

    double h = std::max(1e-5, 1e-5 * x);
    // Series limits at the origin where the stencil has no room.
    if (x < 2.0 * h) {
        double slope0;
        switch (part) {
            case CotBound::SqrtCot: slope0 = -1.0 / 3.0 - 2.0 * x / 45.0; break;
            case CotBound::SqrtCoth: slope0 = 1.0 / 3.0 - 2.0 * x / 45.0; break;
            case CotBound::XCot2: slope0 = -2.0 / 3.0 + (2.0 / 15.0 - 2.0 / 45.0) * x; break;
            case CotBound::XCoth2: slope0 = 2.0 / 3.0 + (2.0 / 15.0 - 2.0 / 45.0) * x; break;
            default: throw DomainError("cot_bound_derivative: unknown part");
        }
        return slope0;
    }

    auto f = [&](double t) { return bound_closed_form(part, t); };

    bool clipped_right = trig_part(part) && x + 2.0 * h >= quarter_pi2;
    if (!clipped_right) {
        // 5-point central: (f(-2h) - 8 f(-h) + 8 f(h) - f(2h)) / 12h
        return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) /
               (12.0 * h);
    }
    // One-sided 5-point stencil at the right end of the cot domain.
    return (25.0 * f(x) - 48.0 * f(x - h) + 36.0 * f(x - 2.0 * h) -
            16.0 * f(x - 3.0 * h) + 3.0 * f(x - 4.0 * h)) /
           (12.0 * h);
}

std::array<double, 4> lemma_cot_residuals(double x) {
    return {cot_bound_derivative(CotBound::SqrtCot, x),
            cot_bound_derivative(CotBound::SqrtCoth, x),
            cot_bound_derivative(CotBound::XCot2, x),
            cot_bound_derivative(CotBound::XCoth2, x)};
}

} // namespace curvelab
