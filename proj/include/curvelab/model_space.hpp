#pragma once

#include <array>
#include <limits>

namespace curvelab {

/// Constant-curvature model space: dimension n >= 2, sectional curvature K
/// (units 1/length^2) and an injectivity radius.  inj defaults to the model
/// value pi/sqrt(K) for K > 0 and +infinity otherwise; products and other
/// callers may override it downward.
struct ModelSpace {
    int n = 2;
    double K = 0.0;
    double inj = std::numeric_limits<double>::infinity();

    ModelSpace() = default;
    ModelSpace(int n_, double K_);
    ModelSpace(int n_, double K_, double inj_);
};

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Lower/upper sectional curvature bounds, kappa <= K.
struct ComparisonPair {
    double kappa = 0.0;
    double K = 0.0;

    ComparisonPair() = default;
    ComparisonPair(double kappa_, double K_);
};

/// sin_K r: sin(r sqrt K)/sqrt K for K>0, r for K=0, sinh analog for K<0.
/// K=0 is selected by exact comparison; near r^2|K| -> 0 a short Taylor
/// series avoids cancellation.  Throws DomainError for K>0, r sqrt K >= pi.
double sin_k(double K, double r);

/// d/dr sin_K r: cos(r sqrt K) / 1 / cosh(r sqrt -K).
double cos_k(double K, double r);

/// cot_K r = (sin_K r)'/(sin_K r).  Requires r > 0 and r sqrt K < pi.
double cot_k(double K, double r);

/// min(inj, pi/(2 sqrt(K+))).  Returns kUnbounded when both terms are
/// infinite; always positive and finite when K > 0.
double admissible_radius(const ModelSpace& space);

/// Radial-Laplacian defect gamma_K = Delta r - (n-1) cot_{K_ref} r evaluated
/// in the constant-curvature space: (n-1)(cot_{space.K} r - cot_{K_ref} r).
/// Requires 0 < r < admissible radius with respect to max(space.K, K_ref).
double gamma_k(const ModelSpace& space, double K_ref, double r);

/// Derivative bounds on the four comparison combinations.
enum class CotBound {
    SqrtCot,   // (sqrt(x) cot sqrt(x))'   in [-1/3, 0]  for 0 <= x < (pi/2)^2
    SqrtCoth,  // (sqrt(x) coth sqrt(x))'  in [0, 1/3]   for x >= 0
    XCot2,     // (x cot^2 sqrt(x))'       in [-1, 0]    for 0 <= x < (pi/2)^2
    XCoth2,    // (x coth^2 sqrt(x))'      in [0, 1]     for x >= 0
};

/// Derivative of the chosen combination, by 5-point finite differences of
/// the closed form with step h = max(1e-5, 1e-5 x); one-sided stencils near
/// the ends of the domain and series limits at x -> 0.
double cot_bound_derivative(CotBound part, double x);

/// All four derivatives at one abscissa; requires x in the common domain
/// [0, (pi/2)^2).
std::array<double, 4> lemma_cot_residuals(double x);

/// Stated [lower, upper] bound for a given combination.
std::array<double, 2> cot_bound_range(CotBound part);

} // namespace curvelab
