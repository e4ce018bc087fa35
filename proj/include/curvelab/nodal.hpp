#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace curvelab {

/// Scalar function on S^2 in polar coordinates (theta in [0,pi], phi).
using SphereFunc = std::function<double(double, double)>;

struct NodalSegment {
    double th0, ph0, th1, ph1;
};

/// Traced zero set of an eigenfunction on S^2.
struct NodalTrace {
    int degree = 0;
    double lambda = 0.0;
    int resolution = 0; ///< cells per great circle
    std::vector<NodalSegment> segments;
    double length = 0.0; ///< round-metric length
};

/// Marching-squares zero contour on a latitude-longitude grid with linear
/// interpolation per cell edge; segment lengths carry the sin(theta)
/// factor on longitude differences.  Ambiguous saddle cells are split by
/// the sign of the cell-center sample.  Requires resolution >= 8 * degree.
NodalTrace trace_nodal(const SphereFunc& u, int degree, int resolution);

/// Degree-l harmonic with deterministic random coefficients over all
/// orders m in [-l, l].
struct RandomHarmonic {
    int degree = 0;
    std::vector<double> coeffs; ///< index m + l
    double eval(double theta, double phi) const;
};

RandomHarmonic random_harmonic(int degree, std::uint64_t seed);

struct YauFitRow {
    int l = 0;
    double lambda = 0.0;
    double length = 0.0;
    double length_over_sqrt_lambda = 0.0;
};

struct YauFit {
    double slope = 0.0;     ///< regression of log(length) on log(sqrt(lambda))
    double intercept = 0.0;
    double c1 = 0.0;        ///< min length/sqrt(lambda)
    double c2 = 0.0;        ///< max length/sqrt(lambda)
    std::vector<YauFitRow> rows;
};

/// Random-harmonic scaling fit over the given degrees (needs at least two
/// distinct degrees); resolution is resolution_factor * l per trace.
YauFit yau_scaling_fit(const std::vector<int>& degrees, std::uint64_t seed,
                       int resolution_factor = 16);

/// Equirectangular plot of traced contours.
void write_trace_svg(const NodalTrace& trace, const std::string& path);

} // namespace curvelab
