#pragma once

#include <span>
#include <vector>

namespace curvelab {

/// Angular normalization convention for expansion modes.
enum class AngularNorm {
    Unit, ///< every mode has unit L2 norm on the unit sphere
    Raw,  ///< n=2 cosine convention: every mode has angular norm^2 = pi
};

/// One spherical-harmonic mode on S^{n-1}: degree l, a multiplicity index
/// mu enumerating the modes of that degree, and the spherical eigenvalue
/// l(l+n-2) (computed in integer arithmetic).
struct SphericalMode {
    int l = 0;
    int mu = 0;
    double eig = 0.0;
};

/// Number of supported multiplicity indices for degree l on S^{n-1}:
/// 1 or 2 for n=2, 2l+1 for n=3, (l+1)^2 for n=4.
int mode_count(int n, int l);

/// Builds a validated mode; throws DomainError for unsupported n or mu.
SphericalMode make_mode(int n, int l, int mu);

/// Squared angular L2 norm of the mode under the given convention.
double mode_norm2(int n, const SphericalMode& mode, AngularNorm norm);

/// Pointwise value of the mode at a unit vector in R^n.
double mode_eval(int n, const SphericalMode& mode, std::span<const double> unit_vec,
                 AngularNorm norm);

/// Classical Legendre polynomial P_l(x).
double legendre_p(int l, double x);

/// Orthonormal real spherical harmonic on S^2; m in [-l, l],
/// theta polar angle from +z, phi azimuth.
double real_sph_harm(int l, int m, double theta, double phi);

/// Gegenbauer polynomial C_k^(alpha)(x) by the three-term recurrence.
double gegenbauer(int k, double alpha, double x);

/// Deterministic small mode subset used by the random-field corpus: up to
/// three multiplicity indices per degree, chosen once per (n, l).
std::vector<int> standard_mode_subset(int n, int l);

} // namespace curvelab
