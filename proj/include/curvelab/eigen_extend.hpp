#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace curvelab {

enum class BaseManifold { Circle, Sphere2 };

/// Closed-form Laplace-Beltrami eigenfunction on a compact base manifold,
/// normalized so max |u| = 1.  Catalog: circle modes cos(l theta)
/// (lambda = l^2) and zonal / sectoral spherical harmonics on the unit S^2
/// (lambda = l(l+1)).
class Eigenfunction {
public:
    enum class Kind { CircleCos, Zonal, Sectoral };

    static Eigenfunction circle_mode(int l);
    static Eigenfunction zonal(int l);
    static Eigenfunction sectoral(int l);

    BaseManifold base() const { return base_; }
    Kind kind() const { return kind_; }
    int degree() const { return l_; }
    double lambda() const { return lambda_; }
    int dim() const { return base_ == BaseManifold::Circle ? 1 : 2; }
    double diameter() const; // pi for both bases

    /// Circle evaluation at an absolute angle.
    double eval_circle(double theta) const;
    /// Sphere evaluation at a unit 3-vector.
    double eval_sphere(const std::array<double, 3>& x) const;

    /// A point where |u| attains its maximum (the chain anchor).
    std::array<double, 3> argmax_sphere() const;
    double argmax_circle() const;

    /// Relative defect of Delta u + lambda u at a sample point, by central
    /// differences in intrinsic coordinates; used by verification tests.
    double laplace_defect_circle(double theta) const;
    double laplace_defect_sphere(double theta, double phi) const;

private:
    Eigenfunction(BaseManifold b, Kind k, int l, double lambda)
        : base_(b), kind_(k), l_(l), lambda_(lambda) {}
    BaseManifold base_;
    Kind kind_;
    int l_;
    double lambda_;
};

/// Harmonic extension H(x, t) = u(x) cosh(sqrt(lambda) t) to the product
/// of the base with the line.
struct ExtendedField {
    Eigenfunction base;

    double eval_circle(double theta, double t) const;
    double eval_sphere(const std::array<double, 3>& x, double t) const;
    /// Defect of the product Laplacian (base Laplacian plus d^2/dt^2).
    double harmonic_defect_circle(double theta, double t) const;
    double harmonic_defect_sphere(double theta, double phi, double t) const;
};

/// Max |u| over the geodesic ball of radius r about a center.  Radii at or
/// beyond the diameter saturate to the global maximum (= 1).  The circle
/// variant is exact (closed-form arc maximum); the sphere variant samples
/// nested polar grids at the given density with local refinement.
double ball_sup(const Eigenfunction& u, double center_angle, double r);
double ball_sup(const Eigenfunction& u, const std::array<double, 3>& center, double r,
                double density);

/// q(r) of the extension H on the geodesic sphere of radius r in the
/// product, centred at (pole, 0):
///   q(r) = 2 r Int_0^{pi/2} Phi(r sin phi) cosh^2(sqrt(lambda) r cos phi) dphi,
/// where Phi is the base spherical integrand at radius rho.  Requires
/// r < pi.  phi_nodes controls the Gauss-Legendre resolution.
double product_q(const ExtendedField& ext, double center_angle, double r,
                 int phi_nodes = 96);
double product_q(const ExtendedField& ext, const std::array<double, 3>& center, double r,
                 int phi_nodes = 96, int psi_nodes = 128);

/// One row of a sandwich sweep.
struct SandwichPoint {
    int l = 0;
    double lambda = 0.0;
    double r = 0.0;
    double q = 0.0;
    double sup_alpha = 0.0; ///< M_{alpha r}
    double sup_full = 0.0;  ///< M_r
    double lower_ratio = 0.0;
    double upper_ratio = 0.0;
};

struct SandwichReport {
    std::vector<SandwichPoint> points;
    double lower_min = 0.0, lower_max = 0.0;
    double upper_min = 0.0, upper_max = 0.0;
};

/// Sweep of the two-sided mass bounds over degrees 0..lmax and the given
/// radii:
///   lower = q(r) (1 + r sqrt(lambda))^{m+eps} / (r^m M_{alpha r}^2)
///   upper = q(r) / (r^m e^{2 r sqrt(lambda)} M_r^2)
SandwichReport sandwich_sweep(BaseManifold base, int lmax, const std::vector<double>& radii,
                              double alpha, double eps);

/// Radii multipliers of the local growth inequality
/// M_{a1 r}/M_{a2 r} <= C1 e^{C2 s sqrt(lambda)} (M_{b1 s}/M_{b2 s})^{1 + 32 n r^2 K}.
struct GrowthIndices {
    double a1 = 3.0, a2 = 2.0, b1 = 8.0, b2 = 3.0;
};

struct FittedConstants {
    double C1 = 1.0;
    double C2 = 0.0;
};

/// Envelope fit of (C1, C2) over degrees lmin..lmax and a fixed center
/// sweep: least-squares slope in s sqrt(lambda), clamped nonnegative, then
/// the intercept is raised until the inequality holds at every sample.
FittedConstants fit_growth_constants(BaseManifold base, int lmin, int lmax, double r,
                                     double s, const GrowthIndices& idx = {});

/// Chain-of-balls certificate from the global argmax to a target.
struct BallChain {
    int steps = 0;              ///< N
    double step_radius = 0.0;   ///< r0
    double chain_distance = 0.0;
    std::vector<double> log_certificates; ///< log b_k per chain point
    double log_bound = 0.0;     ///< certified log lower bound for max_{B(x,2r0)}|u|
    double measured = 0.0;      ///< directly measured max_{B(x,2r0)}|u|
    bool sound = false;         ///< log_bound <= log(measured)
};

BallChain chain_lower_bound(const Eigenfunction& u, double target_angle, double r0,
                            const FittedConstants& fit);
BallChain chain_lower_bound(const Eigenfunction& u, const std::array<double, 3>& target,
                            double r0, const FittedConstants& fit);

/// sup over centers and degrees 2..lmax of log(M_{3r}/M_{2r}) / sqrt(lambda).
double df_growth_sup(BaseManifold base, double r, int lmax, int center_count = 9);

/// CSV row shared by the sweep emitters.
struct SweepRow {
    std::string base;
    int l = 0;
    double lambda = 0.0;
    double r = 0.0;
    double s = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double fitted_C1 = 0.0;
    double fitted_C2 = 0.0;
};

} // namespace curvelab
