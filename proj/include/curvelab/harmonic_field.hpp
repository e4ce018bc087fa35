#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "curvelab/model_space.hpp"
#include "curvelab/quadrature.hpp"
#include "curvelab/radial_profile.hpp"
#include "curvelab/sphere_basis.hpp"

namespace curvelab {

struct WeightedMode {
    SphericalMode mode;
    double coeff = 0.0;
};

/// Finite spherical-harmonic expansion of a harmonic function near a pole.
/// Angular factors are orthogonal across distinct modes, so q(r) is a
/// diagonal sum over modes.
class HarmonicField {
public:
    HarmonicField(ModelSpace space, std::vector<WeightedMode> modes,
                  AngularNorm norm = AngularNorm::Unit);

    const ModelSpace& space() const { return space_; }
    const std::vector<WeightedMode>& modes() const { return modes_; }
    AngularNorm normalization() const { return norm_; }
    int lmax() const { return lmax_; }
    std::vector<int> degrees() const;

    /// Pointwise view u(r, v) using profile radial factors; the radius must
    /// be a grid point of the profile set.
    PointwiseField pointwise(const RadialProfileSet& profiles) const;

private:
    ModelSpace space_;
    std::vector<WeightedMode> modes_;
    AngularNorm norm_;
    int lmax_ = 0;
};

/// q, q', q'' at one radius.  q'' is assembled by substituting u'' from the
/// radial equation, never by finite differences.
struct QDerivatives {
    double q = 0.0;
    double dq = 0.0;
    double d2q = 0.0;

    double dlogq() const { return dq / q; }
    double d2logq() const { return d2q / q - (dq / q) * (dq / q); }
};

QDerivatives q_eval(const HarmonicField& field, const RadialProfileSet& profiles,
                    std::size_t grid_index);
QDerivatives q_eval_at(const HarmonicField& field, const RadialProfileSet& profiles,
                       double r);

/// Boundary Dirichlet integral (sin_K r)^{n-1} Sum 2 c^2 u u' at a grid
/// radius; equals the ball Dirichlet energy, hence nonnegative.
double dirichlet_positivity(const HarmonicField& field, const RadialProfileSet& profiles,
                            std::size_t grid_index);

/// Per-run verification record over a radius grid.
struct GrowthReport {
    std::vector<double> r;
    std::vector<double> q;
    std::vector<double> dlogq;
    std::vector<double> d2logq;
    std::vector<double> residual_i;
    std::vector<double> residual_ii;
    std::vector<double> residual_ii_tilde; ///< reported, not asserted
    std::vector<double> doubling;          ///< margins, when the run checks doubling
    double worst_margin = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    std::map<std::string, double> params;
};

/// Convexity residuals of the log-derivative inequalities under a curvature
/// bracket kappa <= Sec <= K:
///   residual_i  = (log q)' - (n-1) cot_K r
///   residual_ii = (log q)'' + cot_K (log q)' + (n+1)(cot_kappa - cot_K)(log q)'
///                 + K + (n-2)K^+ + (2n-3)(K - kappa)
/// The tilde variant restates residual_ii for Q = q/(sin_K r)^{n-1} with
/// right-hand side (n-2)K^- + (2n-3)(K-kappa).
GrowthReport convexity_residuals(const HarmonicField& field, const RadialProfileSet& profiles,
                                 const ComparisonPair& pair, double tol);

/// Doubling margin (1 + 32 n r^2 K) log(q(2s)/q(s)) - log(q(2r)/q(r)) for
/// |Sec| <= K_bound, K_bound > 0, r <= s < 1/(4 sqrt(n K_bound)).
/// All four radii must be grid points.
double doubling_margin(const HarmonicField& field, const RadialProfileSet& profiles,
                       double r, double s, double K_bound);

struct MonotonicityReport {
    bool pass = false;
    double worst = 0.0; ///< most negative scaled forward difference
    std::vector<double> values;
};

/// Monotonicity of r -> exp(6 n r^2 K) r q'(r)/q(r) on the profile grid.
/// K_bound is the symmetric curvature bound (|Sec| <= K_bound); forward
/// differences must be >= -tol * scale.
MonotonicityReport frequency_monotonicity(const HarmonicField& field,
                                          const RadialProfileSet& profiles, double K_bound,
                                          double tol);

/// Random field with i.i.d. normal coefficients scaled by 1/(l+1) on the
/// standard mode subset per degree; deterministic in the seed.
HarmonicField random_field(const ModelSpace& space, int lmax, std::uint64_t seed,
                           AngularNorm norm = AngularNorm::Unit);

} // namespace curvelab
