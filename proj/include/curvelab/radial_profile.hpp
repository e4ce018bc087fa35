#pragma once

#include <map>
#include <memory>
#include <vector>

#include "curvelab/model_space.hpp"

namespace curvelab {

/// Regular radial factor of a degree-l harmonic mode on a model space:
/// the solution of
///     u'' + (n-1) cot_K(r) u' - l(l+n-2)/sin_K(r)^2 u = 0
/// that behaves like r^l at the origin (leading coefficient 1), sampled on
/// a strictly increasing grid together with its first derivative.
///
/// The solution is seeded from a 6-term Frobenius series at
/// r0 = min(grid)/4 (never below 1e-6 * admissible radius) and integrated
/// with an adaptive Dormand-Prince 5(4) step.
class RadialProfile {
public:
    RadialProfile(const ModelSpace& space, int l, std::shared_ptr<const std::vector<double>> grid);

    const ModelSpace& space() const { return space_; }
    int degree() const { return l_; }
    double eigenvalue() const { return eig_; }
    const std::vector<double>& grid() const { return *grid_; }
    const std::vector<double>& values() const { return w_; }
    const std::vector<double>& derivatives() const { return w_r_; }
    /// Exponent (n-2)/2 of the substitution w = (sin_K r)^{(n-2)/2} u.
    double w_shift() const { return 0.5 * (space_.n - 2); }

    double value(std::size_t i) const { return w_[i]; }
    double derivative(std::size_t i) const { return w_r_[i]; }
    /// u'' recovered from the equation itself (no finite differences).
    double second_derivative(std::size_t i) const;

    /// A-posteriori defect: each grid interval is re-integrated from the
    /// stored left state with a fixed-step classical RK4 and compared to the
    /// stored right state; returns max over intervals of
    /// (|du| + |du'|) / (1 + |u| + |u'|).
    double ode_defect() const;

    /// Frobenius series value/derivative at radius below the seed point.
    std::array<double, 2> series_eval(double r) const;

private:
    ModelSpace space_;
    int l_;
    double eig_;
    std::shared_ptr<const std::vector<double>> grid_;
    std::vector<double> w_, w_r_;
    std::array<double, 6> series_; // a_j coefficients of r^{l+2j}
    double seed_radius_;
};

/// Profiles for a set of degrees over one shared grid; construction is
/// parallel per degree.
class RadialProfileSet {
public:
    RadialProfileSet(const ModelSpace& space, const std::vector<int>& degrees,
                     std::vector<double> grid);

    const ModelSpace& space() const { return space_; }
    const std::vector<double>& grid() const { return *grid_; }
    const RadialProfile& at(int l) const;
    bool has(int l) const { return profiles_.count(l) != 0; }

    /// Index of an exact grid value; throws if r is not a grid point.
    std::size_t index_of(double r) const;

private:
    ModelSpace space_;
    std::shared_ptr<const std::vector<double>> grid_;
    std::map<int, RadialProfile> profiles_;
};

/// Log-spaced grid on [lo, hi] (endpoints included).
std::vector<double> log_grid(double lo, double hi, int count);

} // namespace curvelab
