#pragma once

#include <functional>
#include <span>
#include <vector>

#include "curvelab/model_space.hpp"

namespace curvelab {

/// Quadrature rule on the unit sphere S^dim embedded in R^{dim+1}.
/// Weights are positive and sum to the sphere area.  Product construction:
/// trapezoid on S^1, Gauss-Legendre in cos(polar) x trapezoid on S^2, and
/// Gauss-Legendre in the polar angle x Gauss-Legendre x trapezoid on S^3.
struct SphereRule {
    int dim = 1;
    int exactness = 0;            ///< verified polynomial degree
    std::vector<double> coords;   ///< node unit vectors, stride dim+1
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    std::span<const double> node(std::size_t i) const {
        return {coords.data() + i * (dim + 1), static_cast<std::size_t>(dim + 1)};
    }
};

/// Rule sized for integrating products of two degree <= lmax harmonics.
SphereRule make_sphere_rule(int sphere_dim, int lmax);

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int g, std::vector<double>& nodes, std::vector<double>& weights);

/// Field given pointwise in geodesic polar coordinates about a pole:
/// eval(r, v) with v a unit direction vector in R^n.
struct PointwiseField {
    ModelSpace space;
    std::function<double(double, std::span<const double>)> eval;
};

/// Field on the circle S^1 (1-d manifold); eval takes the signed geodesic
/// coordinate about the pole, in [-pi, pi].
struct CircleField {
    std::function<double(double)> eval;
    double diameter = 3.14159265358979323846;
};

/// q(r) = (sin_K r)^{n-1} Sum_j w_j u(r, v_j)^2 with deterministic pairwise
/// summation.  Requires rule.dim == n-1 and r inside the chart.
double q_quadrature(const PointwiseField& field, double r, const SphereRule& rule);

/// Integral of u^2 over the geodesic ball, by Gauss-Legendre in the radius
/// applied to q_quadrature.
double ball_integral(const PointwiseField& field, double r, const SphereRule& rule,
                     int radial_nodes = 64);

/// Max |u| over the closed geodesic ball of radius r, sampled on nested
/// ring grids (ring spacing 1/density) with one azimuthal refinement pass
/// at 8x density around each ring's coarse argmax.  Nondecreasing in r by
/// construction; a lower bound on the true sup.
double sup_norm_ball(const PointwiseField& field, double r, double density);

/// Circle variant: max |u| over the arc [-min(r, pi), min(r, pi)].
double sup_norm_ball(const CircleField& field, double r, double density);

} // namespace curvelab
