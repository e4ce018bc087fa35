#include "curvelab/eigen_extend.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "curvelab/errors.hpp"
#include "curvelab/model_space.hpp"
#include "curvelab/quadrature.hpp"
#include "curvelab/sphere_basis.hpp"

namespace curvelab {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec3 = std::array<double, 3>;

Vec3 normalize(const Vec3& v) {
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

struct Frame {
    Vec3 c, e1, e2;
};

Frame frame_at(const Vec3& center) {
    Vec3 c = normalize(center);
    Vec3 helper = std::abs(c[2]) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
    double proj = dot(helper, c);
    Vec3 e1 = normalize({helper[0] - proj * c[0], helper[1] - proj * c[1],
                         helper[2] - proj * c[2]});
    Vec3 e2 = cross(c, e1);
    return {c, e1, e2};
}

Vec3 polar_point(const Frame& f, double rho, double psi) {
    double cr = std::cos(rho), sr = std::sin(rho);
    double cp = std::cos(psi), sp = std::sin(psi);
    return {cr * f.c[0] + sr * (cp * f.e1[0] + sp * f.e2[0]),
            cr * f.c[1] + sr * (cp * f.e1[1] + sp * f.e2[1]),
            cr * f.c[2] + sr * (cp * f.e1[2] + sp * f.e2[2])};
}

// max |cos(l t)| over [a, b]; exact
double arc_cos_sup(int l, double a, double b) {
    if (l == 0) return 1.0;
    if (b - a >= kPi / l) return 1.0; // always straddles a peak
    double lo = a * l / kPi, hi = b * l / kPi;
    if (std::floor(hi) >= std::ceil(lo)) return 1.0; // contains k*pi/l
    return std::max(std::abs(std::cos(l * a)), std::abs(std::cos(l * b)));
}

} // namespace

Eigenfunction Eigenfunction::circle_mode(int l) {
    if (l < 0) throw DomainError("circle_mode: degree must be >= 0");
    return Eigenfunction(BaseManifold::Circle, Kind::CircleCos, l,
                         static_cast<double>(l) * l);
}

Eigenfunction Eigenfunction::zonal(int l) {
    if (l < 0) throw DomainError("zonal: degree must be >= 0");
    return Eigenfunction(BaseManifold::Sphere2, Kind::Zonal, l,
                         static_cast<double>(l) * (l + 1));
}

Eigenfunction Eigenfunction::sectoral(int l) {
    if (l < 1) throw DomainError("sectoral: degree must be >= 1");
    return Eigenfunction(BaseManifold::Sphere2, Kind::Sectoral, l,
                         static_cast<double>(l) * (l + 1));
}

double Eigenfunction::diameter() const { return kPi; }

double Eigenfunction::eval_circle(double theta) const {
    if (base_ != BaseManifold::Circle)
        throw DomainError("eval_circle on a sphere eigenfunction");
    return std::cos(l_ * theta);
}

double Eigenfunction::eval_sphere(const Vec3& x) const {
    if (base_ != BaseManifold::Sphere2)
        throw DomainError("eval_sphere on a circle eigenfunction");
    if (kind_ == Kind::Zonal) return legendre_p(l_, std::clamp(x[2], -1.0, 1.0));
    // sectoral: Re((x0 + i x1)^l), max 1 on the equator
    std::complex<double> z(x[0], x[1]);
    std::complex<double> p(1.0, 0.0);
    for (int i = 0; i < l_; ++i) p *= z;
    return p.real();
}

double Eigenfunction::argmax_circle() const { return 0.0; }

Vec3 Eigenfunction::argmax_sphere() const {
    return kind_ == Kind::Zonal ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
}

double Eigenfunction::laplace_defect_circle(double theta) const {
    double h = 3e-3 / (l_ + 1.0);
    double lap = (eval_circle(theta + h) - 2.0 * eval_circle(theta) + eval_circle(theta - h)) /
                 (h * h);
    double u = eval_circle(theta);
    return std::abs(lap + lambda_ * u) / ((1.0 + lambda_) * (1.0 + std::abs(u)));
}

double Eigenfunction::laplace_defect_sphere(double theta, double phi) const {
    double h = 3e-3 / (l_ + 1.0);
    auto at = [&](double th, double ph) {
        Vec3 x{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
        return eval_sphere(x);
    };
    double u = at(theta, phi);
    double utt = (at(theta + h, phi) - 2.0 * u + at(theta - h, phi)) / (h * h);
    double ut = (at(theta + h, phi) - at(theta - h, phi)) / (2.0 * h);
    double upp = (at(theta, phi + h) - 2.0 * u + at(theta, phi - h)) / (h * h);
    double st = std::sin(theta), ct = std::cos(theta);
    double lap = utt + ct / st * ut + upp / (st * st);
    return std::abs(lap + lambda_ * u) / ((1.0 + lambda_) * (1.0 + std::abs(u)));
}

double ExtendedField::eval_circle(double theta, double t) const {
    return base.eval_circle(theta) * std::cosh(std::sqrt(base.lambda()) * t);
}

double ExtendedField::eval_sphere(const Vec3& x, double t) const {
    return base.eval_sphere(x) * std::cosh(std::sqrt(base.lambda()) * t);
}

double ExtendedField::harmonic_defect_circle(double theta, double t) const {
    double h = 3e-3 / (base.degree() + 1.0);
    double H = eval_circle(theta, t);
    double Hxx =
        (eval_circle(theta + h, t) - 2.0 * H + eval_circle(theta - h, t)) / (h * h);
    double Htt = (eval_circle(theta, t + h) - 2.0 * H + eval_circle(theta, t - h)) / (h * h);
    return std::abs(Hxx + Htt) / ((1.0 + base.lambda()) * (1.0 + std::abs(H)));
}

double ExtendedField::harmonic_defect_sphere(double theta, double phi, double t) const {
    double h = 3e-3 / (base.degree() + 1.0);
    auto at = [&](double th, double ph, double tt) {
        Vec3 x{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
        return eval_sphere(x, tt);
    };
    double H = at(theta, phi, t);
    double utt = (at(theta + h, phi, t) - 2.0 * H + at(theta - h, phi, t)) / (h * h);
    double ut = (at(theta + h, phi, t) - at(theta - h, phi, t)) / (2.0 * h);
    double upp = (at(theta, phi + h, t) - 2.0 * H + at(theta, phi - h, t)) / (h * h);
    double Htt = (at(theta, phi, t + h) - 2.0 * H + at(theta, phi, t - h)) / (h * h);
    double st = std::sin(theta), ct = std::cos(theta);
    double lap_base = utt + ct / st * ut + upp / (st * st);
    return std::abs(lap_base + Htt) / ((1.0 + base.lambda()) * (1.0 + std::abs(H)));
}

double ball_sup(const Eigenfunction& u, double center_angle, double r) {
    if (u.base() != BaseManifold::Circle)
        throw DomainError("ball_sup(angle): circle bases only");
    if (!(r > 0.0)) throw DomainError("ball_sup: radius must be positive");
    if (r >= u.diameter()) return 1.0;
    return arc_cos_sup(u.degree(), center_angle - r, center_angle + r);
}

double ball_sup(const Eigenfunction& u, const Vec3& center, double r, double density) {
    if (u.base() != BaseManifold::Sphere2)
        throw DomainError("ball_sup(vector): sphere bases only");
    if (!(r > 0.0)) throw DomainError("ball_sup: radius must be positive");
    if (r >= u.diameter()) return 1.0;
    Frame f = frame_at(center);
    PointwiseField field{ModelSpace(2, 1.0),
                         [&u, f](double rho, std::span<const double> v) {
                             double psi = std::atan2(v[1], v[0]);
                             return u.eval_sphere(polar_point(f, rho, psi));
                         }};
    return sup_norm_ball(field, r, density);
}

double product_q(const ExtendedField& ext, double center_angle, double r, int phi_nodes) {
    const Eigenfunction& u = ext.base;
    if (u.base() != BaseManifold::Circle)
        throw DomainError("product_q(angle): circle bases only");
    if (!(r > 0.0) || !(r < kPi))
        throw DomainError("product_q: radius must lie in (0, pi)");
    double sl = std::sqrt(u.lambda());
    std::vector<double> x, w;
    gauss_legendre(phi_nodes, x, w);
    double acc = 0.0;
    for (int i = 0; i < phi_nodes; ++i) {
        double phi = kPi / 4.0 * (x[i] + 1.0); // [0, pi/2]
        double rho = r * std::sin(phi);
        double ch = std::cosh(sl * r * std::cos(phi));
        double ua = u.eval_circle(center_angle + rho);
        double ub = u.eval_circle(center_angle - rho);
        acc += w[i] * kPi / 4.0 * (ua * ua + ub * ub) * ch * ch;
    }
    return 2.0 * r * acc;
}

double product_q(const ExtendedField& ext, const Vec3& center, double r, int phi_nodes,
                 int psi_nodes) {
    const Eigenfunction& u = ext.base;
    if (u.base() != BaseManifold::Sphere2)
        throw DomainError("product_q(vector): sphere bases only");
    if (!(r > 0.0) || !(r < kPi))
        throw DomainError("product_q: radius must lie in (0, pi)");
    double sl = std::sqrt(u.lambda());
    Frame f = frame_at(center);
    std::vector<double> x, w;
    gauss_legendre(phi_nodes, x, w);
    double acc = 0.0;
    for (int i = 0; i < phi_nodes; ++i) {
        double phi = kPi / 4.0 * (x[i] + 1.0);
        double rho = r * std::sin(phi);
        double ch = std::cosh(sl * r * std::cos(phi));
        double ring = 0.0;
        for (int j = 0; j < psi_nodes; ++j) {
            double uu = u.eval_sphere(polar_point(f, rho, 2.0 * kPi * j / psi_nodes));
            ring += uu * uu;
        }
        ring *= 2.0 * kPi / psi_nodes;
        acc += w[i] * kPi / 4.0 * ring * std::sin(rho) * ch * ch;
    }
    return 2.0 * r * acc;
}

namespace {

double sup_density(int l, double ball_radius) {
    return std::max(8.0 * (l + 1), 32.0 / std::max(ball_radius, 1e-3));
}

Eigenfunction base_mode(BaseManifold base, int l) {
    return base == BaseManifold::Circle ? Eigenfunction::circle_mode(l)
                                        : Eigenfunction::zonal(l);
}

double base_ball_sup(const Eigenfunction& u, double center_angle, const Vec3& center_vec,
                     double r) {
    if (u.base() == BaseManifold::Circle) return ball_sup(u, center_angle, r);
    return ball_sup(u, center_vec, r, sup_density(u.degree(), r));
}

} // namespace

SandwichReport sandwich_sweep(BaseManifold base, int lmax, const std::vector<double>& radii,
                              double alpha, double eps) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("sandwich_sweep: need 0 < alpha < 1");
    if (!(eps > 0.0)) throw DomainError("sandwich_sweep: need eps > 0");
    SandwichReport rep;
    rep.lower_min = rep.upper_min = std::numeric_limits<double>::infinity();
    rep.lower_max = rep.upper_max = -std::numeric_limits<double>::infinity();
    const int m = base == BaseManifold::Circle ? 1 : 2;
    for (int l = 0; l <= lmax; ++l) {
        Eigenfunction u = base_mode(base, l);
        ExtendedField ext{u};
        double pole_angle = u.argmax_circle();
        Vec3 pole_vec{0.0, 0.0, 1.0};
        for (double r : radii) {
            SandwichPoint pt;
            pt.l = l;
            pt.lambda = u.lambda();
            pt.r = r;
            pt.q = base == BaseManifold::Circle ? product_q(ext, pole_angle, r)
                                                : product_q(ext, pole_vec, r);
            pt.sup_alpha = base_ball_sup(u, pole_angle, pole_vec, alpha * r);
            pt.sup_full = base_ball_sup(u, pole_angle, pole_vec, r);
            double sl = std::sqrt(u.lambda());
            pt.lower_ratio = pt.q * std::pow(1.0 + r * sl, m + eps) /
                             (std::pow(r, m) * pt.sup_alpha * pt.sup_alpha);
            pt.upper_ratio = pt.q / (std::pow(r, m) * std::exp(2.0 * r * sl) * pt.sup_full *
                                     pt.sup_full);
            rep.lower_min = std::min(rep.lower_min, pt.lower_ratio);
            rep.lower_max = std::max(rep.lower_max, pt.lower_ratio);
            rep.upper_min = std::min(rep.upper_min, pt.upper_ratio);
            rep.upper_max = std::max(rep.upper_max, pt.upper_ratio);
            rep.points.push_back(pt);
        }
    }
    return rep;
}

FittedConstants fit_growth_constants(BaseManifold base, int lmin, int lmax, double r,
                                     double s, const GrowthIndices& idx) {
    if (!(r > 0.0 && r <= s)) throw DomainError("fit_growth_constants: need 0 < r <= s");
    const double diameter = kPi;
    if (!(idx.b2 * s < diameter))
        throw DomainError("fit_growth_constants: inner comparison radius exceeds the diameter");
    const int m = base == BaseManifold::Circle ? 1 : 2;
    const int n = m + 1;
    const double K = base == BaseManifold::Circle ? 0.0 : 1.0;
    const double expo = 1.0 + 32.0 * n * r * r * K;

    std::vector<double> abscissa, needed;
    for (int l = std::max(lmin, 0); l <= lmax; ++l) {
        Eigenfunction u = base_mode(base, l);
        double worst = -std::numeric_limits<double>::infinity();
        const int centers = base == BaseManifold::Circle ? 8 : 9;
        for (int c = 0; c < centers; ++c) {
            double lhs, rhs;
            if (base == BaseManifold::Circle) {
                double ang = 2.0 * kPi * c / centers;
                lhs = ball_sup(u, ang, idx.a1 * r) / ball_sup(u, ang, idx.a2 * r);
                rhs = ball_sup(u, ang, idx.b1 * s) / ball_sup(u, ang, idx.b2 * s);
            } else {
                double th = kPi * c / (centers - 1);
                Vec3 x{std::sin(th), 0.0, std::cos(th)};
                lhs = ball_sup(u, x, idx.a1 * r, sup_density(l, idx.a1 * r)) /
                      ball_sup(u, x, idx.a2 * r, sup_density(l, idx.a2 * r));
                rhs = ball_sup(u, x, idx.b1 * s, sup_density(l, idx.b1 * s)) /
                      ball_sup(u, x, idx.b2 * s, sup_density(l, idx.b2 * s));
            }
            worst = std::max(worst, std::log(lhs) - expo * std::log(rhs));
        }
        abscissa.push_back(s * std::sqrt(u.lambda()));
        needed.push_back(worst);
    }

    // least-squares slope, clamped nonnegative, then raise the intercept
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
        mx += abscissa[i];
        my += needed[i];
    }
    mx /= abscissa.size();
    my /= needed.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
        sxx += (abscissa[i] - mx) * (abscissa[i] - mx);
        sxy += (abscissa[i] - mx) * (needed[i] - my);
    }
    FittedConstants fit;
    fit.C2 = sxx > 0.0 ? std::max(0.0, sxy / sxx) : 0.0;
    double logc1 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < abscissa.size(); ++i)
        logc1 = std::max(logc1, needed[i] - fit.C2 * abscissa[i]);
    fit.C1 = std::exp(logc1);
    return fit;
}

namespace {

BallChain run_chain(const Eigenfunction& u, double dist, double r0,
                    const FittedConstants& fit, double measured) {
    BallChain chain;
    chain.step_radius = r0;
    chain.chain_distance = dist;
    chain.steps = dist <= 0.0 ? 0 : static_cast<int>(std::ceil(dist / (r0 / 2.0)));
    double logC1 = std::log(std::max(fit.C1, 1.0));
    double C2 = std::max(fit.C2, 0.0);
    double logD = -(logC1 + C2 * r0 * std::sqrt(u.lambda()));
    double logb = 0.0; // ball about the argmax: max = 1
    chain.log_certificates.push_back(logb);
    for (int k = 1; k <= chain.steps; ++k) {
        logb = logD + 3.0 * logb;
        chain.log_certificates.push_back(logb);
    }
    chain.log_bound = logb;
    chain.measured = measured;
    chain.sound = logb <= std::log(measured) + 1e-12;
    return chain;
}

} // namespace

BallChain chain_lower_bound(const Eigenfunction& u, double target_angle, double r0,
                            const FittedConstants& fit) {
    if (u.base() != BaseManifold::Circle)
        throw DomainError("chain_lower_bound(angle): circle bases only");
    if (!(r0 > 0.0)) throw DomainError("chain_lower_bound: step radius must be positive");
    double d = std::abs(std::remainder(target_angle - u.argmax_circle(), 2.0 * kPi));
    double measured = ball_sup(u, target_angle, 2.0 * r0);
    return run_chain(u, d, r0, fit, measured);
}

BallChain chain_lower_bound(const Eigenfunction& u, const Vec3& target, double r0,
                            const FittedConstants& fit) {
    if (u.base() != BaseManifold::Sphere2)
        throw DomainError("chain_lower_bound(vector): sphere bases only");
    if (!(r0 > 0.0)) throw DomainError("chain_lower_bound: step radius must be positive");
    Vec3 t = normalize(target);
    double d = std::acos(std::clamp(dot(u.argmax_sphere(), t), -1.0, 1.0));
    double measured = ball_sup(u, t, 2.0 * r0, sup_density(u.degree(), 2.0 * r0));
    return run_chain(u, d, r0, fit, measured);
}

double df_growth_sup(BaseManifold base, double r, int lmax, int center_count) {
    if (!(r > 0.0)) throw DomainError("df_growth_sup: radius must be positive");
    double sup = 0.0;
    for (int l = 2; l <= lmax; ++l) {
        Eigenfunction u = base_mode(base, l);
        for (int c = 0; c < center_count; ++c) {
            double ratio;
            if (base == BaseManifold::Circle) {
                double ang = 2.0 * kPi * c / center_count;
                ratio = ball_sup(u, ang, 3.0 * r) / ball_sup(u, ang, 2.0 * r);
            } else {
                double th = kPi * c / std::max(1, center_count - 1);
                Vec3 x{std::sin(th), 0.0, std::cos(th)};
                ratio = ball_sup(u, x, 3.0 * r, sup_density(l, 3.0 * r)) /
                        ball_sup(u, x, 2.0 * r, sup_density(l, 2.0 * r));
            }
            sup = std::max(sup, std::log(ratio) / std::sqrt(u.lambda()));
        }
    }
    return sup;
}

} // namespace curvelab
