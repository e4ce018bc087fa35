#include "curvelab/sphere_basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "curvelab/errors.hpp"

namespace curvelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

// Geodesy-style fully normalized associated Legendre P~_l^m(cos theta),
// stable upward in l; includes the 1/sqrt(4 pi) so that
// Y_{l0} = P~_l^0 and Y_{lm} = sqrt(2) P~_l^m {cos,sin}(m phi) are
// orthonormal on S^2.
double norm_assoc_legendre(int l, int m, double ct, double st) {
    // seed P~_m^m
    double pmm = 1.0 / std::sqrt(kFourPi);
    for (int k = 1; k <= m; ++k)
        pmm *= st * std::sqrt((2.0 * k + 1.0) / (2.0 * k));
    if (l == m) return pmm;
    double pm1 = std::sqrt(2.0 * m + 3.0) * ct * pmm; // P~_{m+1}^m
    if (l == m + 1) return pm1;
    double plm = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        double a = std::sqrt((4.0 * ll * ll - 1.0) / ((double)ll * ll - (double)m * m));
        double b = std::sqrt((((double)(ll - 1) * (ll - 1) - (double)m * m)) /
                             (4.0 * (double)(ll - 1) * (ll - 1) - 1.0));
        plm = a * (ct * pm1 - b * pmm);
        pmm = pm1;
        pm1 = plm;
    }
    return plm;
}

// Normalization for the S^3 chi-factor: G_{l,j}(chi) =
// c_{l,j} (sin chi)^j C_{l-j}^{(j+1)}(cos chi) with
// int_0^pi G^2 sin^2 chi d chi = 1.
double s3_chi_norm(int l, int j) {
    int k = l - j;
    double logN = std::log(kPi) + (-1.0 - 2.0 * j) * std::log(2.0) +
                  std::lgamma(l + j + 2.0) - std::lgamma(k + 1.0) -
                  std::log(l + 1.0) - 2.0 * std::lgamma(j + 1.0);
    return std::exp(-0.5 * logN);
}

void check_n(int n) {
    if (n < 2 || n > 4)
        throw DomainError("sphere basis: dimension n must be 2, 3 or 4, got " +
                          std::to_string(n));
}

} // namespace

int mode_count(int n, int l) {
    check_n(n);
    if (l < 0) throw DomainError("mode_count: degree must be >= 0");
    switch (n) {
        case 2: return l == 0 ? 1 : 2;
        case 3: return 2 * l + 1;
        default: return (l + 1) * (l + 1);
    }
}

SphericalMode make_mode(int n, int l, int mu) {
    if (mu < 0 || mu >= mode_count(n, l))
        throw DomainError("make_mode: multiplicity index out of range");
    SphericalMode m;
    m.l = l;
    m.mu = mu;
    m.eig = static_cast<double>(static_cast<long long>(l) * (l + n - 2));
    return m;
}

double mode_norm2(int n, const SphericalMode& mode, AngularNorm norm) {
    check_n(n);
    if (norm == AngularNorm::Unit) return 1.0;
    if (n != 2) throw DomainError("AngularNorm::Raw is a 2-d (circle) convention");
    (void)mode;
    return kPi;
}

double legendre_p(int l, double x) {
    if (l == 0) return 1.0;
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= l; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double real_sph_harm(int l, int m, double theta, double phi) {
    int am = std::abs(m);
    if (am > l) throw DomainError("real_sph_harm: |m| > l");
    double p = norm_assoc_legendre(l, am, std::cos(theta), std::sin(theta));
    if (m == 0) return p;
    double t = m > 0 ? std::cos(am * phi) : std::sin(am * phi);
    return std::numbers::sqrt2 * p * t;
}

double gegenbauer(int k, double alpha, double x) {
    if (k == 0) return 1.0;
    double c0 = 1.0, c1 = 2.0 * alpha * x;
    for (int i = 2; i <= k; ++i) {
        double c2 = (2.0 * x * (i + alpha - 1.0) * c1 - (i + 2.0 * alpha - 2.0) * c0) / i;
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

double mode_eval(int n, const SphericalMode& mode, std::span<const double> u,
                 AngularNorm norm) {
    check_n(n);
    if (static_cast<int>(u.size()) != n)
        throw DomainError("mode_eval: unit vector has wrong dimension");
    const int l = mode.l;

    if (n == 2) {
        double theta = std::atan2(u[1], u[0]);
        double raw = (l == 0) ? (mode.mu == 0 ? 1.0 : 0.0)
                              : (mode.mu == 0 ? std::cos(l * theta) : std::sin(l * theta));
        if (norm == AngularNorm::Raw) {
            // every mode carries angular norm^2 = pi, including l = 0
            return l == 0 ? raw / std::numbers::sqrt2 : raw;
        }
        return l == 0 ? raw / std::sqrt(2.0 * kPi) : raw / std::sqrt(kPi);
    }
    if (norm == AngularNorm::Raw)
        throw DomainError("AngularNorm::Raw is a 2-d (circle) convention");

    if (n == 3) {
        double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
        double phi = std::atan2(u[1], u[0]);
        int m = mode.mu - l;
        return real_sph_harm(l, m, theta, phi);
    }

    // n == 4: x = (cos chi, sin chi * y), y in S^2; mu encodes (j, m) with
    // mu = j^2 + (m + j), j in [0, l], m in [-j, j].
    int j = static_cast<int>(std::floor(std::sqrt(static_cast<double>(mode.mu))));
    while ((j + 1) * (j + 1) <= mode.mu) ++j;
    while (j * j > mode.mu) --j;
    int m = mode.mu - j * j - j;
    double cchi = std::clamp(u[0], -1.0, 1.0);
    double schi = std::sqrt(std::max(0.0, 1.0 - cchi * cchi));
    double g = s3_chi_norm(l, j) * std::pow(schi, j) * gegenbauer(l - j, j + 1.0, cchi);
    if (g == 0.0) return 0.0;
    double theta, phi;
    if (schi < 1e-300) {
        theta = 0.0;
        phi = 0.0;
    } else {
        theta = std::acos(std::clamp(u[3] / schi, -1.0, 1.0));
        phi = std::atan2(u[2] / schi, u[1] / schi);
    }
    return g * real_sph_harm(j, m, theta, phi);
}

std::vector<int> standard_mode_subset(int n, int l) {
    int count = mode_count(n, l);
    std::vector<int> mus;
    mus.push_back(0);
    if (count > 1) mus.push_back(count - 1);
    if (count > 2) mus.push_back(count / 2);
    return mus;
}

} // namespace curvelab
