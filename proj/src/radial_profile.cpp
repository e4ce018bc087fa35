#include "curvelab/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvelab/errors.hpp"
#include "curvelab/parallel.hpp"

namespace curvelab {

namespace {

// Taylor coefficients of r cot_K r and r^2/sin_K^2 r in x = K r^2, enough
// for a 6-term Frobenius series.
constexpr double kCotSeries[6] = {1.0, -1.0 / 3.0, -1.0 / 45.0, -2.0 / 945.0,
                                  -1.0 / 4725.0, -2.0 / 93555.0};
constexpr double kCscSeries[6] = {1.0, 1.0 / 3.0, 1.0 / 15.0, 2.0 / 189.0,
                                  1.0 / 675.0, 2.0 / 10395.0};

struct OdeRhs {
    int n;
    double K;
    double eig;

    // y = (u, u'), y' = (u', u'')
    inline void operator()(double r, const double y[2], double dy[2]) const {
        double cot = cot_k(K, r);
        double s = sin_k(K, r);
        dy[0] = y[1];
        dy[1] = -(n - 1) * cot * y[1] + eig / (s * s) * y[0];
    }
};

// Dormand-Prince 5(4) coefficients.
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0,
                 A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
                 A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
constexpr double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0,
                 B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0;
constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                 E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;

// Integrates y from r to r_end, adapting the step; y is updated in place.
void integrate_dopri5(const OdeRhs& f, double r, double r_end, double y[2],
                      double rtol) {
    if (r_end <= r) return;
    double h = (r_end - r) / 16.0;
    double k1[2];
    f(r, y, k1);
    int rejects_in_a_row = 0;
    while (r < r_end) {
        h = std::min(h, r_end - r);
        if (!(h > r * 1e-15) && !(h > 1e-280))
            throw SolverError("radial ODE: step size underflow at r = " + std::to_string(r));
        double k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], yt[2];

        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * A21 * k1[i];
        f(r + h / 5.0, yt, k2);
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        f(r + 3.0 * h / 10.0, yt, k3);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        f(r + 4.0 * h / 5.0, yt, k4);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        f(r + 8.0 * h / 9.0, yt, k5);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] +
                    h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        f(r + h, yt, k6);
        double ynew[2];
        for (int i = 0; i < 2; ++i)
            ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] +
                                  B6 * k6[i]);
        f(r + h, ynew, k7);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                            E6 * k6[i] + E7 * k7[i]);
            double scale = 1e-300 + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            if (e != 0.0) err = std::max(err, std::abs(e) / scale);
        }

        if (err <= 1.0) {
            r += h;
            y[0] = ynew[0];
            y[1] = ynew[1];
            k1[0] = k7[0];
            k1[1] = k7[1];
            rejects_in_a_row = 0;
        } else if (++rejects_in_a_row > 60) {
            throw SolverError("radial ODE: repeated step rejection");
        }
        double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(grow, 0.2, 5.0);
    }
}

} // namespace

RadialProfile::RadialProfile(const ModelSpace& space, int l,
                             std::shared_ptr<const std::vector<double>> grid)
    : space_(space), l_(l), grid_(std::move(grid)) {
    if (l < 0) throw DomainError("RadialProfile: degree must be >= 0");
    const std::vector<double>& g = *grid_;
    if (g.empty()) throw DomainError("RadialProfile: empty grid");
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
        if (!(g[i] < g[i + 1]))
            throw DomainError("RadialProfile: grid must be strictly increasing");
    double R = admissible_radius(space_);
    if (!(g.front() > 0.0) || (std::isfinite(R) && !(g.back() < R)))
        throw DomainError("RadialProfile: grid must lie inside (0, admissible radius)");

    eig_ = static_cast<double>(static_cast<long long>(l) * (l + space_.n - 2));

    // Frobenius coefficients: u = sum_j a_j r^{l+2j}
    const int n = space_.n;
    const double K = space_.K;
    series_[0] = 1.0;
    for (int j = 1; j < 6; ++j) {
        double rhs = 0.0;
        double Kp = K;
        for (int i = 1; i <= j; ++i) {
            rhs -= Kp * ((n - 1) * kCotSeries[i] * (l + 2.0 * (j - i)) - eig_ * kCscSeries[i]) *
                   series_[j - i];
            Kp *= K;
        }
        double denom = 2.0 * j * (2.0 * l + 2.0 * j + n - 2.0);
        series_[j] = rhs / denom;
    }

    seed_radius_ = g.front() / 4.0;
    if (std::isfinite(R)) seed_radius_ = std::max(seed_radius_, 1e-6 * R);
    seed_radius_ = std::min(seed_radius_, g.front());

    OdeRhs f{n, K, eig_};
    const double rtol = 1e-13;
    w_.resize(g.size());
    w_r_.resize(g.size());

    auto seed = series_eval(seed_radius_);
    double y[2] = {seed[0], seed[1]};
    double r = seed_radius_;
    for (std::size_t i = 0; i < g.size(); ++i) {
        integrate_dopri5(f, r, g[i], y, rtol);
        r = g[i];
        w_[i] = y[0];
        w_r_[i] = y[1];
    }
}

std::array<double, 2> RadialProfile::series_eval(double r) const {
    double u = 0.0, du = 0.0;
    double p = std::pow(r, l_); // r^{l+2j}
    for (int j = 0; j < 6; ++j) {
        u += series_[j] * p;
        du += series_[j] * (l_ + 2.0 * j) * (r > 0.0 ? p / r : (l_ + 2 * j == 1 ? 1.0 : 0.0));
        p *= r * r;
    }
    return {u, du};
}

double RadialProfile::second_derivative(std::size_t i) const {
    double r = (*grid_)[i];
    double s = sin_k(space_.K, r);
    return -(space_.n - 1) * cot_k(space_.K, r) * w_r_[i] + eig_ / (s * s) * w_[i];
}

double RadialProfile::ode_defect() const {
    const std::vector<double>& g = *grid_;
    OdeRhs f{space_.n, space_.K, eig_};
    double worst = 0.0;
    auto rk4_span = [&](double r0, double r1, double y[2]) {
        const int steps = 64;
        double h = (r1 - r0) / steps;
        for (int s = 0; s < steps; ++s) {
            double r = r0 + s * h;
            double k1[2], k2[2], k3[2], k4[2], yt[2];
            f(r, y, k1);
            for (int i = 0; i < 2; ++i) yt[i] = y[i] + 0.5 * h * k1[i];
            f(r + 0.5 * h, yt, k2);
            for (int i = 0; i < 2; ++i) yt[i] = y[i] + 0.5 * h * k2[i];
            f(r + 0.5 * h, yt, k3);
            for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * k3[i];
            f(r + h, yt, k4);
            for (int i = 0; i < 2; ++i)
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    };
    // seed -> first grid point, then each interval
    {
        auto seed = series_eval(seed_radius_);
        double y[2] = {seed[0], seed[1]};
        rk4_span(seed_radius_, g[0], y);
        double scale = 1.0 + std::abs(w_[0]) + std::abs(w_r_[0]);
        worst = (std::abs(y[0] - w_[0]) + std::abs(y[1] - w_r_[0])) / scale;
    }
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        double y[2] = {w_[i], w_r_[i]};
        rk4_span(g[i], g[i + 1], y);
        double scale = 1.0 + std::abs(w_[i + 1]) + std::abs(w_r_[i + 1]);
        worst = std::max(worst,
                         (std::abs(y[0] - w_[i + 1]) + std::abs(y[1] - w_r_[i + 1])) / scale);
    }
    return worst;
}

RadialProfileSet::RadialProfileSet(const ModelSpace& space, const std::vector<int>& degrees,
                                   std::vector<double> grid)
    : space_(space), grid_(std::make_shared<const std::vector<double>>(std::move(grid))) {
    std::vector<int> ls = degrees;
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    std::vector<std::unique_ptr<RadialProfile>> built(ls.size());
    parallel_for(ls.size(), [&](std::size_t i) {
        built[i] = std::make_unique<RadialProfile>(space_, ls[i], grid_);
    });
    for (std::size_t i = 0; i < ls.size(); ++i)
        profiles_.emplace(ls[i], std::move(*built[i]));
}

const RadialProfile& RadialProfileSet::at(int l) const {
    auto it = profiles_.find(l);
    if (it == profiles_.end())
        throw DomainError("RadialProfileSet: no profile for degree " + std::to_string(l));
    return it->second;
}

std::size_t RadialProfileSet::index_of(double r) const {
    const std::vector<double>& g = *grid_;
    auto it = std::lower_bound(g.begin(), g.end(), r);
    if (it == g.end() || *it != r)
        throw DomainError("RadialProfileSet: radius is not a grid point");
    return static_cast<std::size_t>(it - g.begin());
}

std::vector<double> log_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw DomainError("log_grid: need 0 < lo < hi and count >= 2");
    std::vector<double> g(count);
    double ratio = hi / lo;
    for (int i = 0; i < count; ++i)
        g[i] = lo * std::pow(ratio, static_cast<double>(i) / (count - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

} // namespace curvelab
