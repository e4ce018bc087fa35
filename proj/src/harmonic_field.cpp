#include "curvelab/harmonic_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "curvelab/errors.hpp"
#include "curvelab/rng.hpp"

namespace curvelab {

HarmonicField::HarmonicField(ModelSpace space, std::vector<WeightedMode> modes,
                             AngularNorm norm)
    : space_(space), modes_(std::move(modes)), norm_(norm) {
    if (norm_ == AngularNorm::Raw && space_.n != 2)
        throw DomainError("HarmonicField: the raw convention is only defined for n=2");
    bool any = false;
    for (const auto& wm : modes_) {
        // re-derive the eigenvalue to catch modes built for another dimension
        SphericalMode check = make_mode(space_.n, wm.mode.l, wm.mode.mu);
        if (check.eig != wm.mode.eig)
            throw DomainError("HarmonicField: mode eigenvalue does not match dimension");
        if (wm.coeff != 0.0) any = true;
        lmax_ = std::max(lmax_, wm.mode.l);
    }
    if (!any) throw DomainError("HarmonicField: needs at least one nonzero coefficient");
}

std::vector<int> HarmonicField::degrees() const {
    std::vector<int> ls;
    for (const auto& wm : modes_) ls.push_back(wm.mode.l);
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    return ls;
}

PointwiseField HarmonicField::pointwise(const RadialProfileSet& profiles) const {
    PointwiseField f;
    f.space = space_;
    f.eval = [this, &profiles](double r, std::span<const double> v) {
        std::size_t i = profiles.index_of(r);
        double sum = 0.0;
        for (const auto& wm : modes_) {
            double radial = profiles.at(wm.mode.l).value(i);
            sum += wm.coeff * radial * mode_eval(space_.n, wm.mode, v, norm_);
        }
        return sum;
    };
    return f;
}

QDerivatives q_eval(const HarmonicField& field, const RadialProfileSet& profiles,
                    std::size_t grid_index) {
    const ModelSpace& sp = field.space();
    double r = profiles.grid()[grid_index];
    double s = sin_k(sp.K, r);
    double cot = cot_k(sp.K, r);
    double A = 0.0, B = 0.0, C = 0.0;
    for (const auto& wm : field.modes()) {
        const RadialProfile& p = profiles.at(wm.mode.l);
        double w2 = wm.coeff * wm.coeff * mode_norm2(sp.n, wm.mode, field.normalization());
        double u = p.value(grid_index);
        double du = p.derivative(grid_index);
        double d2u = p.second_derivative(grid_index);
        A += w2 * u * u;
        B += 2.0 * w2 * u * du;
        C += 2.0 * w2 * (du * du + u * d2u);
    }
    double area = std::pow(s, sp.n - 1);
    QDerivatives out;
    out.q = area * A;
    out.dq = (sp.n - 1) * cot * out.q + area * B;
    out.d2q = area * ((sp.n - 1) * (sp.n - 2) * cot * cot * A - (sp.n - 1) * sp.K * A +
                      2.0 * (sp.n - 1) * cot * B + C);
    return out;
}

QDerivatives q_eval_at(const HarmonicField& field, const RadialProfileSet& profiles,
                       double r) {
    return q_eval(field, profiles, profiles.index_of(r));
}

double dirichlet_positivity(const HarmonicField& field, const RadialProfileSet& profiles,
                            std::size_t grid_index) {
    const ModelSpace& sp = field.space();
    double r = profiles.grid()[grid_index];
    double B = 0.0;
    for (const auto& wm : field.modes()) {
        const RadialProfile& p = profiles.at(wm.mode.l);
        double w2 = wm.coeff * wm.coeff * mode_norm2(sp.n, wm.mode, field.normalization());
        B += 2.0 * w2 * p.value(grid_index) * p.derivative(grid_index);
    }
    return std::pow(sin_k(sp.K, r), sp.n - 1) * B;
}

GrowthReport convexity_residuals(const HarmonicField& field, const RadialProfileSet& profiles,
                                 const ComparisonPair& pair, double tol) {
    const ModelSpace& sp = field.space();
    if (!(pair.kappa <= sp.K && sp.K <= pair.K))
        throw DomainError("convexity_residuals: model curvature outside the bracket");
    double R_pair = std::min(sp.inj, pair.K > 0.0
                                         ? std::numbers::pi / (2.0 * std::sqrt(pair.K))
                                         : kUnbounded);
    const std::vector<double>& grid = profiles.grid();
    if (!(grid.back() < R_pair))
        throw DomainError("convexity_residuals: grid exceeds the admissible radius");

    const int n = sp.n;
    const double Kp = std::max(pair.K, 0.0);
    const double Km = std::max(-pair.K, 0.0);
    const double gap = pair.K - pair.kappa;

    GrowthReport rep;
    rep.tol = tol;
    rep.r = grid;
    rep.q.resize(grid.size());
    rep.dlogq.resize(grid.size());
    rep.d2logq.resize(grid.size());
    rep.residual_i.resize(grid.size());
    rep.residual_ii.resize(grid.size());
    rep.residual_ii_tilde.resize(grid.size());

    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double r = grid[i];
        QDerivatives qd = q_eval(field, profiles, i);
        if (!(qd.q > 0.0)) throw SolverError("convexity_residuals: nonpositive q");
        double cK = cot_k(pair.K, r);
        double ck = cot_k(pair.kappa, r);
        double dl = qd.dlogq();
        double d2l = qd.d2logq();
        rep.q[i] = qd.q;
        rep.dlogq[i] = dl;
        rep.d2logq[i] = d2l;
        rep.residual_i[i] = dl - (n - 1) * cK;
        rep.residual_ii[i] =
            d2l + cK * dl + (n + 1) * (ck - cK) * dl + pair.K + (n - 2) * Kp + (2 * n - 3) * gap;
        // Q = q / (sin_K r)^{n-1}: (log Q)' = (log q)' - (n-1) cot_K,
        // (log Q)'' = (log q)'' + (n-1)/sin_K^2
        double sK = sin_k(pair.K, r);
        double dlQ = dl - (n - 1) * cK;
        double d2lQ = d2l + (n - 1) / (sK * sK);
        rep.residual_ii_tilde[i] =
            d2lQ + cK * dlQ + (n + 1) * (ck - cK) * dlQ + (n - 2) * Km + (2 * n - 3) * gap;
        worst = std::min({worst, rep.residual_i[i], rep.residual_ii[i]});
    }
    rep.worst_margin = worst;
    rep.pass = worst >= -tol;
    rep.params["n"] = n;
    rep.params["K_model"] = sp.K;
    rep.params["kappa"] = pair.kappa;
    rep.params["K"] = pair.K;
    return rep;
}

double doubling_margin(const HarmonicField& field, const RadialProfileSet& profiles,
                       double r, double s, double K_bound) {
    const ModelSpace& sp = field.space();
    if (!(K_bound > 0.0)) throw DomainError("doubling_margin: needs K_bound > 0");
    if (std::abs(sp.K) > K_bound)
        throw DomainError("doubling_margin: model curvature violates |Sec| <= K");
    if (!(0.0 < r && r <= s))
        throw DomainError("doubling_margin: need 0 < r <= s");
    if (!(s < 1.0 / (4.0 * std::sqrt(sp.n * K_bound))))
        throw DomainError("doubling_margin: s must be below 1/(4 sqrt(n K))");
    double qr = q_eval_at(field, profiles, r).q;
    double q2r = q_eval_at(field, profiles, 2.0 * r).q;
    double qs = q_eval_at(field, profiles, s).q;
    double q2s = q_eval_at(field, profiles, 2.0 * s).q;
    double lhs = std::log(q2r / qr);
    double rhs = (1.0 + 32.0 * sp.n * r * r * K_bound) * std::log(q2s / qs);
    return rhs - lhs;
}

MonotonicityReport frequency_monotonicity(const HarmonicField& field,
                                          const RadialProfileSet& profiles, double K_bound,
                                          double tol) {
    const ModelSpace& sp = field.space();
    if (K_bound < 0.0)
        throw DomainError("frequency_monotonicity: curvature bound must be >= 0");
    if (std::abs(sp.K) > K_bound && sp.K != 0.0)
        throw DomainError("frequency_monotonicity: needs |Sec| <= K_bound");
    const std::vector<double>& grid = profiles.grid();
    MonotonicityReport rep;
    rep.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double r = grid[i];
        QDerivatives qd = q_eval(field, profiles, i);
        rep.values[i] = std::exp(6.0 * sp.n * r * r * K_bound) * r * qd.dq / qd.q;
    }
    double scale = 1.0;
    for (double v : rep.values) scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < rep.values.size(); ++i)
        worst = std::min(worst, (rep.values[i + 1] - rep.values[i]) / scale);
    rep.worst = worst;
    rep.pass = worst >= -tol;
    return rep;
}

HarmonicField random_field(const ModelSpace& space, int lmax, std::uint64_t seed,
                           AngularNorm norm) {
    Rng rng(seed);
    std::vector<WeightedMode> modes;
    for (int l = 0; l <= lmax; ++l) {
        for (int mu : standard_mode_subset(space.n, l)) {
            double c = rng.normal() / (l + 1.0);
            modes.push_back({make_mode(space.n, l, mu), c});
        }
    }
    // ensure the field is nonzero even for a pathological draw
    bool any = false;
    for (const auto& wm : modes) any = any || wm.coeff != 0.0;
    if (!any) modes[0].coeff = 1.0;
    return HarmonicField(space, std::move(modes), norm);
}

} // namespace curvelab
