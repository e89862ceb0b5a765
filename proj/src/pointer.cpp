#include "weakreal/pointer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace weakreal {

namespace {

// Pairwise overlap of unit Gaussians of width eps at centers a and b:
// integral G(x-a) G(x-b) dx = exp(-(a-b)^2 / (4 eps^2)).
double overlap(double a, double b, double eps) {
    double u = (a - b) / eps;
    return std::exp(-u * u / 4.0);
}

}  // namespace

double PointerState::norm_squared() const {
    double n = 0.0;
    for (const auto& ti : terms)
        for (const auto& tj : terms)
            n += (std::conj(ti.coefficient) * tj.coefficient).real() *
                 overlap(ti.center, tj.center, width);
    return n;
}

PointerState measure_and_postselect(const PPSPair& pps, const HermitianOperator& a,
                                    const CouplingConfig& cfg) {
    if (cfg.d <= 0.0 || cfg.epsilon <= 0.0)
        throw std::invalid_argument("coupling scale and pointer width must be positive");
    EigenSystem es = eigendecompose(a);

    Vector pre = pps.pre().amplitudes() / pps.pre().norm();
    Vector post = pps.post().amplitudes() / pps.post().norm();

    PointerState ps;
    ps.width = cfg.epsilon;
    for (std::size_t j = 0; j < es.eigenvalues.size(); ++j) {
        cplx c = post.dot(es.projectors[j].matrix() * pre);
        ps.terms.push_back({c, cfg.d * es.eigenvalues[j]});
    }
    double n2 = ps.norm_squared();
    if (n2 <= 0.0)
        throw std::domain_error("post-selection orthogonal to every measurement branch");
    double s = 1.0 / std::sqrt(n2);
    for (auto& t : ps.terms) t.coefficient *= s;
    ps.normalized = true;
    return ps;
}

PointerMoments pointer_moments(const PointerState& ps) {
    if (!ps.normalized) throw std::invalid_argument("pointer state must be normalized");
    const double eps2 = ps.width * ps.width;
    double mx = 0.0, mp = 0.0;
    for (const auto& ti : ps.terms) {
        for (const auto& tj : ps.terms) {
            cplx w = std::conj(ti.coefficient) * tj.coefficient;
            double s = overlap(ti.center, tj.center, ps.width);
            // integral G(x-a) x G(x-b) dx = S_ab (a+b)/2
            mx += (w * s * ((ti.center + tj.center) / 2.0)).real();
            // integral G(x-a) (-i d/dx) G(x-b) dx = i S_ab (a-b)/(2 eps^2)
            mp += (w * cplx(0.0, 1.0) * s * ((ti.center - tj.center) / (2.0 * eps2))).real();
        }
    }
    return {mx, mp};
}

StrongLimitResult strong_limit_probabilities(const PPSPair& pps, const HermitianOperator& a,
                                             const CouplingConfig& cfg) {
    PointerState ps = measure_and_postselect(pps, a, cfg);

    StrongLimitResult out;
    out.regime_ok = cfg.epsilon / cfg.d <= 1e-3;
    // probability mass of |psi_f|^2 on nearest-center windows, in closed
    // form: G(x-a)G(x-b) integrates to S_ab [erf((hi-m)/eps)-erf((lo-m)/eps)]/2
    // with m = (a+b)/2
    const std::size_t n = ps.terms.size();
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        double c = ps.terms[j].center;
        double lo = -inf, hi = inf;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            double mid = (c + ps.terms[k].center) / 2.0;
            if (ps.terms[k].center < c) lo = std::max(lo, mid);
            if (ps.terms[k].center > c) hi = std::min(hi, mid);
        }
        double mass = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                double m = (ps.terms[p].center + ps.terms[q].center) / 2.0;
                double s = overlap(ps.terms[p].center, ps.terms[q].center, ps.width);
                double span = std::erf((hi - m) / ps.width) - std::erf((lo - m) / ps.width);
                mass += (std::conj(ps.terms[p].coefficient) * ps.terms[q].coefficient).real() *
                        s * span / 2.0;
            }
        }
        out.eigenvalues.push_back(c / cfg.d);
        out.probabilities.push_back(mass);
    }
    return out;
}

WeakLimitReport weak_limit_check(const PPSPair& pps, const HermitianOperator& a,
                                 const std::vector<double>& d_over_eps_sweep) {
    WeakLimitReport report;
    report.weak_value = weak_value(pps, a);
    const double eps = 1.0;
    for (double r : d_over_eps_sweep) {
        CouplingConfig cfg{r * eps, eps};
        PointerState ps = measure_and_postselect(pps, a, cfg);
        PointerMoments m = pointer_moments(ps);
        WeakLimitPoint pt;
        pt.d_over_eps = r;
        pt.mean_x = m.mean_x;
        pt.mean_p = m.mean_p;
        pt.x_error = std::abs(m.mean_x - cfg.d * report.weak_value.real());
        pt.p_error = std::abs(m.mean_p - cfg.d / (eps * eps) * report.weak_value.imag());
        report.points.push_back(pt);
    }

    report.second_order_convergence = true;
    for (std::size_t i = 0; i + 1 < report.points.size(); ++i) {
        const auto& p0 = report.points[i];
        const auto& p1 = report.points[i + 1];
        double expected = (p0.d_over_eps / p1.d_over_eps) * (p0.d_over_eps / p1.d_over_eps);
        // second order in d/eps for the shift measured in units of d;
        // errors already at the numerical floor are treated as converged
        if (p1.x_error > 1e-13 * p1.d_over_eps) {
            double ratio = (p0.x_error / p0.d_over_eps) / (p1.x_error / p1.d_over_eps);
            if (ratio < expected / 2.0 || ratio > expected * 2.0)
                report.second_order_convergence = false;
        }
    }
    return report;
}

}  // namespace weakreal
