#include "weakreal/weakvalue.hpp"

#include <numeric>
#include <stdexcept>

namespace weakreal {

PPSPair::PPSPair(Ket pre, Ket post) : pre_(std::move(pre)), post_(std::move(post)) {
    if (pre_.space() != post_.space())
        throw std::invalid_argument("pre and post kets live in different spaces");
    overlap_ = inner(post_, pre_);
    if (std::abs(overlap_) <= kOrthogonalPPSTol * pre_.norm() * post_.norm())
        throw OrthogonalPPSError();
}

cplx WeakValueReport::sum() const {
    return std::accumulate(weak_values.begin(), weak_values.end(), cplx(0.0));
}

cplx weak_value(const PPSPair& pps, const HermitianOperator& a) {
    if (a.dim() != pps.dim()) throw std::invalid_argument("observable dimension mismatch");
    cplx num = pps.post().amplitudes().dot(a.matrix() * pps.pre().amplitudes());
    return num / pps.overlap();
}

cplx weak_value(const PPSPair& pps, const Projector& p) {
    if (p.dim() != pps.dim()) throw std::invalid_argument("projector dimension mismatch");
    cplx num = pps.post().amplitudes().dot(p.matrix() * pps.pre().amplitudes());
    return num / pps.overlap();
}

WeakValueReport projector_weak_values(const PPSPair& pps, const std::vector<Projector>& basis,
                                      const std::vector<std::string>& names) {
    if (!is_complete_orthogonal_family(basis, pps.dim()))
        throw std::invalid_argument("projectors do not form a complete orthogonal family");
    WeakValueReport report;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        report.weak_values.push_back(weak_value(pps, basis[i]));
        report.basis.push_back(i < names.size() ? names[i] : "P" + std::to_string(i));
    }
    if (std::abs(report.sum() - cplx(1.0)) > 1e-10)
        throw std::logic_error("projector weak values do not sum to 1");
    return report;
}

std::vector<double> abl_probabilities(const PPSPair& pps, const std::vector<Projector>& basis) {
    if (!is_complete_orthogonal_family(basis, pps.dim()))
        throw std::invalid_argument("ABL basis must be a complete orthogonal family");
    std::vector<double> weights;
    weights.reserve(basis.size());
    double denom = 0.0;
    for (const auto& p : basis) {
        double w = std::norm(weak_value(pps, p));
        weights.push_back(w);
        denom += w;
    }
    if (denom <= 0.0)
        throw std::domain_error("degenerate PPS: all projector weak values vanish");
    for (double& w : weights) w /= denom;
    return weights;
}

double abl_probability(const PPSPair& pps, std::size_t outcome_index,
                       const std::vector<Projector>& basis) {
    if (outcome_index >= basis.size()) throw std::out_of_range("outcome index out of range");
    return abl_probabilities(pps, basis)[outcome_index];
}

double conditional_expectation(const PPSPair& pps, const HermitianOperator& a) {
    EigenSystem es = eigendecompose(a);
    std::vector<double> probs = abl_probabilities(pps, es.projectors);
    double e = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) e += es.eigenvalues[i] * probs[i];
    return e;
}

UpsideDownState upside_down(const PPSPair& pps) {
    Matrix m = pps.pre().amplitudes() * pps.post().amplitudes().adjoint() / pps.overlap();
    return UpsideDownState{std::move(m)};
}

PPSPair synthesize_pps(const std::vector<cplx>& target, const std::vector<cplx>& scale,
                       const ProductSpace& space) {
    if (static_cast<int>(target.size()) != space.dim())
        throw std::invalid_argument("target length does not match space dimension");
    if (scale.size() != target.size())
        throw std::invalid_argument("scale length does not match target length");
    cplx sum = std::accumulate(target.begin(), target.end(), cplx(0.0));
    if (std::abs(sum - cplx(1.0)) > 1e-12)
        throw std::invalid_argument("target weak values must sum to 1");
    Vector pre(space.dim()), post(space.dim());
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (scale[i] == cplx(0.0)) throw std::invalid_argument("scale coefficients must be nonzero");
        pre(static_cast<Eigen::Index>(i)) = target[i] * scale[i];
        post(static_cast<Eigen::Index>(i)) = 1.0 / std::conj(scale[i]);
    }
    return PPSPair(Ket(space, std::move(pre)), Ket(space, std::move(post)));
}

PPSPair synthesize_pps(const std::vector<cplx>& target, const ProductSpace& space) {
    return synthesize_pps(target, std::vector<cplx>(target.size(), cplx(1.0)), space);
}

PPSPair evolve_pps(const PPSPair& pps, const UnitaryFamily& u, double t, double post_time) {
    Matrix uf = u(t).matrix();
    Matrix ub = u(t - post_time).matrix();
    if (uf.rows() != pps.dim()) throw std::invalid_argument("unitary dimension mismatch");
    Ket pre(pps.space(), uf * pps.pre().amplitudes());
    Ket post(pps.space(), ub * pps.post().amplitudes());
    return PPSPair(std::move(pre), std::move(post));
}

}  // namespace weakreal
