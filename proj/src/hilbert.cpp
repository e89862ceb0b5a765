#include "weakreal/hilbert.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace weakreal {

ProductSpace::ProductSpace(std::vector<Subsystem> parts) : parts_(std::move(parts)) {
    std::set<std::string> seen;
    dim_ = 1;
    for (const auto& p : parts_) {
        if (p.states.empty()) throw std::invalid_argument("subsystem with empty local basis");
        if (!seen.insert(p.id).second)
            throw std::invalid_argument("duplicate subsystem id: " + p.id);
        std::set<std::string> local(p.states.begin(), p.states.end());
        if (local.size() != p.states.size())
            throw std::invalid_argument("duplicate local state name in subsystem " + p.id);
        dim_ *= p.dim();
    }
    if (parts_.empty()) dim_ = 0;
}

ProductSpace ProductSpace::single(int dim, const std::string& id) {
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
    Subsystem s;
    s.id = id;
    for (int i = 0; i < dim; ++i) s.states.push_back(std::to_string(i));
    return ProductSpace({std::move(s)});
}

int ProductSpace::flat_index(const std::vector<int>& locals) const {
    if (locals.size() != parts_.size()) throw std::invalid_argument("multi-index arity mismatch");
    int idx = 0;
    for (std::size_t k = 0; k < parts_.size(); ++k) {
        if (locals[k] < 0 || locals[k] >= parts_[k].dim())
            throw std::out_of_range("local state index out of range");
        idx = idx * parts_[k].dim() + locals[k];
    }
    return idx;
}

std::vector<int> ProductSpace::multi_index(int flat) const {
    if (flat < 0 || flat >= dim_) throw std::out_of_range("basis index out of range");
    std::vector<int> locals(parts_.size());
    for (std::size_t k = parts_.size(); k-- > 0;) {
        locals[k] = flat % parts_[k].dim();
        flat /= parts_[k].dim();
    }
    return locals;
}

std::string ProductSpace::label(int flat) const {
    auto locals = multi_index(flat);
    std::ostringstream os;
    for (std::size_t k = 0; k < parts_.size(); ++k) {
        if (k) os << ",";
        os << parts_[k].states[locals[k]];
    }
    return os.str();
}

int ProductSpace::index_of(const std::vector<std::string>& state_names) const {
    if (state_names.size() != parts_.size())
        throw std::invalid_argument("state name arity mismatch");
    std::vector<int> locals(parts_.size());
    for (std::size_t k = 0; k < parts_.size(); ++k) {
        const auto& states = parts_[k].states;
        auto it = std::find(states.begin(), states.end(), state_names[k]);
        if (it == states.end())
            throw std::invalid_argument("unknown state " + state_names[k] + " in subsystem " +
                                        parts_[k].id);
        locals[k] = static_cast<int>(it - states.begin());
    }
    return flat_index(locals);
}

Ket::Ket(ProductSpace space, Vector amplitudes, bool normalized)
    : space_(std::move(space)), amps_(std::move(amplitudes)), normalized_(normalized) {
    if (amps_.size() != space_.dim())
        throw std::invalid_argument("amplitude vector length does not match space dimension");
    double n = amps_.norm();
    if (n == 0.0) throw std::invalid_argument("the zero vector is not a valid ket");
    if (normalized_ && std::abs(n * n - 1.0) > 1e-12)
        throw std::invalid_argument("ket flagged normalized but norm^2 deviates from 1");
}

Ket Ket::basis_state(const ProductSpace& space, int index) {
    Vector v = Vector::Zero(space.dim());
    v(index) = 1.0;
    return Ket(space, std::move(v), true);
}

Ket Ket::normalize() const { return Ket(space_, amps_ / amps_.norm(), true); }

HermitianOperator::HermitianOperator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("operator matrix not square");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw std::invalid_argument("matrix is not Hermitian");
}

HermitianOperator HermitianOperator::pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return HermitianOperator(m);
}
HermitianOperator HermitianOperator::pauli_y() {
    Matrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return HermitianOperator(m);
}
HermitianOperator HermitianOperator::pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return HermitianOperator(m);
}

Projector::Projector(Matrix m, int rank, std::optional<std::vector<int>> support)
    : m_(std::move(m)), rank_(rank), support_(std::move(support)) {}

Projector Projector::from_support(int dim, std::vector<int> support) {
    std::sort(support.begin(), support.end());
    if (std::adjacent_find(support.begin(), support.end()) != support.end())
        throw std::invalid_argument("duplicate index in projector support");
    Matrix m = Matrix::Zero(dim, dim);
    for (int i : support) {
        if (i < 0 || i >= dim) throw std::out_of_range("support index out of range");
        m(i, i) = 1.0;
    }
    const int rank = static_cast<int>(support.size());
    return Projector(std::move(m), rank, std::move(support));
}

Projector Projector::from_ket(const Ket& k) {
    Vector v = k.amplitudes() / k.norm();
    Matrix m = v * v.adjoint();
    return Projector(std::move(m), 1, std::nullopt);
}

Projector Projector::from_kets(const std::vector<Ket>& kets) {
    if (kets.empty()) throw std::invalid_argument("empty generating set");
    std::vector<Projector> parts;
    parts.reserve(kets.size());
    for (const auto& k : kets) parts.push_back(from_ket(k));
    return coarse_grain(parts);
}

Projector Projector::from_matrix(Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("projector matrix not square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw std::invalid_argument("projector matrix not Hermitian");
    if ((m * m - m).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("projector matrix not idempotent");
    double tr = m.trace().real();
    int rank = static_cast<int>(std::lround(tr));
    if (std::abs(tr - rank) > 1e-10)
        throw std::invalid_argument("projector trace is not an integer");
    return Projector(std::move(m), rank, std::nullopt);
}

UnitaryMap::UnitaryMap(Matrix m, std::optional<double> time_parameter)
    : m_(std::move(m)), t_(time_parameter) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("unitary matrix not square");
    Matrix should_be_id = m_.adjoint() * m_;
    if ((should_be_id - Matrix::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("matrix is not unitary");
}

Ket tensor(const std::vector<Ket>& kets) {
    if (kets.empty()) throw std::invalid_argument("tensor of zero kets");
    if (kets.size() == 1) return kets.front();

    std::vector<Subsystem> parts;
    std::set<std::string> ids;
    for (const auto& k : kets)
        for (const auto& p : k.space().parts()) {
            if (!ids.insert(p.id).second)
                throw std::invalid_argument("duplicate subsystem id in tensor: " + p.id);
            parts.push_back(p);
        }

    Vector amps = kets.front().amplitudes();
    for (std::size_t k = 1; k < kets.size(); ++k) {
        const Vector& b = kets[k].amplitudes();
        Vector next(amps.size() * b.size());
        for (Eigen::Index i = 0; i < amps.size(); ++i)
            next.segment(i * b.size(), b.size()) = amps(i) * b;
        amps = std::move(next);
    }
    return Ket(ProductSpace(std::move(parts)), std::move(amps), false);
}

Projector coarse_grain(const std::vector<Projector>& projectors) {
    if (projectors.empty()) throw std::invalid_argument("coarse_grain of empty list");
    if (projectors.size() == 1) return projectors.front();
    int d = projectors.front().dim();
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        if (projectors[i].dim() != d) throw std::invalid_argument("projector dimension mismatch");
        for (std::size_t j = i + 1; j < projectors.size(); ++j) {
            if ((projectors[i].matrix() * projectors[j].matrix()).cwiseAbs().maxCoeff() >
                kOrthogonalityTol)
                throw std::invalid_argument("coarse_grain requires mutually orthogonal projectors");
        }
    }
    Matrix sum = Matrix::Zero(d, d);
    int rank = 0;
    bool all_diag = true;
    std::vector<int> support;
    for (const auto& p : projectors) {
        sum += p.matrix();
        rank += p.rank();
        if (p.support()) {
            support.insert(support.end(), p.support()->begin(), p.support()->end());
        } else {
            all_diag = false;
        }
    }
    if (all_diag) return Projector::from_support(d, std::move(support));
    Projector out = Projector::from_matrix(std::move(sum));
    if (out.rank() != rank) throw std::logic_error("coarse_grain rank mismatch");
    return out;
}

EigenSystem eigendecompose(const HermitianOperator& op) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed to converge");
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();

    EigenSystem out;
    int d = op.dim();
    int start = 0;
    while (start < d) {
        int end = start + 1;
        while (end < d && vals(end) - vals(end - 1) < kEigenGroupTol) ++end;
        double lambda = vals.segment(start, end - start).mean();
        Matrix p = Matrix::Zero(d, d);
        for (int j = start; j < end; ++j) p += vecs.col(j) * vecs.col(j).adjoint();
        out.eigenvalues.push_back(lambda);
        out.projectors.push_back(Projector::from_matrix(std::move(p)));
        start = end;
    }

    // reconstruction check
    Matrix rec = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < out.eigenvalues.size(); ++i)
        rec += out.eigenvalues[i] * out.projectors[i].matrix();
    if ((rec - op.matrix()).cwiseAbs().maxCoeff() > kReconstructTol)
        throw std::runtime_error("spectral reconstruction outside tolerance");
    return out;
}

bool is_complete_orthogonal_family(const std::vector<Projector>& projectors, int dim, double tol) {
    if (projectors.empty()) return false;
    Matrix sum = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        if (projectors[i].dim() != dim) return false;
        for (std::size_t j = i + 1; j < projectors.size(); ++j)
            if ((projectors[i].matrix() * projectors[j].matrix()).cwiseAbs().maxCoeff() > tol)
                return false;
        sum += projectors[i].matrix();
    }
    return (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace weakreal
