#include "weakreal/ontology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace weakreal {

namespace {

constexpr double kStructureTol = 1e-10;

long long ceil_q2(const QSqrt2& x) {
    auto n = static_cast<long long>(std::ceil(x.value() - 1e-9));
    while (QSqrt2(n) < x) ++n;
    while (QSqrt2(n - 1) >= x) --n;
    return n;
}

/// Unique exact solution of A p = b over Q(sqrt2), or nullopt if the
/// system is inconsistent or underdetermined.
std::optional<std::vector<QSqrt2>> solve_unique(std::vector<std::vector<QSqrt2>> a,
                                                std::vector<QSqrt2> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        std::swap(b[piv], b[rank]);
        QSqrt2 inv = a[rank][c].inverse();
        for (std::size_t cc = c; cc < cols; ++cc) a[rank][cc] = a[rank][cc] * inv;
        b[rank] = b[rank] * inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c].is_zero()) continue;
            QSqrt2 f = a[r][c];
            for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
            b[r] -= f * b[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    if (rank < cols) return std::nullopt;  // underdetermined
    for (std::size_t r = rank; r < rows; ++r)
        if (!b[r].is_zero()) return std::nullopt;  // inconsistent
    std::vector<QSqrt2> x(cols);
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
    return x;
}

/// Real-axis solver: minimal mixture of integer vectors with exact
/// expectation t. Entries are sign-restricted to the target's signs,
/// which pins the expected count at ||t||_1.
struct RealRow {
    QSqrt2 probability;
    std::vector<long long> config;
};

std::vector<RealRow> floor_ceil_product(const std::vector<QSqrt2>& t) {
    // independent per-coordinate floor/ceil mixing; always feasible
    std::vector<RealRow> rows{{QSqrt2(1), std::vector<long long>(t.size(), 0)}};
    for (std::size_t j = 0; j < t.size(); ++j) {
        long long hi = ceil_q2(t[j]);
        QSqrt2 hi_q(hi);
        if (hi_q == t[j]) {
            for (auto& r : rows) r.config[j] = hi;
            continue;
        }
        long long lo = hi - 1;
        QSqrt2 p_hi = t[j] - QSqrt2(lo);  // in (0,1)
        QSqrt2 p_lo = QSqrt2(1) - p_hi;
        if (rows.size() > (1u << 16))
            throw std::runtime_error("decomposition support blow-up; increase bound or simplify target");
        std::vector<RealRow> next;
        next.reserve(rows.size() * 2);
        for (const auto& r : rows) {
            RealRow rl = r, rh = r;
            rl.probability = r.probability * p_lo;
            rl.config[j] = lo;
            rh.probability = r.probability * p_hi;
            rh.config[j] = hi;
            next.push_back(std::move(rl));
            next.push_back(std::move(rh));
        }
        rows = std::move(next);
    }
    return rows;
}

std::vector<RealRow> solve_real_axis(const std::vector<QSqrt2>& t, int bound) {
    const std::size_t d = t.size();

    // integral target: a single deterministic configuration
    bool integral = true;
    std::vector<long long> exact(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
        long long c = ceil_q2(t[j]);
        if (QSqrt2(c) != t[j]) {
            integral = false;
            break;
        }
        exact[j] = c;
    }
    if (integral) return {{QSqrt2(1), std::move(exact)}};

    QSqrt2 max_abs(0);
    for (const auto& x : t) max_abs = std::max(max_abs, abs(x));
    const long long limit = ceil_q2(max_abs) + bound;

    // sign-restricted candidate values per coordinate
    std::vector<std::vector<long long>> values(d);
    std::size_t count = 1;
    for (std::size_t j = 0; j < d; ++j) {
        int s = t[j].sign();
        if (s == 0) {
            values[j] = {0};
        } else {
            for (long long v = 0; v <= limit; ++v) values[j].push_back(s > 0 ? v : -v);
            if (s < 0) std::reverse(values[j].begin(), values[j].end());
        }
        count *= values[j].size();
        if (count > 4096) break;
    }

    if (count <= 4096) {
        // enumerate candidates in lexicographic order
        std::vector<std::vector<long long>> cands;
        std::vector<std::size_t> idx(d, 0);
        for (;;) {
            std::vector<long long> c(d);
            for (std::size_t j = 0; j < d; ++j) c[j] = values[j][idx[j]];
            cands.push_back(std::move(c));
            std::size_t j = d;
            while (j-- > 0) {
                if (++idx[j] < values[j].size()) break;
                idx[j] = 0;
                if (j == 0) goto done;
            }
        }
    done:
        std::sort(cands.begin(), cands.end());

        const std::size_t n = cands.size();
        const std::size_t kmax = std::min<std::size_t>(d + 1, 3);
        for (std::size_t k = 2; k <= kmax; ++k) {
            std::vector<bool> mask(n, false);
            std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
            do {
                std::vector<std::size_t> pick;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask[i]) pick.push_back(i);
                // equations: sum p = 1 and sum p c_j = t_j
                std::vector<std::vector<QSqrt2>> A(d + 1, std::vector<QSqrt2>(k));
                std::vector<QSqrt2> rhs(d + 1);
                for (std::size_t i = 0; i < k; ++i) A[0][i] = QSqrt2(1);
                rhs[0] = QSqrt2(1);
                for (std::size_t j = 0; j < d; ++j) {
                    for (std::size_t i = 0; i < k; ++i) A[j + 1][i] = QSqrt2(cands[pick[i]][j]);
                    rhs[j + 1] = t[j];
                }
                auto p = solve_unique(std::move(A), std::move(rhs));
                if (!p) continue;
                bool ok = true;
                for (const auto& pi : *p)
                    if (pi.sign() <= 0 || (pi - QSqrt2(1)).sign() > 0) ok = false;
                if (!ok) continue;
                std::vector<RealRow> rows;
                for (std::size_t i = 0; i < k; ++i) rows.push_back({(*p)[i], cands[pick[i]]});
                return rows;
            } while (std::prev_permutation(mask.begin(), mask.end()));
        }
    }

    return floor_ceil_product(t);
}

std::vector<int> flat_to_locals(const std::vector<int>& dims, int flat) {
    std::vector<int> locals(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        locals[k] = flat % dims[k];
        flat /= dims[k];
    }
    return locals;
}

}  // namespace

QSqrt2 Decomposition::expected_count() const {
    QSqrt2 total(0);
    for (const auto& row : support) {
        long long c = 0;
        for (const auto& g : row.config) c += g.l1();
        total += row.probability * QSqrt2(c);
    }
    return total;
}

std::vector<CSqrt2> decomposition_expectation(const Decomposition& dec) {
    if (dec.support.empty()) return {};
    std::vector<CSqrt2> e(dec.support.front().config.size());
    for (const auto& row : dec.support)
        for (std::size_t j = 0; j < row.config.size(); ++j) {
            e[j].re += row.probability * QSqrt2(row.config[j].re);
            e[j].im += row.probability * QSqrt2(row.config[j].im);
        }
    return e;
}

Decomposition decompose(const std::vector<CSqrt2>& target, int bound) {
    if (target.empty()) throw std::invalid_argument("empty decomposition target");
    if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
    const std::size_t d = target.size();
    std::vector<QSqrt2> re(d), im(d);
    for (std::size_t j = 0; j < d; ++j) {
        re[j] = target[j].re;
        im[j] = target[j].im;
    }
    // real and imaginary counterparticle pairs are independent
    auto re_rows = solve_real_axis(re, bound);
    auto im_rows = solve_real_axis(im, bound);

    Decomposition out;
    for (const auto& rr : re_rows)
        for (const auto& ir : im_rows) {
            Decomposition::Row row;
            row.probability = rr.probability * ir.probability;
            if (row.probability.sign() <= 0) continue;
            row.config.resize(d);
            for (std::size_t j = 0; j < d; ++j) row.config[j] = GaussInt(rr.config[j], ir.config[j]);
            out.support.push_back(std::move(row));
        }
    if (!verify_decomposition(out, target))
        throw std::runtime_error("decomposition infeasible within bound; try a larger bound");
    return out;
}

bool verify_decomposition(const Decomposition& dec, const std::vector<CSqrt2>& target) {
    if (dec.support.empty()) return false;
    QSqrt2 psum(0);
    for (const auto& row : dec.support) {
        if (row.probability.sign() <= 0 || (row.probability - QSqrt2(1)).sign() > 0) return false;
        if (row.config.size() != target.size()) return false;
        psum += row.probability;
    }
    if (psum != QSqrt2(1)) return false;
    auto e = decomposition_expectation(dec);
    for (std::size_t j = 0; j < target.size(); ++j)
        if (e[j] != target[j]) return false;
    return true;
}

bool verify_decomposition_numeric(const std::vector<double>& probabilities,
                                  const std::vector<Configuration>& configs,
                                  const std::vector<cplx>& target) {
    if (probabilities.size() != configs.size() || probabilities.empty()) return false;
    double psum = 0.0;
    for (double p : probabilities) {
        if (p < 0.0 || p > 1.0 + 1e-12) return false;
        psum += p;
    }
    if (std::abs(psum - 1.0) > 1e-12) return false;
    std::vector<cplx> e(target.size(), cplx(0.0));
    for (std::size_t r = 0; r < configs.size(); ++r) {
        if (configs[r].size() != target.size()) return false;
        for (std::size_t j = 0; j < target.size(); ++j)
            e[j] += probabilities[r] * configs[r][j].value();
    }
    for (std::size_t j = 0; j < target.size(); ++j)
        if (std::abs(e[j] - target[j]) > 1e-12) return false;
    return true;
}

bool is_connected(const NStructure& s, int num_subsystems) {
    if (num_subsystems <= 1) return true;
    std::vector<int> parent(num_subsystems);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [a, b] : s.edges) parent[find(a)] = find(b);
    int root = find(0);
    for (int v = 1; v < num_subsystems; ++v)
        if (find(v) != root) return false;
    return true;
}

StructureSet build_structures(const ProductSpace& space, const std::vector<cplx>& joint_wv) {
    if (static_cast<int>(joint_wv.size()) != space.dim())
        throw std::invalid_argument("joint weak-value vector does not cover the product basis");
    cplx total = std::accumulate(joint_wv.begin(), joint_wv.end(), cplx(0.0));
    if (std::abs(total - cplx(1.0)) > 1e-9)
        throw std::invalid_argument("joint weak values must sum to 1");

    const int n = space.num_subsystems();
    StructureSet out;
    for (int flat = 0; flat < space.dim(); ++flat) {
        cplx wv = joint_wv[static_cast<std::size_t>(flat)];
        if (std::abs(wv) <= kStructureTol) continue;
        NStructure s;
        s.local_states = space.multi_index(flat);
        s.multiplicity = wv;
        for (int k = 0; k < n; ++k)
            s.vertices.emplace_back(space.parts()[k].id,
                                    space.parts()[k].states[s.local_states[k]]);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                // pairwise marginal at this structure's (s_i, s_j)
                cplx m(0.0);
                for (int f = 0; f < space.dim(); ++f) {
                    auto locals = space.multi_index(f);
                    if (locals[i] == s.local_states[i] && locals[j] == s.local_states[j])
                        m += joint_wv[static_cast<std::size_t>(f)];
                }
                if (std::abs(m) > kStructureTol) s.edges.emplace_back(i, j);
            }
        }
        out.structures.push_back(std::move(s));
    }
    return out;
}

MarginalReport marginal_weak_values(const ProductSpace& space, const std::vector<cplx>& joint_wv,
                                    const std::vector<int>& subsystem_subset) {
    if (subsystem_subset.empty()) throw std::invalid_argument("empty subsystem subset");
    if (static_cast<int>(joint_wv.size()) != space.dim())
        throw std::invalid_argument("joint weak-value vector does not cover the product basis");
    std::vector<int> subset = subsystem_subset;
    std::sort(subset.begin(), subset.end());
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
        throw std::invalid_argument("duplicate subsystem in subset");
    for (int k : subset)
        if (k < 0 || k >= space.num_subsystems())
            throw std::out_of_range("subsystem index out of range");

    std::vector<Subsystem> parts;
    for (int k : subset) parts.push_back(space.parts()[static_cast<std::size_t>(k)]);
    ProductSpace sub(parts);

    MarginalReport report;
    report.subspace = sub;
    report.weak_values.assign(static_cast<std::size_t>(sub.dim()), cplx(0.0));
    for (int f = 0; f < space.dim(); ++f) {
        auto locals = space.multi_index(f);
        std::vector<int> sub_locals;
        sub_locals.reserve(subset.size());
        for (int k : subset) sub_locals.push_back(locals[static_cast<std::size_t>(k)]);
        report.weak_values[static_cast<std::size_t>(sub.flat_index(sub_locals))] +=
            joint_wv[static_cast<std::size_t>(f)];
    }
    for (int i = 0; i < sub.dim(); ++i) report.labels.push_back(sub.label(i));
    return report;
}

std::vector<HermitianOperator> cardinal_basis(int d, CardinalMode mode) {
    if (d < 2) throw std::invalid_argument("cardinal basis requires dimension >= 2");
    std::vector<HermitianOperator> out;
    if (mode == CardinalMode::gell_mann) {
        for (int j = 0; j < d; ++j) {
            for (int k = j + 1; k < d; ++k) {
                Matrix sym = Matrix::Zero(d, d), anti = Matrix::Zero(d, d);
                sym(j, k) = 1.0;
                sym(k, j) = 1.0;
                anti(j, k) = cplx(0.0, -1.0);
                anti(k, j) = cplx(0.0, 1.0);
                out.emplace_back(std::move(sym));
                out.emplace_back(std::move(anti));
            }
        }
        for (int l = 1; l < d; ++l) {
            Matrix m = Matrix::Zero(d, d);
            double scale = std::sqrt(2.0 / (l * (l + 1.0)));
            for (int j = 0; j < l; ++j) m(j, j) = scale;
            m(l, l) = -l * scale;
            out.emplace_back(std::move(m));
        }
    } else {
        int n = 0;
        while ((1 << n) < d) ++n;
        if ((1 << n) != d)
            throw std::invalid_argument("pauli_product mode requires dimension 2^N");
        const Matrix paulis[4] = {Matrix::Identity(2, 2), HermitianOperator::pauli_x().matrix(),
                                  HermitianOperator::pauli_y().matrix(),
                                  HermitianOperator::pauli_z().matrix()};
        const double scale = std::sqrt(2.0 / d);
        int total = 1;
        for (int i = 0; i < n; ++i) total *= 4;
        for (int code = 1; code < total; ++code) {
            Matrix m = Matrix::Identity(1, 1);
            int c = code;
            std::vector<int> digits(n);
            for (int i = n - 1; i >= 0; --i) {
                digits[static_cast<std::size_t>(i)] = c % 4;
                c /= 4;
            }
            for (int i = 0; i < n; ++i) {
                const Matrix& p = paulis[digits[static_cast<std::size_t>(i)]];
                Matrix next(m.rows() * 2, m.cols() * 2);
                for (Eigen::Index r = 0; r < m.rows(); ++r)
                    for (Eigen::Index cc = 0; cc < m.cols(); ++cc)
                        next.block(r * 2, cc * 2, 2, 2) = m(r, cc) * p;
                m = std::move(next);
            }
            out.emplace_back(Matrix(scale * m));
        }
    }
    return out;
}

Matrix CardinalRepresentation::reconstruct() const {
    Matrix m = Matrix::Identity(dimension, dimension) / static_cast<double>(dimension);
    for (std::size_t i = 0; i < operator_basis.size(); ++i)
        m += 0.5 * weak_vector[i] * operator_basis[i].matrix();
    return m;
}

CardinalRepresentation weak_vector(const PPSPair& pps, std::vector<HermitianOperator> basis) {
    const int d = pps.dim();
    UpsideDownState rho = upside_down(pps);
    CardinalRepresentation rep;
    rep.dimension = d;
    for (const auto& g : basis) {
        if (g.dim() != d) throw std::invalid_argument("cardinal basis dimension mismatch");
        rep.weak_vector.push_back((rho.matrix * g.matrix()).trace());
    }
    rep.operator_basis = std::move(basis);
    if ((rep.reconstruct() - rho.matrix).cwiseAbs().maxCoeff() > 1e-10)
        throw std::logic_error("cardinal reconstruction identity violated");
    return rep;
}

CardinalJointTable cardinal_joint_distribution(const std::vector<Decomposition>& per_axis) {
    if (per_axis.empty()) throw std::invalid_argument("no axes given");
    CardinalJointTable table;
    int joint_dim = 1;
    for (const auto& dec : per_axis) {
        if (dec.support.empty()) throw std::invalid_argument("axis with empty decomposition");
        int da = static_cast<int>(dec.support.front().config.size());
        table.axis_dims.push_back(da);
        joint_dim *= da;
    }

    const std::size_t n_axes = per_axis.size();
    std::vector<std::size_t> pick(n_axes, 0);
    for (;;) {
        Decomposition::Row row;
        row.probability = QSqrt2(1);
        for (std::size_t a = 0; a < n_axes; ++a)
            row.probability = row.probability * per_axis[a].support[pick[a]].probability;
        row.config.assign(static_cast<std::size_t>(joint_dim), GaussInt(1, 0));
        for (int cell = 0; cell < joint_dim; ++cell) {
            auto locals = flat_to_locals(table.axis_dims, cell);
            GaussInt v(1, 0);
            for (std::size_t a = 0; a < n_axes; ++a)
                v = v * per_axis[a].support[pick[a]].config[static_cast<std::size_t>(locals[a])];
            row.config[static_cast<std::size_t>(cell)] = v;
        }
        table.rows.push_back(std::move(row));

        std::size_t a = n_axes;
        bool done = true;
        while (a-- > 0) {
            if (++pick[a] < per_axis[a].support.size()) {
                done = false;
                break;
            }
            pick[a] = 0;
        }
        if (done) break;
    }
    return table;
}

std::vector<CSqrt2> joint_table_marginal(const CardinalJointTable& table, int axis) {
    if (axis < 0 || axis >= static_cast<int>(table.axis_dims.size()))
        throw std::out_of_range("axis out of range");
    std::vector<CSqrt2> out(static_cast<std::size_t>(table.axis_dims[static_cast<std::size_t>(axis)]));
    for (const auto& row : table.rows) {
        for (std::size_t cell = 0; cell < row.config.size(); ++cell) {
            auto locals = flat_to_locals(table.axis_dims, static_cast<int>(cell));
            auto v = row.config[cell];
            std::size_t s = static_cast<std::size_t>(locals[static_cast<std::size_t>(axis)]);
            out[s].re += row.probability * QSqrt2(v.re);
            out[s].im += row.probability * QSqrt2(v.im);
        }
    }
    return out;
}

}  // namespace weakreal
