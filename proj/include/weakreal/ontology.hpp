// Counterparticle / N-structure model: integer configuration
// distributions matching complex weak values, N-structure graphs with
// pairwise-marginal edges, and the cardinal (Pauli / Gell-Mann)
// representation of all observables.

#pragma once

#include "weakreal/numbers.hpp"
#include "weakreal/weakvalue.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace weakreal {

/// Net counterparticle counts per basis state; real part counts real
/// counterparticles, imaginary part imaginary ones.
using Configuration = std::vector<GaussInt>;

/// Probability mixture of integer configurations whose expectation
/// equals a target weak-value vector exactly. Probabilities live in
/// Q(sqrt2) so the rotated-pigeonhole fixtures stay exact.
struct Decomposition {
    struct Row {
        QSqrt2 probability;
        Configuration config;
    };
    std::vector<Row> support;

    /// Expected total counterparticle count sum_rows p * ||config||_1.
    QSqrt2 expected_count() const;
};

/// Expectation of a decomposition, per basis state.
std::vector<CSqrt2> decomposition_expectation(const Decomposition& dec);

/// Minimal decomposition of a weak-value vector: minimizes expected
/// total counterparticle count (always sum_i |Re t_i| + |Im t_i|), then
/// support size, then lexicographic config order. Real and imaginary
/// parts are solved independently and combined as a product.
/// Search space: integer entries bounded by ceil(max |target|) + bound.
Decomposition decompose(const std::vector<CSqrt2>& target, int bound = 2);

/// True iff probabilities are in (0,1], sum to 1, and the expectation
/// equals the target exactly.
bool verify_decomposition(const Decomposition& dec, const std::vector<CSqrt2>& target);

/// Floating-point variant for irrational fixtures (e.g. sin(pi t/2)
/// distributions): probabilities sum to 1 and expectation matches the
/// target within 1e-12.
bool verify_decomposition_numeric(const std::vector<double>& probabilities,
                                  const std::vector<Configuration>& configs,
                                  const std::vector<cplx>& target);

/// Connected graph on one vertex per subsystem; multiplicity is the
/// weak value of its rank-1 joint projector.
struct NStructure {
    std::vector<std::pair<std::string, std::string>> vertices;  // (subsystem_id, state)
    std::vector<int> local_states;                              // local index per subsystem
    cplx multiplicity;
    std::vector<std::pair<int, int>> edges;  // subsystem index pairs, i < j
};

struct StructureSet {
    std::vector<NStructure> structures;
};

bool is_connected(const NStructure& s, int num_subsystems);

/// One structure per joint basis state with |weak value| > 1e-10; an
/// edge between (i, s_i) and (j, s_j) iff the pairwise marginal weak
/// value over all other subsystems has modulus > 1e-10.
StructureSet build_structures(const ProductSpace& space, const std::vector<cplx>& joint_wv);

struct MarginalReport {
    ProductSpace subspace;
    std::vector<cplx> weak_values;
    std::vector<std::string> labels;
};

/// Sums joint weak values over the excluded subsystems.
MarginalReport marginal_weak_values(const ProductSpace& space, const std::vector<cplx>& joint_wv,
                                    const std::vector<int>& subsystem_subset);

enum class CardinalMode { gell_mann, pauli_product };

/// d^2 - 1 traceless Hermitian matrices with Tr(g_i g_j) = 2 delta_ij.
/// pauli_product requires d = 2^N and rescales the Pauli strings to the
/// same normalization. gell_mann at d = 2 yields (sigma_x, sigma_y, sigma_z).
std::vector<HermitianOperator> cardinal_basis(int d, CardinalMode mode = CardinalMode::gell_mann);

struct CardinalRepresentation {
    int dimension;
    std::vector<HermitianOperator> operator_basis;
    std::vector<cplx> weak_vector;

    /// I/d + (1/2) sum_i (g_i)_w g_i; equals the upside-down state.
    Matrix reconstruct() const;
};

CardinalRepresentation weak_vector(const PPSPair& pps, std::vector<HermitianOperator> basis);

/// Cartesian product of per-axis decompositions: joint support is the
/// product set (first axis outermost), probabilities multiply, and the
/// joint config entry for a cell is the product of per-axis entries.
struct CardinalJointTable {
    std::vector<int> axis_dims;  // cells are row-major over these
    std::vector<Decomposition::Row> rows;
};

CardinalJointTable cardinal_joint_distribution(const std::vector<Decomposition>& per_axis);

/// Marginal of a joint table onto one axis cell value: sums configs over
/// the other axes, weighted by probabilities.
std::vector<CSqrt2> joint_table_marginal(const CardinalJointTable& table, int axis);

}  // namespace weakreal
