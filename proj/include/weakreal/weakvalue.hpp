// Two-state-vector calculus: weak values, the upside-down state, ABL
// probabilities, conditional expectations, and PPS synthesis.
//
// All operations are pure functions over immutable inputs. Weak-value
// formulas are normalization-invariant; pre and post kets may be stored
// unnormalized.

#pragma once

#include "weakreal/hilbert.hpp"

#include <map>
#include <string>
#include <vector>

namespace weakreal {

/// Relative threshold below which a PPS pair counts as orthogonal and
/// weak values are undefined.
constexpr double kOrthogonalPPSTol = 1e-12;

class OrthogonalPPSError : public std::domain_error {
  public:
    OrthogonalPPSError() : std::domain_error("pre- and post-selection are orthogonal") {}
};

/// Pre-selection |psi> plus post-selection |phi> with cached overlap
/// <phi|psi>. Requires |<phi|psi>| > 1e-12 * |psi| |phi|.
class PPSPair {
  public:
    PPSPair(Ket pre, Ket post);

    const Ket& pre() const { return pre_; }
    const Ket& post() const { return post_; }
    cplx overlap() const { return overlap_; }
    int dim() const { return pre_.dim(); }
    const ProductSpace& space() const { return pre_.space(); }

    /// Time-reversed pair: pre and post exchanged.
    PPSPair swapped() const { return PPSPair(post_, pre_); }

  private:
    Ket pre_;
    Ket post_;
    cplx overlap_;
};

/// Map from projector/observable descriptors to complex weak values.
struct WeakValueReport {
    std::vector<std::string> basis;   // one descriptor per entry
    std::vector<cplx> weak_values;
    std::string basis_id;

    cplx sum() const;
};

/// rho-breve = |psi><phi| / <phi|psi>; idempotent, unit trace,
/// generally non-Hermitian. Every weak value is Tr(rho-breve A).
struct UpsideDownState {
    Matrix matrix;
};

/// <phi|A|psi> / <phi|psi>.
cplx weak_value(const PPSPair& pps, const HermitianOperator& a);
cplx weak_value(const PPSPair& pps, const Projector& p);

/// Weak values of a complete orthogonal projector family; entries sum
/// to 1 within 1e-10.
WeakValueReport projector_weak_values(const PPSPair& pps, const std::vector<Projector>& basis,
                                      const std::vector<std::string>& names = {});

/// ABL rule: |(Pi_i)_w|^2 / sum_k |(Pi_k)_w|^2 for outcome_index into basis.
double abl_probability(const PPSPair& pps, std::size_t outcome_index,
                       const std::vector<Projector>& basis);

/// All ABL probabilities of a basis at once.
std::vector<double> abl_probabilities(const PPSPair& pps, const std::vector<Projector>& basis);

/// sum_j lambda_j P_ABL(Pi_j) over A's eigenprojector family.
double conditional_expectation(const PPSPair& pps, const HermitianOperator& a);

UpsideDownState upside_down(const PPSPair& pps);

/// Builds the PPS class |psi> = sum w_i c_i |a_i>, |phi> = sum (1/c_i*) |a_i>
/// yielding projector weak values w_i for any nonzero scale vector c.
/// Requires sum w_i = 1 within 1e-12.
PPSPair synthesize_pps(const std::vector<cplx>& target, const std::vector<cplx>& scale,
                       const ProductSpace& space);
PPSPair synthesize_pps(const std::vector<cplx>& target, const ProductSpace& space);

/// Slices the PPS to intermediate time t: pre <- U(t) pre, post <- U(t-T) post,
/// where the post-selection ket is specified at time T (default 0: both
/// boundary kets given at the same slice).
PPSPair evolve_pps(const PPSPair& pps, const UnitaryFamily& u, double t, double post_time = 0.0);

}  // namespace weakreal
