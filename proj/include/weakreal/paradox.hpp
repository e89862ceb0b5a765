// PPS-paradox engine: key N-box families, weak-value splitting,
// exhaustive dichotomic coarse-graining search, and contradiction
// certification.
//
// Key vectors and splits use exact arithmetic; the certainty scan over
// floating weak-value vectors uses a 1e-10 threshold so near-misses
// (e.g. the hermit case with delta > 0) never assert.

#pragma once

#include "weakreal/hilbert.hpp"
#include "weakreal/numbers.hpp"

#include <optional>
#include <vector>

namespace weakreal {

/// Exact complex weak-value vector (entries in Q(sqrt2, i)).
using ExactWeakVector = std::vector<CSqrt2>;

/// The fundamental N-box paradox (1,...,1,-1)/(N-2); entries sum to 1 exactly.
struct KeyParadox {
    int n_boxes;
    ExactWeakVector weak_values;
};

/// A coarse projector certain under the ABL rule: within its dichotomic
/// basis (support, complement) its ABL probability is 1.
struct CertaintyAssertion {
    std::vector<int> support;      // box indices with weak values summing to 1
    std::vector<int> complement;   // the other half of the dichotomic basis
};

/// Witness of a PPS paradox: a minimal set of certainty assertions whose
/// supports have empty joint intersection.
struct ParadoxCertificate {
    std::vector<CertaintyAssertion> assertions;  // all assertions found
    std::vector<std::size_t> conflict_witness;   // indices into assertions
};

/// (1,...,1,-1)/(N-2) for N >= 3.
KeyParadox key_nbox(int n);

/// Replaces wv[index] by the given parts (which must sum to it exactly),
/// extending the vector. The total still sums to 1.
ExactWeakVector split_weak_value(const ExactWeakVector& wv, std::size_t index,
                                 const ExactWeakVector& parts);

/// Exhaustive bipartition scan: every proper nonempty subset S of box
/// indices with sum_{i in S} wv_i = 1 within 1e-10 yields an assertion.
/// Rejects dimension > 20.
std::vector<CertaintyAssertion> find_certainties(const std::vector<cplx>& wv);

/// Certificate iff the intersection of all asserted supports is empty;
/// reports a minimal conflicting subset. Returns nullopt when no paradox.
std::optional<ParadoxCertificate> certify_paradox(std::vector<CertaintyAssertion> assertions);

/// find_certainties then certify_paradox.
std::optional<ParadoxCertificate> detect_paradox(const std::vector<cplx>& wv);

std::vector<cplx> to_complex(const ExactWeakVector& wv);

}  // namespace weakreal
