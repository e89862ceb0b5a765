// Exact von Neumann measurement chain with a Gaussian pointer.
//
// The post-measurement pointer state is a complex-weighted mixture of
// Gaussians; every moment needed (normalization, <x>, <p>) has a closed
// form from pairwise Gaussian overlap integrals, so no spatial grids
// appear anywhere. hbar = 1 throughout.

#pragma once

#include "weakreal/weakvalue.hpp"

#include <vector>

namespace weakreal {

/// d is the pointer shift scale (d = g0 = integral of the coupling);
/// epsilon the initial Gaussian width.
struct CouplingConfig {
    double d;
    double epsilon;
    /// Which physical quadrature plays the pointer role; "position" by
    /// default, "momentum" for the quantum-mirror configuration.
    std::string pointer_variable = "position";
};

/// psi_f(x) = sum_j c_j G_eps(x - mu_j) with G the unit Gaussian.
struct PointerState {
    struct Term {
        cplx coefficient;
        double center;
    };
    std::vector<Term> terms;
    double width;
    bool normalized = false;

    /// integral |psi_f|^2 via analytic pairwise overlaps.
    double norm_squared() const;
};

struct PointerMoments {
    double mean_x;
    double mean_p;
};

/// Entangle, post-select, renormalize. Exact at any coupling strength:
/// term j carries coefficient <phi|Pi_j|psi> at center d*lambda_j.
PointerState measure_and_postselect(const PPSPair& pps, const HermitianOperator& a,
                                    const CouplingConfig& cfg);

/// Closed-form <x> and <p> of a normalized pointer state.
PointerMoments pointer_moments(const PointerState& ps);

struct StrongLimitResult {
    std::vector<double> eigenvalues;
    std::vector<double> probabilities;  // mass near each center d*lambda_j
    bool regime_ok;                     // epsilon/d <= 1e-3
};

/// Probability mass near each center in the strong regime; matches the
/// ABL rule up to cross terms of order exp(-(d/eps)^2/4).
StrongLimitResult strong_limit_probabilities(const PPSPair& pps, const HermitianOperator& a,
                                             const CouplingConfig& cfg);

struct WeakLimitPoint {
    double d_over_eps;
    double mean_x;
    double mean_p;
    double x_error;  // |<x> - d Re A_w|
    double p_error;  // |<p> - (d/eps^2) Im A_w|
};

struct WeakLimitReport {
    cplx weak_value;
    std::vector<WeakLimitPoint> points;
    /// Successive x_error ratios shrink at second order in d/eps.
    bool second_order_convergence;
};

/// Sweep of d/eps values (epsilon fixed at 1) against the first-order
/// pointer-shift law.
WeakLimitReport weak_limit_check(const PPSPair& pps, const HermitianOperator& a,
                                 const std::vector<double>& d_over_eps_sweep);

}  // namespace weakreal
