#include <doctest.h>

#include "weakreal/weakvalue.hpp"

#include <cmath>
#include <random>

using namespace weakreal;

namespace {

Ket make_ket(const ProductSpace& space, std::vector<cplx> amps) {
    Vector v(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<int>(i)) = amps[i];
    return Ket(space, v);
}

std::vector<Projector> fine_basis(int d) {
    std::vector<Projector> out;
    for (int i = 0; i < d; ++i) out.push_back(Projector::from_support(d, {i}));
    return out;
}

PPSPair three_box() {
    ProductSpace s = ProductSpace::single(3, "box");
    return {make_ket(s, {1.0, 1.0, 1.0}), make_ket(s, {1.0, 1.0, -1.0})};
}

}  // namespace

TEST_CASE("orthogonal pre and post selection is rejected") {
    ProductSpace s = ProductSpace::single(2);
    CHECK_THROWS_AS(PPSPair(make_ket(s, {1.0, 0.0}), make_ket(s, {0.0, 1.0})), OrthogonalPPSError);
    CHECK_THROWS_AS(PPSPair(make_ket(s, {1.0, 1.0}), make_ket(s, {1.0, -1.0})), OrthogonalPPSError);
}

TEST_CASE("three box projector weak values") {
    PPSPair pps = three_box();
    WeakValueReport r = projector_weak_values(pps, fine_basis(3));
    REQUIRE(r.weak_values.size() == 3);
    CHECK(std::abs(r.weak_values[0] - cplx(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(r.weak_values[1] - cplx(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(r.weak_values[2] - cplx(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(r.sum() - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("weak values are invariant under rescaling of either ket") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ProductSpace s = ProductSpace::single(4);
    for (int trial = 0; trial < 50; ++trial) {
        Vector a(4), b(4);
        for (int i = 0; i < 4; ++i) {
            a(i) = cplx(u(rng), u(rng));
            b(i) = cplx(u(rng), u(rng));
        }
        if (std::abs(b.dot(a)) < 1e-3) continue;
        Matrix m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                m(i, j) = i == j ? cplx(u(rng), 0.0) : cplx(u(rng), u(rng));
                m(j, i) = std::conj(m(i, j));
            }
        HermitianOperator op(m);
        PPSPair p1(Ket(s, a), Ket(s, b));
        PPSPair p2(Ket(s, a * cplx(0.3, -1.7)), Ket(s, b * cplx(-2.0, 0.9)));
        CHECK(std::abs(weak_value(p1, op) - weak_value(p2, op)) < 1e-10);
    }
}

TEST_CASE("weak value equals trace against the upside-down state") {
    PPSPair pps = three_box();
    UpsideDownState rho = upside_down(pps);
    // idempotent, unit trace
    CHECK((rho.matrix * rho.matrix - rho.matrix).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(rho.matrix.trace() - cplx(1.0, 0.0)) < 1e-12);

    Matrix m(3, 3);
    m.setZero();
    m(0, 0) = 1.0;
    m(1, 2) = cplx(0.0, -0.5);
    m(2, 1) = cplx(0.0, 0.5);
    HermitianOperator op(m);
    CHECK(std::abs(weak_value(pps, op) - (rho.matrix * op.matrix()).trace()) < 1e-12);
}

TEST_CASE("ABL probabilities for the three box fine basis") {
    PPSPair pps = three_box();
    auto basis = fine_basis(3);
    std::vector<double> p = abl_probabilities(pps, basis);
    for (double pi : p) CHECK(pi == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(abl_probability(pps, 0, basis) == doctest::Approx(1.0 / 3.0));

    // dichotomic coarse graining: box 1 versus the rest is certain
    std::vector<Projector> dich{Projector::from_support(3, {0}), Projector::from_support(3, {1, 2})};
    std::vector<double> q = abl_probabilities(pps, dich);
    CHECK(q[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ABL matches the explicit formula on random qubit cases") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ProductSpace s = ProductSpace::single(2);
    auto basis = fine_basis(2);
    for (int trial = 0; trial < 100; ++trial) {
        Vector a(2), b(2);
        for (int i = 0; i < 2; ++i) {
            a(i) = cplx(u(rng), u(rng));
            b(i) = cplx(u(rng), u(rng));
        }
        if (std::abs(b.dot(a)) < 1e-3) continue;
        PPSPair pps(Ket(s, a), Ket(s, b));
        double n0 = std::norm(std::conj(b(0)) * a(0));
        double n1 = std::norm(std::conj(b(1)) * a(1));
        CHECK(abl_probability(pps, 0, basis) == doctest::Approx(n0 / (n0 + n1)).epsilon(1e-10));
    }
}

TEST_CASE("conditional expectation is the ABL average of eigenvalues") {
    PPSPair pps = three_box();
    Matrix m(3, 3);
    m.setZero();
    m(0, 0) = 1.0;
    m(1, 1) = 2.0;
    m(2, 2) = 3.0;
    CHECK(conditional_expectation(pps, HermitianOperator(m)) == doctest::Approx(2.0));

    // degenerate operator: boxes 2,3 grouped
    m(2, 2) = 2.0;
    // ABL over {box1, boxes23}: certainty of box1
    CHECK(conditional_expectation(pps, HermitianOperator(m)) == doctest::Approx(1.0));
}

TEST_CASE("synthesize_pps hits arbitrary projector weak values") {
    std::mt19937 rng(909);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    ProductSpace s = ProductSpace::single(5);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<cplx> target(5);
        cplx sum = 0.0;
        for (int i = 0; i < 4; ++i) {
            target[i] = cplx(u(rng), u(rng));
            sum += target[i];
        }
        target[4] = cplx(1.0, 0.0) - sum;
        PPSPair pps = synthesize_pps(target, s);
        WeakValueReport r = projector_weak_values(pps, fine_basis(5));
        for (int i = 0; i < 5; ++i) CHECK(std::abs(r.weak_values[i] - target[i]) < 1e-9);
    }
}

TEST_CASE("synthesize_pps respects explicit scale vectors") {
    ProductSpace s = ProductSpace::single(3, "box");
    std::vector<cplx> target{1.0, 1.0, -1.0};
    std::vector<cplx> scale{cplx(2.0, 0.0), cplx(0.0, 1.0), cplx(1.0, -1.0)};
    PPSPair pps = synthesize_pps(target, scale, s);
    WeakValueReport r = projector_weak_values(pps, fine_basis(3));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(r.weak_values[i] - target[i]) < 1e-12);
    CHECK_THROWS(synthesize_pps({1.0, 1.0}, ProductSpace::single(2)));  // sum != 1
}

TEST_CASE("evolve_pps slices the interval against closed forms") {
    // tunneling Hamiltonian between boxes 2 and 3; box 1 stationary
    UnitaryFamily u = [](double dt) {
        double th = M_PI * dt / 4.0;
        Matrix m(3, 3);
        m.setZero();
        m(0, 0) = 1.0;
        m(1, 1) = std::cos(th);
        m(2, 2) = std::cos(th);
        m(1, 2) = cplx(0.0, std::sin(th));
        m(2, 1) = cplx(0.0, std::sin(th));
        return UnitaryMap(m, dt);
    };
    ProductSpace s = ProductSpace::single(3, "box");
    double r2 = std::sqrt(2.0);
    PPSPair boundary(make_ket(s, {1.0, r2, 0.0}), make_ket(s, {1.0, 0.0, cplx(0.0, -r2)}));

    for (double t : {0.25, 0.5, 1.0, 1.75}) {
        PPSPair sliced = evolve_pps(boundary, u, t);
        WeakValueReport r = projector_weak_values(sliced, fine_basis(3));
        double sv = std::sin(M_PI * t / 2.0);
        CHECK(std::abs(r.weak_values[0] - cplx(1.0, 0.0)) < 1e-10);
        CHECK(std::abs(r.weak_values[1] - cplx(sv, 0.0)) < 1e-10);
        CHECK(std::abs(r.weak_values[2] - cplx(-sv, 0.0)) < 1e-10);
    }

    // post ket given at the far boundary instead: U(t-T) applied
    PPSPair at_start = evolve_pps(boundary, u, 0.0, 0.0);
    CHECK((at_start.pre().amplitudes() - boundary.pre().amplitudes()).norm() < 1e-12);
    PPSPair shifted = evolve_pps(boundary, u, 2.0, 2.0);
    CHECK((shifted.post().amplitudes() - boundary.post().amplitudes()).norm() < 1e-12);
}

TEST_CASE("swapped pair conjugates weak values") {
    PPSPair pps = three_box();
    PPSPair rev = pps.swapped();
    Matrix m(3, 3);
    m.setZero();
    m(0, 1) = cplx(0.5, 0.25);
    m(1, 0) = std::conj(m(0, 1));
    HermitianOperator op(m);
    CHECK(std::abs(weak_value(rev, op) - std::conj(weak_value(pps, op))) < 1e-12);
}
