#include <doctest.h>

#include "weakreal/paradox.hpp"

#include <algorithm>
#include <random>

using namespace weakreal;

TEST_CASE("key_nbox is exact and sums to 1") {
    for (int n = 3; n <= 12; ++n) {
        KeyParadox k = key_nbox(n);
        CHECK(k.n_boxes == n);
        REQUIRE(static_cast<int>(k.weak_values.size()) == n);
        CSqrt2 sum(0);
        for (const auto& v : k.weak_values) sum += v;
        CHECK(sum == CSqrt2(1));
        CHECK(k.weak_values[0] == CSqrt2(QSqrt2(Rational(1, n - 2))));
        CHECK(k.weak_values[n - 1] == CSqrt2(QSqrt2(Rational(-1, n - 2))));
    }
    CHECK_THROWS(key_nbox(2));
}

TEST_CASE("key_nbox certifies a paradox for N = 3..12") {
    for (int n = 3; n <= 12; ++n) {
        auto cert = detect_paradox(to_complex(key_nbox(n).weak_values));
        REQUIRE(cert.has_value());
        CHECK(cert->conflict_witness.size() >= 2);
        // the witnessed supports really do have empty intersection
        std::vector<int> inter;
        for (int i = 0; i < n; ++i) inter.push_back(i);
        for (std::size_t wi : cert->conflict_witness) {
            const auto& sup = cert->assertions[wi].support;
            std::vector<int> next;
            std::set_intersection(inter.begin(), inter.end(), sup.begin(), sup.end(),
                                  std::back_inserter(next));
            inter = next;
        }
        CHECK(inter.empty());
    }
}

TEST_CASE("the (1,1,-1) certificate names the two singleton supports") {
    auto cert = detect_paradox({cplx(1.0), cplx(1.0), cplx(-1.0)});
    REQUIRE(cert.has_value());
    bool box1 = false, box2 = false;
    for (std::size_t wi : cert->conflict_witness) {
        const auto& a = cert->assertions[wi];
        if (a.support == std::vector<int>{0}) {
            box1 = true;
            CHECK(a.complement == std::vector<int>{1, 2});
        }
        if (a.support == std::vector<int>{1}) {
            box2 = true;
            CHECK(a.complement == std::vector<int>{0, 2});
        }
    }
    CHECK(box1);
    CHECK(box2);
}

TEST_CASE("split_weak_value preserves the total exactly") {
    ExactWeakVector wv = key_nbox(3).weak_values;  // (1, 1, -1)
    ExactWeakVector parts{CSqrt2(QSqrt2(Rational(1, 2))),
                          CSqrt2(QSqrt2(Rational(1, 2)), QSqrt2(Rational(1, 3))),
                          CSqrt2(QSqrt2(0), QSqrt2(Rational(-1, 3)))};
    ExactWeakVector out = split_weak_value(wv, 1, parts);
    REQUIRE(out.size() == 5);
    CSqrt2 sum(0);
    for (const auto& v : out) sum += v;
    CHECK(sum == CSqrt2(1));
    CHECK(out[1] == parts[0]);
    CHECK(out[3] == parts[2]);

    // parts must reproduce the replaced entry
    CHECK_THROWS(split_weak_value(wv, 1, {CSqrt2(1), CSqrt2(1)}));
    CHECK_THROWS(split_weak_value(wv, 7, parts));
}

TEST_CASE("splitting deepens a paradox without destroying it") {
    // split the -1 of the 3-box vector into (-2, 1): still certifies
    ExactWeakVector wv = split_weak_value(key_nbox(3).weak_values, 2, {CSqrt2(-2), CSqrt2(1)});
    auto cert = detect_paradox(to_complex(wv));
    CHECK(cert.has_value());
}

TEST_CASE("find_certainties thresholds near-misses") {
    // hermit-like vector: (delta, 1 - delta) style sums never hit 1 exactly
    double d = 1e-4;
    auto asserts = find_certainties({cplx(d), cplx(1.0 - 2.0 * d), cplx(d)});
    CHECK(asserts.empty());
    // but an exact coarse sum does assert
    auto hit = find_certainties({cplx(0.25), cplx(0.75), cplx(0.5), cplx(-0.5)});
    bool found = false;
    for (const auto& a : hit)
        if (a.support == std::vector<int>{0, 1}) found = true;
    CHECK(found);
}

TEST_CASE("find_certainties rejects dimension above 20") {
    std::vector<cplx> big(21, cplx(0.0));
    big[0] = 1.0;
    CHECK_THROWS(find_certainties(big));
}

TEST_CASE("certify_paradox needs empty joint intersection") {
    CertaintyAssertion a{{0}, {1, 2}};
    CertaintyAssertion b{{0, 1}, {2}};
    CHECK_FALSE(certify_paradox({a, b}).has_value());
    CertaintyAssertion c{{1}, {0, 2}};
    auto cert = certify_paradox({a, c});
    REQUIRE(cert.has_value());
    CHECK(cert->conflict_witness.size() == 2);
    CHECK_FALSE(certify_paradox({}).has_value());
}

TEST_CASE("classical weak-value vectors never certify") {
    std::mt19937 rng(13571);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> dim(2, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        int d = dim(rng);
        std::vector<double> raw(d);
        double total = 0.0;
        for (double& x : raw) {
            x = u(rng) + 1e-6;
            total += x;
        }
        std::vector<cplx> wv(d);
        for (int i = 0; i < d; ++i) wv[i] = raw[i] / total;
        CHECK_FALSE(detect_paradox(wv).has_value());
    }
}
