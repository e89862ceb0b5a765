#include <doctest.h>

#include "weakreal/scenarios.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

using namespace weakreal;

namespace {

const BasisReport& basis_by_id(const ScenarioReport& rep, const std::string& id) {
    for (const auto& b : rep.bases)
        if (b.id == id) return b;
    throw std::logic_error("missing basis " + id);
}

const FixtureResult& fixture_by_desc(const ScenarioReport& rep, const std::string& desc) {
    for (const auto& f : rep.fixtures)
        if (f.description == desc) return f;
    throw std::logic_error("missing fixture " + desc);
}

}  // namespace

TEST_CASE("registry lists the full scenario catalog") {
    std::vector<std::string> names = scenario_names();
    CHECK(names.size() == 15);
    for (const char* n :
         {"three_box", "four_box", "nested_mzi", "quantum_mirror", "cheshire_3box",
          "cheshire_original", "hardy", "pigeonhole", "all_or_nothing", "hermit", "hollow_atoms",
          "energy_teleportation", "disappearing", "three_party", "two_level"})
        CHECK(has_scenario(n));
    CHECK_FALSE(has_scenario("five_box"));
    CHECK(scenario_defaults("pigeonhole").at("n") == 3.0);
    CHECK(scenario_defaults("hermit").at("delta") == 0.01);
    CHECK_THROWS_AS(scenario_defaults("five_box"), std::invalid_argument);
    CHECK_THROWS_AS(run_scenario("five_box"), std::invalid_argument);
    CHECK_THROWS_AS(run_scenario("pigeonhole", {{"n", 9.0}}), std::out_of_range);
    CHECK_THROWS_AS(run_scenario("pigeonhole", {{"m", 3.0}}), std::invalid_argument);
}

TEST_CASE("every scenario passes all of its fixtures at defaults") {
    for (const std::string& name : scenario_names()) {
        ScenarioReport rep = run_scenario(name);
        INFO("scenario ", name);
        for (const auto& f : rep.fixtures) {
            INFO(f.description, ": expected ", f.expected.real(), "+", f.expected.imag(),
                 "i, actual ", f.actual.real(), "+", f.actual.imag(), "i");
            CHECK(f.pass);
        }
        CHECK(rep.all_pass());
        CHECK(rep.certificate.has_value() == rep.paradox_expected);
        if (rep.structures) {
            int n = rep.pps->space().num_subsystems();
            for (const auto& s : rep.structures->structures) CHECK(is_connected(s, n));
        }
    }
}

TEST_CASE("paradox presence matches the catalog") {
    std::set<std::string> paradoxical{"three_box",  "four_box",     "nested_mzi",
                                      "cheshire_3box", "cheshire_original", "hardy",
                                      "pigeonhole", "all_or_nothing", "hollow_atoms",
                                      "disappearing"};
    for (const std::string& name : scenario_names()) {
        ScenarioReport rep = run_scenario(name);
        INFO("scenario ", name);
        CHECK(rep.certificate.has_value() == (paradoxical.count(name) > 0));
    }
}

TEST_CASE("parameterized variants all pass") {
    for (int slice : {1, 2, 3}) {
        ScenarioReport rep = run_scenario("nested_mzi", {{"slice", double(slice)}});
        CHECK(rep.all_pass());
        CHECK(rep.certificate.has_value() == (slice == 2));
    }
    for (int post : {1, 2}) CHECK(run_scenario("quantum_mirror", {{"post", double(post)}}).all_pass());
    for (int n : {2, 3, 4}) {
        ScenarioReport rep = run_scenario("pigeonhole", {{"n", double(n)}});
        CHECK(rep.all_pass());
        // two pigeons produce a single certainty, not yet a contradiction
        CHECK(rep.certificate.has_value() == (n >= 3));
    }
    for (int n : {2, 3, 6}) {
        ScenarioReport rep = run_scenario("all_or_nothing", {{"n", double(n)}});
        CHECK(rep.all_pass());
        CHECK(rep.certificate.has_value());
    }
    for (double delta : {1e-1, 1e-2, 1e-3}) {
        ScenarioReport rep = run_scenario("hermit", {{"delta", delta}});
        CHECK(rep.all_pass());
        CHECK_FALSE(rep.certificate.has_value());
        double expect = delta * delta / (delta * delta + (1.0 - delta) * (1.0 - delta));
        const FixtureResult& f = fixture_by_desc(rep, "ABL P(Pi_1) in {Pi_1, rest}");
        CHECK(std::abs(f.actual.real() - expect) < 1e-10);
    }
    CHECK(run_scenario("hermit", {{"d", 6.0}}).all_pass());
    CHECK(run_scenario("hermit", {{"d", 8.0}, {"delta", 0.3}}).all_pass());
}

TEST_CASE("nested MZI inner arms vanish off the resonance slices") {
    ScenarioReport t2 = run_scenario("nested_mzi", {{"slice", 2.0}});
    const BasisReport& arms = basis_by_id(t2, "arms_t2");
    CHECK(arms.abl[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(arms.abl[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(fixture_by_desc(t2, "|D|_w at t2 entrance").actual) < 1e-12);
    CHECK(std::abs(fixture_by_desc(t2, "|E|_w at t2 exit").actual) < 1e-12);
}

TEST_CASE("disappearing particle: the pair projector stays empty on a time grid") {
    for (int k = 0; k < 50; ++k) {
        double t = 2.0 * k / 49.0;
        ScenarioReport rep = run_scenario("disappearing", {{"t", t}});
        CHECK(rep.all_pass());
        CHECK(std::abs(fixture_by_desc(rep, "|Pi_23|_w").actual) < 1e-10);
        double s = std::sin(M_PI * t / 2.0);
        const BasisReport& boxes = basis_by_id(rep, "boxes");
        CHECK(std::abs(boxes.weak_values[1] - cplx(s)) < 1e-10);
        CHECK(std::abs(boxes.weak_values[2] + cplx(s)) < 1e-10);
    }
    CHECK(run_scenario("disappearing", {{"t", 1.0}}).certificate.has_value());
    CHECK(run_scenario("disappearing", {{"t", 3.0}}).certificate.has_value());
    CHECK_FALSE(run_scenario("disappearing", {{"t", 0.5}}).certificate.has_value());
}

TEST_CASE("energy teleportation arithmetic from the energy basis") {
    ScenarioReport rep = run_scenario("energy_teleportation");
    const BasisReport& energy = basis_by_id(rep, "energy");
    // local level splitting E1 - E0 = 1: weak energy of the object is the
    // average of the two levels, so half a quantum is teleported
    cplx w0 = energy.weak_values[0] + energy.weak_values[2];
    cplx w1 = energy.weak_values[1] + energy.weak_values[3];
    double e0 = 0.0, e1 = 1.0;
    double mean_energy = (w0 * e0 + w1 * e1).real();
    CHECK(mean_energy == doctest::Approx(0.5 * (e0 + e1)).epsilon(1e-12));
    CHECK((w1 * (e1 - e0)).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cheshire marginals separate the particle from its property") {
    ScenarioReport rep = run_scenario("cheshire_original");
    CHECK(std::abs(fixture_by_desc(rep, "|L|_w").actual - cplx(1.0)) < 1e-12);
    CHECK(std::abs(fixture_by_desc(rep, "|R|_w").actual) < 1e-12);
    CHECK(std::abs(fixture_by_desc(rep, "|ccw|_w").actual - cplx(1.0)) < 1e-12);
    REQUIRE(rep.structures.has_value());
    CHECK(rep.structures->structures.size() == 4);

    ScenarioReport box = run_scenario("cheshire_3box");
    CHECK(std::abs(fixture_by_desc(box, "|R up|_w").actual - cplx(-1.0)) < 1e-12);
    CHECK(box.certificate.has_value());
}

TEST_CASE("discrepancy notes are present and pinned to engine values") {
    ScenarioReport mirror = run_scenario("quantum_mirror", {{"post", 2.0}});
    bool has_sign_note = false;
    for (const auto& n : mirror.notes)
        if (n.find("bra-conjugation convention") != std::string::npos) has_sign_note = true;
    CHECK(has_sign_note);
    CHECK(std::abs(fixture_by_desc(mirror, "(Pi_I)_w for phi_2").actual - cplx(0.0, 1.0)) < 1e-12);

    ScenarioReport two = run_scenario("two_level");
    bool has_swap_note = false;
    for (const auto& n : two.notes)
        if (n.find("swaps the real parts") != std::string::npos) has_swap_note = true;
    CHECK(has_swap_note);
    CHECK(std::abs(fixture_by_desc(two, "(Pi_1)_w").actual - cplx(4.0 / 3.0, 1.5)) < 1e-12);

    ScenarioReport pig = run_scenario("pigeonhole");
    bool has_half_note = false;
    for (const auto& n : pig.notes)
        if (n.find("1/2 prefactor") != std::string::npos) has_half_note = true;
    CHECK(has_half_note);
}

TEST_CASE("fixture tolerance honors the environment override") {
    CHECK(fixture_tolerance() == doctest::Approx(1e-10));
    setenv("WEAKREAL_TOL", "1e-6", 1);
    CHECK(fixture_tolerance() == doctest::Approx(1e-6));
    setenv("WEAKREAL_TOL", "bogus", 1);
    CHECK(fixture_tolerance() == doctest::Approx(1e-10));
    unsetenv("WEAKREAL_TOL");
}

TEST_CASE("the fixture corpus is large enough to pin the paper examples") {
    std::size_t total = 0;
    for (const std::string& name : scenario_names()) total += run_scenario(name).fixtures.size();
    CHECK(total >= 60);
}
