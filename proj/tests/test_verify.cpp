#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lame/verify.hpp"

using namespace lame;

TEST_CASE("ode residual entries") {
    const auto l1 = build_eigenfunctions(LameIndex(2), 0.5);
    for (const auto& s : l1) {
        const CheckEntry e = check_ode_residual(s, 301);
        CHECK(e.pass);
        CHECK(e.measured <= 1e-12);  // exact closed forms
    }
    const auto half = build_eigenfunctions(LameIndex(1), 0.5);
    for (const auto& s : half) {
        const CheckEntry e = check_ode_residual(s, 1001);
        CHECK(e.pass);  // includes points near 2K where the stabilized branch engages
    }
    CHECK_THROWS_AS(check_ode_residual(l1[0], 2), std::domain_error);
}

TEST_CASE("structure battery passes across kinds") {
    {
        const VerificationReport rep = check_structure(LameIndex(6), 0.7);
        CHECK(rep.overall);
        int energy_specs = 0;
        for (const CheckEntry& c : rep.checks) {
            INFO(c.name << " measured=" << c.measured << " tol=" << c.tolerance);
            CHECK(c.pass);
            CHECK(std::isfinite(c.measured));
            if (c.name == "lamefun.spec_count") energy_specs = 1;
        }
        CHECK(energy_specs == 1);
    }
    {
        const VerificationReport rep = check_structure(LameIndex(5), 0.5);
        CHECK(rep.overall);
        bool saw_qm = false, saw_branch = false, saw_alg34 = false;
        for (const CheckEntry& c : rep.checks) {
            INFO(c.name << " measured=" << c.measured << " tol=" << c.tolerance);
            CHECK(c.pass);
            saw_qm |= (c.name == "lamefun.quasi_momentum");
            saw_branch |= (c.name == "lamefun.branch_relation");
            saw_alg34 |= (c.name == "qes.alg34_spectra");
        }
        CHECK(saw_qm);
        CHECK(saw_branch);
        CHECK(saw_alg34);
    }
    {
        const VerificationReport rep = check_structure(LameIndex(0), 0.3);
        CHECK(rep.overall);  // single constant solution, trivially passing
    }
}

TEST_CASE("half-integer battery pins the closed-form energies") {
    const VerificationReport rep = check_structure(LameIndex(5), 0.5);
    CHECK(rep.overall);
    const auto spec = algebraic_energies(LameIndex(5), 0.5);
    const double s7 = std::sqrt(7.0);
    CHECK(std::abs(spec[0].energies[0] - (35.0 / 8 - s7)) <= 1e-12);
    CHECK(std::abs(spec[0].energies[1] - 35.0 / 8) <= 1e-12);
    CHECK(std::abs(spec[0].energies[2] - (35.0 / 8 + s7)) <= 1e-12);
}

TEST_CASE("reports are deterministic and JSON-shaped") {
    const VerificationReport a = check_structure(LameIndex(3), 0.4);
    const VerificationReport b = check_structure(LameIndex(3), 0.4);
    const std::string ja = to_json(a).dump(2);
    const std::string jb = to_json(b).dump(2);
    CHECK(ja == jb);
    const auto parsed = nlohmann::json::parse(ja);
    CHECK(parsed.contains("subject"));
    CHECK(parsed["subject"]["lambda"] == "3/2");
    CHECK(parsed["subject"]["m"] == 0.4);
    CHECK(parsed.contains("checks"));
    CHECK(parsed.contains("overall"));
    for (const auto& c : parsed["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("measured"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("pass"));
    }
    // overall is the conjunction of the entries
    bool conj = true;
    for (const auto& c : parsed["checks"]) conj = conj && c["pass"].get<bool>();
    CHECK(parsed["overall"].get<bool>() == conj);
}

TEST_CASE("battery sweep over both kinds stays green") {
    for (int tl = 0; tl <= 12; ++tl)
        for (double m : {0.3, 0.7}) {
            const VerificationReport rep = check_structure(LameIndex(tl), m);
            INFO("2*lambda = " << tl << ", m = " << m);
            for (const CheckEntry& c : rep.checks) {
                INFO(c.name << " measured=" << c.measured << " tol=" << c.tolerance);
                CHECK(c.pass);
            }
        }
}
