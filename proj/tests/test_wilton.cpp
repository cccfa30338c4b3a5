#include <catch2/catch_amalgamated.hpp>
#include <zetaforge/zetaforge.hpp>

#include <cmath>
#include <vector>

using namespace zetaforge;

namespace {
const SeriesParams params{};
}

TEST_CASE("rational identity: residual at the acceptance cutoffs") {
    for (auto [ur, vr] : {std::pair{2.0, 2.0}, std::pair{2.0, 3.0}, std::pair{2.5, 2.5}}) {
        WiltonReport rep = verify(0, complex_t(ur, 0.0), complex_t(vr, 0.0), 2000, params);
        INFO("u = " << ur << ", v = " << vr);
        REQUIRE(rep.abs_difference < 1e-6);
        // the resummed remainder bound plus the double-precision floor
        // covers the observed residual
        REQUIRE(rep.abs_difference <= 3.0 * rep.tail_estimate + 1e-12);
    }
}

TEST_CASE("rational identity: residual decreases with the cutoff") {
    for (auto [ur, vr] : {std::pair{2.0, 3.0}, std::pair{2.5, 2.5}}) {
        WiltonReport r50 = verify(0, complex_t(ur, 0.0), complex_t(vr, 0.0), 50, params);
        WiltonReport r400 = verify(0, complex_t(ur, 0.0), complex_t(vr, 0.0), 400, params);
        INFO("u = " << ur << ", v = " << vr);
        REQUIRE(r400.abs_difference < r50.abs_difference);
    }
}

TEST_CASE("rational identity: complex parameters") {
    WiltonReport rep = verify(0, complex_t(2.3, 0.4), complex_t(1.8, -0.2), 200, params);
    REQUIRE(rep.abs_difference < 1e-10);

    // conjugating both parameters conjugates both sides exactly
    WiltonReport conj = verify(0, complex_t(2.3, -0.4), complex_t(1.8, 0.2), 200, params);
    REQUIRE(std::abs(conj.lhs - std::conj(rep.lhs)) < 1e-12);
    REQUIRE(std::abs(conj.rhs - std::conj(rep.rhs)) < 1e-12);
}

TEST_CASE("both sides are symmetric in u and v") {
    WiltonReport a = verify(0, complex_t(2.3, 0.0), complex_t(3.1, 0.0), 100, params);
    WiltonReport b = verify(0, complex_t(3.1, 0.0), complex_t(2.3, 0.0), 100, params);
    REQUIRE(std::abs(a.lhs - b.lhs) < 1e-12);
    REQUIRE(std::abs(a.rhs - b.rhs) < 1e-12);

    WiltonReport c = verify(5, complex_t(2.3, 0.0), complex_t(2.4, 0.0), 50, params);
    WiltonReport d = verify(5, complex_t(2.4, 0.0), complex_t(2.3, 0.0), 50, params);
    REQUIRE(std::abs(c.rhs - d.rhs) < 1e-10 * std::abs(c.rhs));
}

TEST_CASE("verify is deterministic") {
    WiltonReport a = verify(0, complex_t(2.0, 0.0), complex_t(3.0, 0.0), 300, params);
    WiltonReport b = verify(0, complex_t(2.0, 0.0), complex_t(3.0, 0.0), 300, params);
    REQUIRE(a.lhs == b.lhs);
    REQUIRE(a.rhs == b.rhs);
    REQUIRE(a.abs_difference == b.abs_difference);
    REQUIRE(a.tail_estimate == b.tail_estimate);
    REQUIRE(a.flags == b.flags);
}

TEST_CASE("report carries the evaluation context") {
    WiltonReport rep = verify(0, complex_t(2.0, 0.0), complex_t(3.0, 0.0), 64, params);
    REQUIRE(rep.d == 0);
    REQUIRE(rep.M == 64);
    REQUIRE(rep.u == complex_t(2.0, 0.0));
    REQUIRE(rep.v == complex_t(3.0, 0.0));
    REQUIRE(rep.leading_term_mags.size() == 12);
    for (double m : rep.leading_term_mags) REQUIRE(std::isfinite(m));
}

TEST_CASE("convergence sweep echoes each cutoff in order") {
    std::vector<std::size_t> cuts{100, 400, 1600};
    auto reports = convergence_sweep(0, complex_t(2.0, 0.0), complex_t(2.0, 0.0), cuts, params);
    REQUIRE(reports.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        REQUIRE(reports[i].M == cuts[i]);
        REQUIRE(std::isfinite(reports[i].abs_difference));
        REQUIRE(reports[i].abs_difference < 1e-6);
    }
    REQUIRE_THROWS_AS(
        convergence_sweep(0, complex_t(2.0, 0.0), complex_t(2.0, 0.0), {}, params),
        std::invalid_argument);
    REQUIRE_THROWS_AS(convergence_sweep(0, complex_t(2.0, 0.0), complex_t(2.0, 0.0),
                                        {100, 100}, params),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(convergence_sweep(0, complex_t(2.0, 0.0), complex_t(2.0, 0.0),
                                        {400, 100}, params),
                      std::invalid_argument);
}

TEST_CASE("excluded parameters are rejected") {
    REQUIRE_THROWS_AS(verify(0, complex_t(1.0, 0.0), complex_t(2.0, 0.0), 100, params),
                      std::domain_error);
    REQUIRE_THROWS_AS(verify(0, complex_t(2.0, 0.0), complex_t(1.0, 0.0), 100, params),
                      std::domain_error);
    REQUIRE_THROWS_AS(verify(0, complex_t(0.5, 0.0), complex_t(1.5, 0.0), 100, params),
                      std::domain_error);
    // d must be fundamental when nonzero
    REQUIRE_THROWS_AS(verify(7, complex_t(2.0, 0.0), complex_t(3.0, 0.0), 100, params),
                      std::domain_error);
    REQUIRE_THROWS_AS(verify(0, complex_t(2.0, 0.0), complex_t(3.0, 0.0), 0, params),
                      std::domain_error);
}

TEST_CASE("real-field form: measurement, not confirmation") {
    // The assembled right-hand side sits far from the product of zeta
    // values at these parameters while the tail estimate is small and
    // stable: the mismatch is structural, not a truncation artifact.
    WiltonReport rep = verify(5, complex_t(2.3, 0.0), complex_t(2.4, 0.0), 150, params);
    REQUIRE(std::abs(rep.lhs - complex_t(1.1735367007953061, 0.0)) < 1e-8);
    REQUIRE(rep.abs_difference > 1.0);
    REQUIRE(rep.tail_estimate < 0.5);
}

TEST_CASE("imaginary-field form: divergence is surfaced by the tail estimate") {
    WiltonReport rep = verify(-4, complex_t(0.9, 0.0), complex_t(2.5, 0.0), 80, params);
    // the m-sum grows without bound; the tail estimate dominates the
    // reported difference so no spurious confirmation is possible
    REQUIRE(rep.tail_estimate > rep.abs_difference);
    REQUIRE((rep.flags & FlagRegularized) != 0);
    REQUIRE((rep.flags & FlagTruncated) != 0);
}
