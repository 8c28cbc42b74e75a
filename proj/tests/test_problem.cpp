#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/error.hpp"
#include "core/expression.hpp"
#include "core/fixtures.hpp"
#include "support.hpp"

using namespace dnodal;
using test::pi;

TEST_CASE("expression grammar") {
    const auto e = Expression::parse("2^3^2 - -x*pi + sqrt(4)/e**0", {"x"});
    CHECK(e(1.0) == doctest::Approx(512.0 + pi + 2.0));
    const auto k = Expression::parse("sin(t) * exp(x) - log(1) + cos(0) + tan(0)", {"x", "t"});
    CHECK(k(0.0, pi / 2) == doctest::Approx(2.0));
    CHECK(Expression::parse("3*(1+2)", {}).is_constant());
}

TEST_CASE("expression errors carry the column") {
    try {
        (void)Expression::parse("x + * 2", {"x"});
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.column() == 5);
    }
    CHECK_THROWS_AS((void)Expression::parse("y", {"x"}), ParseError);
    CHECK_THROWS_AS((void)Expression::parse("sin(x", {"x"}), ParseError);
    CHECK_THROWS_AS((void)Expression::parse("", {"x"}), ParseError);
}

TEST_CASE("validation: zero problem is valid") {
    ProblemData d;
    d.coeffs.V = [](double) { return 0.0; };
    const auto report = validate(d);
    CHECK(report.ok());
    CHECK(report.zero_mean_residual == doctest::Approx(0.0));
}

TEST_CASE("validation: example potential has zero mean") {
    const auto p = fixtures::worked_example();
    CHECK(p.validation().ok());
    CHECK(std::abs(p.validation().zero_mean_residual) < 1e-12);
}

TEST_CASE("validation: constant potential fails with residual pi") {
    ProblemData d;
    d.coeffs.V = [](double) { return 1.0; };
    const auto report = validate(d);
    CHECK_FALSE(report.ok());
    CHECK(std::abs(report.zero_mean_residual) == doctest::Approx(pi).epsilon(1e-12));
    CHECK_THROWS_AS(ProblemDefinition::create(d), InvalidProblem);
}

TEST_CASE("validation: non-finite coefficient names function and point") {
    ProblemData d;
    d.coeffs.V = [](double x) { return x > 1.0 ? std::nan("") : 0.0; };
    try {
        (void)ProblemDefinition::create(d);
        FAIL("expected invalid problem");
    } catch (const InvalidProblem& err) {
        CHECK(std::string(err.what()).find("V") != std::string::npos);
    }
    ProblemData k;
    k.coeffs.V = [](double) { return 0.0; };
    k.coeffs.chi[2] = KernelEntry::general([](double, double t) { return t > 2.0 ? INFINITY : 0.0; });
    try {
        (void)ProblemDefinition::create(k);
        FAIL("expected invalid problem");
    } catch (const InvalidProblem& err) {
        CHECK(std::string(err.what()).find("chi_21") != std::string::npos);
    }
    ProblemData b;
    b.coeffs.V = [](double) { return 0.0; };
    b.bc.b1 = INFINITY;
    CHECK_THROWS_AS(ProblemDefinition::create(b), InvalidProblem);
}

TEST_CASE("derived integrals: zero potential") {
    const auto p = fixtures::free_problem();
    for (double v : p.integrals().nu) CHECK(v == 0.0);
}

TEST_CASE("derived integrals: example nu and L") {
    const auto p = fixtures::worked_example();
    const auto& in = p.integrals();
    CHECK(in.nu.front() == 0.0);
    CHECK(in.K.front() == 0.0);
    CHECK(in.L.front() == 0.0);
    CHECK(in.nu_at(pi / 2) == doctest::Approx(-pi * pi / 16).epsilon(1e-9));
    CHECK(std::abs(in.nu.back()) < 1e-9);
    CHECK(std::abs(in.L.back()) < 1e-9);
    for (double x : {0.3, 1.0, 2.2, 3.0}) {
        CHECK(in.nu_at(x) == doctest::Approx(x * x / 4 - pi * x / 4).epsilon(1e-8));
        CHECK(in.L_at(x) == doctest::Approx(pi * x / 2 - x * x / 2).epsilon(1e-8));
        CHECK(std::abs(in.K_at(x)) < 1e-15);
    }
}

TEST_CASE("derived integrals: p - r = 2m on the grid") {
    const auto p = fixtures::roundtrip_problem();
    const auto& c = p.coeffs();
    for (double x : p.integrals().grid) CHECK(c.p(x) - c.r(x) == doctest::Approx(2 * c.m).epsilon(1e-15));
}

TEST_CASE("derived integrals: doubling the grid cuts the error by about four") {
    CoefficientSet c;
    c.V = [](double x) { return std::cos(x); };
    c.chi[0] = KernelEntry::general([](double x, double t) { return std::exp(x - 2 * t); });
    const auto coarse = derived_integrals(c, 65);
    const auto fine = derived_integrals(c, 129);
    double e_nu_c = 0, e_nu_f = 0, e_k_c = 0, e_k_f = 0;
    for (std::size_t i = 0; i < coarse.grid.size(); ++i) {
        const double x = coarse.grid[i];
        const double nu = std::sin(x);
        const double K = 1.0 - std::exp(-x);
        e_nu_c = std::max(e_nu_c, std::abs(coarse.nu[i] - nu));
        e_nu_f = std::max(e_nu_f, std::abs(fine.nu[2 * i] - nu));
        e_k_c = std::max(e_k_c, std::abs(coarse.K[i] - K));
        e_k_f = std::max(e_k_f, std::abs(fine.K[2 * i] - K));
    }
    CHECK(e_nu_c / e_nu_f == doctest::Approx(4.0).epsilon(0.05));
    CHECK(e_k_c / e_k_f == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("angles are canonicalized into (-pi/2, pi/2]") {
    CHECK(canonical_angle(pi / 2) == doctest::Approx(pi / 2));
    CHECK(canonical_angle(-pi / 2) == doctest::Approx(pi / 2));
    CHECK(canonical_angle(3 * pi / 4) == doctest::Approx(-pi / 4));
    BoundaryParams bc{3 * pi / 4, 2 * pi + 0.1, 1.0, 2.0, 3.0, 4.0};
    const auto c = canonicalize(bc);
    CHECK(c.theta == doctest::Approx(-pi / 4));
    CHECK(c.b1 == -1.0);
    CHECK(c.b2 == -2.0);
    CHECK(c.beta == doctest::Approx(0.1));
    CHECK(c.d1 == 3.0);
    CHECK(c.d2 == 4.0);
}

TEST_CASE("problem document parsing") {
    const auto p = test::from_json(R"({
      "bc": {"theta": "pi/4", "beta": "pi/4", "b1": 0.3, "b2": -0.2},
      "coeffs": {"V": "x/2 - pi/4", "m": 1,
                 "chi": {"12": {"separable": [{"x": "1", "t": "pi/2 - t"}]}}},
      "quadrature_points": 2049
    })");
    CHECK(p.bc().theta == doctest::Approx(pi / 4));
    CHECK(p.bc().b2 == doctest::Approx(-0.2));
    CHECK(p.coeffs().m == 1.0);
    CHECK(p.coeffs().chi[1].kind() == KernelEntry::Kind::separable);
    CHECK(p.quadrature_points() == 2049);
    CHECK(p.integrals().L_at(pi / 2) == doctest::Approx(pi * pi / 8).epsilon(1e-9));

    const auto q = test::from_json(R"({"coeffs": {"V": "0", "chi": {"21": "x - t"}}})");
    CHECK(q.coeffs().chi[2].kind() == KernelEntry::Kind::general);
    CHECK(q.coeffs().chi[2](2.0, 0.5) == doctest::Approx(1.5));
}

TEST_CASE("problem document errors report line and column") {
    try {
        (void)parse_problem("{\n  \"coeffs\": {\n    \"V\": \"x + * 2\"\n  }\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.line() == 3);
        CHECK(err.column() > 10);
    }
    try {
        (void)parse_problem("{\n  \"bc\": {\"theta\": 1,,}\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.line() == 2);
    }
    CHECK_THROWS_AS((void)parse_problem(R"({"coeffs": {"V": "0", "chi": {"13": "x"}}})"), ParseError);
    CHECK_THROWS_AS((void)parse_problem(R"({"bc": {"theta": "x"}})"), ParseError);
    CHECK_THROWS_AS((void)load_problem_file("/nonexistent/problem.json"), IoError);
}
