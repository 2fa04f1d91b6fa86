#include <catch2/catch_amalgamated.hpp>

#include "zsep/theorems.hpp"
#include "test_util.hpp"

using namespace zsep;

TEST_CASE("closed-form values") {
    CHECK(beta_sep_formula(parse_group("C2xC4")) == 5);
    CHECK(beta_sep_formula(parse_group("C2xC2xC4")) == 6);
    CHECK(beta_sep_formula(parse_group("C6xC6")) == 9);
    CHECK(beta_sep_formula(AbelianGroup{}) == 1);
    CHECK(beta_sep_formula(parse_group("C7")) == 7);
    CHECK(beta_sep_formula(parse_group("C3xC3xC3")) == 6);
}

TEST_CASE("lower bound coincides with the formula") {
    CHECK(lower_bound(parse_group("C3xC3")) == 4);
    CHECK(lower_bound(parse_group("C5")) == 5);
    CHECK(lower_bound(parse_group("C2xC2xC2xC2")) == 5);
    for (const std::string& spec : default_catalog())
        CHECK(lower_bound(parse_group(spec)) == beta_sep_formula(parse_group(spec)));
}

TEST_CASE("even-rank half bound") {
    CHECK(even_half_bound(parse_group("C2xC2")) == Rational::of(3, 1));
    CHECK(even_half_bound(parse_group("C3xC3")) == Rational::of(9, 2));
    CHECK(even_half_bound(parse_group("C6xC6")) == Rational::of(9, 1));
    CHECK(even_half_bound(parse_group("C3xC3")).str() == "9/2");
    CHECK_THROWS_AS(even_half_bound(parse_group("C5")), std::invalid_argument);
    CHECK_THROWS_AS(even_half_bound(AbelianGroup{}), std::invalid_argument);

    SECTION("the bound is tight exactly when p1 = 2") {
        for (const std::string& spec : {"C2xC2", "C2xC4", "C6xC6", "C2xC6"}) {
            AbelianGroup g = parse_group(spec);
            CHECK(lower_bound(g) <= even_half_bound(g));
            CHECK(Rational::of(lower_bound(g), 1) == even_half_bound(g));
        }
        for (const std::string& spec : {"C3xC3", "C5xC5", "C3xC9"}) {
            AbelianGroup g = parse_group(spec);
            CHECK(lower_bound(g) <= even_half_bound(g));
            CHECK_FALSE(Rational::of(lower_bound(g), 1) == even_half_bound(g));
        }
    }
}

TEST_CASE("formula exceeds the largest invariant factor from rank 2 on") {
    for (const std::string& spec : default_catalog()) {
        AbelianGroup g = parse_group(spec);
        if (g.rank() >= 2) CHECK(beta_sep_formula(g) > g.exponent());
    }
    // rank 1 is the boundary case: the value equals the factor itself
    CHECK(beta_sep_formula(parse_group("C6")) == 6);
}

TEST_CASE("formula is monotone under raising one invariant factor") {
    for (const std::string& spec : default_catalog()) {
        AbelianGroup g = parse_group(spec);
        if (g.is_trivial()) continue;
        auto factors = g.factors();
        for (size_t i = 0; i < factors.size(); ++i) {
            // raising factor i to its right neighbor (or doubling the last)
            // keeps the divisibility chain intact
            auto raised = factors;
            raised[i] = (i + 1 < factors.size()) ? factors[i + 1] : 2 * factors.back();
            AbelianGroup h = AbelianGroup::from_orders(raised);
            CHECK(beta_sep_formula(h) >= beta_sep_formula(g));
        }
    }
}

TEST_CASE("verify_theorem matches brute force") {
    for (const std::string& spec :
         {"C2xC2", "C3xC3", "C2xC2xC2", "C9", "C4xC4", "C3xC9"}) {
        FormulaReport r = verify_theorem(parse_group(spec));
        CHECK(r.match);
        REQUIRE(r.beta_brute.has_value());
        CHECK(*r.beta_brute == r.beta_formula);
        CHECK(r.lower <= *r.beta_brute);
        if (r.half_bound) CHECK(*r.beta_brute <= *r.half_bound);
    }
}

TEST_CASE("verify_corollary support-size conclusion") {
    SECTION("rank >= 2: full support everywhere") {
        for (const std::string& spec : {"C2xC2", "C2xC2xC2"}) {
            FormulaReport r = verify_corollary(parse_group(spec));
            REQUIRE(r.corollary_ok.has_value());
            CHECK(*r.corollary_ok);
        }
    }
    SECTION("cyclic groups exhibit the single-element exception") {
        FormulaReport r = verify_corollary(parse_group("C6"));
        REQUIRE(r.corollary_ok.has_value());
        CHECK(*r.corollary_ok);
    }
}

TEST_CASE("formula report fields") {
    FormulaReport r = formula_report(parse_group("C2xC6"));
    CHECK(r.rank == 2);
    CHECK(r.s == 1);
    CHECK(r.n_s == 2);
    CHECK(r.p1 == 2);
    CHECK(r.tail == 6);
    CHECK(r.beta_formula == 7);
    REQUIRE(r.half_bound.has_value());
    CHECK(*r.half_bound == Rational::of(7, 1));

    FormulaReport t = formula_report(AbelianGroup{});
    CHECK(t.beta_formula == 1);
    CHECK(t.n_s == 0);
    CHECK(t.p1 == 0);
    CHECK_FALSE(t.half_bound.has_value());
}

TEST_CASE("default catalog parses and stays within desk scale") {
    auto catalog = default_catalog();
    CHECK(catalog.size() == 13);
    for (const auto& spec : catalog) {
        AbelianGroup g = parse_group(spec);
        CHECK(g.order() <= 16);
    }
}
