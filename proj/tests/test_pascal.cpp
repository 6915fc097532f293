#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace vbfir;
using Catch::Matchers::WithinAbs;

namespace {

// Newton backward interpolation of a polynomial is exact for degree <= N, so
// the delayed samples are the polynomial evaluated at n - f.
double poly(const std::vector<double>& c, double t) {
    double y = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) y = y * t + c[k];
    return y;
}

Signal sampled(const std::vector<double>& c, std::size_t n) {
    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = poly(c, static_cast<double>(k));
    return Signal(s);
}

}  // namespace

TEST_CASE("pascal_coeff examples", "[pascal]") {
    for (double f : {0.0, 0.3, 0.99, 1.0}) CHECK(pascal_coeff(f, 0) == 1.0);
    CHECK(pascal_coeff(0.5, 1) == -0.5);
    for (int k = 2; k <= 8; ++k) CHECK(pascal_coeff(1.0, k) == 0.0);
    CHECK_THROWS(pascal_coeff(0.5, -1));
    // (-1)^2 * 0.5 * (-0.5) / 2
    CHECK_THAT(pascal_coeff(0.5, 2), WithinAbs(-0.125, 1e-15));
}

TEST_CASE("pascal product form examples", "[pascal]") {
    CHECK(pascal_coeff_product_form(0.5, 1) == -0.5);
    for (int k = 1; k <= 8; ++k) CHECK(pascal_coeff_product_form(0.0, k) == 0.0);
    CHECK_THROWS(pascal_coeff_product_form(0.5, 0));
}

TEST_CASE("direct and product forms agree", "[pascal]") {
    auto g = test::rng(21);
    std::uniform_real_distribution<double> uf(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double f = uf(g);
        for (int k = 1; k <= 8; ++k) {
            const double a = pascal_coeff(f, k), b = pascal_coeff_product_form(f, k);
            REQUIRE(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("delay_taps examples", "[pascal]") {
    CHECK(delay_taps(PascalDelay(1, 0.0)).coeffs() == std::vector<double>{1.0, 0.0});
    const auto half = delay_taps(PascalDelay(1, 0.5)).coeffs();
    CHECK_THAT(half[0], WithinAbs(0.5, 1e-15));
    CHECK_THAT(half[1], WithinAbs(0.5, 1e-15));
    CHECK(delay_taps(PascalDelay(3, 0.25)).size() == 4);
    CHECK_THROWS(PascalDelay(0, 0.1));
    CHECK_THROWS(PascalDelay(2, 1.0));
    CHECK_THROWS(PascalDelay(2, -0.1));
}

TEST_CASE("f = 0 gives the identity taps exactly", "[pascal]") {
    for (int n = 1; n <= 8; ++n) {
        const auto t = delay_taps(PascalDelay(n, 0.0)).coeffs();
        CHECK(t[0] == 1.0);
        for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] == 0.0);
    }
}

TEST_CASE("taps sum to one", "[pascal]") {
    auto g = test::rng(22);
    std::uniform_real_distribution<double> uf(0.0, 1.0);
    for (int n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto t = delay_taps(PascalDelay(n, uf(g))).coeffs();
            double s = 0.0;
            for (double v : t) s += v;
            REQUIRE_THAT(s, WithinAbs(1.0, 1e-12));
        }
    }
}

TEST_CASE("structural evaluation at f = 1 telescopes to a unit delay", "[pascal]") {
    auto g = test::rng(23);
    const Signal x(test::random_vector(g, 30));
    for (int n = 1; n <= 6; ++n) {
        const auto y = apply_delay_structural(x, n, 1.0);
        CHECK(y.samples[0] == 0.0);
        for (std::size_t k = 1; k < x.size(); ++k) REQUIRE_THAT(y.samples[k], WithinAbs(x.samples[k - 1], 1e-9));
    }
}

TEST_CASE("tap form and structural form agree", "[pascal]") {
    auto g = test::rng(24);
    std::uniform_real_distribution<double> uf(0.0, 1.0);
    const Signal x(test::random_vector(g, 64), 3);
    for (int n = 1; n <= 6; ++n) {
        const double f = uf(g);
        const auto a = apply_delay(x, PascalDelay(n, f));
        const auto b = apply_delay_structural(x, n, f);
        CHECK(a.start_index == 3);
        CHECK(b.start_index == 3);
        for (std::size_t k = 0; k < x.size(); ++k) REQUIRE_THAT(a.samples[k], WithinAbs(b.samples[k], 1e-12));
    }
}

TEST_CASE("apply_delay examples", "[pascal]") {
    std::vector<double> ramp(20);
    for (std::size_t n = 0; n < 20; ++n) ramp[n] = static_cast<double>(n);
    const auto y = apply_delay(Signal(ramp), PascalDelay(1, 0.45));
    CHECK(y.transient == 1);
    for (std::size_t n = 1; n < 20; ++n) REQUIRE_THAT(y.samples[n], WithinAbs(n - 0.45, 1e-12));

    auto g = test::rng(25);
    const Signal x(test::random_vector(g, 25), -4);
    const auto same = apply_delay(x, PascalDelay(3, 0.0));
    CHECK(same.samples == x.samples);
    CHECK(same.start_index == -4);

    const auto q = apply_delay(sampled({0.0, 0.0, 1.0}, 16), PascalDelay(2, 0.3));
    for (std::size_t n = 2; n < 16; ++n) REQUIRE_THAT(q.samples[n], WithinAbs((n - 0.3) * (n - 0.3), 1e-9));

    CHECK_THROWS(apply_delay(Signal(), PascalDelay(1, 0.5)));
}

TEST_CASE("polynomial exactness up to the order", "[pascal]") {
    auto g = test::rng(26);
    std::uniform_real_distribution<double> uf(0.0, 1.0);
    for (int n = 1; n <= 6; ++n) {
        for (int deg = 0; deg <= n; ++deg) {
            const auto c = test::random_vector(g, static_cast<std::size_t>(deg) + 1);
            const double f = uf(g);
            // Sampling at t = k / 16 keeps values O(1); still degree deg in k.
            std::vector<double> s(40);
            for (std::size_t k = 0; k < s.size(); ++k) s[k] = poly(c, static_cast<double>(k) / 16.0);
            const auto y = apply_delay(Signal(s), PascalDelay(n, f));
            for (std::size_t k = y.transient; k < s.size(); ++k)
                REQUIRE_THAT(y.samples[k], WithinAbs(poly(c, (static_cast<double>(k) - f) / 16.0), 1e-9));
        }
    }
}

TEST_CASE("pascal structure multiplier counts", "[pascal]") {
    CHECK(pascal_multiplier_count(1) == 1);
    CHECK(pascal_multiplier_count(2) == 3);
    for (int n = 3; n <= 10; ++n) CHECK(pascal_multiplier_count(n) == 2 * n - 1);
    CHECK_THROWS(pascal_multiplier_count(0));
}
