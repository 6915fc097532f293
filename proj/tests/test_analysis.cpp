#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace vbfir;
using Catch::Matchers::WithinAbs;

TEST_CASE("grid layout and argument checks", "[analysis]") {
    const auto h = freq_response(FirFilter::delta(), 1024);
    REQUIRE(h.size() == 1025);
    CHECK(h.front().omega == 0.0);
    CHECK_THAT(h.back().omega, WithinAbs(std::numbers::pi, 1e-15));
    CHECK_THROWS(freq_response(FirFilter::delta(), 1000));
    CHECK_THROWS(freq_response(FirFilter::delta(), 512));
    CHECK_THROWS(freq_response(FirFilter(), 1024));
}

TEST_CASE("delta has unit magnitude everywhere", "[analysis]") {
    for (const auto& p : freq_response(FirFilter::delta(5, 2), 2048)) REQUIRE_THAT(std::abs(p.value), WithinAbs(1.0, 1e-14));
}

TEST_CASE("two-tap average has |cos(w/2)| magnitude", "[analysis]") {
    const auto h = freq_response(FirFilter::linear_phase({0.5, 0.5}), 4096);
    for (const auto& p : h) REQUIRE_THAT(std::abs(p.value), WithinAbs(std::abs(std::cos(p.omega / 2.0)), 1e-14));
}

TEST_CASE("transform path matches direct summation and the textbook sum", "[analysis]") {
    auto g = test::rng(41);
    for (std::size_t n : {1u, 2u, 7u, 64u, 333u, 1025u, 4096u}) {
        const auto f = FirFilter::from_taps(test::random_vector(g, n));
        const auto a = freq_response(f, 2048);
        const auto b = freq_response_direct(f, 2048);
        double scale = 0.0;
        for (double c : f.coeffs()) scale += std::abs(c);
        for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(std::abs(a[k].value - b[k].value) <= 1e-12 * scale);
        for (std::size_t k = 0; k < a.size(); k += 97)
            REQUIRE(std::abs(a[k].value - test::dtft(f.coeffs(), a[k].omega)) <= 1e-12 * scale);
    }
}

TEST_CASE("symmetric filters have exactly linear phase", "[analysis]") {
    auto g = test::rng(42);
    const auto f = FirFilter::linear_phase(test::random_symmetric(g, 31));
    const double tau = f.group_delay();
    for (const auto& p : freq_response(f, 1024)) {
        // H e^{j w tau} is real up to rounding
        const auto rotated = p.value * std::polar(1.0, p.omega * tau);
        REQUIRE(std::abs(rotated.imag()) <= 1e-12 * (1.0 + std::abs(p.value)));
    }
}

TEST_CASE("measure examples", "[analysis]") {
    const auto d = measure(FirFilter::delta(), FilterSpec(0.2, 0.3, 0.1, 40.0));
    CHECK(d.passband_ripple_db == 0.0);
    CHECK(d.stopband_atten_db == 0.0);

    const auto m = measure(FirFilter::linear_phase({0.5, 0.5}), FilterSpec(0.1, 0.9, 1.0, 10.0));
    CHECK_THAT(m.stopband_atten_db, WithinAbs(-20.0 * std::log10(std::cos(0.45 * std::numbers::pi)), 1e-9));
    CHECK_THAT(m.passband_ripple_db, WithinAbs(-20.0 * std::log10(std::cos(0.05 * std::numbers::pi)), 1e-9));
    CHECK(m.grid_size == kDefaultGridSize);

    CHECK_THROWS_WITH(measure(FirFilter::from_taps({0.0, 0.0}), FilterSpec(0.1, 0.2, 1, 10)),
                      Catch::Matchers::ContainsSubstring("unmeasurable"));
    CHECK_THROWS_WITH(measure(FirFilter::from_taps({1.0, -1.0}), FilterSpec(0.1, 0.2, 1, 10)),
                      Catch::Matchers::ContainsSubstring("unmeasurable"));
}

TEST_CASE("measured edges of the two-tap average", "[analysis]") {
    // |cos(w/2)| in dB crosses -1 dB at w = 2 acos(10^-0.05).
    const auto m = measure(FirFilter::linear_phase({0.5, 0.5}), FilterSpec(0.1, 0.9, 1.0, 10.0), 8192);
    const double edge = 2.0 * std::acos(std::pow(10.0, -1.0 / 20.0)) / std::numbers::pi;
    CHECK_THAT(m.measured_passband_edge, WithinAbs(edge, 1.0 / 8192));
    CHECK(m.measured_passband_edge <= edge);
    const double stop = 2.0 * std::acos(std::pow(10.0, -10.0 / 20.0)) / std::numbers::pi;
    CHECK_THAT(m.measured_stopband_edge, WithinAbs(stop, 1.0 / 8192));
    CHECK(m.measured_stopband_edge >= stop);
}

TEST_CASE("metrics are invariant under positive scaling", "[analysis]") {
    auto g = test::rng(43);
    const FilterSpec s(0.2, 0.3, 0.5, 30.0);
    const auto f = design_lowpass(s).filter;
    const auto base = measure(f, s);
    for (double c : {1e-6, 0.3, 7.0, 1e5}) {
        auto v = f.coeffs();
        for (auto& x : v) x *= c;
        const auto m = measure(FirFilter::linear_phase(v), s);
        CHECK_THAT(m.passband_ripple_db, WithinAbs(base.passband_ripple_db, 1e-9));
        CHECK_THAT(m.stopband_atten_db, WithinAbs(base.stopband_atten_db, 1e-9));
        CHECK(m.measured_passband_edge == base.measured_passband_edge);
        CHECK(m.measured_stopband_edge == base.measured_stopband_edge);
    }
}

TEST_CASE("verify_spec examples", "[analysis]") {
    const FilterSpec s(0.3, 0.4, 0.5, 40.0);
    const auto f = design_lowpass(s).filter;
    CHECK(verify_spec(f, s).passed);
    CHECK_FALSE(verify_spec(FirFilter::delta(), FilterSpec(0.3, 0.4, 0.5, 50.0)).passed);
    const auto m = measure(f, s);
    CHECK_FALSE(verify_spec(f, FilterSpec(0.3, 0.4, 0.5, m.stopband_atten_db + 20.0)).passed);
}

TEST_CASE("grid refinement moves example metrics by less than 0.05 dB", "[analysis]") {
    for (const FrmFilter* f : {&test::example1_two_stage(), &test::example1_one_stage(), &test::example2_two_stage()}) {
        const auto a = measure(f->composed, f->plan.target, 8192);
        const auto b = measure(f->composed, f->plan.target, 16384);
        CHECK(std::abs(a.passband_ripple_db - b.passband_ripple_db) < 0.05);
        CHECK(std::abs(a.stopband_atten_db - b.stopband_atten_db) < 0.05);
    }
}

TEST_CASE("Example I two-stage filter measures within its spec", "[analysis]") {
    const auto m = measure(test::example1_two_stage().composed, test::example1_spec());
    CHECK(m.passband_ripple_db <= 0.0298);
    CHECK(m.stopband_atten_db >= 50.0);
}

TEST_CASE("band peaks match a much finer brute-force grid", "[analysis]") {
    const auto& f = test::example1_two_stage();
    const auto& s = f.plan.target;
    const std::size_t fine = 1u << 19;
    const auto db = normalized_magnitude_db(freq_response(f.composed, fine));
    double ripple = 0.0, stop = -1e300;
    for (std::size_t k = 0; k <= fine; ++k) {
        const double w = static_cast<double>(k) / static_cast<double>(fine);
        if (w <= s.passband_edge) ripple = std::max(ripple, std::abs(db[k]));
        if (w >= s.stopband_edge) stop = std::max(stop, db[k]);
    }
    // The sup over a closed band includes its edges, which sit off this grid.
    const double dc = std::abs(test::dtft(f.composed.coeffs(), 0.0));
    auto edge_db = [&](double e) { return 20.0 * std::log10(std::abs(test::dtft(f.composed.coeffs(), e * std::numbers::pi)) / dc); };
    ripple = std::max(ripple, std::abs(edge_db(s.passband_edge)));
    stop = std::max(stop, edge_db(s.stopband_edge));
    for (std::size_t g : {1024u, 8192u}) {
        const auto m = measure(f.composed, s, g);
        CHECK_THAT(m.passband_ripple_db, WithinAbs(ripple, 1e-3));
        CHECK_THAT(m.stopband_atten_db, WithinAbs(-stop, 1e-3));
    }
}

TEST_CASE("band-edge values enter the peaks off the grid", "[analysis]") {
    // 0.1 and 0.9 are not grid points; the exact edge values are the extremes.
    const auto f = FirFilter::linear_phase({0.5, 0.5});
    const auto m = measure(f, FilterSpec(0.1, 0.9, 1.0, 10.0), 1024);
    CHECK_THAT(m.passband_ripple_db, WithinAbs(-20.0 * std::log10(std::cos(0.05 * std::numbers::pi)), 1e-12));
    CHECK_THAT(m.stopband_atten_db, WithinAbs(-20.0 * std::log10(std::cos(0.45 * std::numbers::pi)), 1e-12));
}
