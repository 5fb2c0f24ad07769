#include "canard/error.hpp"
#include "canard/signature.hpp"

#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>

using namespace canard;

namespace {

struct Signal {
    std::vector<double> t;
    std::vector<double> x;
};

// Smooth train visiting the given extrema in order, cosine-eased between them.
Signal through(const std::vector<double>& extrema, int samples_per_leg = 40) {
    Signal s;
    double t = 0.0;
    for (std::size_t i = 0; i + 1 < extrema.size(); ++i) {
        for (int j = 0; j < samples_per_leg; ++j) {
            const double u = static_cast<double>(j) / samples_per_leg;
            s.t.push_back(t + u);
            s.x.push_back(extrema[i] + (extrema[i + 1] - extrema[i]) *
                                           (1.0 - std::cos(std::numbers::pi * u)) / 2.0);
        }
        t += 1.0;
    }
    s.t.push_back(t);
    s.x.push_back(extrema.back());
    return s;
}

// Extrema for a repeated pattern of 'L' (fold-to-fold loop) and 's' (small
// loop near the lower fold).
std::vector<double> pattern_extrema(const std::string& pattern, int repeats) {
    std::vector<double> e{-2.0};
    for (int r = 0; r < repeats; ++r) {
        for (char c : pattern) {
            if (c == 'L') {
                e.push_back(2.0);
                e.push_back(-2.0);
            } else {
                e.push_back(-0.9);
                e.push_back(-1.1);
            }
        }
    }
    return e;
}

MmoSignature sig_of(const Signal& s) { return signature(s.t, s.x, 0.0); }

}  // namespace

TEST_CASE("maxima of a sine") {
    std::vector<double> t, x;
    for (int i = 0; i <= 20000; ++i) {
        t.push_back(20.0 * std::numbers::pi * i / 20000.0);
        x.push_back(std::sin(t.back()));
    }
    CHECK(extract_oscillations(t, x, 0.0).size() == 10);
    // Half of the span discarded.
    CHECK(extract_oscillations(t, x, 0.5).size() == 5);
}

TEST_CASE("monotone or flat signals have no oscillations") {
    std::vector<double> t, x;
    for (int i = 0; i < 100; ++i) {
        t.push_back(i);
        x.push_back(0.01 * i);
    }
    CHECK(extract_oscillations(t, x, 0.0).empty());
    const auto sig = signature(t, x, 0.0);
    CHECK(sig.canonical_string == "0^0");
    CHECK_FALSE(sig.periodic);
}

TEST_CASE("classification examples") {
    CHECK(classify({0.0, 1.9, -1.9, false}) == OscillationKind::lao);
    CHECK(classify({0.0, -0.8, -1.3, false}) == OscillationKind::sao);
    CHECK(classify({0.0, 1.9, -0.95, false}) == OscillationKind::sao);
    CHECK(classify({0.0, 0.99, -1.9, false}) == OscillationKind::sao);
}

TEST_CASE("synthetic trains are recovered exactly") {
    CHECK(sig_of(through(pattern_extrema("Lss", 6))).canonical_string == "1^2");
    CHECK(sig_of(through(pattern_extrema("L", 6))).canonical_string == "1^0");
    CHECK(sig_of(through(pattern_extrema("LLsss", 5))).canonical_string == "2^3");
    const auto mixed = sig_of(through(pattern_extrema("LLsLss", 5)));
    CHECK(mixed.periodic);
    CHECK(mixed.canonical_string == "1^2 2^1");
    CHECK(mixed.blocks == std::vector<SignatureBlock>{{1, 2}, {2, 1}});

    const auto sig = sig_of(through(pattern_extrema("Lss", 6)));
    CHECK(sig.periodic);
    CHECK(sig.oscillations.size() == 18);
}

TEST_CASE("signature is idempotent under repetition") {
    for (const std::string p : {"Lss", "LLsLss", "Lsss"}) {
        const auto once = sig_of(through(pattern_extrema(p, 3)));
        const auto twice = sig_of(through(pattern_extrema(p + p, 3)));
        CHECK(once.canonical_string == twice.canonical_string);
        CHECK(once.periodic == twice.periodic);
    }
}

TEST_CASE("classification survives small vertical shifts") {
    const Signal base = through(pattern_extrema("LLsLss", 4));
    const auto reference = sig_of(base);
    for (double c : {-0.049, -0.02, 0.03, 0.049}) {
        Signal shifted = base;
        for (double& v : shifted.x) {
            v += c;
        }
        const auto sig = sig_of(shifted);
        CHECK(sig.kinds == reference.kinds);
        CHECK(sig.canonical_string == reference.canonical_string);
    }
}

TEST_CASE("classification is invariant under time reparameterization") {
    const Signal base = through(pattern_extrema("LsLss", 4));
    const auto reference = sig_of(base);
    const std::function<double(double)> maps[] = {
        [](double t) { return 2.5 * t + 7.0; },
        [](double t) { return t * t * t + t; },
        [](double t) { return std::exp(0.1 * t); },
    };
    for (const auto& map : maps) {
        Signal warped = base;
        for (double& t : warped.t) {
            t = map(t);
        }
        const auto sig = sig_of(warped);
        CHECK(sig.kinds == reference.kinds);
        CHECK(sig.canonical_string == reference.canonical_string);
    }
}

TEST_CASE("jitter below the hysteresis band adds no extrema") {
    Signal s = through(pattern_extrema("Lss", 4), 200);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> noise(-2e-5, 2e-5);
    for (double& v : s.x) {
        v += noise(rng);
    }
    const auto sig = sig_of(s);
    CHECK(sig.oscillations.size() == 12);
    CHECK(sig.canonical_string == "1^2");
}

TEST_CASE("sequences without a repeating cycle") {
    using K = OscillationKind;
    const auto L = K::lao, S = K::sao;
    const auto sig = signature_from_kinds({S, L, S, L, S, S, L, S, S, S, L, S});
    CHECK_FALSE(sig.periodic);
    // Leading SAO dropped, trailing block cut off.
    CHECK(sig.canonical_string == "1^1 1^2 1^3");

    const auto none = signature_from_kinds({S, S, S});
    CHECK_FALSE(none.periodic);
    CHECK(none.canonical_string == "0^3");

    // A single cycle is not enough to call it periodic.
    CHECK_FALSE(signature_from_kinds({L, S, S}).periodic);
}

TEST_CASE("argument checks") {
    const std::vector<double> t{0, 1, 2}, x{0, 1};
    CHECK_THROWS_AS(extract_oscillations(t, x, 0.0), DomainError);
    const std::vector<double> y{0, 1, 0};
    CHECK_THROWS_AS(extract_oscillations(t, y, 1.0), DomainError);
    CHECK_THROWS_AS(extract_oscillations(t, y, -0.1), DomainError);
}
