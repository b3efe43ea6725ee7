#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "stickymass/channel.hpp"
#include "stickymass/distributions.hpp"
#include "stickymass/random.hpp"
#include "stickymass/stats.hpp"

using namespace stickymass;

namespace {
SampleSequence seq(std::vector<int> letters) { return SampleSequence{std::move(letters)}; }
}  // namespace

TEST_CASE("occupancy counts") {
    auto c = counts(seq({1, 2, 1}));
    CHECK(c.letter_counts.at(1) == 2);
    CHECK(c.letter_counts.at(2) == 1);
    CHECK(c.count_of_counts.at(1) == 1);
    CHECK(c.count_of_counts.at(2) == 1);

    // invariants on a random sequence: counts sum to n, and sum of l * phi_l = n
    RandomStream rng(12);
    auto d = power_law(6, 0.4);
    auto s = simulate_markov(d, ChannelParams{0.3}, 200, rng);
    auto cs = counts(s);
    long long total = 0;
    for (const auto& [letter, cnt] : cs.letter_counts) total += cnt;
    CHECK(total == 200);
    long long weighted = 0;
    for (const auto& [cnt, mult] : cs.count_of_counts) weighted += (long long)cnt * mult;
    CHECK(weighted == 200);
}

TEST_CASE("missing mass on known cases") {
    auto d = DiscreteDistribution(std::vector<double>{0.5, 0.25, 0.25});
    CHECK(missing_mass(seq({1}), d) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(missing_mass(seq({1, 2}), d) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(missing_mass(seq({1, 2, 3, 1}), d) == doctest::Approx(0.0).epsilon(1e-15));

    auto third = DiscreteDistribution(
        std::vector<double>{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    CHECK(std::abs(missing_mass(seq({1, 2}), third) - 1.0 / 3.0) <= 1e-15);

    CHECK_THROWS_AS(missing_mass(seq({4}), d), std::invalid_argument);
}

TEST_CASE("missing mass matches the direct absent-letter sum") {
    // dyadic masses make both computations exact, so the two must agree tightly
    RandomStream rng(77);
    for (int rep = 0; rep < 50; ++rep) {
        int k = 2 + int(rng.next_unit() * 6);
        std::vector<double> masses(k, 0.0);
        int remaining = 64;
        for (int i = 0; i < k - 1; ++i) {
            int cap = remaining - (k - 1 - i);
            int take = 1 + int(rng.next_unit() * cap);
            masses[i] = take / 64.0;
            remaining -= take;
        }
        masses[k - 1] = remaining / 64.0;
        DiscreteDistribution d(masses);

        int n = 1 + int(rng.next_unit() * 12);
        std::vector<int> letters(n);
        std::vector<bool> seen(k + 1, false);
        for (int i = 0; i < n; ++i) {
            letters[i] = 1 + int(rng.next_unit() * k);
            seen[letters[i]] = true;
        }
        double direct = 0.0;
        for (int x = 1; x <= k; ++x)
            if (!seen[x]) direct += masses[x - 1];
        CHECK(std::abs(missing_mass(seq(letters), d) - direct) <= 1e-15);
    }
}

TEST_CASE("interior singletons exclude endpoints and their letters") {
    CHECK(interior_singletons(seq({1, 2, 1})) == 1);
    CHECK(interior_singletons(seq({1, 2, 3, 1})) == 2);
    CHECK(interior_singletons(seq({1, 2, 2, 1})) == 0);
    CHECK(interior_singletons(seq({1, 2, 3, 2, 1})) == 1);
    // a letter equal to an endpoint never counts, even if interior count is 1
    CHECK(interior_singletons(seq({2, 2, 1, 2})) == 1);
    CHECK(interior_singletons(seq({1, 1, 1})) == 0);
    CHECK_THROWS_AS(interior_singletons(seq({1, 2})), std::invalid_argument);

    // never exceeds n - 2
    RandomStream rng(5);
    auto d = uniform(30);
    for (int rep = 0; rep < 20; ++rep) {
        auto s = simulate_markov(d, ChannelParams{0.2}, 10, rng);
        int phi = interior_singletons(s);
        CHECK(phi >= 0);
        CHECK(phi <= 8);
    }
}

TEST_CASE("state changes") {
    CHECK(state_changes(seq({1, 1, 1})) == 0);
    CHECK(state_changes(seq({1, 2, 1})) == 2);
    CHECK(state_changes(seq({1, 1, 2, 2})) == 1);
    CHECK(state_changes(seq({1})) == 0);
}
