#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "redsched/occupancy.hpp"

using namespace redsched;

TEST_CASE("place: round-robin shift-by-2 with n=4 reuses two blocks") {
    PlacementRun run = place(PolicyKind::round_robin, 4, 2, 4, nullptr, 0);
    CHECK(run.loads == std::vector<long long>{2, 2, 2, 2});
    CHECK(run.blocks[0].members == std::vector<int>{0, 1});
    CHECK(run.blocks[1].members == std::vector<int>{2, 3});
    CHECK(run.blocks[2].members == std::vector<int>{0, 1});
    CHECK(run.blocks[3].members == std::vector<int>{2, 3});
}

TEST_CASE("place: one Fano cycle loads every urn three times") {
    IncidenceStructure fano = fano_blocks();
    PlacementRun run = place(PolicyKind::bibd, 7, 3, 7, &fano, 0);
    CHECK(run.loads == std::vector<long long>(7, 3));
}

TEST_CASE("place: full blocks load every urn T times") {
    PlacementRun run = place(PolicyKind::random, 5, 5, 9, nullptr, 42);
    CHECK(run.loads == std::vector<long long>(5, 9));
}

TEST_CASE("place preconditions") {
    CHECK_THROWS_AS(place(PolicyKind::bibd, 7, 3, 7, nullptr, 0), std::invalid_argument);
    CHECK_THROWS_AS(place(PolicyKind::random, 3, 4, 5, nullptr, 0), std::invalid_argument);
    // an unverified structure is rejected for bibd
    IncidenceStructure not_a_design = circulant_incidence(7, 3);
    CHECK_THROWS_AS(place(PolicyKind::bibd, 7, 3, 7, &not_a_design, 0),
                    std::invalid_argument);
}

TEST_CASE("conservation: loads sum to T*d for every policy") {
    IncidenceStructure design = known_bibd(3);
    for (long long T : {1LL, 5LL, 7LL, 12LL, 30LL}) {
        for (PolicyKind pk :
             {PolicyKind::random, PolicyKind::round_robin, PolicyKind::bibd}) {
            PlacementRun run =
                place(pk, 7, 3, T, pk == PolicyKind::bibd ? &design : nullptr, 99);
            long long total = std::accumulate(run.loads.begin(), run.loads.end(), 0LL);
            CHECK(total == T * 3);
        }
    }
}

TEST_CASE("determinism: identical parameters give identical runs") {
    PlacementRun a = place(PolicyKind::random, 13, 4, 500, nullptr, 7);
    PlacementRun b = place(PolicyKind::random, 13, 4, 500, nullptr, 7);
    CHECK(a.blocks == b.blocks);
    CHECK(a.loads == b.loads);
    PlacementRun c = place(PolicyKind::random, 13, 4, 500, nullptr, 8);
    CHECK(a.blocks != c.blocks);
}

TEST_CASE("random blocks are distinct d-subsets in range") {
    PlacementRun run = place(PolicyKind::random, 13, 4, 2000, nullptr, 3);
    for (const Block& blk : run.blocks) {
        CHECK(blk.size() == 4);
        auto s = blk.sorted();
        for (size_t i = 0; i < s.size(); ++i) {
            CHECK(s[i] >= 0);
            CHECK(s[i] < 13);
            if (i) CHECK(s[i] != s[i - 1]);
        }
    }
}

TEST_CASE("round-robin spread stays within one ball for every T") {
    for (long long T : {1LL, 3LL, 5LL, 8LL, 13LL, 26LL, 40LL}) {
        PlacementRun run = place(PolicyKind::round_robin, 13, 4, T, nullptr, 0);
        CHECK(run.max_load() - run.min_load() <= 1);
    }
    // complete cycles balance exactly
    PlacementRun even = place(PolicyKind::round_robin, 13, 4, 52, nullptr, 0);
    CHECK(even.max_load() == even.min_load());
}

TEST_CASE("bibd spread is zero on complete cycles, bounded mid-cycle") {
    IncidenceStructure design = known_bibd(3);
    for (long long cycles : {1LL, 2LL, 5LL}) {
        PlacementRun run = place(PolicyKind::bibd, 7, 3, 7 * cycles, &design, 0);
        CHECK(run.max_load() == run.min_load());
    }
    // mid-cycle the spread may exceed one: five cyclic blocks of the
    // (7,3,1) design produce loads {2,2,2,3,3,2,1}
    PlacementRun part = place(PolicyKind::bibd, 7, 3, 5, &design, 0);
    CHECK(part.max_load() - part.min_load() == 2);
    // but it is bounded by d, so the load ratio still tends to one
    for (long long T : {20LL, 50LL, 699LL}) {
        PlacementRun run = place(PolicyKind::bibd, 7, 3, T, &design, 0);
        CHECK(run.max_load() - run.min_load() <= 3);
    }
}

TEST_CASE("empirical overlap moments: exhaustive cases") {
    IncidenceStructure fano = fano_blocks();
    OverlapMoments fm = empirical_overlap_moments(place(PolicyKind::bibd, 7, 3, 7, &fano, 0));
    CHECK(fm.e_o == 1.0);
    CHECK(fm.e_o2 == 1.0);
    CHECK_FALSE(fm.sampled);

    OverlapMoments rr =
        empirical_overlap_moments(place(PolicyKind::round_robin, 7, 3, 7, nullptr, 0));
    CHECK(rr.e_o == doctest::Approx(1.0));
    CHECK(rr.e_o2 == doctest::Approx(5.0 / 3.0));

    // two identical full blocks overlap in d with square d^2
    OverlapMoments two =
        empirical_overlap_moments(place(PolicyKind::round_robin, 2, 2, 2, nullptr, 0));
    CHECK(two.e_o == 2.0);
    CHECK(two.e_o2 == 4.0);
}

TEST_CASE("exhaustive moments agree with the oracle histogram") {
    PlacementRun run = place(PolicyKind::random, 13, 4, 60, nullptr, 11);
    auto hist = oracles::pair_overlap_histogram(run.blocks);
    long long pairs = 0, sum = 0, sum2 = 0;
    for (auto [o, c] : hist) {
        pairs += c;
        sum += o * c;
        sum2 += o * o * c;
    }
    OverlapMoments m = empirical_overlap_moments(run);
    CHECK(m.pairs == pairs);
    CHECK(m.e_o == doctest::Approx(double(sum) / pairs).epsilon(1e-15));
    CHECK(m.e_o2 == doctest::Approx(double(sum2) / pairs).epsilon(1e-15));
}

TEST_CASE("parallel and serial pair enumeration agree bitwise") {
    PlacementRun run = place(PolicyKind::random, 21, 5, 400, nullptr, 5);
    OverlapMoments a = empirical_overlap_moments(run, kDefaultPairBudget, true);
    OverlapMoments b = empirical_overlap_moments(run, kDefaultPairBudget, false);
    CHECK(a.e_o == b.e_o);
    CHECK(a.e_o2 == b.e_o2);
}

TEST_CASE("sampled moments estimate the exhaustive ones") {
    PlacementRun run = place(PolicyKind::random, 13, 4, 4000, nullptr, 17);
    OverlapMoments exact = empirical_overlap_moments(run, 1LL << 40);
    OverlapMoments est = empirical_overlap_moments(run, 200000);
    CHECK(est.sampled);
    CHECK(est.pairs == 200000);
    CHECK(est.e_o == doctest::Approx(exact.e_o).epsilon(0.02));
    CHECK(est.e_o2 == doctest::Approx(exact.e_o2).epsilon(0.05));
}

TEST_CASE("empirical indicators: perfectly even round-robin run") {
    EmpiricalIndicators e =
        empirical_indicators(PolicyKind::round_robin, 13, 4, 52, 1, 0);
    CHECK(e.mean_min == 16.0);
    CHECK(e.mean_max == 16.0);
    CHECK(e.lbf_hat == 1.0);
}

TEST_CASE("empirical indicators approach the analytic moments") {
    // random: E[o] = d^2/n for every T
    EmpiricalIndicators r = empirical_indicators(PolicyKind::random, 13, 4, 13000, 8, 21);
    double analytic = 16.0 / 13.0;
    CHECK(std::abs(r.e_o - analytic) < 5 * std::max(r.se_e_o, 1e-4));

    IncidenceStructure design = known_bibd(4);
    EmpiricalIndicators b =
        empirical_indicators(PolicyKind::bibd, 13, 4, 13000, 4, 22, &design);
    CHECK(b.e_o == doctest::Approx(16.0 / 13.0).epsilon(0.01));
}

TEST_CASE("empirical indicators are deterministic and thread-count independent") {
    EmpiricalIndicators a = empirical_indicators(PolicyKind::random, 13, 4, 2000, 6, 9,
                                                 nullptr, kDefaultPairBudget, true);
    EmpiricalIndicators b = empirical_indicators(PolicyKind::random, 13, 4, 2000, 6, 9,
                                                 nullptr, kDefaultPairBudget, false);
    CHECK(a.mean_min == b.mean_min);
    CHECK(a.mean_max == b.mean_max);
    CHECK(a.e_o == b.e_o);
    CHECK(a.e_o2 == b.e_o2);
    CHECK(a.se_e_o == b.se_e_o);
}

TEST_CASE("random extreme loads track the analytic approximation") {
    // one cell of the 50-ball experiment, generous band
    EmpiricalIndicators e = empirical_indicators(PolicyKind::random, 21, 4, 50, 500, 33);
    ExtremeLoadApprox a = extreme_loads(21, 4, 50);
    CHECK(std::abs(e.mean_max - a.mean_max) / a.mean_max < 0.15);
}
