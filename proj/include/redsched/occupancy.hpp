#pragma once

#include <cstdint>
#include <vector>

#include "redsched/designkit.hpp"
#include "redsched/indicators.hpp"

namespace redsched {

// Above this many ball pairs the overlap moments switch from exhaustive
// enumeration to uniform pair sampling.
inline constexpr long long kDefaultPairBudget = 5'000'000;

// One d-redundant placement of T balls into n urns.
struct PlacementRun {
    int n = 0, d = 0;
    long long T = 0;
    PolicyKind policy = PolicyKind::random;
    std::uint64_t seed = 0;
    std::vector<Block> blocks;           // one per ball
    std::vector<std::uint64_t> masks;    // bit per urn, filled when n <= 64
    std::vector<long long> loads;        // balls per urn; sums to T*d

    long long max_load() const;
    long long min_load() const;
};

// random: uniform d-subset per ball (partial Fisher-Yates);
// round_robin: the shift-by-d job sequence; bibd: the structure's blocks
// cyclically in fixed order. Deterministic in (policy, n, d, T, seed).
PlacementRun place(PolicyKind policy, int n, int d, long long T,
                   const IncidenceStructure* structure, std::uint64_t seed);

struct OverlapMoments {
    double e_o = 0;
    double e_o2 = 0;
    long long pairs = 0;
    bool sampled = false;
};

// Mean overlap and mean squared overlap across ball pairs: all C(T,2)
// pairs when that fits the budget, else `pair_budget` uniformly sampled
// distinct pairs (rng derived from the run seed). Exhaustive sums are
// integer-exact, so the parallel and serial paths agree bitwise.
OverlapMoments empirical_overlap_moments(const PlacementRun& run,
                                         long long pair_budget = kDefaultPairBudget,
                                         bool parallel = true);

struct EmpiricalIndicators {
    double mean_min = 0, mean_max = 0;
    double se_min = 0, se_max = 0;
    double e_o = 0, e_o2 = 0;
    double se_e_o = 0, se_e_o2 = 0;
    double lbf_hat = 0;  // mean_min / mean_max
    int replications = 0;
};

// Averages extreme loads and overlap moments over independent
// replications (seed stream r = derive_stream_seed(seed, r)); standard
// errors are across replications. Replications run concurrently when
// `parallel`; aggregation uses indexed slots so results do not depend
// on scheduling.
EmpiricalIndicators empirical_indicators(PolicyKind policy, int n, int d, long long T,
                                         int replications, std::uint64_t seed,
                                         const IncidenceStructure* structure = nullptr,
                                         long long pair_budget = kDefaultPairBudget,
                                         bool parallel = true);

}  // namespace redsched
