#include "redsched/occupancy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "redsched/rng.hpp"

namespace redsched {

long long PlacementRun::max_load() const {
    return *std::max_element(loads.begin(), loads.end());
}

long long PlacementRun::min_load() const {
    return *std::min_element(loads.begin(), loads.end());
}

PlacementRun place(PolicyKind policy, int n, int d, long long T,
                   const IncidenceStructure* structure, std::uint64_t seed) {
    if (d < 1 || d > n) throw std::invalid_argument("place requires 1 <= d <= n");
    if (T < 1) throw std::invalid_argument("place requires T >= 1");
    if (policy == PolicyKind::bibd) {
        if (structure == nullptr)
            throw std::invalid_argument("bibd placement needs an incidence structure");
        if (structure->n != n || structure->d != d)
            throw std::invalid_argument("bibd structure does not match (n,d)");
        if (!verify_design(*structure, 1).valid)
            throw std::invalid_argument("bibd placement needs a verified (n,d,1) design");
    }

    PlacementRun run;
    run.n = n;
    run.d = d;
    run.T = T;
    run.policy = policy;
    run.seed = seed;
    run.blocks.reserve(static_cast<size_t>(T));
    run.loads.assign(static_cast<size_t>(n), 0);

    Rng rng(seed);
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);

    for (long long i = 0; i < T; ++i) {
        Block blk;
        switch (policy) {
            case PolicyKind::random: {
                // partial Fisher-Yates: first d entries are a uniform d-subset
                for (int j = 0; j < d; ++j) {
                    int r = j + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - j)));
                    std::swap(perm[static_cast<size_t>(j)], perm[static_cast<size_t>(r)]);
                }
                blk.members.assign(perm.begin(), perm.begin() + d);
                break;
            }
            case PolicyKind::round_robin:
                blk = round_robin_assignment(i + 1, n, d);
                break;
            case PolicyKind::bibd:
                blk = structure->blocks[static_cast<size_t>(i % structure->b())];
                break;
        }
        for (int v : blk.members) ++run.loads[static_cast<size_t>(v)];
        run.blocks.push_back(std::move(blk));
    }

    if (n <= 64) {
        run.masks.reserve(run.blocks.size());
        for (const Block& blk : run.blocks) {
            std::uint64_t m = 0;
            for (int v : blk.members) m |= std::uint64_t{1} << v;
            run.masks.push_back(m);
        }
    }
    return run;
}

namespace {

inline int pair_overlap(const PlacementRun& run, long long i, long long j) {
    if (!run.masks.empty())
        return std::popcount(run.masks[static_cast<size_t>(i)] &
                             run.masks[static_cast<size_t>(j)]);
    return block_overlap(run.blocks[static_cast<size_t>(i)],
                         run.blocks[static_cast<size_t>(j)]);
}

}  // namespace

OverlapMoments empirical_overlap_moments(const PlacementRun& run, long long pair_budget,
                                         bool parallel) {
    long long T = run.T;
    if (T < 2) throw std::invalid_argument("overlap moments need at least two balls");
    long long all_pairs = T * (T - 1) / 2;
    OverlapMoments out;

    if (all_pairs <= pair_budget) {
        out.pairs = all_pairs;
        out.sampled = false;
        long long sum = 0, sum2 = 0;
#ifdef REDSCHED_HAVE_OPENMP
#pragma omp parallel for reduction(+ : sum, sum2) schedule(static) if (parallel)
#endif
        for (long long i = 0; i < T; ++i) {
            long long local = 0, local2 = 0;
            for (long long j = i + 1; j < T; ++j) {
                long long o = pair_overlap(run, i, j);
                local += o;
                local2 += o * o;
            }
            sum += local;
            sum2 += local2;
        }
        (void)parallel;
        out.e_o = static_cast<double>(sum) / static_cast<double>(all_pairs);
        out.e_o2 = static_cast<double>(sum2) / static_cast<double>(all_pairs);
        return out;
    }

    // Uniform sample of distinct unordered pairs (with replacement across
    // draws). Sequential by design: the draw order is part of the contract.
    out.pairs = pair_budget;
    out.sampled = true;
    Rng rng = make_stream(run.seed, 0xA11CE);
    long long sum = 0, sum2 = 0;
    for (long long k = 0; k < pair_budget; ++k) {
        long long i = static_cast<long long>(uniform_below(rng, static_cast<std::uint64_t>(T)));
        long long j = static_cast<long long>(uniform_below(rng, static_cast<std::uint64_t>(T - 1)));
        if (j >= i) ++j;
        long long o = pair_overlap(run, i, j);
        sum += o;
        sum2 += o * o;
    }
    out.e_o = static_cast<double>(sum) / static_cast<double>(pair_budget);
    out.e_o2 = static_cast<double>(sum2) / static_cast<double>(pair_budget);
    return out;
}

namespace {

struct RepStat {
    double min_load = 0, max_load = 0;
    double e_o = 0, e_o2 = 0;
};

void mean_se(const std::vector<double>& xs, double& mean, double& se) {
    int r = static_cast<int>(xs.size());
    mean = std::accumulate(xs.begin(), xs.end(), 0.0) / r;
    if (r < 2) {
        se = 0;
        return;
    }
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    se = std::sqrt(ss / (r - 1)) / std::sqrt(static_cast<double>(r));
}

}  // namespace

EmpiricalIndicators empirical_indicators(PolicyKind policy, int n, int d, long long T,
                                         int replications, std::uint64_t seed,
                                         const IncidenceStructure* structure,
                                         long long pair_budget, bool parallel) {
    if (replications < 1) throw std::invalid_argument("need at least one replication");
    std::vector<RepStat> stats(static_cast<size_t>(replications));

#ifdef REDSCHED_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int r = 0; r < replications; ++r) {
        PlacementRun run = place(policy, n, d, T, structure, derive_stream_seed(seed, static_cast<std::uint64_t>(r)));
        OverlapMoments m = empirical_overlap_moments(run, pair_budget, /*parallel=*/false);
        stats[static_cast<size_t>(r)] = {static_cast<double>(run.min_load()),
                                         static_cast<double>(run.max_load()), m.e_o, m.e_o2};
    }
    (void)parallel;

    std::vector<double> mins, maxs, eos, eo2s;
    for (const RepStat& s : stats) {
        mins.push_back(s.min_load);
        maxs.push_back(s.max_load);
        eos.push_back(s.e_o);
        eo2s.push_back(s.e_o2);
    }
    EmpiricalIndicators out;
    out.replications = replications;
    mean_se(mins, out.mean_min, out.se_min);
    mean_se(maxs, out.mean_max, out.se_max);
    mean_se(eos, out.e_o, out.se_e_o);
    mean_se(eo2s, out.e_o2, out.se_e_o2);
    out.lbf_hat = out.mean_max > 0 ? out.mean_min / out.mean_max : 0.0;
    return out;
}

}  // namespace redsched
