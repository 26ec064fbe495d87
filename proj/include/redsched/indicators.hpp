#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "redsched/rational.hpp"

namespace redsched {

enum class PolicyKind { random, round_robin, bibd };

const char* to_string(PolicyKind p);
std::optional<PolicyKind> policy_from_string(const std::string& s);

// Distribution of the pairwise overlap count between two scheduled
// jobs. Probabilities are exact rationals; limiting pmfs sum to 1,
// the paper-faithful finite-T BIBD form is allowed to miss by O(1/T).
struct OverlapPmf {
    int d = 0;
    bool limiting = true;
    long long T = 0;          // meaningful when !limiting
    std::vector<Rat> p;       // index k = 0..d

    Rat mass() const;
    Rat first_moment() const;
    Rat second_moment() const;
};

// Hypergeometric: p_k = C(d,k) C(n-d,d-k) / C(n,d). Exact for every T
// since the draws are i.i.d.
OverlapPmf overlap_pmf_random(int n, int d);

// Finite-T closed form: P(0)=1-(2d-1)/n+d/T, P(k)=2/n-1/T for
// 0<k<d, P(d)=1/n-1/T. Requires n | T and nonnegative masses.
OverlapPmf overlap_pmf_round_robin(int n, int d, long long T);
OverlapPmf overlap_pmf_round_robin_limit(int n, int d);

// Exact pair counting under cyclic block selection: a random other job
// shares the identical block with probability (T/n-1)/(T-1) and overlaps
// in exactly one object otherwise. `paper_faithful` reproduces the
// verbatim masses P(1)=(n-1)/n, P(d)=1/n-1/T instead (sum 1-1/T).
OverlapPmf overlap_pmf_bibd(int n, int d, long long T, bool paper_faithful = false);
OverlapPmf overlap_pmf_bibd_limit(int n, int d);

// Limiting reciprocal moments. random/round_robin: n/d^2 and
// n(n-1)/(d^2 (n+d(d-2))) resp. 3n/(2d^3+d); bibd (needs n=d(d-1)+1):
// n/(n+d-1) and n/(n+d^2-1).
Rat aof(PolicyKind policy, int n, int d);
Rat odf(PolicyKind policy, int n, int d);

struct ExtremeLoadApprox {
    double mean_max = 0;
    double mean_min = 0;  // clamped at 0
};

// Central-limit approximation of the extreme urn loads after T balls:
// Td/n ± sqrt(2 T d (n-d) ln(n) / n^2). The log is natural.
ExtremeLoadApprox extreme_loads(int n, int d, long long T);
double lbf_random_approx(int n, int d, long long T);

// round_robin and bibd balance perfectly (ratio 1); random uses the
// approximation above.
double lbf(PolicyKind policy, int n, int d, long long T);

struct IndicatorSet {
    double lbf = 0;
    Rat aof;
    Rat odf;
    Rat first_moment;   // E[o]  = 1/AOF
    Rat second_moment;  // E[o^2] = 1/ODF
};

// One comparison row at n = d(d-1)+1. Requires a known design of that
// order; T only feeds the random-policy LBF approximation.
std::map<PolicyKind, IndicatorSet> table1_row(int d, long long T);

}  // namespace redsched
