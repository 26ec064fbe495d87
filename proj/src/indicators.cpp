#include "redsched/indicators.hpp"

#include <cmath>
#include <stdexcept>

#include "redsched/designkit.hpp"

namespace redsched {

const char* to_string(PolicyKind p) {
    switch (p) {
        case PolicyKind::random: return "random";
        case PolicyKind::round_robin: return "round_robin";
        case PolicyKind::bibd: return "bibd";
    }
    return "?";
}

std::optional<PolicyKind> policy_from_string(const std::string& s) {
    if (s == "random") return PolicyKind::random;
    if (s == "round_robin" || s == "round-robin" || s == "rr") return PolicyKind::round_robin;
    if (s == "bibd") return PolicyKind::bibd;
    return std::nullopt;
}

Rat OverlapPmf::mass() const {
    Rat m;
    for (const Rat& q : p) m += q;
    return m;
}

Rat OverlapPmf::first_moment() const {
    Rat m;
    for (int k = 0; k <= d; ++k) m += Rat(k) * p[static_cast<size_t>(k)];
    return m;
}

Rat OverlapPmf::second_moment() const {
    Rat m;
    for (int k = 0; k <= d; ++k)
        m += Rat(static_cast<long long>(k) * k) * p[static_cast<size_t>(k)];
    return m;
}

namespace {

void check_nd(int n, int d) {
    if (d < 1 || d > n)
        throw std::invalid_argument("requires 1 <= d <= n (got n=" + std::to_string(n) +
                                    ", d=" + std::to_string(d) + ")");
}

void check_bibd_order(int n, int d) {
    if (static_cast<long long>(d) * (d - 1) + 1 != n)
        throw std::invalid_argument("bibd requires n = d(d-1)+1 (got n=" + std::to_string(n) +
                                    ", d=" + std::to_string(d) + ")");
}

void check_multiple(int n, long long T) {
    if (T < 1 || T % n != 0)
        throw std::invalid_argument("T must be a positive multiple of n (got T=" +
                                    std::to_string(T) + ", n=" + std::to_string(n) + ")");
}

}  // namespace

OverlapPmf overlap_pmf_random(int n, int d) {
    check_nd(n, d);
    OverlapPmf pmf;
    pmf.d = d;
    pmf.limiting = true;
    pmf.p.resize(static_cast<size_t>(d) + 1);
    Rat total = Rat::binomial(n, d);
    for (int k = 0; k <= d; ++k)
        pmf.p[static_cast<size_t>(k)] =
            Rat::binomial(d, k) * Rat::binomial(n - d, d - k) / total;
    return pmf;
}

OverlapPmf overlap_pmf_round_robin(int n, int d, long long T) {
    check_nd(n, d);
    check_multiple(n, T);
    OverlapPmf pmf;
    pmf.d = d;
    pmf.limiting = false;
    pmf.T = T;
    pmf.p.assign(static_cast<size_t>(d) + 1, Rat(0));
    Rat invT(1, T);
    pmf.p[0] = Rat(1) - Rat(2 * d - 1, n) + Rat(d) * invT;
    for (int k = 1; k < d; ++k) pmf.p[static_cast<size_t>(k)] = Rat(2, n) - invT;
    pmf.p[static_cast<size_t>(d)] = Rat(1, n) - invT;
    for (const Rat& q : pmf.p)
        if (q.is_negative())
            throw std::invalid_argument("round-robin pmf: T too small for nonnegative masses");
    return pmf;
}

OverlapPmf overlap_pmf_round_robin_limit(int n, int d) {
    check_nd(n, d);
    OverlapPmf pmf;
    pmf.d = d;
    pmf.limiting = true;
    pmf.p.assign(static_cast<size_t>(d) + 1, Rat(0));
    pmf.p[0] = Rat(1) - Rat(2 * d - 1, n);
    for (int k = 1; k < d; ++k) pmf.p[static_cast<size_t>(k)] = Rat(2, n);
    pmf.p[static_cast<size_t>(d)] = Rat(1, n);
    if (pmf.p[0].is_negative())
        throw std::invalid_argument("round-robin limiting pmf undefined for n < 2d-1");
    return pmf;
}

OverlapPmf overlap_pmf_bibd(int n, int d, long long T, bool paper_faithful) {
    check_bibd_order(n, d);
    check_multiple(n, T);
    if (T < 2) throw std::invalid_argument("bibd pmf needs T >= 2");
    OverlapPmf pmf;
    pmf.d = d;
    pmf.limiting = false;
    pmf.T = T;
    pmf.p.assign(static_cast<size_t>(d) + 1, Rat(0));
    if (paper_faithful) {
        pmf.p[1] = Rat(n - 1, n);
        pmf.p[static_cast<size_t>(d)] += Rat(1, n) - Rat(1, T);
    } else {
        Rat same_block(T / n - 1, T - 1);
        pmf.p[static_cast<size_t>(d)] = same_block;
        pmf.p[1] += Rat(1) - same_block;
    }
    return pmf;
}

OverlapPmf overlap_pmf_bibd_limit(int n, int d) {
    check_bibd_order(n, d);
    OverlapPmf pmf;
    pmf.d = d;
    pmf.limiting = true;
    pmf.p.assign(static_cast<size_t>(d) + 1, Rat(0));
    pmf.p[static_cast<size_t>(d)] = Rat(1, n);
    pmf.p[1] += Rat(n - 1, n);
    return pmf;
}

Rat aof(PolicyKind policy, int n, int d) {
    check_nd(n, d);
    switch (policy) {
        case PolicyKind::random:
        case PolicyKind::round_robin:
            return Rat(n, static_cast<long long>(d) * d);
        case PolicyKind::bibd:
            check_bibd_order(n, d);
            return Rat(n, n + d - 1);
    }
    throw std::invalid_argument("unknown policy");
}

Rat odf(PolicyKind policy, int n, int d) {
    check_nd(n, d);
    if (n == 1) return Rat(1);  // single urn: overlap is always 1
    switch (policy) {
        case PolicyKind::random:
            return Rat(static_cast<long long>(n) * (n - 1),
                       static_cast<long long>(d) * d *
                           (n + static_cast<long long>(d) * (d - 2)));
        case PolicyKind::round_robin:
            return Rat(3LL * n, 2LL * d * d * d + d);
        case PolicyKind::bibd:
            check_bibd_order(n, d);
            return Rat(n, n + static_cast<long long>(d) * d - 1);
    }
    throw std::invalid_argument("unknown policy");
}

ExtremeLoadApprox extreme_loads(int n, int d, long long T) {
    check_nd(n, d);
    if (T < 1) throw std::invalid_argument("extreme_loads needs T >= 1");
    double mean = static_cast<double>(T) * d / n;
    double dev = std::sqrt(2.0 * static_cast<double>(T) * d * (n - d) * std::log(n) /
                           (static_cast<double>(n) * n));
    return {mean + dev, std::max(0.0, mean - dev)};
}

double lbf_random_approx(int n, int d, long long T) {
    ExtremeLoadApprox x = extreme_loads(n, d, T);
    if (x.mean_min <= 0.0) return 0.0;
    return x.mean_min / x.mean_max;
}

double lbf(PolicyKind policy, int n, int d, long long T) {
    check_nd(n, d);
    switch (policy) {
        case PolicyKind::random: return lbf_random_approx(n, d, T);
        case PolicyKind::round_robin: return 1.0;
        case PolicyKind::bibd:
            check_bibd_order(n, d);
            return 1.0;
    }
    throw std::invalid_argument("unknown policy");
}

std::map<PolicyKind, IndicatorSet> table1_row(int d, long long T) {
    int n = d * (d - 1) + 1;
    if (!bibd_order_supported(d))
        throw std::invalid_argument("table1_row: no known (n,d,1) design for d=" +
                                    std::to_string(d));
    std::map<PolicyKind, IndicatorSet> row;
    for (PolicyKind pk : {PolicyKind::random, PolicyKind::round_robin, PolicyKind::bibd}) {
        IndicatorSet s;
        s.lbf = lbf(pk, n, d, T);
        s.aof = aof(pk, n, d);
        s.odf = odf(pk, n, d);
        s.first_moment = s.aof.reciprocal();
        s.second_moment = s.odf.reciprocal();
        row[pk] = s;
    }
    // Identities forced by n = d(d-1)+1.
    if (row[PolicyKind::random].aof != row[PolicyKind::round_robin].aof ||
        row[PolicyKind::random].aof != row[PolicyKind::bibd].aof)
        throw std::logic_error("table1_row: AOF identity violated");
    if (row[PolicyKind::random].odf != row[PolicyKind::bibd].odf)
        throw std::logic_error("table1_row: ODF identity violated");
    return row;
}

}  // namespace redsched
