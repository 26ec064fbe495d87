#include "redsched/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace redsched {

const char* to_string(LoadConvention c) {
    return c == LoadConvention::paper_rho ? "paper_rho" : "utilization";
}

const char* to_string(BlockSelection s) {
    return s == BlockSelection::cyclic ? "cyclic" : "random";
}

std::optional<LoadConvention> load_convention_from_string(const std::string& s) {
    if (s == "paper_rho") return LoadConvention::paper_rho;
    if (s == "utilization") return LoadConvention::utilization;
    return std::nullopt;
}

std::optional<BlockSelection> block_selection_from_string(const std::string& s) {
    if (s == "cyclic") return BlockSelection::cyclic;
    if (s == "random") return BlockSelection::random;
    return std::nullopt;
}

void SimConfig::validate() const {
    if (n < 1 || d < 1 || d > n)
        throw std::invalid_argument("simulate requires 1 <= d <= n");
    if (!(q >= 1.0)) throw std::invalid_argument("q must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0,1]");
    if (!(load > 0.0 && load < 1.0))
        throw std::invalid_argument("load must lie in (0,1), the stability region");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (policy == PolicyKind::bibd) {
        if (static_cast<long long>(d) * (d - 1) + 1 != n)
            throw std::invalid_argument("bibd policy requires n = d(d-1)+1 (got n=" +
                                        std::to_string(n) + ", d=" + std::to_string(d) + ")");
        if (!structure)
            throw std::invalid_argument("bibd policy requires an incidence structure");
        if (structure->n != n || structure->d != d)
            throw std::invalid_argument("bibd structure does not match (n,d)");
        if (!verify_design(*structure, 1).valid)
            throw std::invalid_argument("bibd policy requires a verified (n,d,1) design");
    }
}

double sample_service(double p, double q, Rng& rng) {
    double mean = uniform_double(rng) < p ? q : 1.0;
    return exp_variate(rng, mean);
}

ArrivalRates arrival_rate_from_load(const SimConfig& cfg) {
    ArrivalRates r;
    double mu = 1.0 - cfg.p * (1.0 - 1.0 / cfg.q);  // the mixture of rates
    r.paper_rho_per_server = cfg.load * mu;
    r.paper_rho_total = r.paper_rho_per_server * cfg.n;
    r.utilization_total = cfg.load * cfg.n / cfg.mean_service();
    r.chosen_total = cfg.load_convention == LoadConvention::paper_rho
                         ? r.paper_rho_total
                         : r.utilization_total;
    return r;
}

BlockAssigner::BlockAssigner(PolicyKind policy, int n, int d,
                             const IncidenceStructure* structure, BlockSelection selection)
    : policy_(policy), n_(n), d_(d), structure_(structure), selection_(selection) {
    if (policy_ == PolicyKind::random) {
        perm_.resize(static_cast<size_t>(n));
        std::iota(perm_.begin(), perm_.end(), 0);
    }
    if (policy_ == PolicyKind::bibd && structure_ == nullptr)
        throw std::invalid_argument("bibd assigner needs a structure");
}

void BlockAssigner::next(Rng& rng, std::vector<int>& out) {
    ++arrival_;
    out.resize(static_cast<size_t>(d_));
    switch (policy_) {
        case PolicyKind::random:
            for (int j = 0; j < d_; ++j) {
                int r = j + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_ - j)));
                std::swap(perm_[static_cast<size_t>(j)], perm_[static_cast<size_t>(r)]);
                out[static_cast<size_t>(j)] = perm_[static_cast<size_t>(j)];
            }
            break;
        case PolicyKind::round_robin: {
            Block blk = round_robin_assignment(arrival_, n_, d_);
            std::copy(blk.members.begin(), blk.members.end(), out.begin());
            break;
        }
        case PolicyKind::bibd: {
            size_t idx;
            if (selection_ == BlockSelection::cyclic)
                idx = static_cast<size_t>((arrival_ - 1) % structure_->b());
            else
                idx = static_cast<size_t>(uniform_below(rng, static_cast<std::uint64_t>(structure_->b())));
            const Block& blk = structure_->blocks[idx];
            std::copy(blk.members.begin(), blk.members.end(), out.begin());
            break;
        }
    }
}

Block BlockAssigner::next_block(Rng& rng) {
    Block b;
    next(rng, b.members);
    return b;
}

double t_quantile_975(int df) {
    static const double table[] = {
        12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
        2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
        2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
    if (df < 1) return 0.0;
    if (df <= 30) return table[df - 1];
    return 1.960;
}

namespace {

constexpr double kIdle = std::numeric_limits<double>::infinity();

struct RepOutcome {
    double mean_wait = 0;
    double realized_rate = 0;
    bool unstable = false;
    long long arrivals = 0;
};

RepOutcome run_replication(const SimConfig& cfg, double total_rate,
                           std::uint64_t stream_seed, std::ostream* elog) {
    const int n = cfg.n, d = cfg.d;
    const long long measured_lo = cfg.warmup_resolved();
    const long long measured_hi = measured_lo + cfg.jobs;

    Rng rng(stream_seed);
    BlockAssigner assigner(cfg.policy, n, d,
                           cfg.structure ? &*cfg.structure : nullptr, cfg.block_selection);

    std::vector<double> busy_until(static_cast<size_t>(n), kIdle);
    std::vector<std::int64_t> serving(static_cast<size_t>(n), -1);
    std::vector<std::deque<std::uint32_t>> queues(static_cast<size_t>(n));

    std::vector<double> arrival, service;
    std::vector<std::uint8_t> started;
    std::vector<std::int32_t> block_flat;
    arrival.reserve(static_cast<size_t>(measured_hi) + 1024);
    service.reserve(static_cast<size_t>(measured_hi) + 1024);
    started.reserve(static_cast<size_t>(measured_hi) + 1024);
    block_flat.reserve((static_cast<size_t>(measured_hi) + 1024) * static_cast<size_t>(d));

    long long arrived = 0, started_total = 0, started_measured = 0;
    double sum_wait = 0, last_time = 0;
    double next_arrival = exp_variate(rng, 1.0 / total_rate);
    std::vector<int> blk(static_cast<size_t>(d));
    RepOutcome out;

    auto start_job = [&](std::uint32_t j, int s, double t) {
        started[j] = 1;
        ++started_total;
        serving[static_cast<size_t>(s)] = j;
        busy_until[static_cast<size_t>(s)] = t + service[j];
        if (j >= measured_lo && j < measured_hi) {
            sum_wait += t - arrival[j];
            ++started_measured;
        }
        if (elog) *elog << t << ",start," << j << ',' << s << '\n';
    };

    while (started_measured < cfg.jobs) {
        int dep_server = -1;
        double dep_time = kIdle;
        for (int s = 0; s < n; ++s)
            if (busy_until[static_cast<size_t>(s)] < dep_time) {
                dep_time = busy_until[static_cast<size_t>(s)];
                dep_server = s;
            }

        if (dep_server >= 0 && dep_time <= next_arrival) {
            // departure; ties with arrivals resolve in favor of departures
            last_time = dep_time;
            if (elog)
                *elog << dep_time << ",depart," << serving[static_cast<size_t>(dep_server)]
                      << ',' << dep_server << '\n';
            busy_until[static_cast<size_t>(dep_server)] = kIdle;
            serving[static_cast<size_t>(dep_server)] = -1;
            auto& q = queues[static_cast<size_t>(dep_server)];
            while (!q.empty()) {
                std::uint32_t j = q.front();
                q.pop_front();
                if (started[j]) continue;  // cancelled copy (tombstone)
                start_job(j, dep_server, dep_time);
                break;
            }
        } else {
            double t = next_arrival;
            last_time = t;
            std::uint32_t id = static_cast<std::uint32_t>(arrived++);
            double svc = sample_service(cfg.p, cfg.q, rng);
            assigner.next(rng, blk);
            arrival.push_back(t);
            service.push_back(svc);
            started.push_back(0);
            block_flat.insert(block_flat.end(), blk.begin(), blk.end());
            if (elog) *elog << t << ",arrive," << id << ",-1\n";

            int idle = -1;  // lowest-indexed idle assigned server
            for (int m : blk)
                if (busy_until[static_cast<size_t>(m)] == kIdle && (idle < 0 || m < idle))
                    idle = m;
            if (idle >= 0) {
                start_job(id, idle, t);
            } else {
                for (int m : blk) queues[static_cast<size_t>(m)].push_back(id);
            }
            next_arrival = t + exp_variate(rng, 1.0 / total_rate);

            if (arrived - started_total > cfg.max_waiting) {
                out.unstable = true;
                break;
            }
        }
    }

    out.arrivals = arrived;
    out.realized_rate = last_time > 0 ? static_cast<double>(arrived) / last_time : 0.0;
    out.mean_wait = out.unstable ? std::numeric_limits<double>::quiet_NaN()
                                 : sum_wait / static_cast<double>(cfg.jobs);
    return out;
}

}  // namespace

SimResult simulate(const SimConfig& cfg, std::ostream* event_log) {
    cfg.validate();
    if (event_log && cfg.replications != 1)
        throw std::invalid_argument("event logging requires replications == 1");

    SimResult res;
    res.config = cfg;
    res.rates = arrival_rate_from_load(cfg);
    const double total_rate = res.rates.chosen_total;
    if (event_log) event_log->precision(17);

    std::vector<RepOutcome> reps(static_cast<size_t>(cfg.replications));
#ifdef REDSCHED_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (cfg.parallel && event_log == nullptr)
#endif
    for (int r = 0; r < cfg.replications; ++r)
        reps[static_cast<size_t>(r)] = run_replication(
            cfg, total_rate, derive_stream_seed(cfg.seed, static_cast<std::uint64_t>(r)),
            event_log);

    double rate_sum = 0;
    for (int r = 0; r < cfg.replications; ++r) {
        const RepOutcome& o = reps[static_cast<size_t>(r)];
        if (o.unstable) {
            res.unstable = true;
            res.diagnostic = "replication " + std::to_string(r) + " exceeded " +
                             std::to_string(cfg.max_waiting) +
                             " waiting jobs (offered load too high for this policy)";
        }
        res.rep_mean_waits.push_back(o.mean_wait);
        rate_sum += o.realized_rate;
    }
    res.realized_arrival_rate = rate_sum / cfg.replications;
    res.measured_jobs = static_cast<long long>(cfg.jobs) * cfg.replications;

    if (res.unstable) {
        res.mean_wait = std::numeric_limits<double>::quiet_NaN();
        return res;
    }

    double mean = std::accumulate(res.rep_mean_waits.begin(), res.rep_mean_waits.end(), 0.0) /
                  cfg.replications;
    double se = 0;
    if (cfg.replications > 1) {
        double ss = 0;
        for (double w : res.rep_mean_waits) ss += (w - mean) * (w - mean);
        se = std::sqrt(ss / (cfg.replications - 1)) /
             std::sqrt(static_cast<double>(cfg.replications));
    }
    double t = t_quantile_975(cfg.replications - 1);
    res.mean_wait = mean;
    res.std_error = se;
    res.ci95_lo = mean - t * se;
    res.ci95_hi = mean + t * se;
    return res;
}

}  // namespace redsched
