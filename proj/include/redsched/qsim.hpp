#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "redsched/designkit.hpp"
#include "redsched/indicators.hpp"
#include "redsched/rng.hpp"

namespace redsched {

enum class LoadConvention { paper_rho, utilization };
enum class BlockSelection { cyclic, random };

const char* to_string(LoadConvention c);
const char* to_string(BlockSelection s);
std::optional<LoadConvention> load_convention_from_string(const std::string& s);
std::optional<BlockSelection> block_selection_from_string(const std::string& s);

// Full parameterization of one queuing experiment. Service times are
// 2-phase hyper-exponential with short mean fixed at 1: long jobs (mean
// q) arrive with probability p.
struct SimConfig {
    int n = 1;
    int d = 1;
    PolicyKind policy = PolicyKind::random;
    double q = 1.0;    // long/short mean service ratio, >= 1
    double p = 0.0;    // probability of a long job
    double load = 0.5; // in (0,1)
    LoadConvention load_convention = LoadConvention::utilization;
    long long jobs = 100000;   // measured jobs per replication
    long long warmup = -1;     // discarded leading jobs; -1 -> jobs/10
    int replications = 10;
    std::uint64_t seed = 1;
    BlockSelection block_selection = BlockSelection::cyclic;
    std::optional<IncidenceStructure> structure;  // required for bibd
    long long max_waiting = 200000;  // instability guard: waiting jobs cap
    bool parallel = true;

    long long warmup_resolved() const { return warmup >= 0 ? warmup : jobs / 10; }
    double mean_service() const { return 1.0 - p + p * q; }
    void validate() const;  // throws std::invalid_argument
};

// With probability p an Exp variate of mean q, else of mean 1.
double sample_service(double p, double q, Rng& rng);

struct ArrivalRates {
    double paper_rho_per_server = 0;  // load * (1 - p(1 - 1/q))
    double paper_rho_total = 0;       // n * the above
    double utilization_total = 0;     // load * n / E[S]
    double chosen_total = 0;          // per the configured convention
};

ArrivalRates arrival_rate_from_load(const SimConfig& cfg);

// Produces the block for each arrival (1-based arrival index kept
// internally). random: uniform d-subset; round_robin: the shift-by-d
// sequence; bibd: blocks cyclically or uniformly at random.
class BlockAssigner {
public:
    BlockAssigner(PolicyKind policy, int n, int d,
                  const IncidenceStructure* structure, BlockSelection selection);
    void next(Rng& rng, std::vector<int>& out);
    Block next_block(Rng& rng);  // convenience wrapper

private:
    PolicyKind policy_;
    int n_, d_;
    const IncidenceStructure* structure_;
    BlockSelection selection_;
    long long arrival_ = 0;
    std::vector<int> perm_;
};

struct SimResult {
    std::vector<double> rep_mean_waits;
    double mean_wait = 0;
    double std_error = 0;
    double ci95_lo = 0, ci95_hi = 0;
    long long measured_jobs = 0;
    double realized_arrival_rate = 0;  // arrivals / elapsed, averaged over reps
    ArrivalRates rates;
    bool unstable = false;
    std::string diagnostic;
    SimConfig config;
};

// Event-driven simulation of the n-server cancel-on-start redundancy
// queue. Each arrival samples one service time and one block; a job with
// an idle assigned server starts there immediately (lowest index wins),
// otherwise it joins all d FCFS queues and the first server to reach it
// serves it while the other copies become tombstones. Simultaneous
// events process departures before arrivals, lower server index first.
// Bit-identical for a fixed config, regardless of thread count.
SimResult simulate(const SimConfig& cfg, std::ostream* event_log = nullptr);

// Student-t 97.5% quantile used for the replication CI.
double t_quantile_975(int df);

}  // namespace redsched
