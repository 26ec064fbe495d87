#pragma once

#include <map>
#include <string>
#include <vector>

#include "redsched/qsim.hpp"

namespace redsched {

// One output cell; `quoted` marks non-numeric values for JSON emission.
struct Cell {
    std::string text;
    bool quoted = false;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

// Parses CSV produced by to_csv (no quoting or embedded commas).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

std::string fmt_double(double v);  // %.12g

// Flat key=value config for the simulate subcommand. Keys mirror the
// result schema: policy,n,d,q,p,load,load_convention,jobs,warmup,reps,
// seed,block_selection. `load` takes a comma-separated list.
struct SimulateSpec {
    SimConfig base;
    std::vector<double> loads{0.5};
};

// Tokens are whitespace-separated key=value pairs. Unknown keys and
// unparseable values throw std::invalid_argument naming the key.
std::map<std::string, std::string> parse_config_file(const std::string& path);
std::map<std::string, std::string> parse_config_text(const std::string& text);
void apply_config(SimulateSpec& spec, const std::map<std::string, std::string>& kv);
std::string emit_config(const SimulateSpec& spec);

// Table builders behind the subcommands (usable directly from tests).
Table build_indicators_table(const std::vector<int>& ds, const std::vector<int>& ns,
                             long long T);
Table build_occupancy_table(PolicyKind policy, int n, int d, long long T, int reps,
                            std::uint64_t seed, long long pair_budget, bool parallel);
Table build_spectral_row(const std::string& structure_kind, int n, int d);
Table build_spectral_sweep(int dmax);
// Appends one row per load; returns true when every load stayed stable.
bool build_simulate_table(const SimulateSpec& spec, Table& out);
Table reproduce_target(const std::string& target, const std::vector<int>& table1_d,
                       int dmax, std::uint64_t seed, bool& unstable);

// Full CLI. Exit codes: 0 ok, 2 usage error, 3 instability abort.
int run_main(int argc, const char* const* argv);

}  // namespace redsched
