#include "redsched/xcli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "redsched/occupancy.hpp"
#include "redsched/spectral.hpp"

namespace redsched {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

Cell num(double v) { return {fmt_double(v), false}; }
Cell num(long long v) { return {std::to_string(v), false}; }
Cell num(int v) { return {std::to_string(v), false}; }
Cell num(std::uint64_t v) { return {std::to_string(v), false}; }
Cell str(const std::string& s) { return {s, true}; }

}  // namespace

std::string to_csv(const Table& t) {
    std::ostringstream out;
    for (size_t i = 0; i < t.header.size(); ++i)
        out << (i ? "," : "") << t.header[i];
    out << '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i].text;
        out << '\n';
    }
    return out.str();
}

std::string to_json(const Table& t) {
    std::ostringstream out;
    out << "[\n";
    for (size_t r = 0; r < t.rows.size(); ++r) {
        out << "  {";
        for (size_t i = 0; i < t.rows[r].size(); ++i) {
            const Cell& c = t.rows[r][i];
            out << (i ? "," : "") << "\"" << t.header[i] << "\":";
            if (c.quoted || c.text == "nan" || c.text == "inf" || c.text == "-inf")
                out << "\"" << c.text << "\"";
            else
                out << c.text;
        }
        out << "}" << (r + 1 < t.rows.size() ? "," : "") << "\n";
    }
    out << "]\n";
    return out.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        rows.push_back(std::move(fields));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// simulate config files

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        if (token.empty() || token[0] == '#') {
            std::getline(in, token);  // drop the rest of a comment line
            continue;
        }
        size_t eq = token.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("config: expected key=value, got '" + token + "'");
        kv[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return kv;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

long long parse_ll(const std::string& key, const std::string& v) {
    size_t pos = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &pos);
    } catch (...) {
        pos = 0;
    }
    if (pos != v.size())
        throw std::invalid_argument("config key '" + key + "': expected integer, got '" + v + "'");
    return x;
}

double parse_d(const std::string& key, const std::string& v) {
    size_t pos = 0;
    double x = 0;
    try {
        x = std::stod(v, &pos);
    } catch (...) {
        pos = 0;
    }
    if (pos != v.size())
        throw std::invalid_argument("config key '" + key + "': expected number, got '" + v + "'");
    return x;
}

}  // namespace

void apply_config(SimulateSpec& spec, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "policy") {
            auto p = policy_from_string(value);
            if (!p)
                throw std::invalid_argument("config key 'policy': unknown policy '" + value + "'");
            spec.base.policy = *p;
        } else if (key == "n") {
            spec.base.n = static_cast<int>(parse_ll(key, value));
        } else if (key == "d") {
            spec.base.d = static_cast<int>(parse_ll(key, value));
        } else if (key == "q") {
            spec.base.q = parse_d(key, value);
        } else if (key == "p") {
            spec.base.p = parse_d(key, value);
        } else if (key == "load") {
            spec.loads.clear();
            std::istringstream ls(value);
            std::string item;
            while (std::getline(ls, item, ','))
                spec.loads.push_back(parse_d(key, item));
            if (spec.loads.empty())
                throw std::invalid_argument("config key 'load': empty list");
        } else if (key == "load_convention") {
            auto c = load_convention_from_string(value);
            if (!c)
                throw std::invalid_argument("config key 'load_convention': expected paper_rho or utilization, got '" +
                                            value + "'");
            spec.base.load_convention = *c;
        } else if (key == "jobs") {
            spec.base.jobs = parse_ll(key, value);
        } else if (key == "warmup") {
            spec.base.warmup = parse_ll(key, value);
        } else if (key == "reps") {
            spec.base.replications = static_cast<int>(parse_ll(key, value));
        } else if (key == "seed") {
            spec.base.seed = static_cast<std::uint64_t>(parse_ll(key, value));
        } else if (key == "block_selection") {
            auto s = block_selection_from_string(value);
            if (!s)
                throw std::invalid_argument("config key 'block_selection': expected cyclic or random, got '" +
                                            value + "'");
            spec.base.block_selection = *s;
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
}

std::string emit_config(const SimulateSpec& spec) {
    std::ostringstream out;
    out << "policy=" << to_string(spec.base.policy) << '\n';
    out << "n=" << spec.base.n << '\n';
    out << "d=" << spec.base.d << '\n';
    out << "q=" << fmt_double(spec.base.q) << '\n';
    out << "p=" << fmt_double(spec.base.p) << '\n';
    out << "load=";
    for (size_t i = 0; i < spec.loads.size(); ++i)
        out << (i ? "," : "") << fmt_double(spec.loads[i]);
    out << '\n';
    out << "load_convention=" << to_string(spec.base.load_convention) << '\n';
    out << "jobs=" << spec.base.jobs << '\n';
    out << "warmup=" << spec.base.warmup_resolved() << '\n';
    out << "reps=" << spec.base.replications << '\n';
    out << "seed=" << spec.base.seed << '\n';
    out << "block_selection=" << to_string(spec.base.block_selection) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// table builders

Table build_indicators_table(const std::vector<int>& ds, const std::vector<int>& ns,
                             long long T) {
    if (!ns.empty() && ns.size() != ds.size())
        throw std::invalid_argument("--n list must match --d list length");
    Table t;
    t.header = {"policy", "n", "d", "lbf", "aof", "odf", "e_o", "e_o2"};
    for (size_t i = 0; i < ds.size(); ++i) {
        int d = ds[i];
        int n = ns.empty() ? d * (d - 1) + 1 : ns[i];
        bool bibd_ok = static_cast<long long>(d) * (d - 1) + 1 == n;
        std::vector<PolicyKind> policies{PolicyKind::random, PolicyKind::round_robin};
        if (bibd_ok) policies.push_back(PolicyKind::bibd);
        for (PolicyKind pk : policies) {
            Rat a = aof(pk, n, d), o = odf(pk, n, d);
            t.rows.push_back({str(to_string(pk)), num(n), num(d), num(lbf(pk, n, d, T)),
                              num(a.value()), num(o.value()),
                              num(a.reciprocal().value()), num(o.reciprocal().value())});
        }
    }
    return t;
}

Table build_occupancy_table(PolicyKind policy, int n, int d, long long T, int reps,
                            std::uint64_t seed, long long pair_budget, bool parallel) {
    std::optional<IncidenceStructure> structure;
    if (policy == PolicyKind::bibd) {
        if (static_cast<long long>(d) * (d - 1) + 1 != n)
            throw std::invalid_argument("bibd occupancy requires n = d(d-1)+1");
        structure = known_bibd(d);
    }
    EmpiricalIndicators e = empirical_indicators(policy, n, d, T, reps, seed,
                                                 structure ? &*structure : nullptr,
                                                 pair_budget, parallel);
    Table t;
    t.header = {"policy", "n",   "d",    "T",        "reps",   "mean_min", "mean_max",
                "lbf_hat", "e_o", "e_o2", "se_e_o", "se_e_o2", "seed"};
    t.rows.push_back({str(to_string(policy)), num(n), num(d), num(T), num(reps),
                      num(e.mean_min), num(e.mean_max), num(e.lbf_hat), num(e.e_o),
                      num(e.e_o2), num(e.se_e_o), num(e.se_e_o2), num(seed)});
    return t;
}

namespace {

std::vector<Cell> spectral_row(const std::string& kind, const IncidenceStructure& m,
                               int d, double closed) {
    SpectralReport rep = spectral_gap(m, d);
    return {str(kind),           num(m.n),      num(d),
            num(rep.lambda2),    num(rep.gap),  num(closed),
            num(std::abs(rep.gap - closed))};
}

const std::vector<std::string> kSpectralHeader = {
    "structure", "n", "d", "lambda2", "gap", "closed_form_gap", "abs_error"};

}  // namespace

Table build_spectral_row(const std::string& structure_kind, int n, int d) {
    Table t;
    t.header = kSpectralHeader;
    if (structure_kind == "circulant") {
        t.rows.push_back(spectral_row("circulant", circulant_incidence(n, d), d,
                                      rr_gap_closed_form(n, d)));
    } else if (structure_kind == "bibd") {
        t.rows.push_back(spectral_row("bibd", known_bibd(d), d, bibd_gap_closed_form(d)));
    } else if (structure_kind == "fano") {
        t.rows.push_back(spectral_row("fano", fano_blocks(), 3, bibd_gap_closed_form(3)));
    } else {
        throw std::invalid_argument("unknown structure kind '" + structure_kind +
                                    "' (expected circulant, bibd or fano)");
    }
    return t;
}

Table build_spectral_sweep(int dmax) {
    if (dmax < 2) throw std::invalid_argument("--dmax must be >= 2");
    Table t;
    t.header = kSpectralHeader;
    for (int d = 2; d <= dmax; ++d) {
        int n = d * (d - 1) + 1;
        t.rows.push_back(spectral_row("circulant", circulant_incidence(n, d), d,
                                      rr_gap_closed_form(n, d)));
        if (bibd_order_supported(d))
            t.rows.push_back(spectral_row("bibd", known_bibd(d), d, bibd_gap_closed_form(d)));
    }
    return t;
}

bool build_simulate_table(const SimulateSpec& spec, Table& out) {
    out.header = {"policy", "n", "d", "q", "p", "load", "load_convention", "lambda_total",
                  "reps", "jobs", "warmup", "mean_wait", "stderr", "ci95_lo", "ci95_hi",
                  "seed"};
    bool all_stable = true;
    for (double load : spec.loads) {
        SimConfig cfg = spec.base;
        cfg.load = load;
        if (cfg.policy == PolicyKind::bibd && !cfg.structure) {
            if (static_cast<long long>(cfg.d) * (cfg.d - 1) + 1 != cfg.n)
                throw std::invalid_argument("bibd policy requires n = d(d-1)+1 (got n=" +
                                            std::to_string(cfg.n) + ", d=" +
                                            std::to_string(cfg.d) + ")");
            cfg.structure = known_bibd(cfg.d);
        }
        SimResult res = simulate(cfg);
        out.rows.push_back({str(to_string(cfg.policy)), num(cfg.n), num(cfg.d), num(cfg.q),
                            num(cfg.p), num(load), str(to_string(cfg.load_convention)),
                            num(res.rates.chosen_total), num(cfg.replications), num(cfg.jobs),
                            num(cfg.warmup_resolved()), num(res.mean_wait), num(res.std_error),
                            num(res.ci95_lo), num(res.ci95_hi), num(cfg.seed)});
        if (res.unstable) {
            std::cerr << "instability: " << res.diagnostic << "\n";
            all_stable = false;
        }
    }
    return all_stable;
}

// ---------------------------------------------------------------------------
// reproduction presets

namespace {

const std::vector<double> kFigLoads = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
constexpr long long kFigJobs = 50000;
constexpr int kFigReps = 10;
constexpr long long kBallExperimentT = 50;
constexpr int kBallExperimentReps = 2000;
const std::vector<int> kBallExperimentN = {13, 21, 31};

Table reproduce_ball_experiment(bool lbf_view, std::uint64_t seed) {
    Table t;
    if (lbf_view)
        t.header = {"n", "d", "T", "reps", "lbf_hat", "lbf_approx", "seed"};
    else
        t.header = {"n", "d", "T", "reps", "mean_max", "mean_min", "approx_max",
                    "approx_min", "seed"};
    for (int n : kBallExperimentN)
        for (int d = 2; d <= 8; ++d) {
            EmpiricalIndicators e =
                empirical_indicators(PolicyKind::random, n, d, kBallExperimentT,
                                     kBallExperimentReps, seed);
            ExtremeLoadApprox a = extreme_loads(n, d, kBallExperimentT);
            if (lbf_view)
                t.rows.push_back({num(n), num(d), num(kBallExperimentT),
                                  num(kBallExperimentReps), num(e.lbf_hat),
                                  num(lbf_random_approx(n, d, kBallExperimentT)), num(seed)});
            else
                t.rows.push_back({num(n), num(d), num(kBallExperimentT),
                                  num(kBallExperimentReps), num(e.mean_max), num(e.mean_min),
                                  num(a.mean_max), num(a.mean_min), num(seed)});
        }
    return t;
}

Table reproduce_simulation_figure(int n, int d, double q, double p, std::uint64_t seed,
                                  bool& unstable) {
    SimulateSpec spec;
    spec.base.n = n;
    spec.base.d = d;
    spec.base.q = q;
    spec.base.p = p;
    spec.base.jobs = kFigJobs;
    spec.base.replications = kFigReps;
    spec.base.seed = seed;
    spec.loads = kFigLoads;
    Table t;
    t.header = {};
    Table merged;
    bool stable_all = true;
    for (PolicyKind pk : {PolicyKind::random, PolicyKind::round_robin, PolicyKind::bibd}) {
        SimulateSpec s = spec;
        s.base.policy = pk;
        Table part;
        stable_all = build_simulate_table(s, part) && stable_all;
        if (merged.header.empty()) merged.header = part.header;
        for (auto& row : part.rows) merged.rows.push_back(std::move(row));
    }
    unstable = !stable_all;
    return merged;
}

}  // namespace

Table reproduce_target(const std::string& target, const std::vector<int>& table1_d,
                       int dmax, std::uint64_t seed, bool& unstable) {
    unstable = false;
    if (target == "table1") {
        Table t;
        t.header = {"policy", "n", "d", "lbf", "aof", "odf", "e_o", "e_o2"};
        for (int d : table1_d) {
            auto row = table1_row(d, kBallExperimentT);
            for (const auto& [pk, ind] : row)
                t.rows.push_back({str(to_string(pk)), num(d * (d - 1) + 1), num(d),
                                  num(ind.lbf), num(ind.aof.value()), num(ind.odf.value()),
                                  num(ind.first_moment.value()),
                                  num(ind.second_moment.value())});
        }
        return t;
    }
    if (target == "fig3") return reproduce_ball_experiment(false, seed);
    if (target == "fig4") return reproduce_ball_experiment(true, seed);
    if (target == "fig6") {
        std::vector<int> ds;
        for (int d = 2; d <= dmax; ++d) ds.push_back(d);
        return build_indicators_table(ds, {}, kBallExperimentT);
    }
    if (target == "fig7") return build_spectral_sweep(dmax);
    if (target == "fig8") return reproduce_simulation_figure(13, 4, 10, 0.1, seed, unstable);
    if (target == "fig9") return reproduce_simulation_figure(21, 5, 10, 0.1, seed, unstable);
    if (target == "fig10") return reproduce_simulation_figure(21, 5, 50, 0.1, seed, unstable);
    if (target == "fig11") return reproduce_simulation_figure(21, 5, 50, 0.5, seed, unstable);
    throw std::invalid_argument(
        "unknown reproduce target '" + target +
        "' (expected table1, fig3, fig4, fig6, fig7, fig8, fig9, fig10 or fig11)");
}

// ---------------------------------------------------------------------------
// entry point

namespace {

void write_output(const Table& t, const std::string& out_path, const std::string& format,
                  bool quiet, const std::string& what) {
    std::string payload = format == "json" ? to_json(t) : to_csv(t);
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write to '" + out_path + "'");
        out << payload;
    }
    if (!quiet)
        std::cerr << what << ": " << t.rows.size() << " row(s) -> "
                  << (out_path.empty() ? "<stdout>" : out_path) << "\n";
}

}  // namespace

int run_main(int argc, const char* const* argv) {
    CLI::App app{"redsched - nonadaptive redundancy scheduling laboratory"};
    app.require_subcommand(1);
    app.fallthrough(true);

    std::string out_path;
    std::string format = "csv";
    bool quiet = false;
    std::uint64_t seed = 1;
    app.add_option("--out", out_path, "write the output table to this file (default stdout)");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--quiet", quiet, "suppress the summary line");
    app.add_option("--seed", seed, "master seed for randomized subcommands");

    // indicators
    auto* ind = app.add_subcommand("indicators", "closed-form LBF/AOF/ODF table");
    std::vector<int> ind_d;
    std::vector<int> ind_n;
    long long ind_T = 50;
    ind->add_option("--d", ind_d, "block sizes")->required();
    ind->add_option("--n", ind_n, "server counts; default d(d-1)+1 per entry");
    ind->add_option("--T", ind_T, "balls for the random-policy LBF approximation");

    // occupancy
    auto* occ = app.add_subcommand("occupancy", "urns-and-balls experiment");
    std::string occ_policy = "random";
    int occ_n = 13, occ_d = 4, occ_reps = 20;
    long long occ_T = 50, occ_budget = kDefaultPairBudget;
    bool occ_serial = false;
    occ->add_option("--policy", occ_policy, "random, round_robin or bibd");
    occ->add_option("--n", occ_n, "urns");
    occ->add_option("--d", occ_d, "copies per ball");
    occ->add_option("--T", occ_T, "balls");
    occ->add_option("--reps", occ_reps, "replications");
    occ->add_option("--pair-budget", occ_budget, "max enumerated ball pairs");
    occ->add_flag("--serial", occ_serial, "disable parallel replications");

    // spectral
    auto* spec = app.add_subcommand("spectral", "incidence spectra and gaps");
    std::string sp_structure;
    int sp_n = 0, sp_d = 0, sp_dmax = 0;
    spec->add_option("--structure", sp_structure, "circulant, bibd or fano");
    spec->add_option("--n", sp_n, "objects (circulant)");
    spec->add_option("--d", sp_d, "block size");
    spec->add_option("--dmax", sp_dmax, "sweep d=2..dmax at n=d(d-1)+1");

    // simulate
    auto* sim = app.add_subcommand("simulate", "cancel-on-start redundancy queue");
    SimulateSpec sspec;
    std::string sim_policy = "random", sim_convention = "utilization",
                sim_selection = "cyclic", sim_config, sim_emit, sim_event_log;
    bool sim_serial = false;
    sim->add_option("--policy", sim_policy, "random, round_robin or bibd");
    auto* o_n = sim->add_option("--n", sspec.base.n, "servers");
    auto* o_d = sim->add_option("--d", sspec.base.d, "copies per job");
    auto* o_q = sim->add_option("--q", sspec.base.q, "long/short mean service ratio");
    auto* o_p = sim->add_option("--p", sspec.base.p, "probability of a long job");
    auto* o_load = sim->add_option("--load", sspec.loads, "offered load grid, each in (0,1)");
    sim->add_option("--load-convention", sim_convention, "paper_rho or utilization");
    auto* o_jobs = sim->add_option("--jobs", sspec.base.jobs, "measured jobs per replication");
    auto* o_warm = sim->add_option("--warmup", sspec.base.warmup, "discarded leading jobs");
    auto* o_reps = sim->add_option("--reps", sspec.base.replications, "replications");
    sim->add_option("--block-selection", sim_selection, "cyclic or random (bibd)");
    sim->add_option("--max-waiting", sspec.base.max_waiting, "instability cap on waiting jobs");
    sim->add_option("--config", sim_config, "key=value config file; flags override");
    sim->add_option("--emit-config", sim_emit, "write the effective config here");
    sim->add_option("--event-log", sim_event_log, "debug event log (needs --reps 1)");
    sim->add_flag("--serial", sim_serial, "disable parallel replications");

    // reproduce
    auto* rep = app.add_subcommand("reproduce", "pinned experiment presets");
    std::string rep_target;
    std::vector<int> rep_d = {3, 4, 5};
    int rep_dmax = 8;
    rep->add_option("target", rep_target,
                    "table1, fig3, fig4, fig6, fig7, fig8, fig9, fig10 or fig11")
        ->required();
    rep->add_option("--d", rep_d, "block sizes (table1)");
    rep->add_option("--dmax", rep_dmax, "sweep bound (fig6, fig7)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*ind) {
            write_output(build_indicators_table(ind_d, ind_n, ind_T), out_path, format,
                         quiet, "indicators");
        } else if (*occ) {
            auto pk = policy_from_string(occ_policy);
            if (!pk) throw std::invalid_argument("unknown policy '" + occ_policy + "'");
            write_output(build_occupancy_table(*pk, occ_n, occ_d, occ_T, occ_reps, seed,
                                               occ_budget, !occ_serial),
                         out_path, format, quiet, "occupancy");
        } else if (*spec) {
            Table t;
            if (sp_dmax > 0)
                t = build_spectral_sweep(sp_dmax);
            else if (!sp_structure.empty())
                t = build_spectral_row(sp_structure,
                                       sp_n > 0 ? sp_n : sp_d * (sp_d - 1) + 1, sp_d);
            else
                throw std::invalid_argument("spectral needs --structure or --dmax");
            write_output(t, out_path, format, quiet, "spectral");
        } else if (*sim) {
            // defaults, then config file, then explicit flags
            SimulateSpec effective;
            effective.base.seed = seed;
            if (!sim_config.empty()) apply_config(effective, parse_config_file(sim_config));
            if (sim->get_option("--policy")->count()) {
                auto pk = policy_from_string(sim_policy);
                if (!pk) throw std::invalid_argument("unknown policy '" + sim_policy + "'");
                effective.base.policy = *pk;
            }
            if (o_n->count()) effective.base.n = sspec.base.n;
            if (o_d->count()) effective.base.d = sspec.base.d;
            if (o_q->count()) effective.base.q = sspec.base.q;
            if (o_p->count()) effective.base.p = sspec.base.p;
            if (o_load->count()) effective.loads = sspec.loads;
            if (sim->get_option("--load-convention")->count()) {
                auto c = load_convention_from_string(sim_convention);
                if (!c)
                    throw std::invalid_argument("unknown load convention '" + sim_convention + "'");
                effective.base.load_convention = *c;
            }
            if (o_jobs->count()) effective.base.jobs = sspec.base.jobs;
            if (o_warm->count()) effective.base.warmup = sspec.base.warmup;
            if (o_reps->count()) effective.base.replications = sspec.base.replications;
            if (app.get_option("--seed")->count()) effective.base.seed = seed;
            if (sim->get_option("--block-selection")->count()) {
                auto s = block_selection_from_string(sim_selection);
                if (!s)
                    throw std::invalid_argument("unknown block selection '" + sim_selection + "'");
                effective.base.block_selection = *s;
            }
            if (sim->get_option("--max-waiting")->count())
                effective.base.max_waiting = sspec.base.max_waiting;
            effective.base.parallel = !sim_serial;

            if (effective.base.policy == PolicyKind::bibd && !effective.base.structure) {
                if (static_cast<long long>(effective.base.d) * (effective.base.d - 1) + 1 !=
                    effective.base.n)
                    throw std::invalid_argument(
                        "bibd policy requires n = d(d-1)+1 (got n=" +
                        std::to_string(effective.base.n) + ", d=" +
                        std::to_string(effective.base.d) + ")");
                effective.base.structure = known_bibd(effective.base.d);
            }
            {  // validate once per load in build; validate the first up front
                SimConfig probe = effective.base;
                probe.load = effective.loads.empty() ? 0.5 : effective.loads.front();
                probe.validate();
            }
            if (!sim_emit.empty()) {
                std::ofstream out(sim_emit, std::ios::binary);
                if (!out) throw std::invalid_argument("cannot write to '" + sim_emit + "'");
                out << emit_config(effective);
            }

            Table t;
            bool stable;
            if (!sim_event_log.empty()) {
                std::ofstream elog(sim_event_log, std::ios::binary);
                if (!elog) throw std::invalid_argument("cannot write to '" + sim_event_log + "'");
                if (effective.loads.size() != 1 || effective.base.replications != 1)
                    throw std::invalid_argument("--event-log needs one load and --reps 1");
                SimConfig cfg = effective.base;
                cfg.load = effective.loads[0];
                SimResult res = simulate(cfg, &elog);
                SimulateSpec one = effective;
                stable = !res.unstable;
                build_simulate_table(one, t);  // rerun for the table row (cheap, identical)
            } else {
                stable = build_simulate_table(effective, t);
            }
            write_output(t, out_path, format, quiet, "simulate");
            if (!stable) return 3;
        } else if (*rep) {
            bool unstable = false;
            Table t = reproduce_target(rep_target, rep_d, rep_dmax, seed, unstable);
            write_output(t, out_path, format, quiet, "reproduce " + rep_target);
            if (unstable) return 3;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace redsched
