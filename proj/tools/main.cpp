// fbmshot command line front end: samplers, estimators, and experiment tables
// with seeded reproducibility and machine-readable output.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fbmshot/experiments.hpp"
#include "fbmshot/pathspace.hpp"

namespace {

using fbmshot::Table;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CommonOpts {
    double hurst = 0.5;
    double kappa = 1.0;
    double theta = 1.0;
    std::string law = "pareto";
    std::string neg_tail = "exp";
    std::string increments = "fgn";
    std::uint64_t n = 1024;
    std::uint64_t k = 64;
    std::uint64_t grid = 4096;
    std::uint64_t reps = 1000;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::string format = "csv";
    std::string out_path;
};

void add_output_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "master seed (64-bit); drawn from the OS when omitted");
    cmd->add_option("--threads", o.threads, "worker thread cap")->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out_path, "output file (default: stdout)");
}

void add_model_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--hurst", o.hurst, "Hurst index in (0, 1)");
    cmd->add_option("--kappa", o.kappa, "upper tail constant kappa");
    cmd->add_option("--theta", o.theta, "upper-tail weight for two-sided noise");
    cmd->add_option("--law", o.law, "perturbation law")
        ->check(CLI::IsMember({"pareto", "shifted", "two-sided"}));
    cmd->add_option("--neg-tail", o.neg_tail, "negative branch of two-sided noise")
        ->check(CLI::IsMember({"exp", "pareto"}));
    cmd->add_option("--increments", o.increments, "walk increment generator")
        ->check(CLI::IsMember({"fgn", "iid", "linear"}));
}

std::uint64_t resolve_seed(CommonOpts& o) {
    if (!o.seed) {
        std::random_device entropy;
        o.seed = (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
    }
    return *o.seed;
}

fbmshot::NoiseParams make_noise(const CommonOpts& o) {
    const fbmshot::Hurst h(o.hurst);
    if (o.law != "two-sided" && o.theta != 1.0) {
        throw std::invalid_argument("theta below 1 requires --law two-sided");
    }
    if (o.law == "pareto") return fbmshot::NoiseParams::pure_pareto(h, o.kappa);
    if (o.law == "shifted") return fbmshot::NoiseParams::shifted_pareto(h, o.kappa);
    if (!(o.theta > 0.0)) {
        throw std::invalid_argument("two-sided noise via --kappa requires theta > 0");
    }
    const auto tail = o.neg_tail == "exp" ? fbmshot::NegativeTail::Exponential
                                          : fbmshot::NegativeTail::Pareto;
    return fbmshot::NoiseParams::two_sided(h, o.kappa / o.theta, o.theta, tail);
}

fbmshot::WalkIncrements make_increments(const CommonOpts& o) {
    if (o.increments == "iid") return fbmshot::WalkIncrements::IidGaussian;
    if (o.increments == "linear") return fbmshot::WalkIncrements::LinearLongMemory;
    return fbmshot::WalkIncrements::Fgn;
}

// The thread cap is deliberately absent from the metadata: results are
// identical for any --threads value, and the emitted bytes must be too.
void base_meta(Table& t, const std::string& command, const CommonOpts& o) {
    t.meta["schema_version"] = "1";
    t.meta["command"] = command;
    t.meta["seed"] = std::to_string(*o.seed);
}

void model_meta(Table& t, const CommonOpts& o) {
    t.meta["hurst"] = format_real(o.hurst);
    t.meta["kappa"] = format_real(o.kappa);
    t.meta["theta"] = format_real(o.theta);
    t.meta["law"] = o.law;
    t.meta["neg_tail"] = o.neg_tail;
}

void emit(const Table& t, const CommonOpts& o) {
    std::ostringstream body;
    if (o.format == "csv") {
        for (const auto& [key, value] : t.meta) {
            body << "# " << key << "=" << value << "\n";
        }
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            body << (c ? "," : "") << t.columns[c];
        }
        body << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                body << (c ? "," : "") << format_real(row[c]);
            }
            body << "\n";
        }
    } else {
        nlohmann::json j;
        j["meta"] = t.meta;
        j["meta"]["columns"] = t.columns;
        j["rows"] = t.rows;
        body << j.dump(2) << "\n";
    }
    if (o.out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream file(o.out_path, std::ios::binary);
        if (!file) throw std::invalid_argument("cannot open output file " + o.out_path);
        file << body.str();
    }
}

std::vector<std::size_t> to_sizes(const std::vector<std::uint64_t>& v) {
    return {v.begin(), v.end()};
}

fbmshot::GridPath read_path_csv(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open path file " + file);
    std::vector<double> times, values;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // column header row
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("malformed path row in " + file);
        }
        times.push_back(std::stod(line.substr(0, comma)));
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (values.size() < 2) {
        throw std::invalid_argument("path file needs at least two rows: " + file);
    }
    const std::size_t n = values.size() - 1;
    for (std::size_t j = 0; j <= n; ++j) {
        const double expected = static_cast<double>(j) / static_cast<double>(n);
        if (std::abs(times[j] - expected) > 1e-9) {
            throw std::invalid_argument("path file is not on a uniform grid of [0, 1]: " +
                                        file);
        }
    }
    return fbmshot::GridPath(n, std::move(values));
}

fbmshot::ModelParams make_model(const CommonOpts& o) {
    fbmshot::ModelParams cfg;
    cfg.hurst = fbmshot::Hurst(o.hurst);
    cfg.noise = make_noise(o);
    cfg.increments = make_increments(o);
    cfg.limit_k = o.k;
    cfg.grid_points = o.grid;
    cfg.seed = *o.seed;
    cfg.threads = o.threads;
    return cfg;
}

int run_simulate(CommonOpts& o, const std::string& which) {
    const std::uint64_t seed = resolve_seed(o);
    Table t;
    t.columns = {"t", "value"};
    if (which == "discrete") {
        const fbmshot::WalkSpec spec(make_increments(o), fbmshot::Hurst(o.hurst), o.n);
        const fbmshot::PerturbedWalk w = simulate_walk(spec, make_noise(o), seed);
        const fbmshot::GridPath z =
            scaled_path(max_process(w), o.n, fbmshot::Hurst(o.hurst));
        for (std::size_t j = 0; j <= z.n_points; ++j) {
            t.rows.push_back({z.time_at(j), z.values[j]});
        }
        t.meta["n"] = std::to_string(o.n);
        t.meta["increments"] = o.increments;
    } else {
        const fbmshot::LimitPathSample draw =
            sample_limit_path(fbmshot::Hurst(o.hurst), o.kappa, o.k, o.grid, seed);
        for (std::size_t j = 0; j <= draw.path.n_points; ++j) {
            t.rows.push_back({draw.path.time_at(j), draw.path.values[j]});
        }
        t.meta["k"] = std::to_string(o.k);
        t.meta["grid_points"] = std::to_string(o.grid);
        t.meta["truncation_bound"] = format_real(draw.truncation_bound);
    }
    t.meta["which"] = which;
    base_meta(t, "simulate", o);
    model_meta(t, o);
    emit(t, o);
    return kExitOk;
}

int run_psi(CommonOpts& o, const std::vector<double>& xs) {
    const std::uint64_t seed = resolve_seed(o);
    const auto estimates = fbmshot::psi_curve(fbmshot::Hurst(o.hurst), o.kappa, xs,
                                              o.reps, o.grid, seed, o.threads);
    Table t;
    t.columns = {"x", "psi_hat", "std_error", "replicates", "grid_points"};
    for (const auto& e : estimates) {
        t.rows.push_back({e.x, e.value, e.std_error, static_cast<double>(e.replicates),
                          static_cast<double>(e.grid_points)});
    }
    base_meta(t, "psi", o);
    model_meta(t, o);
    t.meta["replicates"] = std::to_string(o.reps);
    t.meta["grid_points"] = std::to_string(o.grid);
    emit(t, o);
    return kExitOk;
}

int run_fdd(CommonOpts& o, const std::vector<double>& times,
            const std::vector<double>& thresholds) {
    const std::uint64_t seed = resolve_seed(o);
    const fbmshot::FddQuery query(times, thresholds);
    const fbmshot::FddEstimate est = fbmshot::fdd_estimate(
        fbmshot::Hurst(o.hurst), o.kappa, query, o.reps, o.grid, seed, o.threads);
    Table t;
    t.columns = {"value", "std_error", "replicates", "grid_points"};
    t.rows.push_back({est.value, est.std_error, static_cast<double>(est.replicates),
                      static_cast<double>(o.grid)});
    base_meta(t, "fdd", o);
    model_meta(t, o);
    std::string ts, xs;
    for (std::size_t i = 0; i < times.size(); ++i) {
        ts += (i ? ";" : "") + format_real(times[i]);
        xs += (i ? ";" : "") + format_real(thresholds[i]);
    }
    t.meta["times"] = ts;
    t.meta["thresholds"] = xs;
    emit(t, o);
    return kExitOk;
}

int run_converge(CommonOpts& o, const std::vector<std::uint64_t>& n_list, bool marginals) {
    const std::uint64_t seed = resolve_seed(o);
    Table t = fbmshot::convergence_experiment(make_model(o), to_sizes(n_list), o.reps,
                                              seed, marginals);
    base_meta(t, "converge", o);
    model_meta(t, o);
    t.meta["k"] = std::to_string(o.k);
    t.meta["grid_points"] = std::to_string(o.grid);
    emit(t, o);
    return kExitOk;
}

int run_lepage(CommonOpts& o, std::uint64_t ranks) {
    const std::uint64_t seed = resolve_seed(o);
    Table t = fbmshot::lepage_check(make_model(o), o.n, ranks, o.reps, seed);
    base_meta(t, "lepage", o);
    model_meta(t, o);
    t.meta["n"] = std::to_string(o.n);
    emit(t, o);
    return kExitOk;
}

int run_sandwich(CommonOpts& o, const std::vector<std::uint64_t>& n_list) {
    const std::uint64_t seed = resolve_seed(o);
    Table t = fbmshot::sandwich_experiment(make_model(o), to_sizes(n_list), o.reps, seed);
    base_meta(t, "sandwich", o);
    model_meta(t, o);
    emit(t, o);
    return kExitOk;
}

int run_pathdist(CommonOpts& o, const std::string& file1, const std::string& file2,
                 double a, double b) {
    o.seed = o.seed.value_or(0);  // no randomness involved
    const fbmshot::GridPath x = read_path_csv(file1);
    const fbmshot::GridPath y = read_path_csv(file2);
    const auto [xr, yr] = fbmshot::resample_to_common_grid(x, y);
    Table t;
    t.columns = {"j1_distance", "sup_distance", "grid_points", "a", "b"};
    t.rows.push_back({fbmshot::skorohod_j1(xr, yr, a, b),
                      fbmshot::sup_distance(xr, yr, a, b),
                      static_cast<double>(xr.n_points), a, b});
    base_meta(t, "pathdist", o);
    emit(t, o);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation and verification toolkit for maximum processes of "
                 "heavy-tail perturbed random walks and their shot-noise limits"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* simulate = app.add_subcommand("simulate", "emit one sampled path");
    std::string which = "discrete";
    simulate->add_option("--which", which, "discrete walk path or limit process path")
        ->check(CLI::IsMember({"discrete", "limit"}));
    simulate->add_option("--n", o.n, "walk length")->check(CLI::PositiveNumber);
    simulate->add_option("--k", o.k, "shot-noise truncation");
    simulate->add_option("--grid", o.grid, "limit path grid points")
        ->check(CLI::PositiveNumber);
    add_model_options(simulate, o);
    add_output_options(simulate, o);

    auto* psi = app.add_subcommand("psi", "estimate the marginal CDF of Z_1");
    std::vector<double> psi_x;
    psi->add_option("--x", psi_x, "thresholds to evaluate")
        ->required()
        ->delimiter(',');
    psi->add_option("--reps", o.reps, "replicates")->check(CLI::PositiveNumber);
    psi->add_option("--grid", o.grid, "grid points")->check(CLI::PositiveNumber);
    add_model_options(psi, o);
    add_output_options(psi, o);

    auto* fdd = app.add_subcommand("fdd", "estimate a joint threshold probability");
    std::vector<double> fdd_times, fdd_thresholds;
    fdd->add_option("--times", fdd_times, "query times in (0, 1]")
        ->required()
        ->delimiter(',');
    fdd->add_option("--thresholds", fdd_thresholds, "query thresholds")
        ->required()
        ->delimiter(',');
    fdd->add_option("--reps", o.reps, "replicates")->check(CLI::PositiveNumber);
    fdd->add_option("--grid", o.grid, "grid points")->check(CLI::PositiveNumber);
    add_model_options(fdd, o);
    add_output_options(fdd, o);

    auto* converge = app.add_subcommand(
        "converge", "terminal KS of scaled walk maxima against the limit law per n");
    std::vector<std::uint64_t> n_list;
    bool marginals = false;
    converge->add_option("--n-list", n_list, "walk lengths")->required()->delimiter(',');
    converge->add_option("--reps", o.reps, "replicates per side")
        ->check(CLI::PositiveNumber);
    converge->add_option("--k", o.k, "limit sampler truncation");
    converge->add_option("--grid", o.grid, "limit sampler grid");
    converge->add_flag("--marginals", marginals,
                       "append calibrated marginal KS columns at t = 0.25, 0.5, 1");
    add_model_options(converge, o);
    add_output_options(converge, o);

    auto* lepage = app.add_subcommand(
        "lepage", "rank-wise KS of scaled order statistics against the point process");
    std::uint64_t ranks = 5;
    lepage->add_option("--n", o.n, "sample size per replicate")->check(CLI::PositiveNumber);
    lepage->add_option("--ranks", ranks, "number of top ranks to compare")
        ->check(CLI::PositiveNumber);
    lepage->add_option("--reps", o.reps, "replicates")->check(CLI::PositiveNumber);
    add_model_options(lepage, o);
    add_output_options(lepage, o);

    auto* sandwich = app.add_subcommand(
        "sandwich", "quantiles of the one-sided bracketing gap per walk length");
    std::vector<std::uint64_t> sandwich_n;
    sandwich->add_option("--n-list", sandwich_n, "walk lengths")
        ->required()
        ->delimiter(',');
    sandwich->add_option("--reps", o.reps, "replicates")->check(CLI::PositiveNumber);
    add_model_options(sandwich, o);
    add_output_options(sandwich, o);

    auto* pathdist = app.add_subcommand(
        "pathdist", "Skorohod J1 and sup distance between two stored paths");
    std::string file1, file2;
    double dist_a = 0.0, dist_b = 1.0;
    pathdist->add_option("path1", file1, "first path CSV")->required();
    pathdist->add_option("path2", file2, "second path CSV")->required();
    pathdist->add_option("--a", dist_a, "interval start");
    pathdist->add_option("--b", dist_b, "interval end");
    add_output_options(pathdist, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (simulate->parsed()) return run_simulate(o, which);
        if (psi->parsed()) return run_psi(o, psi_x);
        if (fdd->parsed()) return run_fdd(o, fdd_times, fdd_thresholds);
        if (converge->parsed()) return run_converge(o, n_list, marginals);
        if (lepage->parsed()) return run_lepage(o, ranks);
        if (sandwich->parsed()) return run_sandwich(o, sandwich_n);
        if (pathdist->parsed()) return run_pathdist(o, file1, file2, dist_a, dist_b);
    } catch (const fbmshot::SynthesisError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
