// noma_pairlab: bounds calculator, pairing runner and network simulator.
//
// Exit codes: 0 success, 2 usage / config / domain error.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noma_pairlab/noma_pairlab.hpp"

namespace fs = std::filesystem;
using namespace noma;

namespace {

constexpr int kExitError = 2;

struct BoundsArgs {
    std::optional<double> gamma_s_db, gamma_w_db, gamma_s_linear, gamma_w_linear, alpha;
    double beta = 0.0;
    std::string format = "json";
};

struct PairArgs {
    std::string input;
    double beta = 0.0;
    std::string algorithm = "aup";
    std::string split = "grid:101";
    std::string rate_model = "lr";
    std::string format = "json";
};

struct SimulateArgs {
    std::string config;
    std::string algorithms = "aup,nf,ucgd,oma";
    std::string out;
};

double pick_gamma(const std::optional<double>& db, const std::optional<double>& linear, const char* name) {
    if (db && linear) throw ConfigError(std::string("give either ") + name + " in dB or linear, not both");
    if (db) return db_to_linear(*db);
    if (linear) return *linear;
    throw ConfigError(std::string("missing ") + name);
}

int run_bounds(const BoundsArgs& a) {
    const double gs = pick_gamma(a.gamma_s_db, a.gamma_s_linear, "gamma_s");
    const double gw = pick_gamma(a.gamma_w_db, a.gamma_w_linear, "gamma_w");
    const auto report = io::make_bounds_report(gs, gw, a.alpha, a.beta);
    if (a.format == "json") {
        std::cout << io::to_json(report).dump(2) << '\n';
    } else {
        io::write_bounds_csv(std::cout, report);
    }
    return 0;
}

int run_pair(const PairArgs& a) {
    std::ifstream in(a.input);
    if (!in) throw ConfigError("cannot open users file '" + a.input + "'");
    const auto users = io::parse_users(in);
    const io::PlanSettings settings{parse_algorithm(a.algorithm), SicImperfection(a.beta).beta(),
                                    io::parse_rate_model(a.rate_model), SplitPolicy::parse(a.split)};
    const auto plan = make_plan(settings.algorithm, users, settings.beta, settings.split_policy);
    const auto report = evaluate_plan(plan, settings.beta, settings.rate_model);
    if (a.format == "json") {
        std::cout << io::to_json(plan, report, settings).dump(2) << '\n';
    } else {
        io::write_plan_csv(std::cout, plan, report, settings);
    }
    return 0;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
}

int run_simulate(const SimulateArgs& a) {
    std::ifstream in(a.config);
    if (!in) throw ConfigError("cannot open config file '" + a.config + "'");
    const auto setup = io::parse_sim_config(in);

    std::vector<Algorithm> algorithms;
    for (const auto& name : io::split(a.algorithms, ',')) {
        if (!name.empty()) algorithms.push_back(parse_algorithm(name));
    }
    if (algorithms.empty()) throw ConfigError("empty algorithm list");

    const double gs = db_to_linear(setup.pair_gamma_s_db);
    const double gw = db_to_linear(setup.pair_gamma_w_db);
    const auto model = setup.sim.rate_model;

    std::vector<std::string> outputs{"asr_vs_users.csv"};
    if (setup.alpha_range) outputs.emplace_back("alpha_sweep.csv");
    if (setup.beta_range) outputs.emplace_back("beta_sweep.csv");

    const fs::path dir(a.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + a.out + "': " + ec.message());

    nlohmann::json algos = nlohmann::json::array();
    for (auto alg : algorithms) algos.push_back(to_string(alg));
    const nlohmann::json manifest = {{"tool", "noma_pairlab"},
                                     {"version", io::kToolVersion},
                                     {"timestamp", utc_timestamp()},
                                     {"seed", setup.sim.seed},
                                     {"algorithms", algos},
                                     {"config", io::to_json(setup)},
                                     {"outputs", outputs}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");

    if (setup.alpha_range) {
        std::ostringstream csv;
        io::write_sweep_csv(csv, alpha_sweep(gs, gw, setup.alpha_sweep_beta, setup.alpha_range->values(), model));
        write_file(dir / "alpha_sweep.csv", csv.str());
    }
    if (setup.beta_range) {
        std::ostringstream csv;
        io::write_sweep_csv(csv, beta_sweep(gs, gw, setup.beta_sweep_alpha, setup.beta_range->values(), model));
        write_file(dir / "beta_sweep.csv", csv.str());
    }
    const std::vector<int> counts = setup.n_users.empty() ? std::vector<int>{setup.sim.users_per_bs} : setup.n_users;
    std::vector<UsersSweepRow> rows;
    if (setup.n_users.empty()) {
        const auto res = run_experiment(setup.sim, algorithms);
        for (const auto& s : res.algorithms) {
            rows.push_back({setup.sim.users_per_bs, s.algorithm, s.mean_asr, s.std_asr, s.realizations, setup.sim.seed});
        }
    } else {
        rows = users_sweep(setup.sim, counts, algorithms);
    }
    std::ostringstream csv;
    io::write_users_sweep_csv(csv, rows);
    write_file(dir / "asr_vs_users.csv", csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Downlink NOMA pairing lab: SIC-imperfection bounds, user pairing, network simulation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(io::kToolVersion));

    BoundsArgs bounds;
    auto* cmd_bounds = app.add_subcommand("bounds", "Power-split and SIC bounds for one user pair");
    cmd_bounds->add_option("--gamma-s-db", bounds.gamma_s_db, "Strong user OMA SINR (dB)");
    cmd_bounds->add_option("--gamma-w-db", bounds.gamma_w_db, "Weak user OMA SINR (dB)");
    cmd_bounds->add_option("--gamma-s-linear", bounds.gamma_s_linear, "Strong user OMA SINR (linear)");
    cmd_bounds->add_option("--gamma-w-linear", bounds.gamma_w_linear, "Weak user OMA SINR (linear)");
    cmd_bounds->add_option("--alpha", bounds.alpha, "Strong-user power share (default: alpha upper bound)");
    cmd_bounds->add_option("--beta", bounds.beta, "SIC imperfection")->capture_default_str();
    cmd_bounds->add_option("--format", bounds.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    PairArgs pair;
    auto* cmd_pair = app.add_subcommand("pair", "Pair the users of one BS and report rates");
    cmd_pair->add_option("--input", pair.input, "Users file (user_id,gamma_db per line)")->required();
    cmd_pair->add_option("--beta", pair.beta, "SIC imperfection")->capture_default_str();
    cmd_pair->add_option("--algorithm", pair.algorithm)
        ->check(CLI::IsMember({"aup", "nf", "ucgd", "oma"}))
        ->capture_default_str();
    cmd_pair->add_option("--split", pair.split, "midpoint or grid:<n>")->capture_default_str();
    cmd_pair->add_option("--rate-model", pair.rate_model)->check(CLI::IsMember({"lr", "dr"}))->capture_default_str();
    cmd_pair->add_option("--format", pair.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "Monte-Carlo network experiment and single-pair sweeps");
    cmd_sim->add_option("--config", sim.config, "key = value config file")->required();
    cmd_sim->add_option("--algorithms", sim.algorithms, "Comma-separated subset of aup,nf,ucgd,oma")
        ->capture_default_str();
    cmd_sim->add_option("--out", sim.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (*cmd_bounds) return run_bounds(bounds);
        if (*cmd_pair) return run_pair(pair);
        if (*cmd_sim) return run_simulate(sim);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
