// swipt-twr: sweeps, harvester fitting and self-verification.

#include "swipt/eh_model.hpp"
#include "swipt/experiment.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t default_seed()
{
    const char* env = std::getenv("SWIPT_TWR_SEED");
    if (!env || !*env)
        return 1;
    std::size_t used = 0;
    const std::string s = env;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used, 10);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.front() == '-')
        throw std::runtime_error("SWIPT_TWR_SEED: expected an unsigned integer, got '" + s + "'");
    return v;
}

std::vector<double> parse_list_uw(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        while (used < item.size() && item[used] == ' ')
            ++used;
        if (used == 0 || used != item.size())
            throw std::runtime_error("--breakpoints: bad value '" + item + "'");
        out.push_back(v * 1e-6);
    }
    if (out.empty())
        throw std::runtime_error("--breakpoints: empty list");
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"SWIPT two-way relay outage and capacity tool"};
    app.require_subcommand(1);

    std::string config_path, out_path, data_path, breakpoints;

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write CSV");
    sweep->add_option("--config", config_path, "JSON config")->required();
    sweep->add_option("--out", out_path, "output CSV")->required();

    auto* fit = app.add_subcommand("fit-eh", "fit a piecewise-linear harvester to measurements");
    fit->add_option("--data", data_path, "CSV with p_in_uW,p_out_uW")->required();
    fit->add_option("--breakpoints", breakpoints, "comma separated breakpoints in uW")->required();
    fit->add_option("--out", out_path, "output model JSON")->required();

    auto* ver = app.add_subcommand("verify", "oracle and Monte-Carlo agreement checks");
    ver->add_option("--config", config_path, "JSON config")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            const std::uint64_t seed = default_seed();
            const swipt::ExperimentConfig cfg = swipt::parse_config(slurp(config_path), seed);
            const auto rows = swipt::run_sweep(cfg);
            std::ofstream out(out_path, std::ios::binary);
            if (!out)
                throw std::runtime_error("cannot write " + out_path);
            std::vector<std::string> meta{
                "swipt-twr sweep",
                "--config " + config_path,
                "--out " + out_path,
                fmt::format("seed {}", cfg.sweep.seed),
                "swept " + swipt::to_string(cfg.sweep.variable) + " [" + cfg.sweep.grid_unit + "]",
            };
            if (const char* env = std::getenv("SWIPT_TWR_SEED"))
                meta.push_back(std::string("SWIPT_TWR_SEED=") + env);
            swipt::write_csv(out, rows, meta);
            return 0;
        }
        if (fit->parsed()) {
            std::ifstream in(data_path);
            if (!in)
                throw std::runtime_error("cannot open " + data_path);
            const swipt::EhDataset data = swipt::read_eh_csv(in, parse_list_uw(breakpoints));
            const swipt::EhModel model = swipt::fit_segments(data);
            std::ofstream out(out_path, std::ios::binary);
            if (!out)
                throw std::runtime_error("cannot write " + out_path);
            out << swipt::eh_model_to_json(model) << '\n';
            return 0;
        }
        const swipt::ExperimentConfig cfg = swipt::parse_config(slurp(config_path), default_seed());
        const swipt::VerifyReport rep = swipt::verify(cfg);
        for (const auto& line : rep.lines)
            std::cout << line << '\n';
        std::cout << (rep.passed ? "verify: PASS" : "verify: FAIL") << '\n';
        return rep.passed ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "swipt-twr: " << e.what() << '\n';
        return 2;
    }
}
