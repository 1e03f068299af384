// cesaro_lab: command-line front end for the generalized Cesàro operator lab.
//
// Exit codes: 0 all assertions passed, 1 some assertion failed, 2 usage or parse error.

#include "cesaro/commands.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct RawOptions {
    std::string t = "0,0.3,0.5,0.7,0.95";
    std::string p = "1,2,4,inf";
    std::size_t degree = cesaro::default_degree;
    std::size_t section_degree = 512;
    std::uint64_t seed = cesaro::default_seed;
    std::string format = "json";
    std::string out;
    std::string kernel = "cesaro";
    std::string input;
    std::string symbol;
};

void add_common(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--t", raw.t, "comma-separated Cesàro parameters in [0,1)")->capture_default_str();
    cmd->add_option("--p", raw.p, "comma-separated Hardy exponents (>= 1 or inf)")->capture_default_str();
    cmd->add_option("--degree", raw.degree, "truncation degree N (>= 16)")->capture_default_str();
    cmd->add_option("--section-degree", raw.section_degree, "degree of dense finite sections")->capture_default_str();
    cmd->add_option("--seed", raw.seed, "seed for random test functions")->capture_default_str();
    cmd->add_option("--format", raw.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    cmd->add_option("--out", raw.out, "output path (default: standard output)");
}

cesaro::RunConfig to_config(const std::string& command, const RawOptions& raw) {
    cesaro::RunConfig config;
    config.command = command;
    config.t_values = cesaro::parse_real_list(raw.t);
    config.p_values = cesaro::parse_exponent_list(raw.p);
    config.degree = raw.degree;
    config.section_degree = raw.section_degree;
    config.seed = raw.seed;
    config.format = cesaro::format_from_string(raw.format);
    config.output_path = raw.out;
    config.input_path = raw.input;
    config.symbol_path = raw.symbol;
    config.kernels.clear();
    std::size_t start = 0;
    while (start <= raw.kernel.size()) {
        const std::size_t end = std::min(raw.kernel.find(',', start), raw.kernel.size());
        config.kernels.push_back(raw.kernel.substr(start, end - start));
        start = end + 1;
    }
    config.validate(cesaro::max_degree_from_env());
    return config;
}

void emit(const cesaro::RunConfig& config, const std::string& text) {
    if (config.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.output_path);
    if (!out) {
        throw cesaro::parse_error("cannot write '" + config.output_path + "'", 0);
    }
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Cesàro operators on truncated Taylor series"};
    app.require_subcommand(1);

    RawOptions raw;
    auto* apply = app.add_subcommand("apply", "apply operator kernels to a coefficient file");
    add_common(apply, raw);
    apply->add_option("input", raw.input, "coefficient file, one 're im' per line")->required();
    apply->add_option("--kernel", raw.kernel,
                      "comma-separated kernels: cesaro,c0,c1,shift,backshift,mult,st,tg,vg")
        ->capture_default_str();
    apply->add_option("--g", raw.symbol, "symbol g for tg / vg (coefficient file)");

    std::vector<CLI::App*> reports;
    for (const char* name : {"norms", "spectrum", "ergodic", "all"}) {
        auto* cmd = app.add_subcommand(name, std::string(name) + " report");
        add_common(cmd, raw);
        reports.push_back(cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const cesaro::RunConfig config = to_config(command, raw);
        if (command == "apply") {
            emit(config, cesaro::cmd_apply(config));
            return exit_ok;
        }
        cesaro::Report report = command == "norms"      ? cesaro::cmd_norms(config)
                                : command == "spectrum" ? cesaro::cmd_spectrum(config)
                                : command == "ergodic"  ? cesaro::cmd_ergodic(config)
                                                        : cesaro::cmd_all(config);
        emit(config, config.format == cesaro::Format::json ? report.to_json().dump(2) + "\n" : report.to_csv());
        if (report.failures() > 0) {
            std::fprintf(stderr, "cesaro_lab: %zu of %zu assertions failed\n", report.failures(),
                         report.assertions.size());
            return exit_failed;
        }
        return exit_ok;
    } catch (const cesaro::error& e) {
        std::fprintf(stderr, "cesaro_lab: %s\n", e.what());
        return exit_usage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "cesaro_lab: unexpected error: %s\n", e.what());
        return exit_usage;
    }
}
