#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"

#include "eggbeater/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace eggbeater;
using namespace eggbeater::cli;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitConfig = 3;

struct Options {
    std::string config;
    std::string out;
    std::string format;
    long long threads = -1;
    long long seed = -1;
    std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config, "config file (INI sections or JSON)");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", o.threads, "worker count (0 = hardware)")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "random seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--set", o.sets, "override, section.key=value")->take_all();
}

int emit(const std::string& name, const RunConfig& config, const CommandResult& result) {
    fs::path dir = config.out_dir;
    Metadata meta{name, config.hash(), config.seed, config.timestamps};
    int files = 0;
    for (const auto& table : result.tables)
        for (const auto& format : config.formats) {
            auto path = dir / (table.name + "." + format);
            write_atomic(path, format == "csv" ? to_csv(table) : to_json(table, meta));
            ++files;
        }
    if (config.svg)
        for (const auto& [file, content] : result.svgs) {
            write_atomic(dir / file, content);
            ++files;
        }
    auto report = dir / "failures.csv";
    if (!result.failures.empty()) {
        Table t{"failures", {"task", "kind", "message"}, {}};
        for (const auto& f : result.failures) t.add({text(f.task), text(f.kind), text(f.message)});
        write_atomic(report, to_csv(t));
        ++files;
    } else if (fs::exists(report)) {
        fs::remove(report);
    }
    std::cout << name << ": " << result.summary << "; " << files << " file(s) in " << dir.string() << "\n";
    if (!result.failures.empty()) {
        std::cerr << result.failures.size() << " task(s) failed:\n";
        for (const auto& f : result.failures) std::cerr << "  " << f.task << ": " << f.message << "\n";
        return kExitNumerical;
    }
    return result.validation_failed ? kExitValidation : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eggbeater: periodic orbits, indices, actions and Hofer bounds for linked twist maps"};
    app.require_subcommand(1);
    Options options;
    std::string chosen;
    for (const auto& [name, entry] : commands()) {
        auto* sub = app.add_subcommand(name, entry.second);
        add_common(sub, options);
        sub->callback([&chosen, n = name] { chosen = n; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    std::vector<std::string> overrides = options.sets;
    if (!options.out.empty()) overrides.push_back("output.directory=" + options.out);
    if (!options.format.empty()) overrides.push_back("output.formats=" + options.format);
    if (options.threads >= 0) overrides.push_back("parallelism.threads=" + std::to_string(options.threads));
    if (options.seed >= 0) overrides.push_back("run.seed=" + std::to_string(options.seed));

    RunConfig config;
    try {
        config = options.config.empty() ? default_config(overrides) : load_config(options.config, overrides);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    CommandResult result;
    try {
        result = commands().at(chosen).first(config);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::Parse) {
            std::cerr << "config error: " << e.what() << "\n";
            return kExitConfig;
        }
        result.failures.push_back({chosen, error_kind_name(e.kind()), e.what()});
    } catch (const std::exception& e) {
        result.failures.push_back({chosen, "Exception", e.what()});
    }
    try {
        return emit(chosen, config, result);
    } catch (const std::exception& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
