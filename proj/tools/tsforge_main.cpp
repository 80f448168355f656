// tsforge command line: drives the experiment pipeline through the C API.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsforge.h"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;  // key=value pairs
    std::string primary;
    std::string secondary;
    std::string out_dir;
    std::int64_t seed = -1;
    bool seed_set = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args, bool with_secondary) {
    cmd->add_option("-c,--config", args.config_path, "INI-style configuration file");
    cmd->add_option("--set", args.overrides,
                    "Override one configuration key, e.g. --set lstm.epochs=50 (repeatable)");
    cmd->add_option("--primary", args.primary, "Primary index CSV (date,close)");
    if (with_secondary) {
        cmd->add_option("--secondary", args.secondary, "Secondary index CSV (date,close)");
    }
    cmd->add_option("--out", args.out_dir, "Output directory for run artifacts");
    cmd->add_option("--seed", args.seed, "Run seed (overrides config)")
        ->each([&args](const std::string&) { args.seed_set = true; });
}

int fail(tsf_status status) {
    std::fprintf(stderr, "tsforge: error: %s\n", tsf_last_error());
    return static_cast<int>(status);
}

// Builds the effective config: defaults, then file, then --set pairs, then
// the dedicated flags (which win).
int apply_common(tsf_config* config, const CommonArgs& args) {
    if (!args.config_path.empty()) {
        if (const tsf_status st = tsf_config_load_file(config, args.config_path.c_str());
            st != TSF_OK) {
            return fail(st);
        }
    }
    for (const std::string& pair : args.overrides) {
        const std::size_t eq = pair.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "tsforge: error: --set expects key=value, got '%s'\n",
                         pair.c_str());
            return static_cast<int>(TSF_ERR_CONFIG);
        }
        const std::string key = pair.substr(0, eq);
        const std::string value = pair.substr(eq + 1);
        if (const tsf_status st = tsf_config_set(config, key.c_str(), value.c_str());
            st != TSF_OK) {
            return fail(st);
        }
    }
    auto set_or_fail = [&](const char* key, const std::string& value) -> int {
        if (value.empty()) return 0;
        if (const tsf_status st = tsf_config_set(config, key, value.c_str()); st != TSF_OK) {
            return fail(st);
        }
        return 0;
    };
    if (int rc = set_or_fail("data.primary_csv", args.primary); rc != 0) return rc;
    if (int rc = set_or_fail("data.secondary_csv", args.secondary); rc != 0) return rc;
    if (int rc = set_or_fail("run.out_dir", args.out_dir); rc != 0) return rc;
    if (args.seed_set) {
        if (int rc = set_or_fail("run.seed", std::to_string(args.seed)); rc != 0) return rc;
    }
    return 0;
}

struct ConfigHandle {
    tsf_config* ptr = tsf_config_new();
    ~ConfigHandle() { tsf_config_free(ptr); }
    ConfigHandle() = default;
    ConfigHandle(const ConfigHandle&) = delete;
    ConfigHandle& operator=(const ConfigHandle&) = delete;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tsforge: dual-engine (LSTM / SARIMA) daily index forecasting"};
    app.set_version_flag("--version", std::string("tsforge ") + tsf_version());
    app.require_subcommand(1);

    CommonArgs run_args, validate_args, sarima_args, lstm_args;

    CLI::App* cmd_run = app.add_subcommand("run", "Run the full two-engine experiment");
    add_common_options(cmd_run, run_args, true);

    CLI::App* cmd_validate =
        app.add_subcommand("validate", "Check a configuration without running");
    add_common_options(cmd_validate, validate_args, true);

    CLI::App* cmd_sarima = app.add_subcommand("fit-sarima", "SARIMA engine only");
    add_common_options(cmd_sarima, sarima_args, false);

    CLI::App* cmd_lstm = app.add_subcommand("train-lstm", "LSTM engine only");
    add_common_options(cmd_lstm, lstm_args, true);

    tsf_generate_params gen_params;
    tsf_generate_params_init(&gen_params);
    std::string gen_out = "data";
    CLI::App* cmd_generate =
        app.add_subcommand("generate", "Write a seeded synthetic two-index dataset");
    cmd_generate->add_option("--seed", gen_params.seed, "Generator seed");
    cmd_generate->add_option("--days", gen_params.days, "Primary trading days");
    cmd_generate->add_option("--out", gen_out, "Output directory");
    cmd_generate->add_option("--correlation", gen_params.correlation,
                             "Innovation correlation of the two indices");
    cmd_generate->add_option("--drift", gen_params.drift, "Primary daily log drift");
    cmd_generate->add_option("--volatility", gen_params.volatility,
                             "Primary daily log volatility");
    cmd_generate->add_option("--seasonal-amplitude", gen_params.seasonal_amplitude,
                             "Log-scale seasonal sinusoid amplitude");
    cmd_generate->add_option("--seasonal-period", gen_params.seasonal_period,
                             "Trading days per seasonal cycle");
    cmd_generate->add_option("--drop-rate", gen_params.drop_rate,
                             "Chance a secondary date is dropped");

    CLI11_PARSE(app, argc, argv);

    if (cmd_generate->parsed()) {
        if (gen_params.days < 300) {
            std::fprintf(stderr,
                         "tsforge: warning: %d days is thin for the default seasonal SARIMA "
                         "(want >= 300)\n",
                         gen_params.days);
        }
        if (const tsf_status st = tsf_generate(&gen_params, gen_out.c_str()); st != TSF_OK) {
            return fail(st);
        }
        std::printf("wrote %s/primary.csv and %s/secondary.csv\n", gen_out.c_str(),
                    gen_out.c_str());
        return 0;
    }

    if (cmd_validate->parsed()) {
        ConfigHandle config;
        if (int rc = apply_common(config.ptr, validate_args); rc != 0) return rc;
        char report[8192];
        int n_errors = 0, n_warnings = 0;
        if (const tsf_status st =
                tsf_validate(config.ptr, report, sizeof(report), &n_errors, &n_warnings);
            st != TSF_OK) {
            return fail(st);
        }
        std::fputs(report, stdout);
        std::printf("%d error(s), %d warning(s)\n", n_errors, n_warnings);
        return n_errors > 0 ? static_cast<int>(TSF_ERR_CONFIG) : 0;
    }

    const CommonArgs* args = nullptr;
    tsf_status (*entry)(const tsf_config*) = nullptr;
    if (cmd_run->parsed()) {
        args = &run_args;
        entry = tsf_run;
    } else if (cmd_sarima->parsed()) {
        args = &sarima_args;
        entry = tsf_run_sarima_only;
    } else {
        args = &lstm_args;
        entry = tsf_run_lstm_only;
    }

    ConfigHandle config;
    if (int rc = apply_common(config.ptr, *args); rc != 0) return rc;
    if (const tsf_status st = entry(config.ptr); st != TSF_OK) return fail(st);

    char out_dir[4096];
    if (tsf_config_get(config.ptr, "run.out_dir", out_dir, sizeof(out_dir)) == TSF_OK) {
        std::printf("artifacts written to %s\n", out_dir);
    }
    return 0;
}
