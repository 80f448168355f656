#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tsforge/lstm.hpp"
#include "tsforge/sarima.hpp"

namespace tsforge::cli {

enum class LstmMode { OneStep, Recursive, Both };

std::string to_string(LstmMode mode);
LstmMode parse_lstm_mode(const std::string& text);

/// One experiment's full configuration. Values come from built-in defaults,
/// then an INI-style config file ([section] + key = value), then explicit
/// overrides, in that order; later sources win. Keys set by a file or an
/// override are tracked so the run manifest can mark everything else as
/// defaulted.
class RunConfig {
public:
    // [data]
    std::string primary_csv;
    std::string secondary_csv;
    double split_fraction = data::kDefaultTrainFraction;
    std::size_t lookback = data::kDefaultLookback;

    // [lstm]
    std::size_t lstm_epochs = 200;
    std::size_t lstm_batch_size = 200;
    std::size_t lstm_hidden = 32;
    std::optional<std::uint64_t> lstm_seed;  // defaults to run.seed
    LstmMode lstm_mode = LstmMode::OneStep;
    bool lstm_shuffle = false;
    double lstm_grad_clip_norm = 0.0;
    double lstm_learning_rate = 1e-3;

    // [sarima]
    bool sarima_auto = false;
    sarima::SarimaSpec sarima_spec{2, 0, 2, 0, 1, 0, 250};
    int sarima_max_p = 3;
    int sarima_max_q = 3;

    // [run]
    std::uint64_t seed = 42;
    std::string out_dir = "out";

    /// Applies one `section.key = value` pair. Throws ConfigError on unknown
    /// keys or unparsable values.
    void set(const std::string& key, const std::string& value);

    /// Current value of a key, formatted the way the manifest prints it.
    std::string get(const std::string& key) const;

    /// Loads an INI-style file: [section] headers, key = value lines, '#'
    /// and ';' comments.
    void load_file(const std::filesystem::path& path);

    bool is_explicit(const std::string& key) const { return explicit_keys_.count(key) > 0; }

    /// Every configuration key in manifest order.
    static const std::vector<std::string>& keys();

    std::uint64_t effective_lstm_seed() const { return lstm_seed.value_or(seed); }

    lstm::TrainConfig lstm_config() const;

    /// Config echo with library version and seed; defaulted keys carry a
    /// `default:` marker.
    std::string manifest_text() const;

private:
    std::set<std::string> explicit_keys_;
};

}  // namespace tsforge::cli
