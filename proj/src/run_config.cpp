#include "tsforge/run_config.hpp"

#include <fstream>

#include "tsforge/errors.hpp"
#include "tsforge/text.hpp"
#include "tsforge/version.hpp"

namespace tsforge::cli {

std::string to_string(LstmMode mode) {
    switch (mode) {
        case LstmMode::OneStep: return "one-step";
        case LstmMode::Recursive: return "recursive";
        case LstmMode::Both: return "both";
    }
    return "one-step";
}

LstmMode parse_lstm_mode(const std::string& text) {
    if (text == "one-step") return LstmMode::OneStep;
    if (text == "recursive") return LstmMode::Recursive;
    if (text == "both") return LstmMode::Both;
    throw ConfigError("lstm.mode must be one-step, recursive or both, got '" + text + "'");
}

namespace {

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

std::size_t parse_size(const std::string& value, const std::string& key) {
    long long v;
    try {
        v = parse_int(value, key);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
    if (v < 0) throw ConfigError(key + ": must be non-negative, got " + value);
    return static_cast<std::size_t>(v);
}

int parse_order(const std::string& value, const std::string& key) {
    long long v;
    try {
        v = parse_int(value, key);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
    return static_cast<int>(v);
}

double parse_real(const std::string& value, const std::string& key) {
    try {
        return parse_double(value, key);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& raw) {
    const std::string value(trim(raw));
    if (key == "data.primary_csv") {
        primary_csv = value;
    } else if (key == "data.secondary_csv") {
        secondary_csv = value;
    } else if (key == "data.split_fraction") {
        split_fraction = parse_real(value, key);
    } else if (key == "data.lookback") {
        lookback = parse_size(value, key);
    } else if (key == "lstm.epochs") {
        lstm_epochs = parse_size(value, key);
    } else if (key == "lstm.batch_size") {
        lstm_batch_size = parse_size(value, key);
    } else if (key == "lstm.hidden") {
        lstm_hidden = parse_size(value, key);
    } else if (key == "lstm.seed") {
        lstm_seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "lstm.mode") {
        lstm_mode = parse_lstm_mode(value);
    } else if (key == "lstm.shuffle") {
        lstm_shuffle = parse_bool(value, key);
    } else if (key == "lstm.grad_clip_norm") {
        lstm_grad_clip_norm = parse_real(value, key);
    } else if (key == "lstm.learning_rate") {
        lstm_learning_rate = parse_real(value, key);
    } else if (key == "sarima.auto") {
        sarima_auto = parse_bool(value, key);
    } else if (key == "sarima.p") {
        sarima_spec.p = parse_order(value, key);
    } else if (key == "sarima.d") {
        sarima_spec.d = parse_order(value, key);
    } else if (key == "sarima.q") {
        sarima_spec.q = parse_order(value, key);
    } else if (key == "sarima.P") {
        sarima_spec.P = parse_order(value, key);
    } else if (key == "sarima.D") {
        sarima_spec.D = parse_order(value, key);
    } else if (key == "sarima.Q") {
        sarima_spec.Q = parse_order(value, key);
    } else if (key == "sarima.s") {
        sarima_spec.s = parse_order(value, key);
    } else if (key == "sarima.max_p") {
        sarima_max_p = parse_order(value, key);
    } else if (key == "sarima.max_q") {
        sarima_max_q = parse_order(value, key);
    } else if (key == "run.seed") {
        seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "run.out_dir") {
        out_dir = value;
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
    explicit_keys_.insert(key);
}

std::string RunConfig::get(const std::string& key) const {
    if (key == "data.primary_csv") return primary_csv;
    if (key == "data.secondary_csv") return secondary_csv;
    if (key == "data.split_fraction") return format_double(split_fraction);
    if (key == "data.lookback") return std::to_string(lookback);
    if (key == "lstm.epochs") return std::to_string(lstm_epochs);
    if (key == "lstm.batch_size") return std::to_string(lstm_batch_size);
    if (key == "lstm.hidden") return std::to_string(lstm_hidden);
    if (key == "lstm.seed") return std::to_string(effective_lstm_seed());
    if (key == "lstm.mode") return to_string(lstm_mode);
    if (key == "lstm.shuffle") return lstm_shuffle ? "true" : "false";
    if (key == "lstm.grad_clip_norm") return format_double(lstm_grad_clip_norm);
    if (key == "lstm.learning_rate") return format_double(lstm_learning_rate);
    if (key == "sarima.auto") return sarima_auto ? "true" : "false";
    if (key == "sarima.p") return std::to_string(sarima_spec.p);
    if (key == "sarima.d") return std::to_string(sarima_spec.d);
    if (key == "sarima.q") return std::to_string(sarima_spec.q);
    if (key == "sarima.P") return std::to_string(sarima_spec.P);
    if (key == "sarima.D") return std::to_string(sarima_spec.D);
    if (key == "sarima.Q") return std::to_string(sarima_spec.Q);
    if (key == "sarima.s") return std::to_string(sarima_spec.s);
    if (key == "sarima.max_p") return std::to_string(sarima_max_p);
    if (key == "sarima.max_q") return std::to_string(sarima_max_q);
    if (key == "run.seed") return std::to_string(seed);
    if (key == "run.out_dir") return out_dir;
    throw ConfigError("unknown configuration key '" + key + "'");
}

void RunConfig::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());

    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view content = trim(line);
        if (content.empty() || content.front() == '#' || content.front() == ';') continue;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (content.front() == '[') {
            if (content.back() != ']' || content.size() < 3) {
                throw ConfigError(where + ": malformed section header '" + std::string(content) +
                                  "'");
            }
            section = std::string(trim(content.substr(1, content.size() - 2)));
            continue;
        }
        const std::size_t eq = content.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(where + ": expected 'key = value', got '" + std::string(content) +
                              "'");
        }
        const std::string key(trim(content.substr(0, eq)));
        const std::string value(trim(content.substr(eq + 1)));
        if (key.empty()) throw ConfigError(where + ": empty key");
        const std::string dotted = section.empty() ? key : section + "." + key;
        try {
            set(dotted, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
}

const std::vector<std::string>& RunConfig::keys() {
    static const std::vector<std::string> all = {
        "data.primary_csv", "data.secondary_csv", "data.split_fraction", "data.lookback",
        "lstm.epochs",      "lstm.batch_size",    "lstm.hidden",         "lstm.seed",
        "lstm.mode",        "lstm.shuffle",       "lstm.grad_clip_norm", "lstm.learning_rate",
        "sarima.auto",      "sarima.p",           "sarima.d",            "sarima.q",
        "sarima.P",         "sarima.D",           "sarima.Q",            "sarima.s",
        "sarima.max_p",     "sarima.max_q",       "run.seed",            "run.out_dir",
    };
    return all;
}

lstm::TrainConfig RunConfig::lstm_config() const {
    lstm::TrainConfig cfg;
    cfg.epochs = lstm_epochs;
    cfg.batch_size = lstm_batch_size;
    cfg.hidden = lstm_hidden;
    cfg.lookback = lookback;
    cfg.seed = effective_lstm_seed();
    cfg.shuffle = lstm_shuffle;
    cfg.grad_clip_norm = lstm_grad_clip_norm;
    cfg.adam.alpha = lstm_learning_rate;
    return cfg;
}

std::string RunConfig::manifest_text() const {
    std::string out;
    out += "tsforge.version = ";
    out += kVersion;
    out += '\n';
    for (const std::string& key : keys()) {
        out += key;
        out += " = ";
        out += get(key);
        if (!is_explicit(key)) out += "  # default:";
        out += '\n';
    }
    return out;
}

}  // namespace tsforge::cli
