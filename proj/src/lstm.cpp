#include "tsforge/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "tsforge/errors.hpp"
#include "tsforge/rng.hpp"

namespace tsforge::lstm {

double sigmoid(double x) {
    // Saturates cleanly at both extremes without overflowing exp.
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double tanh_act(double x) { return std::tanh(x); }

LstmParams LstmParams::zeros_like() const {
    LstmParams z;
    const std::size_t h = hidden();
    const std::size_t cols = w_forget.cols;
    z.w_forget = Matrix(h, cols);
    z.w_input = Matrix(h, cols);
    z.w_cell = Matrix(h, cols);
    z.w_output = Matrix(h, cols);
    z.b_forget.assign(h, 0.0);
    z.b_input.assign(h, 0.0);
    z.b_cell.assign(h, 0.0);
    z.b_output.assign(h, 0.0);
    z.w_readout.assign(h, 0.0);
    z.b_readout = 0.0;
    return z;
}

std::array<std::vector<double>*, 9> LstmParams::coefficient_arrays() {
    return {&w_forget.a, &w_input.a, &w_cell.a,   &w_output.a, &b_forget,
            &b_input,    &b_cell,    &b_output,   &w_readout};
}

std::array<const std::vector<double>*, 9> LstmParams::coefficient_arrays() const {
    return {&w_forget.a, &w_input.a, &w_cell.a,   &w_output.a, &b_forget,
            &b_input,    &b_cell,    &b_output,   &w_readout};
}

bool LstmParams::same_shape(const LstmParams& other) const {
    const auto mine = coefficient_arrays();
    const auto theirs = other.coefficient_arrays();
    for (std::size_t k = 0; k < mine.size(); ++k) {
        if (mine[k]->size() != theirs[k]->size()) return false;
    }
    return w_forget.rows == other.w_forget.rows && w_forget.cols == other.w_forget.cols;
}

namespace {

// y = W [h_prev, x] + b for one gate.
void gate_preactivation(const Matrix& w, std::span<const double> joined,
                        std::span<const double> bias, std::vector<double>& out) {
    out.resize(w.rows);
    for (std::size_t i = 0; i < w.rows; ++i) {
        double acc = bias[i];
        const double* row = w.a.data() + i * w.cols;
        for (std::size_t j = 0; j < w.cols; ++j) acc += row[j] * joined[j];
        out[i] = acc;
    }
}

}  // namespace

CellState lstm_cell_forward(const LstmParams& params, std::span<const double> x,
                            const CellState& prev, StepCache* cache) {
    const std::size_t h = params.hidden();
    if (x.size() != params.input_dim()) {
        throw DataError("lstm cell: input of length " + std::to_string(x.size()) +
                        ", expected " + std::to_string(params.input_dim()));
    }
    if (prev.h.size() != h || prev.c.size() != h) {
        throw DataError("lstm cell: state size does not match hidden size");
    }

    std::vector<double> joined;
    joined.reserve(h + x.size());
    joined.insert(joined.end(), prev.h.begin(), prev.h.end());
    joined.insert(joined.end(), x.begin(), x.end());

    std::vector<double> f, i, g, o;
    gate_preactivation(params.w_forget, joined, params.b_forget, f);
    gate_preactivation(params.w_input, joined, params.b_input, i);
    gate_preactivation(params.w_cell, joined, params.b_cell, g);
    gate_preactivation(params.w_output, joined, params.b_output, o);
    for (std::size_t k = 0; k < h; ++k) {
        f[k] = sigmoid(f[k]);
        i[k] = sigmoid(i[k]);
        g[k] = tanh_act(g[k]);
        o[k] = sigmoid(o[k]);
    }

    CellState next(h);
    std::vector<double> tanh_c(h);
    for (std::size_t k = 0; k < h; ++k) {
        next.c[k] = f[k] * prev.c[k] + i[k] * g[k];
        tanh_c[k] = tanh_act(next.c[k]);
        next.h[k] = o[k] * tanh_c[k];
    }

    if (cache != nullptr) {
        cache->joined = std::move(joined);
        cache->forget = std::move(f);
        cache->input = std::move(i);
        cache->candidate = std::move(g);
        cache->output = std::move(o);
        cache->c_prev = prev.c;
        cache->c = next.c;
        cache->tanh_c = std::move(tanh_c);
    }
    return next;
}

ForwardResult forward_sequence(const LstmParams& params,
                               const std::vector<std::vector<double>>& window,
                               bool keep_caches) {
    if (window.empty()) throw DataError("forward_sequence: empty window");
    const std::size_t h = params.hidden();

    ForwardResult result;
    if (keep_caches) result.caches.resize(window.size());

    CellState state(h);
    for (std::size_t t = 0; t < window.size(); ++t) {
        StepCache* cache = keep_caches ? &result.caches[t] : nullptr;
        state = lstm_cell_forward(params, window[t], state, cache);
    }

    double pred = params.b_readout;
    for (std::size_t k = 0; k < h; ++k) pred += params.w_readout[k] * state.h[k];
    result.prediction = pred;
    return result;
}

double mae_loss(std::span<const double> predictions, std::span<const double> targets) {
    if (predictions.empty() || predictions.size() != targets.size()) {
        throw DataError("mae_loss: need equal, nonzero-length inputs");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        acc += std::abs(predictions[i] - targets[i]);
    }
    return acc / static_cast<double>(predictions.size());
}

LstmParams backward_through_time(const LstmParams& params, const std::vector<StepCache>& caches,
                                 double d_prediction) {
    if (caches.empty()) throw DataError("backward_through_time: no caches");
    const std::size_t h = params.hidden();
    if (caches.front().joined.size() != params.w_forget.cols) {
        throw DataError("backward_through_time: cache does not match parameter shapes");
    }

    LstmParams grads = params.zeros_like();

    // Read-out layer. The final hidden state is recomputed from the last cache.
    const StepCache& last = caches.back();
    std::vector<double> dh(h);
    for (std::size_t k = 0; k < h; ++k) {
        const double h_last = last.output[k] * last.tanh_c[k];
        grads.w_readout[k] = d_prediction * h_last;
        dh[k] = d_prediction * params.w_readout[k];
    }
    grads.b_readout = d_prediction;

    std::vector<double> dc(h, 0.0);
    std::vector<double> da_f(h), da_i(h), da_g(h), da_o(h);
    for (std::size_t t = caches.size(); t-- > 0;) {
        const StepCache& cc = caches[t];
        for (std::size_t k = 0; k < h; ++k) {
            const double f = cc.forget[k];
            const double i = cc.input[k];
            const double g = cc.candidate[k];
            const double o = cc.output[k];
            const double tc = cc.tanh_c[k];

            const double do_k = dh[k] * tc;
            const double dc_k = dc[k] + dh[k] * o * (1.0 - tc * tc);
            const double df_k = dc_k * cc.c_prev[k];
            const double di_k = dc_k * g;
            const double dg_k = dc_k * i;

            da_f[k] = df_k * f * (1.0 - f);
            da_i[k] = di_k * i * (1.0 - i);
            da_g[k] = dg_k * (1.0 - g * g);
            da_o[k] = do_k * o * (1.0 - o);
            dc[k] = dc_k * f;  // flows to the previous step's cell state
        }

        const std::vector<double>& z = cc.joined;
        const std::size_t cols = params.w_forget.cols;
        auto accumulate_gate = [&](Matrix& dw, std::vector<double>& db,
                                   const std::vector<double>& da) {
            for (std::size_t k = 0; k < h; ++k) {
                double* row = dw.a.data() + k * cols;
                const double a = da[k];
                for (std::size_t j = 0; j < cols; ++j) row[j] += a * z[j];
                db[k] += a;
            }
        };
        accumulate_gate(grads.w_forget, grads.b_forget, da_f);
        accumulate_gate(grads.w_input, grads.b_input, da_i);
        accumulate_gate(grads.w_cell, grads.b_cell, da_g);
        accumulate_gate(grads.w_output, grads.b_output, da_o);

        // d[h_{t-1}] is the first `hidden` entries of W^T da summed over gates.
        for (std::size_t k = 0; k < h; ++k) {
            double acc = 0.0;
            for (std::size_t r = 0; r < h; ++r) {
                acc += params.w_forget(r, k) * da_f[r];
                acc += params.w_input(r, k) * da_i[r];
                acc += params.w_cell(r, k) * da_g[r];
                acc += params.w_output(r, k) * da_o[r];
            }
            dh[k] = acc;
        }
    }
    return grads;
}

double adam_update(double value, double& m, double& v, double grad, std::int64_t t,
                   const AdamConfig& cfg) {
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad * grad;
    const double m_hat = m / (1.0 - std::pow(cfg.beta1, static_cast<double>(t)));
    const double v_hat = v / (1.0 - std::pow(cfg.beta2, static_cast<double>(t)));
    return value - cfg.alpha * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
}

AdamState make_adam_state(const LstmParams& like, const AdamConfig& config) {
    AdamState state;
    state.m = like.zeros_like();
    state.v = like.zeros_like();
    state.config = config;
    return state;
}

void adam_step(AdamState& state, LstmParams& params, const LstmParams& grads) {
    if (!params.same_shape(grads) || !params.same_shape(state.m)) {
        throw DataError("adam_step: parameter, gradient and moment shapes differ");
    }
    const std::int64_t t = ++state.step;
    const auto ps = params.coefficient_arrays();
    const auto gs = grads.coefficient_arrays();
    const auto ms = state.m.coefficient_arrays();
    const auto vs = state.v.coefficient_arrays();
    for (std::size_t k = 0; k < ps.size(); ++k) {
        std::vector<double>& p = *ps[k];
        const std::vector<double>& g = *gs[k];
        std::vector<double>& m = *ms[k];
        std::vector<double>& v = *vs[k];
        for (std::size_t i = 0; i < p.size(); ++i) {
            p[i] = adam_update(p[i], m[i], v[i], g[i], t, state.config);
        }
    }
    params.b_readout = adam_update(params.b_readout, state.m.b_readout, state.v.b_readout,
                                   grads.b_readout, t, state.config);
}

void TrainConfig::validate() const {
    if (epochs < 1) throw ConfigError("epochs must be at least 1");
    if (batch_size < 1) throw ConfigError("batch_size must be at least 1");
    if (hidden < 1) throw ConfigError("hidden size must be at least 1");
    if (lookback < 1) throw ConfigError("lookback must be at least 1");
    if (grad_clip_norm < 0.0) throw ConfigError("grad_clip_norm must be >= 0");
}

LstmParams init_params(std::size_t hidden, std::size_t input_dim, std::uint64_t seed) {
    LstmParams p;
    p.w_forget = Matrix(hidden, hidden + input_dim);
    p.w_input = Matrix(hidden, hidden + input_dim);
    p.w_cell = Matrix(hidden, hidden + input_dim);
    p.w_output = Matrix(hidden, hidden + input_dim);
    p.b_forget.assign(hidden, 0.0);
    p.b_input.assign(hidden, 0.0);
    p.b_cell.assign(hidden, 0.0);
    p.b_output.assign(hidden, 0.0);
    p.w_readout.assign(hidden, 0.0);
    p.b_readout = 0.0;

    Rng rng(seed);
    const double k = 1.0 / std::sqrt(static_cast<double>(hidden + input_dim));
    // Weight draws happen in a fixed order so a seed defines the init exactly.
    for (double& w : p.w_forget.a) w = rng.uniform(-k, k);
    for (double& w : p.w_input.a) w = rng.uniform(-k, k);
    for (double& w : p.w_cell.a) w = rng.uniform(-k, k);
    for (double& w : p.w_output.a) w = rng.uniform(-k, k);
    for (double& w : p.w_readout) w = rng.uniform(-k, k);
    return p;
}

namespace {

void add_scaled(LstmParams& acc, const LstmParams& delta) {
    const auto as = acc.coefficient_arrays();
    const auto ds = delta.coefficient_arrays();
    for (std::size_t k = 0; k < as.size(); ++k) {
        std::vector<double>& a = *as[k];
        const std::vector<double>& d = *ds[k];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += d[i];
    }
    acc.b_readout += delta.b_readout;
}

double global_norm(const LstmParams& g) {
    double acc = g.b_readout * g.b_readout;
    for (const std::vector<double>* arr : g.coefficient_arrays()) {
        for (double x : *arr) acc += x * x;
    }
    return std::sqrt(acc);
}

void scale_params(LstmParams& g, double factor) {
    for (std::vector<double>* arr : g.coefficient_arrays()) {
        for (double& x : *arr) x *= factor;
    }
    g.b_readout *= factor;
}

}  // namespace

LstmModel train(const TrainConfig& config, std::span<const data::Sample> samples) {
    config.validate();
    if (samples.empty()) throw DataError("train: no samples");
    const std::size_t input_dim = samples.front().window.front().size();

    LstmModel model;
    model.config = config;
    model.params = init_params(config.hidden, input_dim, config.seed);
    model.adam = make_adam_state(model.params, config.adam);
    model.epoch_mae.reserve(config.epochs);

    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

    const std::size_t n = samples.size();
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        if (config.shuffle) {
            for (std::size_t i = n - 1; i > 0; --i) {
                std::swap(order[i], order[shuffle_rng.below(i + 1)]);
            }
        }

        double abs_error_sum = 0.0;
        for (std::size_t begin = 0; begin < n; begin += config.batch_size) {
            const std::size_t end = std::min(begin + config.batch_size, n);
            const auto batch = static_cast<double>(end - begin);

            LstmParams grads = model.params.zeros_like();
            for (std::size_t pos = begin; pos < end; ++pos) {
                const data::Sample& sample = samples[order[pos]];
                const ForwardResult fwd = forward_sequence(model.params, sample.window, true);
                const double residual = fwd.prediction - sample.target;
                abs_error_sum += std::abs(residual);
                // MAE subgradient; exact ties contribute zero.
                const double sign = residual > 0.0 ? 1.0 : (residual < 0.0 ? -1.0 : 0.0);
                if (sign != 0.0) {
                    add_scaled(grads, backward_through_time(model.params, fwd.caches,
                                                            sign / batch));
                }
            }
            if (config.grad_clip_norm > 0.0) {
                const double norm = global_norm(grads);
                if (norm > config.grad_clip_norm) {
                    scale_params(grads, config.grad_clip_norm / norm);
                }
            }
            adam_step(model.adam, model.params, grads);
        }
        model.epoch_mae.push_back(abs_error_sum / static_cast<double>(n));
    }

    model.trained = true;
    return model;
}

LstmModel train(const TrainConfig& config, const data::AlignedDataset& dataset) {
    if (config.lookback != dataset.lookback) {
        throw ConfigError("train: config lookback " + std::to_string(config.lookback) +
                          " differs from dataset lookback " + std::to_string(dataset.lookback));
    }
    const std::vector<data::Sample> samples = data::make_windows(dataset);
    LstmModel model = train(config, samples);
    model.scalers = dataset.scalers;
    return model;
}

data::PriceSeries predict(const LstmModel& model, const data::AlignedDataset& dataset,
                          PredictMode mode) {
    if (!model.trained) throw DataError("predict: model has not been trained");
    if (dataset.test_size() == 0) throw DataError("predict: empty test segment");
    const std::size_t lookback = model.config.lookback;
    if (dataset.split_index < lookback) {
        throw DataError("predict: training segment shorter than the lookback window");
    }

    // Scaled primary values; in recursive mode test rows are overwritten with
    // the model's own predictions as they are produced.
    std::vector<double> primary(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) primary[i] = dataset.features[i][0];

    std::vector<data::Observation> out;
    out.reserve(dataset.test_size());
    std::vector<std::vector<double>> window(lookback, std::vector<double>(2, 0.0));
    for (std::size_t row = dataset.split_index; row < dataset.size(); ++row) {
        for (std::size_t t = 0; t < lookback; ++t) {
            const std::size_t src = row - lookback + t;
            window[t][0] = primary[src];
            window[t][1] = dataset.features[src][1];
        }
        const double scaled = forward_sequence(model.params, window).prediction;
        if (mode == PredictMode::Recursive) primary[row] = scaled;
        out.push_back({dataset.dates[row], data::invert_scaler(model.scalers[0], scaled)});
    }
    return data::PriceSeries("lstm_forecast", std::move(out));
}

void save_checkpoint(const LstmModel& model, const std::filesystem::path& path) {
    nlohmann::json j;
    j["format"] = "tsforge-lstm-checkpoint";
    j["version"] = 1;
    j["trained"] = model.trained;

    nlohmann::json cfg;
    cfg["epochs"] = model.config.epochs;
    cfg["batch_size"] = model.config.batch_size;
    cfg["seed"] = model.config.seed;
    cfg["hidden"] = model.config.hidden;
    cfg["lookback"] = model.config.lookback;
    cfg["shuffle"] = model.config.shuffle;
    cfg["grad_clip_norm"] = model.config.grad_clip_norm;
    cfg["adam"] = {{"alpha", model.config.adam.alpha},
                   {"beta1", model.config.adam.beta1},
                   {"beta2", model.config.adam.beta2},
                   {"epsilon", model.config.adam.epsilon}};
    j["config"] = cfg;

    j["scalers"] = {{"primary", {{"min", model.scalers[0].min}, {"max", model.scalers[0].max}}},
                    {"secondary", {{"min", model.scalers[1].min}, {"max", model.scalers[1].max}}}};

    auto params_json = [](const LstmParams& p) {
        nlohmann::json out;
        out["hidden"] = p.hidden();
        out["input"] = p.input_dim();
        out["w_forget"] = p.w_forget.a;
        out["w_input"] = p.w_input.a;
        out["w_cell"] = p.w_cell.a;
        out["w_output"] = p.w_output.a;
        out["b_forget"] = p.b_forget;
        out["b_input"] = p.b_input;
        out["b_cell"] = p.b_cell;
        out["b_output"] = p.b_output;
        out["w_readout"] = p.w_readout;
        out["b_readout"] = p.b_readout;
        return out;
    };
    j["params"] = params_json(model.params);
    j["adam"] = {{"step", model.adam.step},
                 {"m", params_json(model.adam.m)},
                 {"v", params_json(model.adam.v)}};
    j["epoch_mae"] = model.epoch_mae;

    std::ofstream out(path);
    if (!out) throw DataError("cannot write checkpoint: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw DataError("checkpoint write failed: " + path.string());
}

LstmModel load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open checkpoint: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed checkpoint " + path.string() + ": " + e.what());
    }
    try {
        if (j.at("format") != "tsforge-lstm-checkpoint") {
            throw DataError("not a tsforge LSTM checkpoint: " + path.string());
        }
        LstmModel model;
        const nlohmann::json& cfg = j.at("config");
        model.config.epochs = cfg.at("epochs").get<std::size_t>();
        model.config.batch_size = cfg.at("batch_size").get<std::size_t>();
        model.config.seed = cfg.at("seed").get<std::uint64_t>();
        model.config.hidden = cfg.at("hidden").get<std::size_t>();
        model.config.lookback = cfg.at("lookback").get<std::size_t>();
        model.config.shuffle = cfg.at("shuffle").get<bool>();
        model.config.grad_clip_norm = cfg.at("grad_clip_norm").get<double>();
        model.config.adam.alpha = cfg.at("adam").at("alpha").get<double>();
        model.config.adam.beta1 = cfg.at("adam").at("beta1").get<double>();
        model.config.adam.beta2 = cfg.at("adam").at("beta2").get<double>();
        model.config.adam.epsilon = cfg.at("adam").at("epsilon").get<double>();

        model.scalers[0] = {j.at("scalers").at("primary").at("min").get<double>(),
                            j.at("scalers").at("primary").at("max").get<double>()};
        model.scalers[1] = {j.at("scalers").at("secondary").at("min").get<double>(),
                            j.at("scalers").at("secondary").at("max").get<double>()};

        auto params_from = [](const nlohmann::json& src) {
            LstmParams p;
            const auto hidden = src.at("hidden").get<std::size_t>();
            const auto input = src.at("input").get<std::size_t>();
            p.w_forget = Matrix(hidden, hidden + input);
            p.w_input = Matrix(hidden, hidden + input);
            p.w_cell = Matrix(hidden, hidden + input);
            p.w_output = Matrix(hidden, hidden + input);
            p.w_forget.a = src.at("w_forget").get<std::vector<double>>();
            p.w_input.a = src.at("w_input").get<std::vector<double>>();
            p.w_cell.a = src.at("w_cell").get<std::vector<double>>();
            p.w_output.a = src.at("w_output").get<std::vector<double>>();
            p.b_forget = src.at("b_forget").get<std::vector<double>>();
            p.b_input = src.at("b_input").get<std::vector<double>>();
            p.b_cell = src.at("b_cell").get<std::vector<double>>();
            p.b_output = src.at("b_output").get<std::vector<double>>();
            p.w_readout = src.at("w_readout").get<std::vector<double>>();
            p.b_readout = src.at("b_readout").get<double>();
            const std::size_t expect = hidden * (hidden + input);
            if (p.w_forget.a.size() != expect || p.b_forget.size() != hidden ||
                p.w_readout.size() != hidden) {
                throw DataError("checkpoint parameter shapes are inconsistent");
            }
            return p;
        };
        model.params = params_from(j.at("params"));
        model.adam.step = j.at("adam").at("step").get<std::int64_t>();
        model.adam.m = params_from(j.at("adam").at("m"));
        model.adam.v = params_from(j.at("adam").at("v"));
        model.adam.config = model.config.adam;
        model.epoch_mae = j.at("epoch_mae").get<std::vector<double>>();
        model.trained = j.at("trained").get<bool>();
        if (!model.params.same_shape(model.adam.m) || !model.params.same_shape(model.adam.v)) {
            throw DataError("checkpoint optimizer state does not match parameters");
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed checkpoint " + path.string() + ": " + e.what());
    }
}

}  // namespace tsforge::lstm
