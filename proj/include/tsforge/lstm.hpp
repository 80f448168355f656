#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "tsforge/dataset.hpp"
#include "tsforge/price_series.hpp"
#include "tsforge/scaler.hpp"

namespace tsforge::lstm {

/// Minimal dense row-major matrix; all gate weights live in these.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

double sigmoid(double x);
double tanh_act(double x);

/// Gate weights and biases. Every gate matrix has shape
/// hidden x (hidden + input) and is applied to the concatenation
/// [h_{t-1}, x_t]; the read-out maps the final hidden state to one scalar.
struct LstmParams {
    Matrix w_forget, w_input, w_cell, w_output;
    std::vector<double> b_forget, b_input, b_cell, b_output;
    std::vector<double> w_readout;
    double b_readout = 0.0;

    std::size_t hidden() const { return w_forget.rows; }
    std::size_t input_dim() const { return w_forget.cols - w_forget.rows; }

    /// Same shapes, all values zero. Gradients and Adam moments use this.
    LstmParams zeros_like() const;

    /// The nine coefficient arrays in a fixed order (b_readout is separate).
    /// Lets the optimizer and shape checks treat parameters, gradients and
    /// moments uniformly.
    std::array<std::vector<double>*, 9> coefficient_arrays();
    std::array<const std::vector<double>*, 9> coefficient_arrays() const;

    bool same_shape(const LstmParams& other) const;
};

/// Hidden state h_t and internal cell state c_t.
struct CellState {
    std::vector<double> h, c;

    explicit CellState(std::size_t hidden = 0) : h(hidden, 0.0), c(hidden, 0.0) {}
};

/// Everything the backward pass needs from one forward step.
struct StepCache {
    std::vector<double> joined;                            // [h_{t-1}, x_t]
    std::vector<double> forget, input, candidate, output;  // gate activations
    std::vector<double> c_prev, c, tanh_c;
};

/// One cell step:
///   f = sigma(W_f [h,x] + b_f),  i = sigma(W_i [h,x] + b_i),
///   g = tanh(W_c [h,x] + b_c),   o = sigma(W_o [h,x] + b_o),
///   c' = f*c + i*g,              h' = o * tanh(c').
/// Pass a cache pointer to retain intermediates for the backward pass.
CellState lstm_cell_forward(const LstmParams& params, std::span<const double> x,
                            const CellState& prev, StepCache* cache = nullptr);

struct ForwardResult {
    double prediction = 0.0;
    std::vector<StepCache> caches;  // empty unless requested
};

/// Runs the cell over every window row from a zero initial state and applies
/// the linear read-out to the final hidden state.
ForwardResult forward_sequence(const LstmParams& params,
                               const std::vector<std::vector<double>>& window,
                               bool keep_caches = false);

double mae_loss(std::span<const double> predictions, std::span<const double> targets);

/// Backpropagation through time: gradient of the scalar loss with respect to
/// every parameter, given d(loss)/d(prediction) and the forward caches.
LstmParams backward_through_time(const LstmParams& params, const std::vector<StepCache>& caches,
                                 double d_prediction);

struct AdamConfig {
    double alpha = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Bias-corrected moment update for one coordinate; returns the new value of
/// the parameter. t is the step count after incrementing.
double adam_update(double value, double& m, double& v, double grad, std::int64_t t,
                   const AdamConfig& cfg);

struct AdamState {
    std::int64_t step = 0;
    LstmParams m, v;  // moment accumulators, shapes mirror the parameters
    AdamConfig config{};
};

AdamState make_adam_state(const LstmParams& like, const AdamConfig& config = {});

/// One optimizer step; increments state.step and updates params in place.
void adam_step(AdamState& state, LstmParams& params, const LstmParams& grads);

struct TrainConfig {
    std::size_t epochs = 200;
    std::size_t batch_size = 200;
    std::uint64_t seed = 42;
    std::size_t hidden = 32;
    std::size_t lookback = data::kDefaultLookback;
    bool shuffle = false;          // keep sample order between epochs by default
    double grad_clip_norm = 0.0;   // 0 disables clipping
    AdamConfig adam{};

    void validate() const;  // epochs >= 1, batch_size >= 1, hidden >= 1
};

enum class PredictMode {
    OneStep,    // each window built from observed scaled values
    Recursive,  // past primary-feature values replaced by own predictions
};

struct LstmModel {
    TrainConfig config;
    LstmParams params;
    AdamState adam;
    std::array<data::ScalerParams, 2> scalers{};  // identity unless trained on a dataset
    std::vector<double> epoch_mae;                // training MAE per epoch
    bool trained = false;
};

/// Seeded uniform init in [-k, k], k = 1/sqrt(hidden + input); biases zero.
LstmParams init_params(std::size_t hidden, std::size_t input_dim, std::uint64_t seed);

/// Core training loop over prepared samples. Deterministic for a given
/// config: identical seeds give bit-identical parameters.
LstmModel train(const TrainConfig& config, std::span<const data::Sample> samples);

/// Convenience wrapper: windows the dataset's training segment and carries
/// its scaler parameters into the model.
LstmModel train(const TrainConfig& config, const data::AlignedDataset& dataset);

/// Forecasts every test-segment date, inverse-scaled to index points.
data::PriceSeries predict(const LstmModel& model, const data::AlignedDataset& dataset,
                          PredictMode mode = PredictMode::OneStep);

/// Self-describing JSON checkpoint (config, scalers, optimizer state, all
/// weights as decimal text). Reloading reproduces forecasts exactly.
void save_checkpoint(const LstmModel& model, const std::filesystem::path& path);
LstmModel load_checkpoint(const std::filesystem::path& path);

}  // namespace tsforge::lstm
