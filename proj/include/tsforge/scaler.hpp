#pragma once

#include <span>

namespace tsforge::data {

/// Min-max scaling parameters for one feature. apply maps [min, max] onto
/// [0, 1]; values outside the fit range map linearly outside [0, 1].
struct ScalerParams {
    double min = 0.0;
    double max = 1.0;
};

/// Fits on the given column. Throws NumericError when the column is constant
/// (max == min) or has fewer than two values.
ScalerParams fit_scaler(std::span<const double> column);

inline double apply_scaler(const ScalerParams& p, double x) {
    return (x - p.min) / (p.max - p.min);
}

inline double invert_scaler(const ScalerParams& p, double x) {
    return p.min + x * (p.max - p.min);
}

}  // namespace tsforge::data
