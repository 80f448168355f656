#include "tsforge/scaler.hpp"

#include <algorithm>
#include <cmath>

#include "tsforge/errors.hpp"
#include "tsforge/text.hpp"

namespace tsforge::data {

ScalerParams fit_scaler(std::span<const double> column) {
    if (column.size() < 2) {
        throw NumericError("scaler needs at least two values, got " +
                           std::to_string(column.size()));
    }
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    if (!std::isfinite(*lo) || !std::isfinite(*hi)) {
        throw NumericError("scaler input contains non-finite values");
    }
    if (*lo == *hi) {
        throw NumericError("constant column: min == max == " + format_double(*lo));
    }
    return ScalerParams{*lo, *hi};
}

}  // namespace tsforge::data
