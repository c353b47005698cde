#include "blindmon/estimators.hpp"

#include <cmath>

#include "blindmon/errors.hpp"

namespace blindmon {

namespace {

inline void welford(double value, double count, double& mean, double& m2) {
  const double delta = value - mean;
  mean += delta / count;
  m2 += delta * (value - mean);
}

}  // namespace

void PairAccumulator::push_pair(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw InputError("push_pair: observations must be finite");
  }
  ++n_;
  const auto n = static_cast<double>(n_);
  welford(x, n, mean_x_, m2_x_);
  welford(y, n, mean_y_, m2_y_);

  welford(x, static_cast<double>(++count_z_), mean_z_, m2_z_);
  welford(y, static_cast<double>(++count_z_), mean_z_, m2_z_);
}

double PairAccumulator::blinded_variance() const {
  if (n_ < 1) {
    throw StateError("blinded_variance: needs at least one pair");
  }
  return m2_z_ / static_cast<double>(count_z_ - 1);
}

double PairAccumulator::unblinded_variance() const {
  if (n_ < 2) {
    throw StateError("unblinded_variance: needs at least two pairs");
  }
  return (m2_x_ + m2_y_) / static_cast<double>(2 * n_ - 2);
}

}  // namespace blindmon
