#ifndef BLINDMON_ESTIMATORS_HPP_
#define BLINDMON_ESTIMATORS_HPP_

#include <cstdint>

namespace blindmon {

/*
 * Online sufficient statistics over pairs (x_i, y_i).
 *
 * Keeps two independent sets of Welford recurrences:
 *  - per-group (mean_x, m2_x) and (mean_y, m2_y), used by the unblinded
 *    estimator;
 *  - pooled (mean_z, m2_z) over the 2n unlabelled values, fed x then y.
 *
 * blinded_variance() reads only the pooled fields, so it never depends on
 * the group labels. The labelled fields let tests check the decomposition
 *   m2_z = m2_x + m2_y + n (mean_x - mean_y)^2 / 2.
 */
class PairAccumulator {
 public:
  // Throws InputError for non-finite x or y; the accumulator is unchanged.
  void push_pair(double x, double y);

  std::int64_t n() const noexcept { return n_; }
  double mean_x() const noexcept { return mean_x_; }
  double mean_y() const noexcept { return mean_y_; }
  double m2_x() const noexcept { return m2_x_; }
  double m2_y() const noexcept { return m2_y_; }
  double mean_z() const noexcept { return mean_z_; }
  double m2_z() const noexcept { return m2_z_; }

  // m2_z / (2n - 1). Throws StateError when n == 0.
  double blinded_variance() const;

  // (m2_x + m2_y) / (2n - 2). Throws StateError when n < 2.
  double unblinded_variance() const;

 private:
  std::int64_t n_ = 0;
  double mean_x_ = 0.0;
  double mean_y_ = 0.0;
  double m2_x_ = 0.0;
  double m2_y_ = 0.0;
  std::int64_t count_z_ = 0;
  double mean_z_ = 0.0;
  double m2_z_ = 0.0;
};

}  // namespace blindmon

#endif  // BLINDMON_ESTIMATORS_HPP_
