#ifndef BLINDMON_THEORY_HPP_
#define BLINDMON_THEORY_HPP_

#include <cstdint>
#include <functional>

namespace blindmon {

/*
 * Closed-form quantities for the blinded stopping time N_b.
 *
 * Bounds on E(N_b):
 *   theorem: n1  + v sigma^2 + v delta^2 / 4
 *   table:   1.5 + v sigma^2 + v delta^2 / 4
 * The "table" variant is the one the published simulation tables list in
 * their upper-bound column; it drops the (2 n1 - 3) 1{N = n1} term of the
 * argument. Both are exposed.
 */
enum class BoundVariant { theorem, table };

double mean_bound(std::int64_t n1, double v, double sigma, double mu1, double mu2,
                  BoundVariant variant);

// Bound on E(N_b^2): the square of the theorem-variant mean bound.
double second_moment_bound(std::int64_t n1, double v, double sigma, double mu1, double mu2);

// Midpoint of (epsilon, 1).
inline double default_tail_q(double epsilon) { return 0.5 * (epsilon + 1.0); }

/*
 * Chernoff-type bound on P(N_b <= epsilon a), a = n_req:
 *   sum_{n=n1}^{floor(q a) - 1} (exp(1 - n/a) n/a)^{(2n-1)/2}.
 * Requires n1 >= 2, 0 < epsilon < q < 1 and epsilon a < floor(q a) - 1;
 * violations throw DomainError naming the inequality.
 */
double tail_bound_sum(std::int64_t n1, double a, double epsilon, double q);

/*
 * The sharper sum of exact probabilities
 *   sum_{n=n1}^{floor(q a) - 1} P(chi2_{2n-1}(lambda(n)) <= n (2n-1) / a).
 */
double tail_bound_chisq(std::int64_t n1, double a, double epsilon, double q,
                        const std::function<double(std::int64_t)>& lambda_fn);

// lambda(n) = n delta^2 / (2 sigma^2).
double tail_bound_chisq(std::int64_t n1, double a, double epsilon, double q, double delta,
                        double sigma);

struct TheoryTargets {
  double mean_bound_theorem;
  double mean_bound_table;
  double second_moment_bound;
  // sigma -> infinity regime
  double ratio_limit_sigma;
  double clt_center_sigma;
  double clt_var_sigma;
  // v -> infinity regime
  double ratio_limit_v;
  double clt_center_v;
  double clt_var_v;
};

TheoryTargets asymptotic_targets(double v, double sigma, double mu1, double mu2,
                                 std::int64_t n1);

}  // namespace blindmon

#endif  // BLINDMON_THEORY_HPP_
