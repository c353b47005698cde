#ifndef BLINDMON_REFERENCE_TABLES_HPP_
#define BLINDMON_REFERENCE_TABLES_HPP_

#include <array>

namespace blindmon {

// Published Monte Carlo results (10^4 runs, n1 = 10, mu2 = 0) for the two
// reference grids, in the order produced by table_scenarios().
struct ReferenceRow {
  int table;
  double mu1;
  double n_req;
  double mean_blinded;
  double sd_blinded;
  double ratio_blinded;
  double upper_bound;
  double mean_unblinded;
  double sd_unblinded;
  double ratio_unblinded;
};

inline constexpr std::array<ReferenceRow, 30> kReferenceRows = {{
    {1, 1, 10, 11.4037, 1.8735, 1.1404, 11.75, 11.2955, 1.8238, 1.1296},
    {1, 1, 50, 49.9064, 7.3498, 0.9981, 51.75, 49.7201, 7.3623, 0.9944},
    {1, 1, 100, 99.9400, 10.1021, 0.9994, 101.75, 99.5718, 10.1720, 0.9957},
    {1, 1, 500, 500.1991, 22.3504, 1.0004, 501.75, 499.9163, 22.1464, 0.9998},
    {1, 1, 1000, 1000.0603, 31.4952, 1.0001, 1001.75, 999.9493, 31.5001, 0.9999},
    {1, 2, 10, 11.9195, 2.2187, 1.1920, 12.5, 11.2955, 1.8238, 1.1296},
    {1, 2, 50, 50.7311, 7.4199, 1.0146, 52.5, 49.7201, 7.3623, 0.9944},
    {1, 2, 100, 100.6331, 10.1656, 1.0063, 102.5, 99.5718, 10.1720, 0.9957},
    {1, 2, 500, 500.9419, 22.3626, 1.0019, 502.5, 499.9163, 22.1464, 0.9998},
    {1, 2, 1000, 1000.8652, 31.5596, 1.0009, 1002.5, 999.9493, 31.5001, 0.9999},
    {1, 5, 10, 16.4330, 3.7084, 1.6433, 17.75, 11.2955, 1.8238, 1.1296},
    {1, 5, 50, 56.0726, 7.6538, 1.1215, 57.75, 49.7201, 7.3623, 0.9944},
    {1, 5, 100, 106.0004, 10.3054, 1.0600, 107.75, 99.5718, 10.1720, 0.9957},
    {1, 5, 500, 506.1834, 22.5512, 1.0124, 507.75, 499.9163, 22.1464, 0.9998},
    {1, 5, 1000, 1006.0055, 31.5900, 1.0060, 1007.75, 999.9493, 31.5001, 0.9999},
    {2, 1, 10, 13.0250, 2.7759, 1.3025, 14, 11.2955, 1.8238, 1.1296},
    {2, 1, 50, 62.4143, 7.9760, 1.2483, 64, 49.7201, 7.3623, 0.9944},
    {2, 1, 100, 124.9483, 10.9901, 1.2495, 126.5, 99.5718, 10.1720, 0.9957},
    {2, 1, 500, 624.8957, 24.2892, 1.2498, 626.5, 499.9163, 22.1464, 0.9998},
    {2, 1, 1000, 1249.7079, 34.0695, 1.2497, 1251.5, 999.9493, 31.5001, 0.9999},
    {2, 2, 10, 20.2562, 4.0676, 2.0256, 21.5, 11.2955, 1.8238, 1.1296},
    {2, 2, 50, 100.2653, 8.7786, 2.0053, 101.5, 49.7201, 7.3623, 0.9944},
    {2, 2, 100, 200.3337, 12.2293, 2.0033, 201.5, 99.5718, 10.1720, 0.9957},
    {2, 2, 500, 1000.0871, 27.1989, 2.0002, 1001.5, 499.9163, 22.1464, 0.9998},
    {2, 2, 1000, 2000.5408, 38.4516, 2.0005, 2001.5, 999.9493, 31.5001, 0.9999},
    {2, 5, 10, 73.3414, 4.3575, 7.3341, 74, 11.2955, 1.8238, 1.1296},
    {2, 5, 50, 363.3671, 9.6653, 7.2673, 364, 49.7201, 7.3623, 0.9944},
    {2, 5, 100, 725.7457, 13.6278, 7.2575, 726.5, 99.5718, 10.1720, 0.9957},
    {2, 5, 500, 3626.0818, 30.3324, 7.2522, 3626.5, 499.9163, 22.1464, 0.9998},
    {2, 5, 1000, 7251.0777, 42.9622, 7.2511, 7251.5, 999.9493, 31.5001, 0.9999},
}};

}  // namespace blindmon

#endif  // BLINDMON_REFERENCE_TABLES_HPP_
