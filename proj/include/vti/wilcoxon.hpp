#pragma once

#include <cstddef>
#include <span>

namespace vti {

struct WilcoxonResult {
  double r_plus = 0.0;     // rank sum of positive differences
  double r_minus = 0.0;    // rank sum of negative differences
  double p_value = 1.0;    // two-sided
  std::size_t n_effective = 0; // non-zero differences
  bool valid = false;      // false when every difference is zero
  enum class Method { exact, normal_approx } method = Method::exact;
};

// Paired two-sided Wilcoxon signed-rank test of a vs b. Zero differences
// are dropped; tied magnitudes get average ranks. The p-value is exact
// (full sign enumeration) for n_effective <= 20, otherwise a normal
// approximation without continuity correction.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b);

// Two-sided normal-approximation p from the rank sums, no continuity
// correction: z = (min(R+,R-) - n(n+1)/4) / sqrt(n(n+1)(2n+1)/24).
double wilcoxon_normal_approx_p(double r_plus, double r_minus, std::size_t n);

} // namespace vti
