#pragma once

#include <cstdint>
#include <span>

namespace imbench {

struct TTestResult {
  double t = 0.0;
  double p = 1.0;          // two-sided
  double mean_diff = 0.0;  // mean(a - b)
  uint32_t df = 0;
  bool degenerate = false; // zero-variance differences
};

// Two-sided paired Student's t-test on per-index differences a[i] - b[i].
// Needs two equal-length samples of size >= 2. Zero-variance differences
// degenerate to p = 1 when the means agree and p = 0 when they do not.
TTestResult paired_runtime_test(std::span<const double> a,
                                std::span<const double> b);

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double incomplete_beta(double a, double b, double x);

// P(|T_df| >= |t|) for Student's t.
double student_t_two_sided_p(double t, double df);

}  // namespace imbench
