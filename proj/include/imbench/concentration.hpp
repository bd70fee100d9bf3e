#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace imbench {

// Inputs for the sample-size bounds: estimate the mean mu of a [0,1]
// variable with variance sigma^2 to relative error epsilon, failing with
// probability at most delta.
struct SampleSizeRequest {
  double mu;       // (0, 1]
  double sigma;    // >= 0
  double epsilon;  // > 0
  double delta;    // (0, 1)

  void validate() const;
};

// n >= sigma^2 / (delta eps^2 mu^2), ceiled, floored at 1.
uint64_t chebyshev_samples(const SampleSizeRequest& req);

// n >= 3 ln(2/delta) / (eps^2 mu), ceiled, floored at 1.
uint64_t chernoff_samples(const SampleSizeRequest& req);

struct SampleSizeRow {
  double epsilon;
  uint64_t chebyshev_n;
  uint64_t chernoff_n;
};

std::vector<SampleSizeRow> sample_size_table(double mu, double sigma,
                                             double delta,
                                             const std::vector<double>& epsilons);

// CSV with header "epsilon,chebyshev_n,chernoff_n".
void write_sample_size_csv(std::ostream& out,
                           const std::vector<SampleSizeRow>& rows);

}  // namespace imbench
