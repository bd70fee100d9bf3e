#include "imbench/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace imbench {

void SampleSizeRequest::validate() const {
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("mu must lie in (0, 1]");
  }
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
}

namespace {

uint64_t ceil_at_least_one(double x) {
  const double c = std::ceil(x);
  return c < 1.0 ? 1 : static_cast<uint64_t>(c);
}

}  // namespace

uint64_t chebyshev_samples(const SampleSizeRequest& req) {
  req.validate();
  return ceil_at_least_one(req.sigma * req.sigma /
                           (req.delta * req.epsilon * req.epsilon * req.mu *
                            req.mu));
}

uint64_t chernoff_samples(const SampleSizeRequest& req) {
  req.validate();
  return ceil_at_least_one(3.0 * std::log(2.0 / req.delta) /
                           (req.epsilon * req.epsilon * req.mu));
}

std::vector<SampleSizeRow> sample_size_table(
    double mu, double sigma, double delta,
    const std::vector<double>& epsilons) {
  if (epsilons.empty()) {
    throw std::invalid_argument("epsilon list must be non-empty");
  }
  std::vector<double> sorted(epsilons);
  std::sort(sorted.begin(), sorted.end());
  std::vector<SampleSizeRow> rows;
  rows.reserve(sorted.size());
  for (double eps : sorted) {
    SampleSizeRequest req{mu, sigma, eps, delta};
    rows.push_back({eps, chebyshev_samples(req), chernoff_samples(req)});
  }
  return rows;
}

void write_sample_size_csv(std::ostream& out,
                           const std::vector<SampleSizeRow>& rows) {
  out << "epsilon,chebyshev_n,chernoff_n\n";
  for (const auto& r : rows) {
    out << r.epsilon << ',' << r.chebyshev_n << ',' << r.chernoff_n << '\n';
  }
}

}  // namespace imbench
