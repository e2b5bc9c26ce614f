#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coxmal {

struct Provenance {
  std::string descriptor;
  std::vector<double> q;
  std::string statistic;
  bool exact = true;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> count;
};

/// A probability mass function on finitely many integers.
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;

  /// Throws std::invalid_argument for negative masses or a total outside
  /// 1 +- 1e-9. Zero masses are dropped.
  static DiscreteDistribution from_masses(const std::map<std::int64_t, double>& masses);
  /// Normalizes positive weights.
  static DiscreteDistribution from_weights(const std::map<std::int64_t, double>& weights);
  static DiscreteDistribution from_counts(const std::map<std::int64_t, std::uint64_t>& counts);
  static DiscreteDistribution point_mass(std::int64_t value);

  const std::vector<std::int64_t>& support() const noexcept { return support_; }
  const std::vector<double>& mass() const noexcept { return mass_; }
  std::size_t size() const noexcept { return support_.size(); }
  bool empty() const noexcept { return support_.empty(); }

  double probability(std::int64_t value) const noexcept;
  double mean() const noexcept;
  double variance() const noexcept;
  double raw_moment(int k) const noexcept;
  /// E|X - EX|^k.
  double central_absolute_moment(int k) const noexcept;

  /// P(X <= x) and P(X >= x).
  double cdf(double x) const noexcept;
  double upper_tail(double x) const noexcept;

  /// Law of a * X + b.
  DiscreteDistribution affine(std::int64_t a, std::int64_t b) const;
  /// x P(x) / EX. Throws std::domain_error for negative support or zero mean.
  DiscreteDistribution size_biased() const;

  Provenance provenance;

 private:
  std::vector<std::int64_t> support_;
  std::vector<double> mass_;
};

/// Law of X + Y for independent X and Y.
DiscreteDistribution convolve(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// sup_A |P(A) - Q(A)| = half the l1 distance.
double total_variation(const DiscreteDistribution& a, const DiscreteDistribution& b);

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  double third_central_absolute = 0.0;
  std::uint64_t count = 0;  // 0 for an exact law
  double standard_error = 0.0;
};

/// For an empirical law the variance is the unbiased sample variance and the
/// standard error is sqrt(variance / count).
MomentSummary summarize(const DiscreteDistribution& d);

/// `value,probability` rows after a `#` comment header with the provenance.
void write_csv(std::ostream& out, const DiscreteDistribution& d);

}  // namespace coxmal
