#include "coxmal/distribution.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace coxmal {

DiscreteDistribution DiscreteDistribution::from_masses(const std::map<std::int64_t, double>& masses) {
  DiscreteDistribution d;
  double total = 0.0;
  for (const auto& [v, p] : masses) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("masses must be finite and non-negative");
    total += p;
    if (p > 0.0) {
      d.support_.push_back(v);
      d.mass_.push_back(p);
    }
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("masses must sum to 1");
  return d;
}

DiscreteDistribution DiscreteDistribution::from_weights(const std::map<std::int64_t, double>& weights) {
  double total = 0.0;
  for (const auto& [v, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("weights must have positive total");
  std::map<std::int64_t, double> masses;
  for (const auto& [v, w] : weights) masses[v] = w / total;
  return from_masses(masses);
}

DiscreteDistribution DiscreteDistribution::from_counts(const std::map<std::int64_t, std::uint64_t>& counts) {
  std::uint64_t total = 0;
  std::map<std::int64_t, double> weights;
  for (const auto& [v, c] : counts) {
    total += c;
    weights[v] = static_cast<double>(c);
  }
  auto d = from_weights(weights);
  d.provenance.exact = false;
  d.provenance.count = total;
  return d;
}

DiscreteDistribution DiscreteDistribution::point_mass(std::int64_t value) {
  return from_masses({{value, 1.0}});
}

double DiscreteDistribution::probability(std::int64_t value) const noexcept {
  for (std::size_t i = 0; i < support_.size(); ++i)
    if (support_[i] == value) return mass_[i];
  return 0.0;
}

double DiscreteDistribution::mean() const noexcept { return raw_moment(1); }

double DiscreteDistribution::raw_moment(int k) const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) s += mass_[i] * std::pow(static_cast<double>(support_[i]), k);
  return s;
}

double DiscreteDistribution::variance() const noexcept {
  const double mu = mean();
  double s = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const double d = static_cast<double>(support_[i]) - mu;
    s += mass_[i] * d * d;
  }
  return s;
}

double DiscreteDistribution::central_absolute_moment(int k) const noexcept {
  const double mu = mean();
  double s = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i)
    s += mass_[i] * std::pow(std::abs(static_cast<double>(support_[i]) - mu), k);
  return s;
}

double DiscreteDistribution::cdf(double x) const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < support_.size() && static_cast<double>(support_[i]) <= x; ++i) s += mass_[i];
  return std::min(s, 1.0);
}

double DiscreteDistribution::upper_tail(double x) const noexcept {
  double s = 0.0;
  for (std::size_t i = support_.size(); i-- > 0 && static_cast<double>(support_[i]) >= x;) s += mass_[i];
  return std::min(s, 1.0);
}

DiscreteDistribution DiscreteDistribution::affine(std::int64_t a, std::int64_t b) const {
  std::map<std::int64_t, double> masses;
  for (std::size_t i = 0; i < support_.size(); ++i) masses[a * support_[i] + b] += mass_[i];
  auto d = from_masses(masses);
  d.provenance = provenance;
  return d;
}

DiscreteDistribution DiscreteDistribution::size_biased() const {
  if (!support_.empty() && support_.front() < 0) throw std::domain_error("size bias needs a non-negative variable");
  const double mu = mean();
  if (!(mu > 0.0)) throw std::domain_error("size bias needs a positive mean");
  std::map<std::int64_t, double> weights;
  for (std::size_t i = 0; i < support_.size(); ++i) weights[support_[i]] = static_cast<double>(support_[i]) * mass_[i];
  auto d = from_weights(weights);
  d.provenance = provenance;
  return d;
}

DiscreteDistribution convolve(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  std::map<std::int64_t, double> masses;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) masses[a.support()[i] + b.support()[j]] += a.mass()[i] * b.mass()[j];
  return DiscreteDistribution::from_weights(masses);
}

double total_variation(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  std::map<std::int64_t, double> diff;
  for (std::size_t i = 0; i < a.size(); ++i) diff[a.support()[i]] += a.mass()[i];
  for (std::size_t i = 0; i < b.size(); ++i) diff[b.support()[i]] -= b.mass()[i];
  double s = 0.0;
  for (const auto& [v, d] : diff) s += std::abs(d);
  return 0.5 * s;
}

MomentSummary summarize(const DiscreteDistribution& d) {
  MomentSummary m;
  m.mean = d.mean();
  m.variance = d.variance();
  m.third_central_absolute = d.central_absolute_moment(3);
  if (!d.provenance.exact && d.provenance.count) {
    m.count = *d.provenance.count;
    if (m.count > 1) m.variance *= static_cast<double>(m.count) / static_cast<double>(m.count - 1);
    m.standard_error = std::sqrt(m.variance / static_cast<double>(m.count));
  }
  return m;
}

void write_csv(std::ostream& out, const DiscreteDistribution& d) {
  const auto& p = d.provenance;
  out << "# descriptor=" << p.descriptor << '\n';
  out << "# q=";
  for (std::size_t i = 0; i < p.q.size(); ++i) out << (i ? ";" : "") << std::setprecision(17) << p.q[i];
  out << '\n';
  out << "# statistic=" << p.statistic << '\n';
  out << "# mode=" << (p.exact ? "exact" : "empirical") << '\n';
  if (p.seed) out << "# seed=" << *p.seed << '\n';
  if (p.count) out << "# count=" << *p.count << '\n';
  out << "value,probability\n";
  for (std::size_t i = 0; i < d.size(); ++i) out << d.support()[i] << ',' << std::setprecision(17) << d.mass()[i] << '\n';
}

}  // namespace coxmal
