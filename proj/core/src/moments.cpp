#include "coxmal/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "coxmal/parallel.hpp"
#include "coxmal/qanalog.hpp"

namespace coxmal {

namespace {

using Weights = std::map<std::int64_t, double>;

double weight(int len, double log_q) { return std::exp(len * log_q); }

}  // namespace

std::string label(const Factor& g, double q) {
  std::ostringstream out;
  out << g.to_string() << " q=" << q;
  return out.str();
}

std::string_view statistic_name(Statistic s) noexcept {
  switch (s) {
    case Statistic::two_sided: return "t";
    case Statistic::descents: return "des";
    case Statistic::length: return "length";
  }
  return "?";
}

Statistic parse_statistic(std::string_view text) {
  if (text == "t" || text == "two-sided") return Statistic::two_sided;
  if (text == "des" || text == "descents") return Statistic::descents;
  if (text == "length") return Statistic::length;
  throw std::invalid_argument("unknown statistic: " + std::string(text));
}

int evaluate(Statistic s, const SignedPermutation& w, Kind kind) {
  switch (s) {
    case Statistic::two_sided: return two_sided_descent(w, kind);
    case Statistic::descents: return descent_count(w, kind, Side::right);
    case Statistic::length: return length(w, kind);
  }
  return 0;
}

int evaluate(Statistic s, DihedralElement x, const DihedralGroup& g) {
  switch (s) {
    case Statistic::two_sided: return g.two_sided_descent(x);
    case Statistic::descents: return (g.right_descent(x, 0) ? 1 : 0) + (g.right_descent(x, 1) ? 1 : 0);
    case Statistic::length: return g.length(x);
  }
  return 0;
}

double mean_two_sided(const Factor& g, double q) {
  return 2.0 * q * g.rank() / (1.0 + q);
}

double mean_two_sided(const MallowsSpec& spec) {
  double mu = 0.0;
  for (std::size_t i = 0; i < spec.q.size(); ++i) mu += mean_two_sided(spec.factor(i), spec.q[i]);
  return mu;
}

VarianceBounds variance_bounds_two_sided(const Factor& g, double q) {
  if (g.kind() == Kind::I2) throw std::invalid_argument("variance bounds are stated for A, B and D only");
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
  const double p = std::min(q, 1.0 / q);
  const double n = g.rank();
  const double denom = (1 + p) * (1 + p) * (1 + p + p * p);
  const double core = 2 * n * p * (1 - p + p * p) / denom;
  VarianceBounds b;
  switch (g.kind()) {
    case Kind::A:
      b.lower = core;
      b.upper = 2 * n * p * (1 + p) * (1 + p) / q_integer(g.rank(), p) + 2 * (n + 2) * p * (1 - p + p * p) / denom;
      b.simple_lower = n * p / 6;
      b.simple_upper = 8 * n * p;
      b.simple_applicable = g.rank() >= 2;
      break;
    case Kind::B:
      b.lower = core;
      b.upper = 2 * n * p * (2 + p + 2 * p * p) / denom;
      b.simple_lower = n * p / 6;
      b.simple_upper = 4 * n * p;
      break;
    case Kind::D:
      b.lower = core - 10 * p * p / ((1 + p) * (1 + p));
      b.upper = 4 * n * p * (2 + 2 * p + 3 * p * p + p * p * p) / denom;
      b.simple_lower = n * p / 12;
      b.simple_upper = 8 * n * p;
      b.simple_applicable = g.rank() >= 30;
      break;
    case Kind::I2: break;
  }
  return b;
}

double cube_moment_bound(const Factor& g, double q) {
  const double n = g.rank();
  const double p = q / (1 + q);
  return n * n * n * p * p * p + 24 * n * n * p * p + 16 * n * p;
}

DiscreteDistribution exact_distribution(const Factor& g, double q, Statistic s) {
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("q must be positive and finite");
  const double log_q = std::log(q);
  Weights weights;
  if (g.kind() == Kind::I2) {
    const DihedralGroup d(g.param());
    for (const auto& x : d.elements()) weights[evaluate(s, x, d)] += weight(d.length(x), log_q);
  } else {
    for_each_element(g, [&](const SignedPermutation& w) {
      weights[evaluate(s, w, g.kind())] += weight(length(w, g.kind()), log_q);
    });
  }
  auto dist = DiscreteDistribution::from_weights(weights);
  dist.provenance = {g.to_string(), {q}, std::string(statistic_name(s)), true, std::nullopt, std::nullopt};
  return dist;
}

DiscreteDistribution exact_distribution(const MallowsSpec& spec, Statistic s) {
  auto dist = exact_distribution(spec.factor(0), spec.q[0], s);
  for (std::size_t i = 1; i < spec.q.size(); ++i) dist = convolve(dist, exact_distribution(spec.factor(i), spec.q[i], s));
  dist.provenance = {spec.group.to_string(), spec.q, std::string(statistic_name(s)), true, std::nullopt, std::nullopt};
  return dist;
}

std::vector<int> sample_statistic(const MallowsSpec& spec, Statistic s, const McOptions& options) {
  const MallowsSampler sampler(spec);
  std::vector<std::optional<DihedralGroup>> dihedral;
  for (const auto& f : spec.group.factors) {
    dihedral.push_back(f.kind() == Kind::I2 ? std::optional<DihedralGroup>(DihedralGroup(f.param())) : std::nullopt);
  }
  auto chunks = run_chunked(options.samples, options.threads,
                            [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
                              Rng rng = Rng::derive(options.seed, chunk);
                              std::vector<int> values;
                              values.reserve(end - begin);
                              for (auto k = begin; k < end; ++k) {
                                int value = 0;
                                for (std::size_t f = 0; f < dihedral.size(); ++f) {
                                  const auto x = sampler.sample_factor(f, rng);
                                  value += dihedral[f] ? evaluate(s, std::get<DihedralElement>(x), *dihedral[f])
                                                       : evaluate(s, std::get<SignedPermutation>(x),
                                                                  spec.factor(f).kind());
                                }
                                values.push_back(value);
                              }
                              return values;
                            });
  std::vector<int> out;
  out.reserve(options.samples);
  for (const auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
  return out;
}

DiscreteDistribution empirical_distribution(const MallowsSpec& spec, Statistic s, const McOptions& options) {
  if (options.samples == 0) throw std::invalid_argument("sample count must be positive");
  std::map<std::int64_t, std::uint64_t> counts;
  for (int v : sample_statistic(spec, s, options)) ++counts[v];
  auto dist = DiscreteDistribution::from_counts(counts);
  dist.provenance = {spec.group.to_string(), spec.q, std::string(statistic_name(s)), false, options.seed,
                     options.samples};
  return dist;
}

Check mean_check(const Factor& g, double q, const Tolerances& tol) {
  const double exact = exact_distribution(g, q).mean();
  const double formula = mean_two_sided(g, q);
  auto c = Check::at_most("mean of t matches 2qn/(1+q) [" + label(g, q) + "]", std::abs(exact - formula) / formula,
                          tol.relative);
  c.extra = {{"exact", exact}, {"formula", formula}};
  return c;
}

std::vector<Check> variance_bounds_check(const Factor& g, double q) {
  const double var = exact_distribution(g, q).variance();
  const auto b = variance_bounds_two_sided(g, q);
  const std::string tag = " [" + label(g, q) + "]";
  std::vector<Check> out;
  auto lower = Check::at_least("variance of t above lower bound" + tag, var, std::max(0.0, b.lower));
  lower.extra = {{"raw_lower", b.lower}};
  out.push_back(std::move(lower));
  out.push_back(Check::at_most("variance of t below upper bound" + tag, var, b.upper));
  auto simple_lower = Check::at_least("variance of t above n*min(q,1/q) lower bound" + tag, var, b.simple_lower);
  auto simple_upper = Check::at_most("variance of t below n*min(q,1/q) upper bound" + tag, var, b.simple_upper);
  if (!b.simple_applicable) {
    simple_lower.informational("rank below hypothesis");
    simple_upper.informational("rank below hypothesis");
  }
  out.push_back(std::move(simple_lower));
  out.push_back(std::move(simple_upper));
  if (g.kind() == Kind::A && g.rank() < 2) {
    for (auto& c : out) c.informational("type A bounds need n >= 2");
  }
  return out;
}

Check cube_moment_bound_check(const Factor& g, double q) {
  const auto des = exact_distribution(g, q, Statistic::descents);
  return Check::at_most("E des^3 below cube bound [" + label(g, q) + "]", des.raw_moment(3), cube_moment_bound(g, q));
}

Check descent_indicator_mean_check(const Factor& g, double q, const Tolerances& tol) {
  const double target = q / (1 + q);
  const double log_q = std::log(q);
  const int rank = g.rank();
  std::vector<double> right(static_cast<std::size_t>(rank), 0.0);
  std::vector<double> left(static_cast<std::size_t>(rank), 0.0);
  double total = 0.0;
  if (g.kind() == Kind::I2) {
    const DihedralGroup d(g.param());
    for (const auto& x : d.elements()) {
      const double p = weight(d.length(x), log_q);
      total += p;
      for (int i = 0; i < 2; ++i) {
        if (d.right_descent(x, i)) right[static_cast<std::size_t>(i)] += p;
        if (d.left_descent(x, i)) left[static_cast<std::size_t>(i)] += p;
      }
    }
  } else {
    for_each_element(g, [&](const SignedPermutation& w) {
      const double p = weight(length(w, g), log_q);
      total += p;
      const auto inv = invert(w);
      for (int i = 0; i < rank; ++i) {
        if (has_descent(w, g, i, Side::right)) right[static_cast<std::size_t>(i)] += p;
        if (has_descent(inv, g, i, Side::right)) left[static_cast<std::size_t>(i)] += p;
      }
    });
  }
  double worst = 0.0;
  for (int i = 0; i < rank; ++i) {
    worst = std::max(worst, std::abs(right[static_cast<std::size_t>(i)] / total - target) / target);
    worst = std::max(worst, std::abs(left[static_cast<std::size_t>(i)] / total - target) / target);
  }
  return Check::at_most("P(des_i = 1) equals q/(1+q) on both sides [" + label(g, q) + "]", worst, tol.probability);
}

}  // namespace coxmal
