#include "coxmal/normal_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace coxmal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Phi(-x), accurate for large x.
double normal_upper(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// x phi(x), zero at the infinite ends.
double x_pdf(double x) { return std::isfinite(x) ? x * normal_pdf(x) : 0.0; }

// Phi(b) - Phi(a) for a <= b without cancellation in the upper tail.
double normal_mass(double a, double b) {
  if (a >= 0.0) return std::max(0.0, normal_upper(a) - normal_upper(b));
  return std::max(0.0, normal_cdf(b) - normal_cdf(a));
}

// Phi^{-1} at a level given both as c and as its complement r = 1 - c.
double level_quantile(double c, double r) {
  if (c <= 0.0) return -kInf;
  if (r <= 0.0) return kInf;
  return c <= 0.5 ? normal_quantile(c) : -normal_quantile(r);
}

struct Levels {
  std::vector<double> below;  // P(X < x_k)
  std::vector<double> above;  // P(X > x_k)
};

Levels levels(const DiscreteDistribution& d) {
  const auto& m = d.mass();
  Levels l;
  l.below.resize(m.size());
  l.above.resize(m.size());
  double s = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    l.below[k] = s;
    s += m[k];
  }
  s = 0.0;
  for (std::size_t k = m.size(); k-- > 0;) {
    l.above[k] = s;
    s += m[k];
  }
  return l;
}

template <unsigned N>
double integrate(const std::function<double(double)>& f, double a, double b) {
  if (!(a < b)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, N>::integrate(f, a, b, 15, 1e-13);
}

double integrate_rule(int points, const std::function<double(double)>& f, double a, double b) {
  switch (points) {
    case 15: return integrate<15>(f, a, b);
    case 31: return integrate<31>(f, a, b);
    case 61: return integrate<61>(f, a, b);
    default: throw std::invalid_argument("quadrature rule must have 15, 31 or 61 points");
  }
}

std::string format_number(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

double tail_exponent_upper(double x, double mu) { return std::exp(-x * x / (8.0 * (x / 3.0 + mu))); }
double tail_exponent_lower(double x, double mu) { return mu > 0 ? std::exp(-x * x / (8.0 * mu)) : 0.0; }

DiscreteDistribution law_for(const Factor& g, double q, Mode mode, const McOptions& mc) {
  if (mode == Mode::exact) return exact_distribution(g, q);
  return empirical_distribution(MallowsSpec::make(g, q), Statistic::two_sided, mc);
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  static const boost::math::normal_distribution<double> z;
  if (!std::isfinite(x)) return 0.0;
  return boost::math::pdf(z, x);
}

double normal_quantile(double p) {
  static const boost::math::normal_distribution<double> z;
  if (p <= 0.0) return -kInf;
  if (p >= 1.0) return kInf;
  return boost::math::quantile(z, p);
}

NormalizedStatistic::NormalizedStatistic(DiscreteDistribution d, double mu_, double sigma_)
    : base(std::move(d)), mu(mu_), sigma(sigma_) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::domain_error("normalization needs a positive sigma");
  if (base.empty()) throw std::domain_error("normalization needs a non-empty law");
}

NormalizedStatistic NormalizedStatistic::standardize(DiscreteDistribution d) {
  const auto m = summarize(d);
  return NormalizedStatistic(std::move(d), m.mean, std::sqrt(m.variance));
}

double wasserstein_p_to_normal(const NormalizedStatistic& d, int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("only p = 1 and p = 2 are supported");
  const auto l = levels(d.base);
  const auto& mass = d.base.mass();
  double total = 0.0;
  for (std::size_t k = 0; k < mass.size(); ++k) {
    const double z = d.point(k);
    const double a = level_quantile(l.below[k], l.above[k] + mass[k]);
    const double b = level_quantile(l.below[k] + mass[k], l.above[k]);
    if (p == 1) {
      const double m = std::clamp(z, a, b);
      const double left = z * normal_mass(a, m) - (normal_pdf(a) - normal_pdf(m));
      const double right = (normal_pdf(m) - normal_pdf(b)) - z * normal_mass(m, b);
      total += std::max(0.0, left) + std::max(0.0, right);
    } else {
      const double part = z * z * mass[k] - 2.0 * z * (normal_pdf(a) - normal_pdf(b)) + mass[k] + x_pdf(a) - x_pdf(b);
      total += std::max(0.0, part);
    }
  }
  return p == 1 ? total : std::sqrt(total);
}

double wasserstein1_by_cdf_difference(const NormalizedStatistic& d, int points) {
  const auto l = levels(d.base);
  const std::size_t n = d.base.size();
  double total = integrate_rule(points, [](double x) { return normal_cdf(x); }, -kInf, d.point(0));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double c = l.below[k + 1];  // F on [x_k, x_{k+1})
    const double r = l.above[k];
    const std::function<double(double)> gap = [c, r](double x) {
      return c <= 0.5 ? std::abs(c - normal_cdf(x)) : std::abs(normal_upper(x) - r);
    };
    const double lo = d.point(k);
    const double hi = d.point(k + 1);
    const double cross = level_quantile(c, r);
    if (cross > lo && cross < hi) {
      total += integrate_rule(points, gap, lo, cross) + integrate_rule(points, gap, cross, hi);
    } else {
      total += integrate_rule(points, gap, lo, hi);
    }
  }
  total += integrate_rule(points, [](double x) { return normal_upper(x); }, d.point(n - 1), kInf);
  return total;
}

double expect_under_normal(const std::function<double(double)>& f) {
  const std::function<double(double)> g = [&f](double x) { return f(x) * normal_pdf(x); };
  return integrate<61>(g, -kInf, -1.0) + integrate<61>(g, -1.0, 1.0) + integrate<61>(g, 1.0, kInf);
}

double expect_normalized(const NormalizedStatistic& d, const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < d.base.size(); ++k) s += d.base.mass()[k] * f(d.point(k));
  return s;
}

void write_quantile_trace(std::ostream& out, const NormalizedStatistic& d, int points) {
  if (points < 1) throw std::invalid_argument("trace needs at least one point");
  out << "u,empirical_quantile,normal_quantile\n";
  const auto l = levels(d.base);
  out.precision(12);
  std::size_t k = 0;
  for (int j = 1; j <= points; ++j) {
    const double u = static_cast<double>(j) / (points + 1);
    while (k + 1 < d.base.size() && l.below[k] + d.base.mass()[k] < u) ++k;
    out << u << ',' << d.point(k) << ',' << normal_quantile(u) << '\n';
  }
}

std::vector<TestFunction> standard_test_functions() {
  return {
      {"sin", [](double x) { return std::sin(x); }, {1.0, 1.0}},
      {"tanh", [](double x) { return std::tanh(x); }, {1.0, 1.0}},
      {"clamp", [](double x) { return std::clamp(x, -1.0, 1.0); }, {1.0, 1.0}},
  };
}

std::string_view mode_name(Mode m) noexcept { return m == Mode::exact ? "exact" : "mc"; }

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::exact;
  if (text == "mc" || text == "monte-carlo") return Mode::monte_carlo;
  throw std::invalid_argument("mode must be exact or mc, got " + std::string(text));
}

double dkw_epsilon(std::uint64_t samples, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(samples)));
}

std::optional<double> w2_bound_rhs(const Factor& g, double q) {
  const double nk = g.rank() * std::min(q, 1.0 / q);
  if (nk < 50.0) return std::nullopt;
  return 100.0 * std::pow(nk, -0.25) * std::sqrt(std::log(nk));
}

std::vector<Check> smooth_test_checks(const Factor& g, double q) {
  const auto law = exact_distribution(g, q);
  const auto normalized = NormalizedStatistic::standardize(law);
  const auto terms = stein_error_terms(g, q);
  const std::string tag = " [" + label(g, q) + "]";
  std::vector<Check> out;
  for (const auto& h : standard_test_functions()) {
    const double lhs = std::abs(expect_normalized(normalized, h.f) - expect_under_normal(h.f));
    const auto rhs = stein_bound_rhs(g, q, h.norms);
    auto closed = Check::at_most("|E h(t) - E h(Z)| below closed-form bound, h=" + h.name + tag, lhs, rhs.value);
    if (!rhs.within_hypothesis) closed.informational("rank outside the range where the bound is proved");
    out.push_back(std::move(closed));
    out.push_back(Check::at_most("|E h(t) - E h(Z)| below error-term bound, h=" + h.name + tag, lhs,
                                 generic_stein_bound(terms, h.norms)));
  }
  out.push_back(Check::at_most("W1 below error-term bound" + tag, wasserstein_p_to_normal(normalized, 1),
                               generic_stein_bound(terms)));
  return out;
}

Check w1_bound_check(const Factor& g, double q, const DiscreteDistribution& law) {
  const auto normalized = NormalizedStatistic::standardize(law);
  const double measured = wasserstein_p_to_normal(normalized, 1);
  double slack = 0.0;
  if (!law.provenance.exact && law.provenance.count) {
    slack = dkw_epsilon(*law.provenance.count) * (2.0 * g.rank() / normalized.sigma);
  }
  const auto rhs = stein_bound_rhs(g, q);
  auto c = Check::at_most("W1 to normal below closed-form bound [" + label(g, q) + "]", measured + slack, rhs.value);
  c.extra = {{"measured", measured}, {"slack", slack}};
  if (!rhs.within_hypothesis) c.informational("rank outside the range where the bound is proved");
  return c;
}

Check w2_bound_check(const Factor& g, double q, const DiscreteDistribution& law) {
  const auto normalized = NormalizedStatistic::standardize(law);
  const double measured = wasserstein_p_to_normal(normalized, 2);
  double slack = 0.0;
  if (!law.provenance.exact && law.provenance.count) {
    slack = (2.0 * g.rank() / normalized.sigma) * std::sqrt(dkw_epsilon(*law.provenance.count));
  }
  const auto rhs = w2_bound_rhs(g, q);
  auto c = Check::at_most("W2 to normal below bound [" + label(g, q) + "]", measured + slack, rhs.value_or(kInf));
  c.extra = {{"measured", measured}, {"slack", slack}};
  if (!rhs) c.informational("needs n min(q,1/q) >= 50");
  return c;
}

std::vector<Check> tail_bound_check(const Factor& g, double q, const DiscreteDistribution& law,
                                    std::vector<double> grid) {
  if (!g.has_window()) throw std::invalid_argument("tail bounds are stated for A, B and D");
  if (grid.empty()) {
    for (int x = 0; x <= 2 * g.rank(); ++x) grid.push_back(x);
  }
  const double mu = mean_two_sided(g, q);
  const bool empirical = !law.provenance.exact && law.provenance.count;
  const std::uint64_t n = empirical ? *law.provenance.count : 0;
  auto lower_confidence = [&](double p) {
    if (!empirical) return p;
    const auto k = static_cast<std::uint64_t>(std::llround(p * static_cast<double>(n)));
    if (k == 0) return 0.0;
    return boost::math::binomial_distribution<double>::find_lower_bound_on_p(static_cast<double>(n),
                                                                             static_cast<double>(k), 1e-3);
  };
  constexpr double eps = 1e-9;  // the events are t >= mu + x and t <= mu - x on integers
  double worst_upper = -kInf, worst_lower = -kInf;
  double at_upper = 0.0, at_lower = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (double x : grid) {
    const double up = lower_confidence(law.upper_tail(mu + x - eps));
    const double down = lower_confidence(law.cdf(mu - x + eps));
    const double up_bound = tail_exponent_upper(x, mu);
    const double down_bound = tail_exponent_lower(x, mu);
    if (up - up_bound > worst_upper) {
      worst_upper = up - up_bound;
      at_upper = x;
    }
    if (down - down_bound > worst_lower) {
      worst_lower = down - down_bound;
      at_lower = x;
    }
    rows.push_back({{"x", x}, {"upper", up}, {"upper_bound", up_bound}, {"lower", down}, {"lower_bound", down_bound}});
  }
  const std::string tag = " [" + label(g, q) + (empirical ? " mc" : " exact") + "]";
  auto upper = Check::at_most("upper tail minus exp bound, worst over grid" + tag, worst_upper, 0.0,
                              "worst x=" + format_number(at_upper));
  auto lower = Check::at_most("lower tail minus exp bound, worst over grid" + tag, worst_lower, 0.0,
                              "worst x=" + format_number(at_lower));
  upper.extra = {{"grid", rows}};
  return {upper, lower};
}

std::vector<Check> tail_bound_check(const Factor& g, double q, Mode mode, const McOptions& mc,
                                    std::vector<double> grid) {
  return tail_bound_check(g, q, law_for(g, q, mode, mc), std::move(grid));
}

Check w1_bound_check(const Factor& g, double q, Mode mode, const McOptions& mc) {
  return w1_bound_check(g, q, law_for(g, q, mode, mc));
}

Check w2_bound_check(const Factor& g, double q, Mode mode, const McOptions& mc) {
  return w2_bound_check(g, q, law_for(g, q, mode, mc));
}

CltSummary clt_summary(const MallowsSpec& spec, const McOptions& options, int batches) {
  if (batches < 2) throw std::invalid_argument("at least two batches are needed");
  const auto values = sample_statistic(spec, Statistic::two_sided, options);
  auto histogram = [](auto begin, auto end) {
    std::map<std::int64_t, std::uint64_t> counts;
    for (auto it = begin; it != end; ++it) ++counts[*it];
    return DiscreteDistribution::from_counts(counts);
  };
  CltSummary s;
  s.law = histogram(values.begin(), values.end());
  s.law.provenance = {spec.group.to_string(), spec.q, "t", false, options.seed, options.samples};
  const auto normalized = NormalizedStatistic::standardize(s.law);
  s.mean = normalized.mu;
  s.sd = normalized.sigma;
  s.w1 = wasserstein_p_to_normal(normalized, 1);
  s.w2 = wasserstein_p_to_normal(normalized, 2);
  s.batches = batches;
  const std::size_t per = values.size() / static_cast<std::size_t>(batches);
  if (per >= 2) {
    std::vector<double> w2s;
    for (int b = 0; b < batches; ++b) {
      const auto begin = values.begin() + static_cast<std::ptrdiff_t>(per * static_cast<std::size_t>(b));
      auto batch = histogram(begin, begin + static_cast<std::ptrdiff_t>(per));
      w2s.push_back(wasserstein_p_to_normal(NormalizedStatistic::standardize(std::move(batch)), 2));
    }
    double mean = 0.0;
    for (double w : w2s) mean += w;
    mean /= batches;
    double var = 0.0;
    for (double w : w2s) var += (w - mean) * (w - mean);
    var /= batches - 1;
    s.w2_batch_se = std::sqrt(var / batches);
  }
  return s;
}

}  // namespace coxmal
