#include "coxmal/stein.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "coxmal/parallel.hpp"

namespace coxmal {

namespace {

void require_window(const Factor& g) {
  if (!g.has_window()) throw std::invalid_argument("the size-bias coupling is implemented for A, B and D");
}

// Runs visit(w, probability) over the whole group.
template <class Visit>
void for_each_weighted(const Factor& g, double q, Visit visit) {
  const double log_q = std::log(q);
  double total = 0.0;
  std::vector<std::pair<SignedPermutation, double>> elements;
  for_each_element(g, [&](const SignedPermutation& w) {
    const double p = std::exp(length(w, g) * log_q);
    total += p;
    elements.emplace_back(w, p);
  });
  for (const auto& [w, p] : elements) visit(w, p / total);
}

struct Moments {
  double mean = 0.0;
  double m2 = 0.0;
  double m4 = 0.0;
};

Moments central_moments(const std::vector<double>& xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  for (double x : xs) {
    const double d = (x - m.mean) * (x - m.mean);
    m.m2 += d;
    m.m4 += d * d;
  }
  m.m2 /= static_cast<double>(xs.size());
  m.m4 /= static_cast<double>(xs.size());
  return m;
}

}  // namespace

SignedPermutation ensure_right_descent(const SignedPermutation& w, Kind kind, int i) {
  return has_descent(w, kind, i, Side::right) ? w : apply_right_generator(w, kind, i);
}

SignedPermutation ensure_left_descent(const SignedPermutation& w, Kind kind, int i) {
  return has_descent(w, kind, i, Side::left) ? w : apply_left_generator(w, kind, i);
}

SignedPermutation ensure_descent(const SignedPermutation& w, Kind kind, int i, Side side) {
  return side == Side::right ? ensure_right_descent(w, kind, i) : ensure_left_descent(w, kind, i);
}

CouplingSample sample_coupled(const TowerSampler& sampler, Rng& rng) {
  CouplingSample s;
  s.w = sampler(rng);
  const Kind kind = sampler.kind();
  s.generator = static_cast<int>(rng.below(static_cast<std::uint64_t>(generator_count(kind, s.w.size()))));
  s.side = rng.below(2) == 0 ? Side::right : Side::left;
  s.w_star = ensure_descent(s.w, kind, s.generator, s.side);
  s.t_w = two_sided_descent(s.w, kind);
  s.t_w_star = two_sided_descent(s.w_star, kind);
  return s;
}

CouplingSample sample_coupled(const MallowsSpec& spec, Rng& rng) {
  if (!spec.group.irreducible()) throw std::invalid_argument("the coupling is defined for one irreducible factor");
  require_window(spec.factor());
  return sample_coupled(TowerSampler(spec.factor(), spec.q[0]), rng);
}

CouplingDifferences coupling_differences(const SignedPermutation& w, Kind kind) {
  const int n = generator_count(kind, w.size());
  const int des_w = descent_count(w, kind, Side::right);
  const int des_inv = descent_count(w, kind, Side::left);
  CouplingDifferences d;
  for (auto& v : d.per_generator) v.resize(static_cast<std::size_t>(n));
  double squares = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto right = ensure_right_descent(w, kind, i);
    const auto left = ensure_left_descent(w, kind, i);
    const auto k = static_cast<std::size_t>(i);
    d.per_generator[0][k] = des_w - descent_count(right, kind, Side::right);
    d.per_generator[1][k] = des_w - descent_count(left, kind, Side::right);
    d.per_generator[2][k] = des_inv - descent_count(right, kind, Side::left);
    d.per_generator[3][k] = des_inv - descent_count(left, kind, Side::left);
    const int gap_right = d.per_generator[0][k] + d.per_generator[2][k];
    const int gap_left = d.per_generator[1][k] + d.per_generator[3][k];
    squares += gap_right * gap_right + gap_left * gap_left;
  }
  for (int a = 0; a < 4; ++a) {
    int s = 0;
    for (int x : d.per_generator[static_cast<std::size_t>(a)]) s += x;
    d.sums[static_cast<std::size_t>(a)] = s;
  }
  d.mean_squared_gap = n > 0 ? squares / (2.0 * n) : 0.0;
  return d;
}

Check coupling_boundedness_check(const Factor& g) {
  require_window(g);
  const Kind kind = g.kind();
  std::uint64_t violations = 0;
  int worst_right = 0, worst_left = 0, worst_gap = 0;
  for_each_element(g, [&](const SignedPermutation& w) {
    const auto d = coupling_differences(w, kind);
    for (int i = 0; i < g.rank(); ++i) {
      const auto k = static_cast<std::size_t>(i);
      const int right = std::abs(d.per_generator[0][k]);
      const int left = std::abs(d.per_generator[1][k]);
      const int gap = std::max(std::abs(d.per_generator[0][k] + d.per_generator[2][k]),
                               std::abs(d.per_generator[1][k] + d.per_generator[3][k]));
      violations += (right > 3 ? 1 : 0) + (left > 1 ? 1 : 0) + (gap > 4 ? 1 : 0);
      worst_right = std::max(worst_right, right);
      worst_left = std::max(worst_left, left);
      worst_gap = std::max(worst_gap, gap);
    }
  });
  auto c = Check::at_most("coupling differences within 3, 1 and 4 [" + g.to_string() + "]",
                          static_cast<double>(violations), 0.0);
  c.extra = {{"max_right", worst_right}, {"max_left", worst_left}, {"max_gap", worst_gap}};
  return c;
}

DiscreteDistribution coupled_statistic_law(const Factor& g, double q) {
  require_window(g);
  const Kind kind = g.kind();
  const int n = g.rank();
  std::map<std::int64_t, double> masses;
  for_each_weighted(g, q, [&](const SignedPermutation& w, double p) {
    for (int i = 0; i < n; ++i) {
      for (Side side : {Side::right, Side::left}) {
        masses[two_sided_descent(ensure_descent(w, kind, i, side), kind)] += p / (2.0 * n);
      }
    }
  });
  return DiscreteDistribution::from_weights(masses);
}

Check size_bias_law_check(const Factor& g, double q, const Tolerances& tol) {
  const auto coupled = coupled_statistic_law(g, q);
  const auto biased = exact_distribution(g, q).size_biased();
  return Check::at_most("t(w*) has the size-biased law of t [" + label(g, q) + "]", total_variation(coupled, biased),
                        tol.total_variation);
}

SteinErrorTerms stein_error_terms(const Factor& g, double q) {
  require_window(g);
  const int n = g.rank();
  double e_a = 0.0, e_a2 = 0.0, e_gap = 0.0, e_t = 0.0, e_t2 = 0.0;
  for_each_weighted(g, q, [&](const SignedPermutation& w, double p) {
    const auto d = coupling_differences(w, g.kind());
    const double a = (d.sums[0] + d.sums[1] + d.sums[2] + d.sums[3]) / (2.0 * n);
    const double t = two_sided_descent(w, g.kind());
    e_a += p * a;
    e_a2 += p * a * a;
    e_gap += p * d.mean_squared_gap;
    e_t += p * t;
    e_t2 += p * t * t;
  });
  SteinErrorTerms terms;
  terms.variance_term = std::max(0.0, e_a2 - e_a * e_a);
  terms.expectation_term = e_gap;
  terms.mu = e_t;
  terms.sigma = std::sqrt(std::max(0.0, e_t2 - e_t * e_t));
  return terms;
}

SteinErrorTerms stein_error_terms(const Factor& g, double q, const McOptions& options) {
  require_window(g);
  if (options.samples < 2) throw std::invalid_argument("Monte Carlo error terms need at least 2 samples");
  const int n = g.rank();
  const TowerSampler sampler(g, q);
  struct Chunk {
    std::vector<double> a, gap, t;
  };
  auto chunks = run_chunked(options.samples, options.threads, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
    Rng rng = Rng::derive(options.seed, c);
    Chunk out;
    for (auto k = begin; k < end; ++k) {
      const auto w = sampler(rng);
      const auto d = coupling_differences(w, g.kind());
      out.a.push_back((d.sums[0] + d.sums[1] + d.sums[2] + d.sums[3]) / (2.0 * n));
      out.gap.push_back(d.mean_squared_gap);
      out.t.push_back(two_sided_descent(w, g.kind()));
    }
    return out;
  });
  std::vector<double> a, gap, t;
  for (auto& c : chunks) {
    a.insert(a.end(), c.a.begin(), c.a.end());
    gap.insert(gap.end(), c.gap.begin(), c.gap.end());
    t.insert(t.end(), c.t.begin(), c.t.end());
  }
  const double count = static_cast<double>(a.size());
  const auto ma = central_moments(a);
  const auto mg = central_moments(gap);
  const auto mt = central_moments(t);
  SteinErrorTerms terms;
  terms.exact = false;
  terms.count = options.samples;
  terms.variance_term = ma.m2 * count / (count - 1);
  terms.variance_term_se = std::sqrt(std::max(0.0, ma.m4 - ma.m2 * ma.m2) / count);
  terms.expectation_term = mg.mean;
  terms.expectation_term_se = std::sqrt(mg.m2 / count);
  terms.mu = mt.mean;
  terms.sigma = std::sqrt(mt.m2 * count / (count - 1));
  return terms;
}

double CovarianceTypeSums::weighted_sum() const noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < types.size(); ++k) s += multiplicity[k] * types[k];
  return s;
}

CovarianceTypeSums covariance_type_sums(const Factor& g, double q) {
  require_window(g);
  std::array<double, 4> mean{};
  std::array<std::array<double, 4>, 4> cross{};
  double total_mean = 0.0;
  double total_square = 0.0;
  for_each_weighted(g, q, [&](const SignedPermutation& w, double p) {
    const auto d = coupling_differences(w, g.kind());
    double total = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
      mean[a] += p * d.sums[a];
      total += d.sums[a];
      for (std::size_t b = 0; b < 4; ++b) cross[a][b] += p * d.sums[a] * d.sums[b];
    }
    total_mean += p * total;
    total_square += p * total * total;
  });
  auto cov = [&](std::size_t a, std::size_t b) { return cross[a][b] - mean[a] * mean[b]; };
  CovarianceTypeSums sums;
  sums.types = {cov(0, 0), cov(0, 2), cov(0, 1), cov(0, 3), cov(1, 1), cov(1, 2)};
  sums.total_variance = total_square - total_mean * total_mean;
  return sums;
}

std::array<double, 6> covariance_type_bounds(const Factor& g) {
  const double m = g.rank() - 1;
  const double outer = g.kind() == Kind::D ? 287 * m + 1 : 173 * m + 1;
  return {63 * m, 63 * m, 306 * m + 9, 594 * m + 9, outer, outer};
}

std::vector<Check> covariance_type_checks(const Factor& g, double q, const Tolerances& tol) {
  const auto sums = covariance_type_sums(g, q);
  const auto bounds = covariance_type_bounds(g);
  const std::string tag = " [" + label(g, q) + "]";
  std::vector<Check> out;
  auto recon = Check::at_most("weighted covariance types reconstruct Var(sum of sums)" + tag,
                              std::abs(sums.weighted_sum() - sums.total_variance), tol.reconstruction);
  recon.extra = {{"weighted_sum", sums.weighted_sum()}, {"direct", sums.total_variance}};
  out.push_back(std::move(recon));
  for (std::size_t k = 0; k < 6; ++k) {
    const double value = k == 0 ? std::abs(sums.types[k]) : sums.types[k];
    auto c = Check::at_most("covariance type " + std::to_string(k + 1) + " below stated bound" + tag, value, bounds[k]);
    if (g.kind() == Kind::A) c.informational("bounds are stated for B and D");
    out.push_back(std::move(c));
  }
  return out;
}

SteinBound stein_bound_rhs(const Factor& g, double q, std::optional<TestFunctionNorms> h) {
  if (!g.has_window()) throw std::invalid_argument("no closed-form bound for dihedral groups");
  const double n = g.rank();
  const double m = std::max(1.0 / std::sqrt(q), std::sqrt(q));
  const bool d = g.kind() == Kind::D;
  SteinBound b;
  b.within_hypothesis = d ? g.rank() >= 30 : (g.kind() == Kind::B && g.rank() >= 4);
  const double c_var = d ? 384.0 : 180.0;
  const double c_gap = d ? 666.0 : 236.0;
  if (h) {
    b.value = (2 * c_var * h->sup + c_gap * h->derivative_sup * m) / std::sqrt(n);
  } else {
    b.value = (c_var + c_gap * m) / std::sqrt(n);
  }
  return b;
}

double generic_stein_bound(const SteinErrorTerms& terms, std::optional<TestFunctionNorms> h) {
  if (!(terms.sigma > 0.0)) throw std::domain_error("the Stein bound needs a positive standard deviation");
  const double s2 = terms.sigma * terms.sigma;
  const double var_part = terms.mu / s2 * std::sqrt(std::max(0.0, terms.variance_term));
  const double gap_part = terms.mu / (s2 * terms.sigma) * terms.expectation_term;
  if (h) return 2 * h->sup * var_part + h->derivative_sup * gap_part;
  return std::sqrt(2 / std::numbers::pi) * var_part + gap_part;
}

}  // namespace coxmal
