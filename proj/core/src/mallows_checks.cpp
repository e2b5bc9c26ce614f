#include "coxmal/mallows_checks.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "coxmal/coxeter.hpp"
#include "coxmal/dihedral.hpp"
#include "coxmal/qanalog.hpp"

namespace coxmal {

namespace {

void require_signed(const Factor& g, const char* what) {
  if (g.kind() != Kind::B && g.kind() != Kind::D) throw std::invalid_argument(std::string(what) + " needs type B or D");
}

std::string join(const std::vector<int>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + "}";
}

}  // namespace

Check normalization_check(const Factor& g, double q, const Tolerances& tol) {
  const double log_q = std::log(q);
  double sum = 0.0;
  if (g.kind() == Kind::I2) {
    const DihedralGroup d(g.param());
    for (const auto& x : d.elements()) sum += std::exp(d.length(x) * log_q);
  } else {
    for_each_element(g, [&](const SignedPermutation& w) { sum += std::exp(length(w, g) * log_q); });
  }
  const double z = normalization_constant(g, q);
  auto c = Check::at_most("sum of q^length matches normalization constant [" + label(g, q) + "]",
                          std::abs(sum - z) / z, tol.relative);
  c.extra = {{"enumerated", sum}, {"closed_form", z}};
  return c;
}

Check reversal_identity_check(const Factor& g, double q, Statistic s, const Tolerances& tol) {
  require_signed(g, "reversal identity");
  if (s == Statistic::descents) throw std::invalid_argument("reversal identity is checked for length and t");
  const auto forward = exact_distribution(g, q, s);
  const auto backward = exact_distribution(g, 1.0 / q, s);
  const std::int64_t top = s == Statistic::length ? g.max_length() : 2 * g.rank();
  const double tv = total_variation(forward, backward.affine(-1, top));
  return Check::at_most("law of " + std::string(statistic_name(s)) + " under q equals reflected law under 1/q [" +
                            label(g, q) + "]",
                        tv, tol.total_variation);
}

std::optional<SignedPermutation> pattern_comparison_element(const Factor& g, const std::vector<int>& positions,
                                                            const std::vector<int>& values) {
  require_signed(g, "pattern bound");
  const int n = g.param();
  if (positions.size() != values.size()) throw std::invalid_argument("one value per position is required");
  std::set<int> used_positions;
  std::set<int> used_magnitudes;
  int negatives = 0;
  std::vector<int> window(static_cast<std::size_t>(n), 0);
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const int i = positions[k];
    const int a = values[k];
    if (i < 1 || i > n || !used_positions.insert(i).second) throw std::invalid_argument("invalid pattern position");
    if (a == 0 || std::abs(a) > n || !used_magnitudes.insert(std::abs(a)).second) {
      throw std::invalid_argument("pattern values need distinct magnitudes in 1..n");
    }
    window[static_cast<std::size_t>(i - 1)] = a;
    negatives += a < 0 ? 1 : 0;
  }
  std::vector<int> free_magnitudes;
  for (int v = 1; v <= n; ++v)
    if (!used_magnitudes.count(v)) free_magnitudes.push_back(v);
  std::size_t next = 0;
  int first_free = 0;
  for (int i = 1; i <= n; ++i) {
    if (used_positions.count(i)) continue;
    if (first_free == 0) first_free = i;
    window[static_cast<std::size_t>(i - 1)] = free_magnitudes[next++];
  }
  if (g.kind() == Kind::D && negatives % 2 != 0) {
    if (first_free == 0) return std::nullopt;
    window[static_cast<std::size_t>(first_free - 1)] *= -1;
  }
  return SignedPermutation::from_window(std::move(window));
}

Check pattern_probability_bound_check(const Factor& g, double q, const std::vector<int>& positions,
                                      const std::vector<int>& values) {
  const auto comparison = pattern_comparison_element(g, positions, values);
  const double log_q = std::log(q);
  double hit = 0.0;
  double total = 0.0;
  for_each_element(g, [&](const SignedPermutation& w) {
    const double p = std::exp(length(w, g) * log_q);
    total += p;
    for (std::size_t k = 0; k < positions.size(); ++k)
      if (w(positions[k]) != values[k]) return;
    hit += p;
  });
  const int n = g.param();
  const int free = n - static_cast<int>(positions.size());
  double bound = 0.0;
  if (comparison) {
    const double scale = g.kind() == Kind::B ? q_even_double_factorial(free, q) / q_even_double_factorial(n, q)
                                             : type_d_poincare(free, q) / type_d_poincare(n, q);
    bound = std::exp(length(*comparison, g) * log_q) * scale;
  }
  auto c = Check::at_most("pattern probability below bound [" + label(g, q) + " C=" + join(positions) +
                              " a=" + join(values) + "]",
                          hit / total, bound);
  // Equality is attained when the pattern fixes w'; allow for rounding.
  c.pass = hit / total <= bound * (1.0 + 1e-12);
  if (comparison) c.extra = {{"comparison_element", to_string(*comparison)}};
  // w' minimizes the length among matching elements, so q^l(w') dominates
  // only when q <= 1.
  if (q > 1.0) c.informational("bound is stated for q <= 1");
  return c;
}

}  // namespace coxmal
