#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "coxmal/coxeter.hpp"
#include "coxmal/dihedral.hpp"
#include "coxmal/distribution.hpp"
#include "coxmal/mallows.hpp"
#include "coxmal/report.hpp"

namespace coxmal {

enum class Statistic { two_sided, descents, length };

/// "t", "des" or "length".
std::string_view statistic_name(Statistic s) noexcept;
/// Accepts the names above; throws std::invalid_argument otherwise.
Statistic parse_statistic(std::string_view text);

int evaluate(Statistic s, const SignedPermutation& w, Kind kind);
int evaluate(Statistic s, DihedralElement x, const DihedralGroup& g);

/// E t = 2qn / (1 + q) with n the number of generators.
double mean_two_sided(const Factor& g, double q);
double mean_two_sided(const MallowsSpec& spec);

/// Closed-form bounds on Var t for A/B/D. For q > 1 they are evaluated at
/// 1/q, which leaves Var t unchanged. The `simple_*` pair is the
/// n min(q, 1/q) form, which needs n >= 30 for type D.
struct VarianceBounds {
  double lower = 0.0;
  double upper = 0.0;
  double simple_lower = 0.0;
  double simple_upper = 0.0;
  bool simple_applicable = true;
};

/// Throws std::invalid_argument for I2.
VarianceBounds variance_bounds_two_sided(const Factor& g, double q);

/// E des^3 <= n^3 p^3 + 24 n^2 p^2 + 16 n p with p = q / (1 + q).
double cube_moment_bound(const Factor& g, double q);

/// Exact law by enumeration. Throws std::length_error above the cap.
DiscreteDistribution exact_distribution(const Factor& g, double q, Statistic s = Statistic::two_sided);
/// Products by convolving the factor laws (every statistic is additive).
DiscreteDistribution exact_distribution(const MallowsSpec& spec, Statistic s = Statistic::two_sided);

struct McOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Histogram of `samples` seeded draws. Identical for every thread count.
DiscreteDistribution empirical_distribution(const MallowsSpec& spec, Statistic s, const McOptions& options);

/// Statistic values of `samples` draws, in draw order.
std::vector<int> sample_statistic(const MallowsSpec& spec, Statistic s, const McOptions& options);

// Checks against exact laws.

Check mean_check(const Factor& g, double q, const Tolerances& tol = {});
std::vector<Check> variance_bounds_check(const Factor& g, double q);
Check cube_moment_bound_check(const Factor& g, double q);
/// max over generators and sides of |P(des_i = 1) - q/(1+q)| relative to q/(1+q).
Check descent_indicator_mean_check(const Factor& g, double q, const Tolerances& tol = {});

/// "B3 q=0.5".
std::string label(const Factor& g, double q);

}  // namespace coxmal
