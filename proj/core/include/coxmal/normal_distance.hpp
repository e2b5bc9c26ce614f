#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coxmal/distribution.hpp"
#include "coxmal/moments.hpp"
#include "coxmal/report.hpp"
#include "coxmal/stein.hpp"

namespace coxmal {

double normal_cdf(double x);
double normal_pdf(double x);
double normal_quantile(double p);

/// A law on integers viewed through x -> (x - mu) / sigma.
struct NormalizedStatistic {
  DiscreteDistribution base;
  double mu = 0.0;
  double sigma = 1.0;

  /// Throws std::domain_error for sigma <= 0.
  NormalizedStatistic(DiscreteDistribution d, double mu, double sigma);

  /// Exact laws use their own moments; empirical laws use the sample mean and
  /// the unbiased sample standard deviation.
  static NormalizedStatistic standardize(DiscreteDistribution d);

  double point(std::size_t k) const noexcept { return (static_cast<double>(base.support()[k]) - mu) / sigma; }
};

/// W_p to the standard normal through the quantile coupling, p in {1, 2}.
/// Each plateau of the discrete quantile function is integrated in closed form
/// against the normal density.
double wasserstein_p_to_normal(const NormalizedStatistic& d, int p);

/// W_1 as the integral of |F - Phi| by Gauss-Kronrod quadrature, split at
/// every jump and crossing. `points` selects the rule (15, 31 or 61).
double wasserstein1_by_cdf_difference(const NormalizedStatistic& d, int points = 31);

/// E f(Z) by Gauss-Kronrod quadrature, split at -1 and 1.
double expect_under_normal(const std::function<double(double)>& f);
/// E f((X - mu) / sigma).
double expect_normalized(const NormalizedStatistic& d, const std::function<double(double)>& f);

/// Rows `u,empirical_quantile,normal_quantile` at `points` equally spaced
/// interior levels.
void write_quantile_trace(std::ostream& out, const NormalizedStatistic& d, int points);

struct TestFunction {
  std::string name;
  std::function<double(double)> f;
  TestFunctionNorms norms;
};

/// sin, tanh and clamp to [-1, 1]; all have sup norm and Lipschitz constant 1.
std::vector<TestFunction> standard_test_functions();

enum class Mode { exact, monte_carlo };
std::string_view mode_name(Mode m) noexcept;
/// "exact" or "mc".
Mode parse_mode(std::string_view text);

/// sqrt(ln(2 / alpha) / (2 N)): the sup-distance band between empirical and
/// true CDFs at confidence 1 - alpha.
double dkw_epsilon(std::uint64_t samples, double alpha = 1e-3);

/// 100 (nk)^{-1/4} (ln nk)^{1/2} with k = min(q, 1/q); empty when nk < 50.
std::optional<double> w2_bound_rhs(const Factor& g, double q);

/// |E h(normalized t) - E h(Z)| against the closed-form and the
/// error-term bounds, exactly. Checks outside the rank hypothesis are
/// informational.
std::vector<Check> smooth_test_checks(const Factor& g, double q);

/// W_1 of normalized t against the closed-form bound. In Monte Carlo mode the
/// DKW slack is added to the measured value.
Check w1_bound_check(const Factor& g, double q, Mode mode, const McOptions& mc = {});
Check w2_bound_check(const Factor& g, double q, Mode mode, const McOptions& mc = {});

/// Both exponential tail bounds at every x on the grid (default 0..2n). In
/// Monte Carlo mode the Clopper-Pearson 0.999 lower confidence limit of each
/// tail frequency is compared.
std::vector<Check> tail_bound_check(const Factor& g, double q, Mode mode, const McOptions& mc = {},
                                    std::vector<double> grid = {});

/// Checks on an already computed law of t (exact or empirical).
std::vector<Check> tail_bound_check(const Factor& g, double q, const DiscreteDistribution& law,
                                    std::vector<double> grid = {});
Check w1_bound_check(const Factor& g, double q, const DiscreteDistribution& law);
Check w2_bound_check(const Factor& g, double q, const DiscreteDistribution& law);

/// Monte Carlo view of the normalized statistic of a (product) spec.
struct CltSummary {
  DiscreteDistribution law;
  double mean = 0.0;
  double sd = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  /// Standard error of W2 from `batches` contiguous batches of draws.
  double w2_batch_se = 0.0;
  int batches = 0;
};

/// Throws std::domain_error when the sample has zero variance.
CltSummary clt_summary(const MallowsSpec& spec, const McOptions& options, int batches = 10);

}  // namespace coxmal
