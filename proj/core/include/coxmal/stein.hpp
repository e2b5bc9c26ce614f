#pragma once

#include <array>
#include <optional>
#include <vector>

#include "coxmal/coxeter.hpp"
#include "coxmal/distribution.hpp"
#include "coxmal/mallows.hpp"
#include "coxmal/moments.hpp"
#include "coxmal/report.hpp"

namespace coxmal {

/// w if w has a right descent at s_i, else w s_i.
SignedPermutation ensure_right_descent(const SignedPermutation& w, Kind kind, int i);
/// The left analogue: ((w^{-1}) with a right descent ensured at s_i)^{-1}.
SignedPermutation ensure_left_descent(const SignedPermutation& w, Kind kind, int i);
SignedPermutation ensure_descent(const SignedPermutation& w, Kind kind, int i, Side side);

/// One draw of the size-bias coupling: w is Mallows, the generator and side
/// are uniform and w_star ensures a descent there.
struct CouplingSample {
  SignedPermutation w;
  int generator = 0;
  Side side = Side::right;
  SignedPermutation w_star;
  int t_w = 0;
  int t_w_star = 0;
};

/// Throws std::invalid_argument for products and dihedral groups.
CouplingSample sample_coupled(const MallowsSpec& spec, Rng& rng);
CouplingSample sample_coupled(const TowerSampler& sampler, Rng& rng);

/// Per-generator differences for one w, indexed by generator:
///   [0] des(w) - des(w_i*)             [1] des(w) - des(w_i^{-*})
///   [2] des(w^-1) - des((w_i*)^-1)     [3] des(w^-1) - des((w_i^{-*})^-1)
/// and their sums over generators.
struct CouplingDifferences {
  std::array<std::vector<int>, 4> per_generator;
  std::array<int, 4> sums{};
  /// Mean over the 2n (generator, side) choices of (t(w) - t(w*))^2.
  double mean_squared_gap = 0.0;
};

CouplingDifferences coupling_differences(const SignedPermutation& w, Kind kind);

/// Counts, over every (w, i, side), violations of |des(w) - des(w_i*)| <= 3,
/// |des(w) - des(w_i^{-*})| <= 1 and |t(w) - t(w*)| <= 4. Passes at zero.
Check coupling_boundedness_check(const Factor& g);

/// Exact law of t(w*) under the coupling, by enumerating (w, i, side).
DiscreteDistribution coupled_statistic_law(const Factor& g, double q);

/// TV between the law of t(w*) and the size-biased law of t.
Check size_bias_law_check(const Factor& g, double q, const Tolerances& tol = {});

struct SteinErrorTerms {
  double variance_term = 0.0;     // Var E(X - X* | w)
  double expectation_term = 0.0;  // E (X - X*)^2
  double mu = 0.0;
  double sigma = 0.0;
  bool exact = true;
  std::uint64_t count = 0;
  double variance_term_se = 0.0;
  double expectation_term_se = 0.0;
};

SteinErrorTerms stein_error_terms(const Factor& g, double q);
/// Monte Carlo: the conditional expectations given w are averaged exactly over
/// the 2n choices, and w is sampled. mu and sigma are sample moments.
SteinErrorTerms stein_error_terms(const Factor& g, double q, const McOptions& options);

/// The six Cov(Sigma_a, Sigma_b) types, in the order
/// (1,1), (1,3), (1,2), (1,4), (2,2), (2,3) of the sums above, 1-based.
struct CovarianceTypeSums {
  static constexpr std::array<int, 6> multiplicity{2, 4, 4, 2, 2, 2};
  std::array<double, 6> types{};
  /// Var(Sigma_1 + Sigma_2 + Sigma_3 + Sigma_4), computed directly.
  double total_variance = 0.0;

  double weighted_sum() const noexcept;
};

CovarianceTypeSums covariance_type_sums(const Factor& g, double q);

/// Stated upper bounds per type; type 1 bounds the absolute value.
std::array<double, 6> covariance_type_bounds(const Factor& g);

/// Reconstruction identity plus one bound check per type. Type A and ranks
/// outside the stated ones are informational.
std::vector<Check> covariance_type_checks(const Factor& g, double q, const Tolerances& tol = {});

struct TestFunctionNorms {
  double sup = 1.0;
  double derivative_sup = 1.0;
};

struct SteinBound {
  double value = 0.0;
  bool within_hypothesis = true;
};

/// Closed-form right-hand sides for B_n (n >= 4) and D_n (n >= 30): the
/// smooth-test bound when `h` is given, the Wasserstein-1 bound otherwise.
/// Type A is evaluated with the B constants and flagged outside hypothesis.
SteinBound stein_bound_rhs(const Factor& g, double q, std::optional<TestFunctionNorms> h = std::nullopt);

/// Generic size-bias bound from error terms:
///   smooth: 2|h| (mu/sigma^2) sqrt(var) + |h'| (mu/sigma^3) E2
///   W1:     sqrt(2/pi) (mu/sigma^2) sqrt(var) + (mu/sigma^3) E2
/// Throws std::domain_error for sigma <= 0.
double generic_stein_bound(const SteinErrorTerms& terms, std::optional<TestFunctionNorms> h = std::nullopt);

}  // namespace coxmal
