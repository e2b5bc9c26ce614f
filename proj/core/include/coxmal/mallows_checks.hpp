#pragma once

#include <optional>
#include <vector>

#include "coxmal/group.hpp"
#include "coxmal/moments.hpp"
#include "coxmal/report.hpp"

namespace coxmal {

/// |sum over W of q^l(w) - Z_W(q)| / Z_W(q) by enumeration.
Check normalization_check(const Factor& g, double q, const Tolerances& tol = {});

/// Total variation between the law of the statistic under q and the law of
/// its reflection (max length - l, or 2n - t) under 1/q. B and D only; the
/// descent statistic is not supported.
Check reversal_identity_check(const Factor& g, double q, Statistic s, const Tolerances& tol = {});

/// The comparison element for a pattern: w'(i) = a_i on `positions`, the
/// unused magnitudes in increasing order elsewhere, and for D with an odd
/// number of negative a_i the smallest free position negated. Returns
/// nothing when no element of D_n matches the pattern.
std::optional<SignedPermutation> pattern_comparison_element(const Factor& g, const std::vector<int>& positions,
                                                            const std::vector<int>& values);

/// Exact P(w(i) = a_i for i in positions) against
/// q^l(w') Z_{n-|C|}(q) / Z_n(q) for B_n and D_n.
/// The bound needs q <= 1; larger q is reported as informational.
Check pattern_probability_bound_check(const Factor& g, double q, const std::vector<int>& positions,
                                      const std::vector<int>& values);

}  // namespace coxmal
