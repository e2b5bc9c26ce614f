#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "coxmal/group.hpp"
#include "coxmal/signed_permutation.hpp"

namespace coxmal {

enum class Side { right, left };

// Generator indices are 0-based. For B_n and D_n index i is s_i, with s_0 the
// special generator. For A_n index i is the adjacent transposition of window
// positions i+1 and i+2.
//
// The kind-based overloads work on windows of any size and are used where the
// classification ranges of Factor do not apply (tower stages, small
// parabolic subgroups). The Factor overloads forward to them.

int generator_count(Kind kind, int window_size) noexcept;

/// True iff w lies in the group of the given kind on its window size.
bool belongs_to(const SignedPermutation& w, Kind kind) noexcept;
bool belongs_to(const SignedPermutation& w, const Factor& g) noexcept;

/// Coxeter length: classical inversions (A), B-inversions (B) or
/// D-inversions (D). O(n^2) for small windows, O(n log n) otherwise.
int length(const SignedPermutation& w, Kind kind);
inline int length(const SignedPermutation& w, const Factor& g) { return length(w, g.kind()); }

/// Literal count over the index-pair sets (i,j), including negative indices,
/// that define B- and D-inversions. O(n^2); kept as an oracle.
int length_by_inversion_sets(const SignedPermutation& w, Kind kind);

SignedPermutation apply_right_generator(const SignedPermutation& w, Kind kind, int i);
SignedPermutation apply_left_generator(const SignedPermutation& w, Kind kind, int i);
inline SignedPermutation apply_right_generator(const SignedPermutation& w, const Factor& g, int i) {
  return apply_right_generator(w, g.kind(), i);
}
inline SignedPermutation apply_left_generator(const SignedPermutation& w, const Factor& g, int i) {
  return apply_left_generator(w, g.kind(), i);
}

/// Value test: w(i) > w(i+1); w(1) < 0 for B's s_0; w(1) + w(2) < 0 for D's s_0.
/// The left version is the right test applied to the inverse.
bool has_descent(const SignedPermutation& w, Kind kind, int i, Side side);
inline bool has_descent(const SignedPermutation& w, const Factor& g, int i, Side side) {
  return has_descent(w, g.kind(), i, side);
}

/// Definition-level test: l(w s) < l(w) (right) or l(s w) < l(w) (left).
bool has_descent_by_length(const SignedPermutation& w, Kind kind, int i, Side side);

int descent_count(const SignedPermutation& w, Kind kind, Side side = Side::right);

/// des(w) + des(w^{-1}), in [0, 2 * rank].
int two_sided_descent(const SignedPermutation& w, Kind kind);
inline int two_sided_descent(const SignedPermutation& w, const Factor& g) {
  return two_sided_descent(w, g.kind());
}

/// -w, defined on B_n and on D_n for even n. Throws std::domain_error when
/// the result would leave the group (type A, or D_n with n odd).
SignedPermutation negate(const SignedPermutation& w, const Factor& g);

SignedPermutation longest_element(const Factor& g);

// Coxeter graph

bool generators_commute(const Factor& g, int i, int j);
/// s_i together with its non-commuting neighbours, sorted.
std::vector<int> neighborhood(const Factor& g, int i);
int coxeter_graph_distance(const Factor& g, int i, int j);

/// A subset S of the generators of an A/B/D factor.
class ParabolicSubset {
 public:
  /// Throws std::invalid_argument if a member is not a generator index.
  ParabolicSubset(const Factor& g, std::vector<int> members);

  static ParabolicSubset empty(const Factor& g) { return ParabolicSubset(g, {}); }
  static ParabolicSubset full(const Factor& g);

  const Factor& group() const noexcept { return group_; }
  const std::vector<int>& members() const noexcept { return members_; }
  bool contains(int i) const noexcept;

  /// Connected components in the Coxeter graph, each sorted.
  std::vector<std::vector<int>> components() const;

  /// Window indices touched by W_S, sorted. For s_0 this is {-1, 1} in B_n
  /// and {-2, -1, 1, 2} in D_n, and a component containing both s_0 and s_k
  /// adds -k and -k-1.
  std::vector<int> index_support() const;

 private:
  Factor group_;
  std::vector<int> members_;
};

struct ParabolicDecomposition {
  SignedPermutation coset_representative;  // w^S, no right descent in S
  SignedPermutation subgroup_part;         // w_S in W_S
};

/// w = w^S * w_S with l(w) = l(w^S) + l(w_S).
ParabolicDecomposition parabolic_decompose(const SignedPermutation& w, const ParabolicSubset& s);

/// All elements of W_S, by breadth-first closure under right multiplication.
std::vector<SignedPermutation> parabolic_subgroup(const ParabolicSubset& s);

// Enumeration

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// COXMAL_ENUM_CAP from the environment, else kDefaultEnumerationCap.
std::uint64_t enumeration_cap();

/// Visits every element of the A/B/D group once. Throws std::length_error if
/// the order exceeds `cap` and std::invalid_argument for I2 (see dihedral.hpp).
void for_each_element(const Factor& g, const std::function<void(const SignedPermutation&)>& visit,
                      std::uint64_t cap = enumeration_cap());
void for_each_element(Kind kind, int window_size, const std::function<void(const SignedPermutation&)>& visit,
                      std::uint64_t cap = enumeration_cap());

std::vector<SignedPermutation> enumerate(const Factor& g, std::uint64_t cap = enumeration_cap());
std::vector<SignedPermutation> enumerate(Kind kind, int window_size, std::uint64_t cap = enumeration_cap());

}  // namespace coxmal
