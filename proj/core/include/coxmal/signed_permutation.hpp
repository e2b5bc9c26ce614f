#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coxmal {

/// An element of the hyperoctahedral group in one-line window notation.
///
/// Only w(1), ..., w(n) are stored. Values at negative positions follow from
/// w(-i) = -w(i) and are never materialized, so the negation symmetry cannot
/// be broken by a caller. Type A elements are the windows with all entries
/// positive; type D elements have an even number of negative entries.
class SignedPermutation {
 public:
  SignedPermutation() = default;

  static SignedPermutation identity(int n);

  /// Throws std::invalid_argument unless the magnitudes form a permutation
  /// of 1..n.
  static SignedPermutation from_window(std::vector<int> window);

  /// Skips validation. The caller guarantees the magnitudes are a permutation.
  static SignedPermutation unchecked(std::vector<int> window) noexcept {
    SignedPermutation w;
    w.window_ = std::move(window);
    return w;
  }

  int size() const noexcept { return static_cast<int>(window_.size()); }

  /// w(i) for i in [-n, -1] or [1, n].
  int operator()(int i) const noexcept {
    return i > 0 ? window_[static_cast<std::size_t>(i - 1)]
                 : -window_[static_cast<std::size_t>(-i - 1)];
  }

  std::span<const int> window() const noexcept { return window_; }
  std::vector<int> to_vector() const { return window_; }

  int negative_count() const noexcept;
  bool all_positive() const noexcept { return negative_count() == 0; }
  bool is_identity() const noexcept;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
  friend auto operator<=>(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  std::vector<int> window_;
};

/// (uv)(i) = u(v(i)). Throws std::invalid_argument on a size mismatch.
SignedPermutation compose(const SignedPermutation& u, const SignedPermutation& v);

SignedPermutation invert(const SignedPermutation& w);

/// Window entries w(i) -> -w(i). Membership in D_n is checked by callers
/// that know the ambient group (see coxeter.hpp).
SignedPermutation negate_values(const SignedPermutation& w);

/// Canonical text form "[-2,1,3]".
std::string to_string(const SignedPermutation& w);

/// Inverse of to_string; whitespace around entries is tolerated.
SignedPermutation parse_signed_permutation(std::string_view text);

}  // namespace coxmal

template <>
struct std::hash<coxmal::SignedPermutation> {
  std::size_t operator()(const coxmal::SignedPermutation& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : w.window()) {
      h ^= static_cast<std::size_t>(v + 1024);
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};
