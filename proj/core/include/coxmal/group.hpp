#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coxmal {

enum class Kind { A, B, D, I2 };

std::string_view kind_name(Kind kind) noexcept;

/// One finite irreducible Coxeter group from the families A_n (n >= 1),
/// B_n (n >= 2), D_n (n >= 4) and I2(m) (m >= 3).
///
/// For A/B/D `param` is the rank, i.e. the number of generators. A_n is the
/// symmetric group on n + 1 letters. For I2 `param` is m and the rank is 2.
class Factor {
 public:
  /// Throws std::invalid_argument outside the classification ranges.
  static Factor make(Kind kind, int param);

  Kind kind() const noexcept { return kind_; }
  int param() const noexcept { return param_; }

  /// Number of Coxeter generators.
  int rank() const noexcept { return kind_ == Kind::I2 ? 2 : param_; }

  /// Length of the signed window (n + 1 for A_n, n for B_n/D_n, 0 for I2).
  int window_size() const noexcept;

  bool has_window() const noexcept { return kind_ != Kind::I2; }

  /// Group order as a double (exact for every enumerable group).
  double order() const noexcept;

  /// Length of the longest element: N(N-1)/2, n^2, n(n-1) or m.
  int max_length() const noexcept;

  std::string to_string() const;

  friend bool operator==(const Factor&, const Factor&) = default;

 private:
  Factor(Kind kind, int param) : kind_(kind), param_(param) {}
  Kind kind_ = Kind::A;
  int param_ = 1;
};

/// An ordered product of irreducible factors, text form "B4 x A2 x I2(5)".
struct GroupDescriptor {
  std::vector<Factor> factors;

  GroupDescriptor() = default;
  explicit GroupDescriptor(Factor f) : factors{f} {}
  explicit GroupDescriptor(std::vector<Factor> fs) : factors(std::move(fs)) {}

  bool irreducible() const noexcept { return factors.size() == 1; }
  int rank() const noexcept;
  double order() const noexcept;
  std::string to_string() const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

/// Parses "B4", "I2(7)", "a3" and products joined by 'x'.
/// Throws std::invalid_argument on malformed text or out-of-range ranks.
Factor parse_factor(std::string_view text);
GroupDescriptor parse_group(std::string_view text);

}  // namespace coxmal
