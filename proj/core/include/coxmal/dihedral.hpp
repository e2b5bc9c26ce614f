#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace coxmal {

/// r^k s^e in I2(m), acting on Z_m by x -> k + (-1)^e x.
struct DihedralElement {
  int rotation = 0;    // k in [0, m)
  int reflection = 0;  // e in {0, 1}

  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
  friend auto operator<=>(const DihedralElement&, const DihedralElement&) = default;
};

/// The dihedral Coxeter group I2(m) with generators a = (0,1) and b = (1,1).
/// Lengths come from a breadth-first search of the Cayley graph.
class DihedralGroup {
 public:
  /// Throws std::invalid_argument for m < 3.
  explicit DihedralGroup(int m);

  int m() const noexcept { return m_; }
  int order() const noexcept { return 2 * m_; }

  DihedralElement identity() const noexcept { return {}; }
  /// Generator 0 is a, generator 1 is b.
  DihedralElement generator(int i) const;

  DihedralElement multiply(DihedralElement x, DihedralElement y) const noexcept;
  DihedralElement inverse(DihedralElement x) const noexcept;

  int index(DihedralElement x) const noexcept { return 2 * x.rotation + x.reflection; }
  DihedralElement element(int index) const noexcept { return {index / 2, index % 2}; }
  std::vector<DihedralElement> elements() const;

  int length(DihedralElement x) const noexcept { return lengths_[static_cast<std::size_t>(index(x))]; }
  bool right_descent(DihedralElement x, int i) const;
  bool left_descent(DihedralElement x, int i) const;
  int two_sided_descent(DihedralElement x) const;

 private:
  int m_;
  std::vector<int> lengths_;
};

/// "(k,e)".
std::string to_string(DihedralElement x);
DihedralElement parse_dihedral_element(std::string_view text);

}  // namespace coxmal
