#include "coxmal/dihedral.hpp"

#include <charconv>
#include <stdexcept>

namespace coxmal {

DihedralGroup::DihedralGroup(int m) : m_(m) {
  if (m < 3) throw std::invalid_argument("I2(m) needs m >= 3");
  lengths_.assign(static_cast<std::size_t>(2 * m), -1);
  std::vector<DihedralElement> frontier{identity()};
  lengths_[0] = 0;
  for (int depth = 1; !frontier.empty(); ++depth) {
    std::vector<DihedralElement> next;
    for (auto x : frontier) {
      for (int i = 0; i < 2; ++i) {
        auto y = multiply(x, generator(i));
        auto& slot = lengths_[static_cast<std::size_t>(index(y))];
        if (slot < 0) {
          slot = depth;
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
}

DihedralElement DihedralGroup::generator(int i) const {
  if (i != 0 && i != 1) throw std::out_of_range("I2 generator index must be 0 or 1");
  return {i, 1};
}

DihedralElement DihedralGroup::multiply(DihedralElement x, DihedralElement y) const noexcept {
  int k = x.reflection != 0 ? x.rotation - y.rotation : x.rotation + y.rotation;
  k %= m_;
  if (k < 0) k += m_;
  return {k, x.reflection ^ y.reflection};
}

DihedralElement DihedralGroup::inverse(DihedralElement x) const noexcept {
  if (x.reflection != 0) return x;
  return {(m_ - x.rotation) % m_, 0};
}

std::vector<DihedralElement> DihedralGroup::elements() const {
  std::vector<DihedralElement> out;
  out.reserve(static_cast<std::size_t>(order()));
  for (int i = 0; i < order(); ++i) out.push_back(element(i));
  return out;
}

bool DihedralGroup::right_descent(DihedralElement x, int i) const {
  return length(multiply(x, generator(i))) < length(x);
}

bool DihedralGroup::left_descent(DihedralElement x, int i) const {
  return length(multiply(generator(i), x)) < length(x);
}

int DihedralGroup::two_sided_descent(DihedralElement x) const {
  int t = 0;
  for (int i = 0; i < 2; ++i) t += (right_descent(x, i) ? 1 : 0) + (left_descent(x, i) ? 1 : 0);
  return t;
}

std::string to_string(DihedralElement x) {
  return "(" + std::to_string(x.rotation) + "," + std::to_string(x.reflection) + ")";
}

DihedralElement parse_dihedral_element(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("malformed dihedral element: " + std::string(text)); };
  if (text.size() < 5 || text.front() != '(' || text.back() != ')') throw fail();
  const auto body = text.substr(1, text.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos) throw fail();
  DihedralElement x;
  auto parse = [&](std::string_view part, int& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc{} || ptr != part.data() + part.size()) throw fail();
  };
  parse(body.substr(0, comma), x.rotation);
  parse(body.substr(comma + 1), x.reflection);
  if (x.rotation < 0 || (x.reflection != 0 && x.reflection != 1)) throw fail();
  return x;
}

}  // namespace coxmal
