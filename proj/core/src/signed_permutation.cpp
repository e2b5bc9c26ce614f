#include "coxmal/signed_permutation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace coxmal {

SignedPermutation SignedPermutation::identity(int n) {
  if (n < 0) throw std::invalid_argument("identity: negative size");
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = i + 1;
  return unchecked(std::move(w));
}

SignedPermutation SignedPermutation::from_window(std::vector<int> window) {
  const auto n = window.size();
  std::vector<bool> seen(n + 1, false);
  for (int v : window) {
    const auto a = static_cast<std::size_t>(std::abs(v));
    if (a == 0 || a > n || seen[a]) {
      throw std::invalid_argument("window magnitudes are not a permutation of 1..n");
    }
    seen[a] = true;
  }
  return unchecked(std::move(window));
}

int SignedPermutation::negative_count() const noexcept {
  return static_cast<int>(std::count_if(window_.begin(), window_.end(), [](int v) { return v < 0; }));
}

bool SignedPermutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < window_.size(); ++i) {
    if (window_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

SignedPermutation compose(const SignedPermutation& u, const SignedPermutation& v) {
  if (u.size() != v.size()) throw std::invalid_argument("compose: rank mismatch");
  std::vector<int> r(static_cast<std::size_t>(v.size()));
  for (int i = 1; i <= v.size(); ++i) r[static_cast<std::size_t>(i - 1)] = u(v(i));
  return SignedPermutation::unchecked(std::move(r));
}

SignedPermutation invert(const SignedPermutation& w) {
  std::vector<int> r(static_cast<std::size_t>(w.size()));
  for (int i = 1; i <= w.size(); ++i) {
    const int v = w(i);
    r[static_cast<std::size_t>(std::abs(v) - 1)] = v > 0 ? i : -i;
  }
  return SignedPermutation::unchecked(std::move(r));
}

SignedPermutation negate_values(const SignedPermutation& w) {
  std::vector<int> r = w.to_vector();
  for (int& v : r) v = -v;
  return SignedPermutation::unchecked(std::move(r));
}

std::string to_string(const SignedPermutation& w) {
  std::string s = "[";
  for (int i = 1; i <= w.size(); ++i) {
    if (i > 1) s += ',';
    s += std::to_string(w(i));
  }
  s += ']';
  return s;
}

SignedPermutation parse_signed_permutation(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw std::invalid_argument("signed permutation must look like [a,b,...]");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<int> window;
  if (!trim(text).empty()) {
    while (true) {
      const auto comma = text.find(',');
      auto token = trim(text.substr(0, comma));
      int value = 0;
      const auto* first = token.data();
      const auto* last = token.data() + token.size();
      if (!token.empty() && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("bad entry in signed permutation: '" + std::string(token) + "'");
      }
      window.push_back(value);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
  }
  return SignedPermutation::from_window(std::move(window));
}

}  // namespace coxmal
