#include "coxmal/group.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace coxmal {

std::string_view kind_name(Kind kind) noexcept {
  switch (kind) {
    case Kind::A: return "A";
    case Kind::B: return "B";
    case Kind::D: return "D";
    case Kind::I2: return "I2";
  }
  return "?";
}

Factor Factor::make(Kind kind, int param) {
  int minimum = 1;
  switch (kind) {
    case Kind::A: minimum = 1; break;
    case Kind::B: minimum = 2; break;
    case Kind::D: minimum = 4; break;
    case Kind::I2: minimum = 3; break;
  }
  if (param < minimum) {
    throw std::invalid_argument(std::string(kind_name(kind)) + std::to_string(param) +
                                " is outside the classification range (" +
                                std::string(kind_name(kind)) + " requires " +
                                (kind == Kind::I2 ? "m" : "rank") + " >= " + std::to_string(minimum) + ")");
  }
  return Factor(kind, param);
}

int Factor::window_size() const noexcept {
  switch (kind_) {
    case Kind::A: return param_ + 1;
    case Kind::B:
    case Kind::D: return param_;
    case Kind::I2: return 0;
  }
  return 0;
}

double Factor::order() const noexcept {
  double f = 1.0;
  switch (kind_) {
    case Kind::A:
      for (int i = 2; i <= param_ + 1; ++i) f *= i;
      return f;
    case Kind::B:
      for (int i = 1; i <= param_; ++i) f *= 2.0 * i;
      return f;
    case Kind::D:
      for (int i = 1; i <= param_; ++i) f *= 2.0 * i;
      return f / 2.0;
    case Kind::I2: return 2.0 * param_;
  }
  return f;
}

int Factor::max_length() const noexcept {
  switch (kind_) {
    case Kind::A: return param_ * (param_ + 1) / 2;
    case Kind::B: return param_ * param_;
    case Kind::D: return param_ * (param_ - 1);
    case Kind::I2: return param_;
  }
  return 0;
}

std::string Factor::to_string() const {
  if (kind_ == Kind::I2) return "I2(" + std::to_string(param_) + ")";
  return std::string(kind_name(kind_)) + std::to_string(param_);
}

int GroupDescriptor::rank() const noexcept {
  int r = 0;
  for (const auto& f : factors) r += f.rank();
  return r;
}

double GroupDescriptor::order() const noexcept {
  double o = 1.0;
  for (const auto& f : factors) o *= f.order();
  return o;
}

std::string GroupDescriptor::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) s += " x ";
    s += factors[i].to_string();
  }
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view digits, std::string_view context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("malformed group descriptor '" + std::string(context) + "'");
  }
  return value;
}

}  // namespace

Factor parse_factor(std::string_view text) {
  const auto original = text;
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty group descriptor");
  const char head = static_cast<char>(std::toupper(static_cast<unsigned char>(text.front())));
  if (head == 'I') {
    // I2(m)
    if (text.size() < 5 || text[1] != '2' || text[2] != '(' || text.back() != ')') {
      throw std::invalid_argument("malformed dihedral descriptor '" + std::string(original) + "'");
    }
    return Factor::make(Kind::I2, parse_int(trim(text.substr(3, text.size() - 4)), original));
  }
  Kind kind{};
  switch (head) {
    case 'A': kind = Kind::A; break;
    case 'B': kind = Kind::B; break;
    case 'D': kind = Kind::D; break;
    default:
      throw std::invalid_argument("unknown Coxeter type in '" + std::string(original) + "'");
  }
  return Factor::make(kind, parse_int(trim(text.substr(1)), original));
}

GroupDescriptor parse_group(std::string_view text) {
  GroupDescriptor g;
  // Factors are separated by a standalone 'x' (or '*').
  std::size_t start = 0;
  const auto is_sep = [&](std::size_t i) {
    const char c = text[i];
    if (c == '*') return true;
    if (c != 'x' && c != 'X') return false;
    const bool left_ok = i == 0 || std::isspace(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == ')' ||
                         std::isdigit(static_cast<unsigned char>(text[i - 1]));
    const bool right_ok = i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])) ||
                          std::isalpha(static_cast<unsigned char>(text[i + 1]));
    return left_ok && right_ok;
  };
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || is_sep(i)) {
      g.factors.push_back(parse_factor(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return g;
}

}  // namespace coxmal
