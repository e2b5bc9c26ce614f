#include "coxmal/qanalog.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace coxmal {

namespace {

void check_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("q must be positive and finite");
}

double checked(double value, const char* what) {
  if (!std::isfinite(value)) throw std::range_error(std::string(what) + " is not representable as a double");
  return value;
}

}  // namespace

double q_integer(int m, double q) {
  check_q(q);
  if (m < 0) throw std::invalid_argument("q_integer: m must be non-negative");
  if (m == 0) return 0.0;
  if (std::abs(q - 1.0) < 1e-6) {
    double sum = 0.0;
    double power = 1.0;
    for (int i = 0; i < m; ++i) {
      sum += power;
      power *= q;
    }
    return sum;
  }
  return checked(std::expm1(m * std::log(q)) / (q - 1.0), "q-integer");
}

double q_factorial(int n, double q) {
  double value = 1.0;
  for (int i = 2; i <= n; ++i) value *= q_integer(i, q);
  return checked(value, "q-factorial");
}

double q_even_double_factorial(int n, double q) {
  double value = 1.0;
  for (int i = 1; i <= n; ++i) value *= q_integer(2 * i, q);
  return checked(value, "q-double-factorial");
}

double type_d_poincare(int r, double q) {
  if (r <= 1) {
    check_q(q);
    return 1.0;
  }
  return checked(q_integer(r, q) * q_even_double_factorial(r - 1, q), "D normalization");
}

double normalization_constant(const Factor& g, double q) {
  check_q(q);
  switch (g.kind()) {
    case Kind::A: return q_factorial(g.window_size(), q);
    case Kind::B: return q_even_double_factorial(g.param(), q);
    case Kind::D: return type_d_poincare(g.param(), q);
    case Kind::I2: return checked(q_integer(2, q) * q_integer(g.param(), q), "I2 normalization");
  }
  return 0.0;
}

double normalization_constant(const GroupDescriptor& g, std::span<const double> q) {
  if (q.size() != g.factors.size()) throw std::invalid_argument("one q per factor is required");
  double value = 1.0;
  for (std::size_t i = 0; i < q.size(); ++i) value *= normalization_constant(g.factors[i], q[i]);
  return checked(value, "normalization constant");
}

}  // namespace coxmal
