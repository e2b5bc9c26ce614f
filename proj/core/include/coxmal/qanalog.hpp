#pragma once

#include <span>

#include "coxmal/group.hpp"

namespace coxmal {

/// [m]_q = 1 + q + ... + q^{m-1}; [0]_q = 0. Summed directly when
/// |q - 1| < 1e-6, closed form otherwise.
double q_integer(int m, double q);

/// [n]_q! = [1]_q [2]_q ... [n]_q.
double q_factorial(int n, double q);

/// [2n]_q!! = [2]_q [4]_q ... [2n]_q.
double q_even_double_factorial(int n, double q);

/// Length generating function of D_r: [r]_q [2r-2]_q!!, taken to be 1 for
/// r <= 1 (the trivial group).
double type_d_poincare(int r, double q);

/// Z_W(q) = sum over W of q^l(w). Type A_n uses the symmetric group on n + 1
/// letters. Throws std::invalid_argument for q <= 0 and std::range_error when
/// the value is not a finite double.
double normalization_constant(const Factor& g, double q);

/// Product over factors, one q per factor.
double normalization_constant(const GroupDescriptor& g, std::span<const double> q);

}  // namespace coxmal
