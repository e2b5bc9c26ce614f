#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coxmal/coxeter.hpp"
#include "coxmal/dihedral.hpp"
#include "coxmal/group.hpp"
#include "coxmal/rng.hpp"

namespace coxmal {

/// A group together with one Mallows parameter per irreducible factor.
struct MallowsSpec {
  GroupDescriptor group;
  std::vector<double> q;

  /// A single q is broadcast to every factor. Throws std::invalid_argument
  /// on a count mismatch or a q that is not positive and finite.
  static MallowsSpec make(GroupDescriptor group, std::vector<double> q);
  static MallowsSpec make(const Factor& f, double q) { return make(GroupDescriptor(f), {q}); }

  const Factor& factor(std::size_t i = 0) const { return group.factors.at(i); }
  std::string to_string() const;
};

/// q^l(w) / Z_W(q).
double pmf(const SignedPermutation& w, const Factor& g, double q);
double pmf(DihedralElement x, const DihedralGroup& g, double q);

using FactorElement = std::variant<SignedPermutation, DihedralElement>;
using ProductElement = std::vector<FactorElement>;

int two_sided_descent(const FactorElement& x, const Factor& g);
/// Sum of the factor statistics.
int two_sided_descent(const ProductElement& x, const GroupDescriptor& g);
/// Factors joined by " x ".
std::string to_string(const ProductElement& x);

/// Exact sampler that descends the parabolic tower W_N > W_{N-1} > ... > W_1,
/// where W_m acts on the first m window positions. At stage m a minimal coset
/// representative is drawn with probability proportional to q^length and the
/// representatives are composed from the top down.
class TowerSampler {
 public:
  /// Stage m offers the values 1..m, then -1..-m (type A and the first type
  /// D stage only the positive ones) for position m. Candidate k puts that
  /// value last and the remaining magnitudes in increasing order before it.
  struct Candidate {
    int length = 0;
    int last_value = 0;       // representative(m)
    bool flip_first = false;  // D: the smallest remaining value is negated
  };

  TowerSampler(Kind kind, int window_size, double q);
  TowerSampler(const Factor& g, double q) : TowerSampler(g.kind(), g.window_size(), q) {}

  Kind kind() const noexcept { return kind_; }
  int window_size() const noexcept { return static_cast<int>(cumulative_.size()); }
  double q() const noexcept { return q_; }

  /// Number of candidates at stage m, for m in [1, window_size].
  int stage_size(int m) const;
  /// Candidate k of stage m; lengths come from closed forms.
  Candidate candidate(int m, int k) const;
  /// The window of size m that candidate k stands for.
  SignedPermutation representative(int m, int k) const;

  SignedPermutation operator()(Rng& rng) const;

  /// Composes one candidate index per stage (choices[m-1] for stage m) with
  /// the prefix map used by operator().
  SignedPermutation assemble(const std::vector<int>& choices) const;

 private:
  int draw(int m, Rng& rng) const;

  Kind kind_;
  double q_;
  std::vector<std::vector<double>> cumulative_;
};

/// Type A fast path: independent truncated-geometric Lehmer code entries.
class LehmerSampler {
 public:
  LehmerSampler(int window_size, double q);
  explicit LehmerSampler(const Factor& g, double q);

  int window_size() const noexcept { return n_; }
  SignedPermutation operator()(Rng& rng) const;

 private:
  int draw_code(int values, Rng& rng) const;

  int n_;
  double q_;
};

class DihedralSampler {
 public:
  DihedralSampler(int m, double q);

  const DihedralGroup& group() const noexcept { return group_; }
  DihedralElement operator()(Rng& rng) const;

 private:
  DihedralGroup group_;
  std::vector<double> cumulative_;
};

/// Independent samplers, one per factor of a product.
class MallowsSampler {
 public:
  /// Type A factors use the Lehmer path unless `tower_for_type_a` is set.
  explicit MallowsSampler(MallowsSpec spec, bool tower_for_type_a = false);

  const MallowsSpec& spec() const noexcept { return spec_; }

  ProductElement operator()(Rng& rng) const;
  FactorElement sample_factor(std::size_t i, Rng& rng) const;

  /// Two-sided descent of one fresh sample, summed over factors.
  int sample_two_sided_descent(Rng& rng) const;

 private:
  using FactorSampler = std::variant<TowerSampler, LehmerSampler, DihedralSampler>;
  MallowsSpec spec_;
  std::vector<FactorSampler> samplers_;
};

}  // namespace coxmal
