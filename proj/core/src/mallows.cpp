#include "coxmal/mallows.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coxmal/qanalog.hpp"

namespace coxmal {

namespace {

// Weights q^(len - ref) with ref at the heavy end, so nothing overflows.
std::vector<double> cumulative_weights(const std::vector<int>& lengths, double q) {
  const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
  const int ref = q > 1.0 ? *hi : *lo;
  const double log_q = std::log(q);
  std::vector<double> cumulative;
  cumulative.reserve(lengths.size());
  double total = 0.0;
  for (int len : lengths) {
    total += std::exp((len - ref) * log_q);
    cumulative.push_back(total);
  }
  return cumulative;
}

std::size_t pick(const std::vector<double>& cumulative, Rng& rng) {
  const double u = rng.uniform() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

void check_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("q must be positive and finite");
}

}  // namespace

MallowsSpec MallowsSpec::make(GroupDescriptor group, std::vector<double> q) {
  if (group.factors.empty()) throw std::invalid_argument("empty group descriptor");
  if (q.size() == 1 && group.factors.size() > 1) q.assign(group.factors.size(), q.front());
  if (q.size() != group.factors.size()) {
    throw std::invalid_argument("expected " + std::to_string(group.factors.size()) + " q values, got " +
                                std::to_string(q.size()));
  }
  for (double x : q) check_q(x);
  return MallowsSpec{std::move(group), std::move(q)};
}

std::string MallowsSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << group.to_string() << " q=(";
  for (std::size_t i = 0; i < q.size(); ++i) out << (i ? "," : "") << q[i];
  out << ')';
  return out.str();
}

double pmf(const SignedPermutation& w, const Factor& g, double q) {
  if (!belongs_to(w, g)) throw std::invalid_argument("element " + coxmal::to_string(w) + " is not in " + g.to_string());
  return std::exp(length(w, g) * std::log(q)) / normalization_constant(g, q);
}

double pmf(DihedralElement x, const DihedralGroup& g, double q) {
  return std::exp(g.length(x) * std::log(q)) / normalization_constant(Factor::make(Kind::I2, g.m()), q);
}

int two_sided_descent(const FactorElement& x, const Factor& g) {
  if (const auto* w = std::get_if<SignedPermutation>(&x)) return two_sided_descent(*w, g);
  return DihedralGroup(g.param()).two_sided_descent(std::get<DihedralElement>(x));
}

int two_sided_descent(const ProductElement& x, const GroupDescriptor& g) {
  if (x.size() != g.factors.size()) throw std::invalid_argument("factor count mismatch");
  int t = 0;
  for (std::size_t i = 0; i < x.size(); ++i) t += two_sided_descent(x[i], g.factors[i]);
  return t;
}

std::string to_string(const ProductElement& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += " x ";
    out += std::visit([](const auto& e) { return coxmal::to_string(e); }, x[i]);
  }
  return out;
}

TowerSampler::TowerSampler(Kind kind, int window_size, double q) : kind_(kind), q_(q) {
  if (kind == Kind::I2) throw std::invalid_argument("TowerSampler needs a window group");
  if (window_size < 1) throw std::invalid_argument("TowerSampler needs a positive window size");
  check_q(q);
  cumulative_.resize(static_cast<std::size_t>(window_size));
  for (int m = 1; m <= window_size; ++m) {
    std::vector<int> lengths(static_cast<std::size_t>(stage_size(m)));
    for (int k = 0; k < stage_size(m); ++k) lengths[static_cast<std::size_t>(k)] = candidate(m, k).length;
    cumulative_[static_cast<std::size_t>(m - 1)] = cumulative_weights(lengths, q);
  }
}

int TowerSampler::stage_size(int m) const {
  if (m < 1 || m > window_size()) throw std::out_of_range("tower stage out of range");
  const bool signed_values = kind_ == Kind::B || (kind_ == Kind::D && m >= 2);
  return signed_values ? 2 * m : m;
}

TowerSampler::Candidate TowerSampler::candidate(int m, int k) const {
  if (k < 0 || k >= stage_size(m)) throw std::out_of_range("tower candidate out of range");
  if (k < m) return {m - (k + 1), k + 1, false};
  // Moving -a to the end crosses every other entry once and the entries below
  // a once more; B also counts the sign. D negates the smallest remaining
  // value, which trades the sign for one fewer inversion.
  const int a = k - m + 1;
  if (kind_ == Kind::B) return {m + a - 1, -a, false};
  return {m + a - 2, -a, true};
}

SignedPermutation TowerSampler::representative(int m, int k) const {
  const auto c = candidate(m, k);
  std::vector<int> window;
  window.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j)
    if (j != std::abs(c.last_value)) window.push_back(j);
  if (c.flip_first) window.front() = -window.front();
  window.push_back(c.last_value);
  return SignedPermutation::unchecked(std::move(window));
}

int TowerSampler::draw(int m, Rng& rng) const {
  return static_cast<int>(pick(cumulative_[static_cast<std::size_t>(m - 1)], rng));
}

SignedPermutation TowerSampler::operator()(Rng& rng) const {
  const int n = window_size();
  std::vector<int> choices(static_cast<std::size_t>(n));
  for (int m = n; m >= 1; --m) choices[static_cast<std::size_t>(m - 1)] = draw(m, rng);
  return assemble(choices);
}

SignedPermutation TowerSampler::assemble(const std::vector<int>& choices) const {
  const int n = window_size();
  if (static_cast<int>(choices.size()) != n) throw std::invalid_argument("one choice per stage is required");
  // prefix[j-1] is the image of j under the product of the stages above m.
  std::vector<int> prefix(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) prefix[static_cast<std::size_t>(j)] = j + 1;
  std::vector<int> window(static_cast<std::size_t>(n));
  for (int m = n; m >= 1; --m) {
    const auto c = candidate(m, choices[static_cast<std::size_t>(m - 1)]);
    const int a = std::abs(c.last_value);
    const int image = prefix[static_cast<std::size_t>(a - 1)];
    window[static_cast<std::size_t>(m - 1)] = c.last_value < 0 ? -image : image;
    prefix.erase(prefix.begin() + (a - 1));
    if (c.flip_first && !prefix.empty()) prefix.front() = -prefix.front();
  }
  return SignedPermutation::unchecked(std::move(window));
}

LehmerSampler::LehmerSampler(int window_size, double q) : n_(window_size), q_(q) {
  if (window_size < 1) throw std::invalid_argument("LehmerSampler needs a positive window size");
  check_q(q);
}

LehmerSampler::LehmerSampler(const Factor& g, double q) : LehmerSampler(g.window_size(), q) {
  if (g.kind() != Kind::A) throw std::invalid_argument("LehmerSampler is for type A only");
}

int LehmerSampler::draw_code(int values, Rng& rng) const {
  if (std::abs(q_ - 1.0) < 1e-12) return static_cast<int>(rng.below(static_cast<std::uint64_t>(values)));
  // Inverse CDF of P(k) proportional to r^k on {0, ..., values-1} with r < 1;
  // q > 1 is handled by reflecting k.
  const bool reflect = q_ > 1.0;
  const double r = reflect ? 1.0 / q_ : q_;
  const double mass = -std::expm1(values * std::log(r));  // 1 - r^values
  const double u = rng.uniform();
  int k = static_cast<int>(std::floor(std::log1p(-u * mass) / std::log(r)));
  k = std::clamp(k, 0, values - 1);
  return reflect ? values - 1 - k : k;
}

SignedPermutation LehmerSampler::operator()(Rng& rng) const {
  std::vector<int> remaining(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) remaining[static_cast<std::size_t>(j)] = j + 1;
  std::vector<int> window;
  window.reserve(remaining.size());
  // Entry j exceeds exactly `code` of the later entries.
  for (int j = 0; j < n_; ++j) {
    const int code = draw_code(n_ - j, rng);
    window.push_back(remaining[static_cast<std::size_t>(code)]);
    remaining.erase(remaining.begin() + code);
  }
  return SignedPermutation::unchecked(std::move(window));
}

DihedralSampler::DihedralSampler(int m, double q) : group_(m) {
  check_q(q);
  std::vector<int> lengths;
  for (const auto& x : group_.elements()) lengths.push_back(group_.length(x));
  cumulative_ = cumulative_weights(lengths, q);
}

DihedralElement DihedralSampler::operator()(Rng& rng) const {
  return group_.element(static_cast<int>(pick(cumulative_, rng)));
}

MallowsSampler::MallowsSampler(MallowsSpec spec, bool tower_for_type_a) : spec_(std::move(spec)) {
  for (std::size_t i = 0; i < spec_.group.factors.size(); ++i) {
    const Factor& f = spec_.group.factors[i];
    const double q = spec_.q.at(i);
    if (f.kind() == Kind::I2) {
      samplers_.emplace_back(DihedralSampler(f.param(), q));
    } else if (f.kind() == Kind::A && !tower_for_type_a) {
      samplers_.emplace_back(LehmerSampler(f, q));
    } else {
      samplers_.emplace_back(TowerSampler(f, q));
    }
  }
}

FactorElement MallowsSampler::sample_factor(std::size_t i, Rng& rng) const {
  return std::visit([&](const auto& s) -> FactorElement { return s(rng); }, samplers_.at(i));
}

ProductElement MallowsSampler::operator()(Rng& rng) const {
  ProductElement out;
  out.reserve(samplers_.size());
  for (std::size_t i = 0; i < samplers_.size(); ++i) out.push_back(sample_factor(i, rng));
  return out;
}

int MallowsSampler::sample_two_sided_descent(Rng& rng) const {
  int t = 0;
  for (std::size_t i = 0; i < samplers_.size(); ++i) {
    const auto& s = samplers_[i];
    if (const auto* d = std::get_if<DihedralSampler>(&s)) {
      t += d->group().two_sided_descent((*d)(rng));
    } else {
      const Factor& f = spec_.group.factors[i];
      const auto w = std::holds_alternative<TowerSampler>(s) ? std::get<TowerSampler>(s)(rng)
                                                               : std::get<LehmerSampler>(s)(rng);
      t += two_sided_descent(w, f);
    }
  }
  return t;
}

}  // namespace coxmal
