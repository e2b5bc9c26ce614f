#include "coxmal/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace coxmal {

namespace {

void check_window_kind(Kind kind) {
  if (kind == Kind::I2) throw std::invalid_argument("dihedral groups have no window representation");
}

void check_generator(Kind kind, int window_size, int i) {
  if (i < 0 || i >= generator_count(kind, window_size)) {
    throw std::out_of_range("generator index " + std::to_string(i) + " out of range");
  }
}

// Fenwick tree over a dense integer range.
class Fenwick {
 public:
  explicit Fenwick(int n) : tree_(static_cast<std::size_t>(n) + 1, 0) {}
  void add(int index) {
    for (auto i = static_cast<std::size_t>(index); i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Count of inserted positions in [1, index].
  int prefix(int index) const {
    int s = 0;
    for (auto i = static_cast<std::size_t>(std::max(index, 0)); i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<int> tree_;
};

int length_quadratic(std::span<const int> w, Kind kind) {
  const auto n = w.size();
  int inv = 0;
  int nsp = 0;
  int neg = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (w[j] < 0) ++neg;
    for (std::size_t i = 0; i < j; ++i) {
      if (w[i] > w[j]) ++inv;
      if (w[i] + w[j] < 0) ++nsp;
    }
  }
  switch (kind) {
    case Kind::A: return inv;
    case Kind::B: return inv + nsp + neg;
    case Kind::D: return inv + nsp;
    case Kind::I2: break;
  }
  return 0;
}

int length_fenwick(std::span<const int> w, Kind kind) {
  const int n = static_cast<int>(w.size());
  // Values -n..n map to 1..2n+1.
  Fenwick seen(2 * n + 1);
  long long inv = 0;
  long long nsp = 0;
  int neg = 0;
  for (int j = 0; j < n; ++j) {
    const int v = w[static_cast<std::size_t>(j)];
    if (v < 0) ++neg;
    const int below_or_equal_v = seen.prefix(v + n + 1);
    inv += j - below_or_equal_v;
    nsp += seen.prefix(-v + n);  // earlier values strictly below -v
    seen.add(v + n + 1);
  }
  switch (kind) {
    case Kind::A: return static_cast<int>(inv);
    case Kind::B: return static_cast<int>(inv + nsp + neg);
    case Kind::D: return static_cast<int>(inv + nsp);
    case Kind::I2: break;
  }
  return 0;
}

// Image of a value under a generator acting on the left (on values).
int left_generator_on_value(Kind kind, int i, int v) {
  const int a = std::abs(v);
  const int sign = v < 0 ? -1 : 1;
  if (kind == Kind::A) {
    if (a == i + 1) return sign * (i + 2);
    if (a == i + 2) return sign * (i + 1);
    return v;
  }
  if (i == 0) {
    if (kind == Kind::B) return a == 1 ? -v : v;
    // D: 1 -> -2, 2 -> -1 and the negatives accordingly.
    if (a == 1) return -sign * 2;
    if (a == 2) return -sign * 1;
    return v;
  }
  if (a == i) return sign * (i + 1);
  if (a == i + 1) return sign * i;
  return v;
}

bool right_descent_window(std::span<const int> w, Kind kind, int i) {
  if (kind == Kind::A) return w[static_cast<std::size_t>(i)] > w[static_cast<std::size_t>(i) + 1];
  if (i == 0) {
    if (kind == Kind::B) return w[0] < 0;
    return w[0] + w[1] < 0;
  }
  return w[static_cast<std::size_t>(i) - 1] > w[static_cast<std::size_t>(i)];
}

}  // namespace

int generator_count(Kind kind, int window_size) noexcept {
  switch (kind) {
    case Kind::A: return std::max(window_size - 1, 0);
    case Kind::B: return window_size;
    case Kind::D: return window_size >= 2 ? window_size : 0;
    case Kind::I2: return 2;
  }
  return 0;
}

bool belongs_to(const SignedPermutation& w, Kind kind) noexcept {
  switch (kind) {
    case Kind::A: return w.all_positive();
    case Kind::B: return true;
    case Kind::D: return w.negative_count() % 2 == 0;
    case Kind::I2: return false;
  }
  return false;
}

bool belongs_to(const SignedPermutation& w, const Factor& g) noexcept {
  return g.has_window() && w.size() == g.window_size() && belongs_to(w, g.kind());
}

int length(const SignedPermutation& w, Kind kind) {
  check_window_kind(kind);
  return w.size() <= 64 ? length_quadratic(w.window(), kind) : length_fenwick(w.window(), kind);
}

int length_by_inversion_sets(const SignedPermutation& w, Kind kind) {
  check_window_kind(kind);
  const int n = w.size();
  int count = 0;
  // Pairs of positive indices i < j with w(i) > w(j): common to all types.
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (w(i) > w(j)) ++count;
  if (kind == Kind::B) {
    // -n <= -j <= i <= -1
    for (int j = 1; j <= n; ++j)
      for (int i = -j; i <= -1; ++i)
        if (w(i) > w(j)) ++count;
  } else if (kind == Kind::D) {
    // -i in [n], j in [n], -j < i
    for (int j = 1; j <= n; ++j)
      for (int i = -n; i <= -1; ++i)
        if (-j < i && w(i) > w(j)) ++count;
  }
  return count;
}

SignedPermutation apply_right_generator(const SignedPermutation& w, Kind kind, int i) {
  check_window_kind(kind);
  check_generator(kind, w.size(), i);
  std::vector<int> r = w.to_vector();
  if (kind == Kind::A) {
    std::swap(r[static_cast<std::size_t>(i)], r[static_cast<std::size_t>(i) + 1]);
  } else if (i == 0) {
    if (kind == Kind::B) {
      r[0] = -r[0];
    } else {
      const int a = r[0];
      r[0] = -r[1];
      r[1] = -a;
    }
  } else {
    std::swap(r[static_cast<std::size_t>(i) - 1], r[static_cast<std::size_t>(i)]);
  }
  return SignedPermutation::unchecked(std::move(r));
}

SignedPermutation apply_left_generator(const SignedPermutation& w, Kind kind, int i) {
  check_window_kind(kind);
  check_generator(kind, w.size(), i);
  std::vector<int> r = w.to_vector();
  for (int& v : r) v = left_generator_on_value(kind, i, v);
  return SignedPermutation::unchecked(std::move(r));
}

bool has_descent(const SignedPermutation& w, Kind kind, int i, Side side) {
  check_window_kind(kind);
  check_generator(kind, w.size(), i);
  if (side == Side::right) return right_descent_window(w.window(), kind, i);
  return right_descent_window(invert(w).window(), kind, i);
}

bool has_descent_by_length(const SignedPermutation& w, Kind kind, int i, Side side) {
  const auto moved = side == Side::right ? apply_right_generator(w, kind, i) : apply_left_generator(w, kind, i);
  return length(moved, kind) < length(w, kind);
}

int descent_count(const SignedPermutation& w, Kind kind, Side side) {
  check_window_kind(kind);
  const SignedPermutation inv = side == Side::left ? invert(w) : SignedPermutation{};
  const auto window = side == Side::left ? inv.window() : w.window();
  int count = 0;
  const int gens = generator_count(kind, w.size());
  for (int i = 0; i < gens; ++i) count += right_descent_window(window, kind, i) ? 1 : 0;
  return count;
}

int two_sided_descent(const SignedPermutation& w, Kind kind) {
  return descent_count(w, kind, Side::right) + descent_count(w, kind, Side::left);
}

SignedPermutation negate(const SignedPermutation& w, const Factor& g) {
  if (g.kind() == Kind::A || g.kind() == Kind::I2) {
    throw std::domain_error("negation is only defined for signed permutation groups");
  }
  if (g.kind() == Kind::D && g.param() % 2 != 0) {
    throw std::domain_error("negating every entry leaves D_n when n is odd");
  }
  return negate_values(w);
}

SignedPermutation longest_element(const Factor& g) {
  const int n = g.window_size();
  std::vector<int> r(static_cast<std::size_t>(n));
  switch (g.kind()) {
    case Kind::A:
      for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = n - i;
      break;
    case Kind::B:
      for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = -(i + 1);
      break;
    case Kind::D:
      for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = -(i + 1);
      if (n % 2 != 0) r[0] = 1;
      break;
    case Kind::I2: throw std::invalid_argument("longest_element: use DihedralGroup for I2");
  }
  return SignedPermutation::unchecked(std::move(r));
}

bool generators_commute(const Factor& g, int i, int j) {
  if (i == j) return true;
  if (g.kind() == Kind::I2) return false;
  if (g.kind() == Kind::D && (i == 0 || j == 0)) {
    const int other = i == 0 ? j : i;
    return other != 2;
  }
  return std::abs(i - j) != 1;
}

std::vector<int> neighborhood(const Factor& g, int i) {
  std::vector<int> out;
  for (int j = 0; j < g.rank(); ++j)
    if (j == i || !generators_commute(g, i, j)) out.push_back(j);
  return out;
}

int coxeter_graph_distance(const Factor& g, int i, int j) {
  const int r = g.rank();
  std::vector<int> dist(static_cast<std::size_t>(r), -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(i)] = 0;
  frontier.push(i);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v = 0; v < r; ++v) {
      if (v != u && !generators_commute(g, u, v) && dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        frontier.push(v);
      }
    }
  }
  return dist[static_cast<std::size_t>(j)];
}

ParabolicSubset::ParabolicSubset(const Factor& g, std::vector<int> members) : group_(g), members_(std::move(members)) {
  if (!g.has_window()) throw std::invalid_argument("parabolic subsets are supported for A/B/D only");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (int i : members_) {
    if (i < 0 || i >= g.rank()) throw std::invalid_argument("parabolic subset member outside generator set");
  }
}

ParabolicSubset ParabolicSubset::full(const Factor& g) {
  std::vector<int> all(static_cast<std::size_t>(g.rank()));
  for (int i = 0; i < g.rank(); ++i) all[static_cast<std::size_t>(i)] = i;
  return ParabolicSubset(g, std::move(all));
}

bool ParabolicSubset::contains(int i) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), i);
}

std::vector<std::vector<int>> ParabolicSubset::components() const {
  std::vector<std::vector<int>> out;
  std::set<int> unvisited(members_.begin(), members_.end());
  while (!unvisited.empty()) {
    std::vector<int> comp;
    std::deque<int> todo{*unvisited.begin()};
    unvisited.erase(unvisited.begin());
    while (!todo.empty()) {
      const int u = todo.front();
      todo.pop_front();
      comp.push_back(u);
      for (auto it = unvisited.begin(); it != unvisited.end();) {
        if (!generators_commute(group_, u, *it)) {
          todo.push_back(*it);
          it = unvisited.erase(it);
        } else {
          ++it;
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<int> ParabolicSubset::index_support() const {
  std::set<int> support;
  const Kind kind = group_.kind();
  if (kind == Kind::A) {
    for (int i : members_) {
      support.insert(i + 1);
      support.insert(i + 2);
    }
    return {support.begin(), support.end()};
  }
  for (const auto& comp : components()) {
    const bool with_s0 = std::binary_search(comp.begin(), comp.end(), 0);
    for (int k : comp) {
      if (k == 0) {
        support.insert({-1, 1});
        if (kind == Kind::D) support.insert({-2, 2});
        continue;
      }
      support.insert({k, k + 1});
      if (with_s0) support.insert({-k, -k - 1});
    }
  }
  return {support.begin(), support.end()};
}

ParabolicDecomposition parabolic_decompose(const SignedPermutation& w, const ParabolicSubset& s) {
  const Kind kind = s.group().kind();
  SignedPermutation coset = w;
  SignedPermutation sub = SignedPermutation::identity(w.size());
  bool reduced = true;
  while (reduced) {
    reduced = false;
    for (int i : s.members()) {
      if (right_descent_window(coset.window(), kind, i)) {
        coset = apply_right_generator(coset, kind, i);
        sub = apply_left_generator(sub, kind, i);
        reduced = true;
        break;
      }
    }
  }
  return {std::move(coset), std::move(sub)};
}

std::vector<SignedPermutation> parabolic_subgroup(const ParabolicSubset& s) {
  const Kind kind = s.group().kind();
  const auto e = SignedPermutation::identity(s.group().window_size());
  std::unordered_set<SignedPermutation> seen{e};
  std::vector<SignedPermutation> out{e};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int i : s.members()) {
      auto next = apply_right_generator(out[head], kind, i);
      if (seen.insert(next).second) out.push_back(std::move(next));
    }
  }
  return out;
}

std::uint64_t enumeration_cap() {
  if (const char* env = std::getenv("COXMAL_ENUM_CAP")) {
    std::uint64_t cap = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec == std::errc{} && ptr == text.data() + text.size() && cap > 0) return cap;
  }
  return kDefaultEnumerationCap;
}

void for_each_element(Kind kind, int window_size, const std::function<void(const SignedPermutation&)>& visit,
                      std::uint64_t cap) {
  check_window_kind(kind);
  double order = 1.0;
  for (int i = 2; i <= window_size; ++i) order *= i;
  if (kind != Kind::A) order *= std::ldexp(1.0, window_size - (kind == Kind::D && window_size > 0 ? 1 : 0));
  if (order > static_cast<double>(cap)) {
    throw std::length_error("enumeration of " + std::to_string(static_cast<long double>(order)) +
                            " elements exceeds the cap of " + std::to_string(cap));
  }
  std::vector<int> perm(static_cast<std::size_t>(window_size));
  for (int i = 0; i < window_size; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  const std::uint32_t masks = kind == Kind::A ? 1U : (1U << window_size);
  std::vector<int> window(perm.size());
  do {
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
      if (kind == Kind::D && std::popcount(mask) % 2 != 0) continue;
      for (std::size_t i = 0; i < perm.size(); ++i) window[i] = (mask >> i) & 1U ? -perm[i] : perm[i];
      visit(SignedPermutation::unchecked(window));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

void for_each_element(const Factor& g, const std::function<void(const SignedPermutation&)>& visit,
                      std::uint64_t cap) {
  for_each_element(g.kind(), g.window_size(), visit, cap);
}

std::vector<SignedPermutation> enumerate(Kind kind, int window_size, std::uint64_t cap) {
  std::vector<SignedPermutation> out;
  for_each_element(kind, window_size, [&](const SignedPermutation& w) { out.push_back(w); }, cap);
  return out;
}

std::vector<SignedPermutation> enumerate(const Factor& g, std::uint64_t cap) {
  return enumerate(g.kind(), g.window_size(), cap);
}

}  // namespace coxmal
