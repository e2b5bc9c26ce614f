#include <doctest.h>

#include <cstdlib>
#include <random>
#include <set>
#include <stdexcept>

#include "coxmal/coxeter.hpp"
#include "coxmal/dihedral.hpp"
#include "coxmal/group.hpp"
#include "oracles.hpp"

using namespace coxmal;

namespace {

SignedPermutation W(std::vector<int> v) { return SignedPermutation::from_window(std::move(v)); }

std::vector<Factor> small_factors() {
  return {Factor::make(Kind::A, 1), Factor::make(Kind::A, 2), Factor::make(Kind::A, 3), Factor::make(Kind::A, 4),
          Factor::make(Kind::B, 2), Factor::make(Kind::B, 3), Factor::make(Kind::B, 4), Factor::make(Kind::D, 4)};
}

/// Every subset of the generators, as bit masks.
std::vector<ParabolicSubset> all_subsets(const Factor& g) {
  std::vector<ParabolicSubset> out;
  for (int mask = 0; mask < (1 << g.rank()); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < g.rank(); ++i)
      if (mask & (1 << i)) members.push_back(i);
    out.emplace_back(g, members);
  }
  return out;
}

bool has_right_descent_in(const SignedPermutation& w, const ParabolicSubset& s) {
  for (int i : s.members())
    if (has_descent(w, s.group(), i, Side::right)) return true;
  return false;
}

}  // namespace

TEST_CASE("compose and invert on small examples") {
  const auto e = SignedPermutation::identity(2);
  const auto w = W({-2, 1});
  CHECK(compose(e, w) == w);
  CHECK(compose(w, invert(w)) == e);
  CHECK(compose(W({-1, 2}), W({2, 1})) == W({2, -1}));
  CHECK(invert(e) == e);
  CHECK(invert(W({-2, 1})) == W({2, -1}));
  CHECK_THROWS_AS(compose(W({1, 2}), W({1, 2, 3})), std::invalid_argument);
  CHECK_THROWS_AS(W({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(W({1, 3}), std::invalid_argument);
}

TEST_CASE("invert is an involution and compose is associative") {
  std::mt19937_64 rng(11);
  const auto elements = enumerate(Factor::make(Kind::B, 4));
  std::uniform_int_distribution<std::size_t> pick(0, elements.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    const auto& a = elements[pick(rng)];
    const auto& b = elements[pick(rng)];
    const auto& c = elements[pick(rng)];
    CHECK(invert(invert(a)) == a);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(invert(compose(a, b)) == compose(invert(b), invert(a)));
  }
}

TEST_CASE("negation and the longest element") {
  const auto b3 = Factor::make(Kind::B, 3);
  const auto d4 = Factor::make(Kind::D, 4);
  const auto nb = negate(SignedPermutation::identity(3), b3);
  CHECK(nb == W({-1, -2, -3}));
  CHECK(length(nb, b3) == 9);
  CHECK(length(negate(SignedPermutation::identity(4), d4), d4) == 12);
  for (const auto& w : enumerate(d4)) CHECK(negate(negate(w, d4), d4) == w);
  for (const auto& g : {b3, d4}) {
    for (const auto& w : enumerate(g)) CHECK(length(w, g) + length(negate(w, g), g) == g.max_length());
  }
  CHECK_THROWS_AS(negate(SignedPermutation::identity(3), Factor::make(Kind::A, 2)), std::domain_error);
  CHECK_THROWS_AS(negate(SignedPermutation::identity(5), Factor::make(Kind::D, 5)), std::domain_error);
}

TEST_CASE("lengths on small examples") {
  const auto b2 = Factor::make(Kind::B, 2);
  const auto d4 = Factor::make(Kind::D, 4);
  CHECK(length(SignedPermutation::identity(2), b2) == 0);
  CHECK(length(W({-1, 2}), b2) == 1);
  const auto s0 = apply_right_generator(SignedPermutation::identity(4), d4, 0);
  CHECK(s0 == W({-2, -1, 3, 4}));
  CHECK(length(s0, d4) == 1);
}

TEST_CASE("length equals word length from a Cayley-graph search") {
  // The D display's index convention is validated here against word length.
  for (const auto& g : small_factors()) {
    CAPTURE(g.to_string());
    const auto words = oracle::word_lengths(g);
    CHECK(words.size() == static_cast<std::size_t>(g.order()));
    int longest = 0;
    for (const auto& [w, d] : words) {
      CHECK(length(w, g) == d);
      CHECK(length_by_inversion_sets(w, g.kind()) == d);
      CHECK(belongs_to(w, g));
      longest = std::max(longest, d);
    }
    CHECK(longest == g.max_length());
    CHECK(length(longest_element(g), g) == g.max_length());
  }
}

TEST_CASE("fast length agrees with the literal count on large windows") {
  std::mt19937_64 rng(5);
  for (Kind kind : {Kind::A, Kind::B, Kind::D}) {
    for (int n : {63, 64, 65, 200}) {
      std::vector<int> v(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
      std::shuffle(v.begin(), v.end(), rng);
      int negatives = 0;
      if (kind != Kind::A) {
        for (auto& x : v) {
          if (rng() % 2) {
            x = -x;
            ++negatives;
          }
        }
        if (kind == Kind::D && negatives % 2) v[0] = -v[0];
      }
      const auto w = W(v);
      CHECK(length(w, kind) == length_by_inversion_sets(w, kind));
    }
  }
}

TEST_CASE("generators are involutions and change length by one") {
  for (const auto& g : small_factors()) {
    CAPTURE(g.to_string());
    for (const auto& w : enumerate(g)) {
      const int l = length(w, g);
      for (int i = 0; i < g.rank(); ++i) {
        for (Side side : {Side::right, Side::left}) {
          const auto ws = side == Side::right ? apply_right_generator(w, g, i) : apply_left_generator(w, g, i);
          CHECK(std::abs(length(ws, g) - l) == 1);
          const auto back = side == Side::right ? apply_right_generator(ws, g, i) : apply_left_generator(ws, g, i);
          CHECK(back == w);
          CHECK(has_descent(w, g, i, side) == has_descent_by_length(w, g.kind(), i, side));
        }
      }
    }
  }
}

TEST_CASE("descent counts on special elements") {
  for (const auto& g : small_factors()) {
    const auto e = SignedPermutation::identity(g.window_size());
    const auto w0 = longest_element(g);
    for (int i = 0; i < g.rank(); ++i) {
      CHECK_FALSE(has_descent(e, g, i, Side::right));
      CHECK(has_descent(w0, g, i, Side::right));
      CHECK(has_descent(w0, g, i, Side::left));
    }
    CHECK(two_sided_descent(e, g) == 0);
    CHECK(two_sided_descent(w0, g) == 2 * g.rank());
  }
  CHECK(two_sided_descent(W({2, 1}), Factor::make(Kind::B, 2)) == 2);
}

TEST_CASE("parabolic decomposition is the unique factorization") {
  for (const auto& g : {Factor::make(Kind::A, 3), Factor::make(Kind::B, 3), Factor::make(Kind::D, 4)}) {
    CAPTURE(g.to_string());
    const auto elements = enumerate(g);
    for (const auto& s : all_subsets(g)) {
      const auto subgroup = parabolic_subgroup(s);
      for (const auto& w : elements) {
        const auto d = parabolic_decompose(w, s);
        CHECK(compose(d.coset_representative, d.subgroup_part) == w);
        CHECK(length(d.coset_representative, g) + length(d.subgroup_part, g) == length(w, g));
        int matches = 0;
        for (const auto& b : subgroup) {
          const auto a = compose(w, invert(b));
          if (!has_right_descent_in(a, s)) {
            ++matches;
            CHECK(b == d.subgroup_part);
          }
        }
        CHECK(matches == 1);
      }
    }
  }
}

TEST_CASE("parabolic decomposition of the trivial subsets") {
  const auto g = Factor::make(Kind::B, 3);
  for (const auto& w : enumerate(g)) {
    const auto none = parabolic_decompose(w, ParabolicSubset::empty(g));
    CHECK(none.coset_representative == w);
    CHECK(none.subgroup_part.is_identity());
    const auto all = parabolic_decompose(w, ParabolicSubset::full(g));
    CHECK(all.coset_representative.is_identity());
    CHECK(all.subgroup_part == w);
  }
}

TEST_CASE("right multiplication by the parabolic subgroup") {
  for (const auto& g : {Factor::make(Kind::A, 4), Factor::make(Kind::B, 3), Factor::make(Kind::D, 4)}) {
    CAPTURE(g.to_string());
    const auto elements = enumerate(g);
    for (const auto& s : all_subsets(g)) {
      const auto subgroup = parabolic_subgroup(s);
      for (std::size_t k = 0; k < elements.size(); k += 7) {
        const auto& w = elements[k];
        const auto d = parabolic_decompose(w, s);
        for (const auto& w0 : subgroup) {
          const auto moved = parabolic_decompose(compose(w, w0), s);
          CHECK(moved.coset_representative == d.coset_representative);
          CHECK(moved.subgroup_part == compose(d.subgroup_part, w0));
        }
      }
    }
  }
}

TEST_CASE("descents at commuting generators are unchanged by right multiplication") {
  for (const auto& g : small_factors()) {
    for (const auto& w : enumerate(g)) {
      for (int i = 0; i < g.rank(); ++i) {
        const auto ws = apply_right_generator(w, g, i);
        for (int j = 0; j < g.rank(); ++j) {
          if (i != j && generators_commute(g, i, j)) {
            CHECK(has_descent(w, g, j, Side::right) == has_descent(ws, g, j, Side::right));
          }
        }
      }
    }
  }
}

TEST_CASE("the descent change at a generator depends only on the neighbourhood part") {
  for (const auto& g : {Factor::make(Kind::A, 4), Factor::make(Kind::B, 4), Factor::make(Kind::D, 4)}) {
    CAPTURE(g.to_string());
    const auto elements = enumerate(g);
    for (int i = 0; i < g.rank(); ++i) {
      const ParabolicSubset t(g, neighborhood(g, i));
      std::map<SignedPermutation, int> seen;
      for (const auto& w : elements) {
        const auto star = has_descent(w, g, i, Side::right) ? w : apply_right_generator(w, g, i);
        const int diff = descent_count(w, g.kind()) - descent_count(star, g.kind());
        int local = 0;
        for (int j : t.members())
          local += int(has_descent(w, g, j, Side::right)) - int(has_descent(star, g, j, Side::right));
        CHECK(diff == local);
        const auto key = parabolic_decompose(w, t).subgroup_part;
        const auto [it, fresh] = seen.emplace(key, diff);
        if (!fresh) CHECK(it->second == diff);
      }
    }
  }
}

TEST_CASE("Coxeter graph structure") {
  const auto d5 = Factor::make(Kind::D, 5);
  CHECK_FALSE(generators_commute(d5, 0, 2));
  CHECK(generators_commute(d5, 0, 1));
  CHECK(neighborhood(d5, 2) == std::vector<int>{0, 1, 2, 3});
  CHECK(coxeter_graph_distance(d5, 0, 1) == 2);
  CHECK(coxeter_graph_distance(d5, 0, 4) == 3);
  const auto b5 = Factor::make(Kind::B, 5);
  CHECK(coxeter_graph_distance(b5, 0, 4) == 4);
  CHECK(neighborhood(b5, 0) == std::vector<int>{0, 1});
  const auto a4 = Factor::make(Kind::A, 4);
  CHECK(coxeter_graph_distance(a4, 0, 3) == 3);
}

TEST_CASE("enumeration counts and the cap") {
  CHECK(enumerate(Factor::make(Kind::A, 2)).size() == 6);
  const auto b3 = enumerate(Factor::make(Kind::B, 3));
  CHECK(b3.size() == 48);
  CHECK(std::set<SignedPermutation>(b3.begin(), b3.end()).size() == 48);
  CHECK(enumerate(Factor::make(Kind::D, 4)).size() == 192);
  for (const auto& w : enumerate(Factor::make(Kind::D, 4))) CHECK(w.negative_count() % 2 == 0);
  CHECK_THROWS_AS(enumerate(Factor::make(Kind::B, 4), 100), std::length_error);
  CHECK_THROWS_AS(enumerate(Factor::make(Kind::B, 10)), std::length_error);

  ::setenv("COXMAL_ENUM_CAP", "40", 1);
  CHECK(enumeration_cap() == 40);
  CHECK_THROWS_AS(enumerate(Factor::make(Kind::B, 3)), std::length_error);
  ::unsetenv("COXMAL_ENUM_CAP");
  CHECK(enumeration_cap() == kDefaultEnumerationCap);
}

TEST_CASE("descriptor parsing and classification ranges") {
  CHECK(parse_factor("B4") == Factor::make(Kind::B, 4));
  CHECK(parse_factor("a3") == Factor::make(Kind::A, 3));
  CHECK(parse_factor("I2(7)") == Factor::make(Kind::I2, 7));
  CHECK_THROWS_AS(parse_factor("D3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_factor("B1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_factor("A0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_factor("I2(2)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_factor("E8"), std::invalid_argument);
  const auto g = parse_group("B4 x A2 x I2(5)");
  REQUIRE(g.factors.size() == 3);
  CHECK(g.to_string() == "B4 x A2 x I2(5)");
  CHECK(parse_group(g.to_string()) == g);
  CHECK(g.rank() == 8);
  CHECK(g.order() == 384.0 * 6 * 10);
  for (const char* text : {"A1", "B2", "D4", "D5", "I2(3)", "B50 x B50 x A49"})
    CHECK(parse_group(parse_group(text).to_string()).to_string() == parse_group(text).to_string());
}

TEST_CASE("element text forms round-trip") {
  for (const auto& w : enumerate(Factor::make(Kind::B, 3))) CHECK(parse_signed_permutation(to_string(w)) == w);
  CHECK(to_string(W({-2, 1, 3})) == "[-2,1,3]");
  CHECK(parse_signed_permutation(" [ -2, 1 ,3 ]") == W({-2, 1, 3}));
  CHECK_THROWS_AS(parse_signed_permutation("[1,1]"), std::invalid_argument);
  const DihedralGroup d(5);
  for (const auto& x : d.elements()) CHECK(parse_dihedral_element(to_string(x)) == x);
}

TEST_CASE("dihedral groups by explicit words") {
  for (int m = 3; m <= 8; ++m) {
    const DihedralGroup d(m);
    CHECK(d.elements().size() == static_cast<std::size_t>(2 * m));
    // Alternating words a, ab, aba, ... and b, ba, ... reach every element;
    // the shorter of the two words is the length.
    std::map<DihedralElement, int> best{{d.identity(), 0}};
    for (int first = 0; first < 2; ++first) {
      auto x = d.identity();
      for (int k = 1; k <= m; ++k) {
        x = d.multiply(x, d.generator((first + k - 1) % 2));
        auto [it, fresh] = best.emplace(x, k);
        if (!fresh) it->second = std::min(it->second, k);
      }
    }
    CHECK(best.size() == static_cast<std::size_t>(2 * m));
    int longest = 0;
    for (const auto& [x, l] : best) {
      CHECK(d.length(x) == l);
      longest = std::max(longest, l);
      CHECK(d.multiply(x, d.inverse(x)) == d.identity());
      for (int i = 0; i < 2; ++i) {
        CHECK(d.right_descent(x, i) == (d.length(d.multiply(x, d.generator(i))) < l));
        CHECK(d.left_descent(x, i) == (d.length(d.multiply(d.generator(i), x)) < l));
      }
    }
    CHECK(longest == m);
  }
  CHECK_THROWS_AS(DihedralGroup(2), std::invalid_argument);
}
