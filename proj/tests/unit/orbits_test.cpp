#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "weylbranch/lattice.hpp"
#include "weylbranch/orbits.hpp"

using namespace weylbranch;

namespace {

Weight w(const std::string& alg, const std::string& text) { return parse_weight(parse_algebra(alg), text); }

// Fixed-point closure under all simple reflections, with no use of the
// layered expansion or the dominance reduction.
std::set<Coords> naive_closure(const SimpleComponent& c, const Coords& seed) {
  const auto cm = cartan_matrix(c);
  std::set<Coords> pts{seed};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& x : std::vector<Coords>(pts.begin(), pts.end()))
      for (std::size_t i = 0; i < x.size(); ++i) {
        Coords y = x;
        for (std::size_t j = 0; j < x.size(); ++j) y[j] -= x[i] * Rational(cm(i, j));
        grew = pts.insert(y).second || grew;
      }
  }
  return pts;
}

// W(B_3) acts on R^3 by signed permutations. omega_1 = e1, omega_2 = e1+e2,
// omega_3 = (e1+e2+e3)/2; omega coordinates are recovered as
// (l1-l2, l2-l3, 2 l3).
std::set<Coords> b3_signed_permutations(const Coords& x) {
  const std::vector<Rational> l{x[0] + x[1] + x[2] / 2, x[1] + x[2] / 2, x[2] / 2};
  std::set<Coords> out;
  std::vector<int> perm{0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      std::vector<Rational> v(3);
      for (int k = 0; k < 3; ++k) v[k] = (signs >> k & 1) ? -l[perm[k]] : l[perm[k]];
      out.insert({v[0] - v[1], v[1] - v[2], 2 * v[2]});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// W(A_3) permutes the four coordinates of l = (x1+x2+x3, x2+x3, x3, 0).
std::set<Coords> a3_permutations(const Coords& x) {
  std::vector<Rational> l{x[0] + x[1] + x[2], x[1] + x[2], x[2], 0};
  std::sort(l.begin(), l.end());
  std::set<Coords> out;
  do out.insert({l[0] - l[1], l[1] - l[2], l[2] - l[3]});
  while (std::next_permutation(l.begin(), l.end()));
  return out;
}

std::vector<SimpleComponent> small_components() {
  return {A(1), A(2), A(3), A(4), B(2), B(3), B(4), C(2), C(3), C(4), D(4)};
}

Coords random_dominant(std::mt19937& rng, std::size_t n, int hi) {
  std::uniform_int_distribution<int> d(0, hi);
  Coords x(n);
  for (auto& v : x) v = d(rng);
  return x;
}

}  // namespace

TEST(Orbits, A3SeedGivesTwelvePoints) {
  const auto o = generate_orbit(w("A3", "(2,0,1)"));
  const std::set<Coords> expected{{2, 0, 1},  {-2, 2, 1}, {2, 1, -1},  {0, -2, 3},  {-2, 3, -1}, {3, -1, 0},
                                  {0, 1, -3}, {1, -3, 2}, {-3, 2, 0}, {1, -1, -2}, {-1, -2, 2}, {-1, 0, -2}};
  EXPECT_EQ(std::set<Coords>(o.points.begin(), o.points.end()), expected);
  EXPECT_EQ(o.size(), 12u);
  EXPECT_TRUE(std::is_sorted(o.points.begin(), o.points.end(), DescendingLex{}));
  EXPECT_EQ(o.points.front(), (Coords{3, -1, 0}));
}

TEST(Orbits, TrivialAndU1Orbits) {
  EXPECT_EQ(generate_orbit(w("A1", "(0)")).points, (std::vector<Coords>{{0}}));
  EXPECT_EQ(generate_orbit(w("A1", "(3)")).points, (std::vector<Coords>{{3}, {-3}}));
  const auto u = generate_orbit(w("A1xU1", "(1)(-5/2)"));
  EXPECT_EQ(u.points, (std::vector<Coords>{{1, Rational(-5, 2)}, {-1, Rational(-5, 2)}}));
  EXPECT_EQ(generate_orbit(w("U1", "(4)")).size(), 1u);
}

TEST(Orbits, MatchesSignedPermutationModelForB3) {
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    const Coords x = random_dominant(rng, 3, 3);
    const auto o = generate_orbit(Weight(B(3), x));
    EXPECT_EQ(std::set<Coords>(o.points.begin(), o.points.end()), b3_signed_permutations(x));
  }
}

TEST(Orbits, MatchesPermutationModelForA3) {
  std::mt19937 rng(4);
  for (int t = 0; t < 40; ++t) {
    const Coords x = random_dominant(rng, 3, 3);
    const auto o = generate_orbit(Weight(A(3), x));
    EXPECT_EQ(std::set<Coords>(o.points.begin(), o.points.end()), a3_permutations(x));
  }
}

TEST(Orbits, MatchesNaiveClosure) {
  std::mt19937 rng(8);
  for (const auto& c : small_components())
    for (int t = 0; t < 6; ++t) {
      const Coords x = random_dominant(rng, static_cast<std::size_t>(c.rank()), 2);
      const auto o = generate_orbit(Weight(c, x));
      const auto ref = naive_closure(c, x);
      EXPECT_EQ(std::set<Coords>(o.points.begin(), o.points.end()), ref) << c;
      EXPECT_EQ(o.size(), ref.size()) << c << " has duplicate points";
    }
}

TEST(Orbits, FormulaMatchesEnumeration) {
  std::mt19937 rng(21);
  for (const auto& c : small_components())
    for (int t = 0; t < 15; ++t) {
      const Weight s(c, random_dominant(rng, static_cast<std::size_t>(c.rank()), 2));
      EXPECT_EQ(orbit_size(s), orbit_size_by_enumeration(s)) << c << " " << s;
    }
  const Weight prod = w("A2xB2xU1", "(1,0)(0,1)(7)");
  EXPECT_EQ(orbit_size(prod), 3u * 4u);
  EXPECT_EQ(orbit_size(prod), orbit_size_by_enumeration(prod));
}

TEST(Orbits, StrictlyDominantOrbitHasWeylOrder) {
  for (const auto& c : small_components()) {
    const Weight s(c, Coords(static_cast<std::size_t>(c.rank()), Rational(1)));
    EXPECT_EQ(orbit_size_by_enumeration(s), weyl_order(c)) << c;
  }
  EXPECT_EQ(orbit_size(Weight(A(8), Coords(8, Rational(1)))), 362880u);
}

TEST(Orbits, ReflectionIsAnInvolution) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> d(-4, 4);
  for (const auto& c : small_components())
    for (int t = 0; t < 10; ++t) {
      Coords x(static_cast<std::size_t>(c.rank()));
      for (auto& v : x) v = Rational(d(rng), 1 + t % 3);
      const Weight p(c, x);
      for (std::size_t node = 0; node < x.size(); ++node) {
        const auto once = apply_reflection(p, 0, node);
        EXPECT_EQ(apply_reflection(once, 0, node), p);
        // r_i negates coordinate i.
        EXPECT_EQ(once[node], -p[node]);
      }
    }
  EXPECT_THROW(apply_reflection(w("A1xU1", "(1)(2)"), 1, 0), weight_error);
  EXPECT_THROW(apply_reflection(w("A2", "(1,0)"), 0, 2), weight_error);
}

TEST(Orbits, PointSymmetryForA) {
  std::mt19937 rng(6);
  for (int n = 1; n <= 5; ++n)
    for (int t = 0; t < 5; ++t) {
      const auto o = generate_orbit(Weight(A(n), random_dominant(rng, static_cast<std::size_t>(n), 3)));
      for (const auto& x : o.points) {
        Coords y(x.rbegin(), x.rend());
        for (auto& v : y) v = -v;
        EXPECT_TRUE(o.contains(y));
      }
    }
}

TEST(Orbits, NormIsConstantOnOrbit) {
  std::mt19937 rng(13);
  for (const auto& c : small_components()) {
    const auto q = quadratic_form(c);
    for (int t = 0; t < 4; ++t) {
      const Weight s(c, random_dominant(rng, static_cast<std::size_t>(c.rank()), 3));
      const Rational n0 = squared_norm(q, s.coords());
      for (const auto& x : generate_orbit(s).points) EXPECT_EQ(squared_norm(q, x), n0) << c << " " << s;
    }
  }
  EXPECT_EQ(squared_norm(quadratic_form(A(2)), Coords{1, 0}), Rational(2, 3));
  EXPECT_EQ(squared_norm(quadratic_form(A(1)), Coords{1}), Rational(1, 2));
}

TEST(Orbits, ToDominantIsConstantOnOrbit) {
  std::mt19937 rng(9);
  for (const auto& c : small_components())
    for (int t = 0; t < 4; ++t) {
      const Weight s(c, random_dominant(rng, static_cast<std::size_t>(c.rank()), 2));
      for (const auto& x : generate_orbit(s).points) EXPECT_EQ(to_dominant(Weight(c, x)), s);
    }
  EXPECT_EQ(to_dominant(w("A3xU1", "(-1,0,-2)(5)")), w("A3xU1", "(2,0,1)(5)"));
}

TEST(Orbits, FractionalSeeds) {
  const auto o = generate_orbit(w("A2", "(1/2,1/3)"));
  EXPECT_EQ(o.size(), 6u);
  EXPECT_TRUE(o.contains({Rational(-1, 2), Rational(5, 6)}));
}

TEST(Orbits, Contragredient) {
  EXPECT_EQ(contragredient(w("A3", "(2,0,1)")), w("A3", "(1,0,2)"));
  EXPECT_EQ(contragredient(w("A4", "(3,0,0,0)")), w("A4", "(0,0,0,3)"));
  EXPECT_EQ(contragredient(w("A2", "(1,1)")), w("A2", "(1,1)"));
  EXPECT_THROW(contragredient(w("B2", "(1,0)")), weight_error);
  EXPECT_THROW(contragredient(w("A2xU1", "(1,0)(1)")), weight_error);
}

TEST(Orbits, Height) {
  EXPECT_EQ(height(parse_algebra("A1"), Coords{2}), Rational(1));
  EXPECT_EQ(height(parse_algebra("A2xU1"), Coords{1, 1, 9}), Rational(2));
}

TEST(Orbits, NonDominantSeedRejected) {
  EXPECT_THROW(generate_orbit(w("A2", "(1,-1)")), weight_error);
  EXPECT_THROW(orbit_size(w("A2", "(-1,0)")), weight_error);
}

TEST(Orbits, WeightText) {
  const auto a = parse_algebra("A2xA1xU1");
  const auto x = parse_weight(a, "(1,0)(2)(-3/2)");
  EXPECT_EQ(x.coords(), (Coords{1, 0, 2, Rational(-3, 2)}));
  EXPECT_EQ(parse_weight(a, " (1,0,2,-3/2) "), x);
  EXPECT_EQ(format_weight(x), "(1,0)(2)(-3/2)");
  for (const char* bad : {"", "(1,0)(2)", "(1,0)(2)(3)(4)", "(1)(0,2)(3)", "(1,0", "1,0,2,3", "(1,0)(2)(x)", "(1,0,2)"})
    EXPECT_ANY_THROW(parse_weight(a, bad)) << bad;
}

namespace {

// Points of the integer walk, unscaled.
std::vector<Coords> walked(const Weight& seed, std::int64_t scale) {
  const detail::Components comps(seed.algebra());
  std::vector<Coords> out;
  const bool ok = detail::walk_orbit(seed, scale, comps, nullptr, [&](const std::vector<std::int64_t>& x, const auto&) {
    out.push_back(detail::unscaled(x, scale));
  });
  EXPECT_TRUE(ok);
  return out;
}

}  // namespace

TEST(IntegerKernel, WalkMatchesNaiveClosure) {
  std::mt19937 rng(21);
  auto comps = small_components();
  comps.push_back(D(5));
  for (const auto& c : comps)
    for (int t = 0; t < 6; ++t) {
      const Coords x = random_dominant(rng, static_cast<std::size_t>(c.rank()), 2);
      const auto pts = walked(Weight(c, x), 3);
      const auto ref = naive_closure(c, x);
      EXPECT_EQ(std::set<Coords>(pts.begin(), pts.end()), ref) << c;
      EXPECT_EQ(pts.size(), ref.size()) << c << " walk repeats points";
    }
}

TEST(IntegerKernel, WalkOfProductAndFractionalSeeds) {
  for (const auto& [alg, text, scale] : {std::tuple{"A2xB2xU1", "(1,1)(0,1)(-2/3)", 3},
                                         std::tuple{"B3", "(1/2,0,3/2)", 2}, std::tuple{"D4xA1", "(1,0,0,1)(2)", 1}}) {
    const auto seed = w(alg, text);
    auto pts = walked(seed, scale);
    std::sort(pts.begin(), pts.end(), DescendingLex{});
    EXPECT_EQ(pts, generate_orbit(seed).points) << alg;
  }
}

TEST(IntegerKernel, UnrepresentableSeedIsRefused) {
  const detail::Components comps(parse_algebra("A2"));
  EXPECT_FALSE(detail::walk_orbit(w("A2", "(1/2,0)"), 3, comps, nullptr, [](const auto&, const auto&) {}));
}

TEST(IntegerKernel, TrackedImageEqualsMatrixProduct) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (const char* name : {"A3", "B3", "D4", "A2xC2xU1"}) {
    const auto a = parse_algebra(name);
    RationalMatrix m(3, a.dimension());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = Rational(entry(rng), 2);
    const detail::ScaledMatrix sm(m);
    Coords x = random_dominant(rng, a.dimension(), 2);
    const Weight seed(a, x);
    const detail::Components comps(a);
    std::size_t visits = 0;
    detail::walk_orbit(seed, 1, comps, &sm, [&](const std::vector<std::int64_t>& p, const std::vector<std::int64_t>& y) {
      std::vector<std::int64_t> direct(3);
      sm.apply(p.data(), direct.data());
      EXPECT_EQ(y, direct) << name;
      ++visits;
    });
    EXPECT_EQ(visits, orbit_size(seed)) << name;
  }
}

TEST(IntegerKernel, DominantReductionMatchesReflections) {
  std::mt19937 rng(9);
  for (const char* name : {"A1", "A4", "A6", "B3", "C3", "D4", "A3xB2xU1"}) {
    const auto a = parse_algebra(name);
    const detail::Components comps(a);
    const Weight seed(a, random_dominant(rng, a.dimension(), 2));
    for (const auto& x : generate_orbit(seed).points) {
      auto y = *detail::scaled(x, 1);
      comps.make_dominant(y.data());
      EXPECT_EQ(detail::unscaled(y, 1), seed.coords()) << name << " " << format_coords(a, x);
    }
  }
}
