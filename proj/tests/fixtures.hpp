// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

// Worked trees that recur across the test suite.  Each builder documents the
// shape; the expected quantities live next to the assertions that use them.

#pragma once

#include <cstdint>
#include <vector>

#include "treedist/graph.hpp"
#include "treedist/oracle.hpp"
#include "treedist/rational.hpp"

namespace fixtures {

using treedist::build_tree;
using treedist::Rational;
using treedist::Tree;
using treedist::VertexSubset;

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/* Five unit-length leaves 1..5 around internal vertices A, B, C:
 * A carries 1 and 2, C carries 4 and 5, and B joins A, 3, and C.
 * Vertex and edge order match what parsing kFiveLeafNewick produces. */
inline constexpr const char* kFiveLeafNewick = "((1:1,2:1)A:1,3:1,(4:1,5:1)C:1)B;";

inline Tree five_leaf_tree() {
  return build_tree({"1", "2", "A", "3", "4", "5", "C", "B"},
                    {{"A", "1", 1},
                     {"A", "2", 1},
                     {"C", "4", 1},
                     {"C", "5", 1},
                     {"B", "A", 1},
                     {"B", "3", 1},
                     {"B", "C", 1}});
}

/* Unit-length caterpillar: path 1-A-B-C-D-2 with leaf 3 hanging off B.
 * Edge indices: 0: 1-A, 1: A-B, 2: B-3, 3: B-C, 4: C-D, 5: D-2. */
inline Tree caterpillar_tree() {
  return build_tree({"1", "A", "B", "3", "C", "D", "2"},
                    {{"1", "A", 1},
                     {"A", "B", 1},
                     {"B", "3", 1},
                     {"B", "C", 1},
                     {"C", "D", 1},
                     {"D", "2", 1}});
}

/* Weighted caterpillar with the same shape; lengths 2, 3, 5, 7, 11, 13 in
 * edge order, so every forest weight is a distinct product. */
inline Tree weighted_caterpillar_tree() {
  return build_tree({"1", "A", "B", "3", "C", "D", "2"},
                    {{"1", "A", 2},
                     {"A", "B", 3},
                     {"B", "3", 5},
                     {"B", "C", 7},
                     {"C", "D", 11},
                     {"D", "2", 13}});
}

/* Three leaves u, v, w joined to a center o by edges of length a, b, c. */
inline Tree star_tree(const Rational& a, const Rational& b, const Rational& c) {
  return build_tree({"u", "v", "w", "o"}, {{"o", "u", a}, {"o", "v", b}, {"o", "w", c}});
}

/* Unit-length tree with two hubs: A carries leaves 1 and 2, B carries
 * leaves 3, 4, and 5, and A-B joins the hubs. */
inline Tree two_hub_tree() {
  return build_tree({"1", "2", "3", "4", "5", "A", "B"},
                    {{"A", "1", 1},
                     {"A", "2", 1},
                     {"B", "3", 1},
                     {"B", "4", 1},
                     {"B", "5", 1},
                     {"A", "B", 1}});
}

/* Four leaves and two hubs with free lengths: 1-A (a), 2-A (b), A-B (c),
 * 3-B (d), 4-B (e). */
inline Tree four_leaf_tree(const Rational& a, const Rational& b, const Rational& c,
                           const Rational& d, const Rational& e) {
  return build_tree({"1", "2", "3", "4", "A", "B"},
                    {{"1", "A", a}, {"2", "A", b}, {"A", "B", c}, {"3", "B", d}, {"4", "B", e}});
}

inline VertexSubset leaves(const Tree& t) { return VertexSubset::leaves(t); }

/* Deterministic positive rationals with numerator and denominator in 1..9. */
inline std::vector<Rational> seeded_lengths(std::uint64_t seed, int count) {
  std::mt19937_64 gen(seed);
  std::vector<Rational> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rational r(1 + treedist::oracle::detail::draw_below(gen, 9),
               1 + treedist::oracle::detail::draw_below(gen, 9));
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

}  // namespace fixtures
