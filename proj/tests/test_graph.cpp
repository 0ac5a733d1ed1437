// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "treedist/graph.hpp"
#include "treedist/oracle.hpp"

using namespace treedist;
using fixtures::q;

TEST_CASE("build_tree rejects malformed input", "[graph]") {
  REQUIRE_THROWS_AS(build_tree({}, {}), NotATreeError);
  REQUIRE_THROWS_AS(build_tree({"a", "a"}, {{"a", "a", 1}}), DuplicateLabelError);
  REQUIRE_THROWS_AS(build_tree({"a", ""}, {{"a", "", 1}}), DuplicateLabelError);
  REQUIRE_THROWS_AS(build_tree({"a", "b"}, {}), NotATreeError);
  REQUIRE_THROWS_AS(build_tree({"a", "b"}, {{"a", "b", 1}, {"a", "b", 1}}), NotATreeError);
  REQUIRE_THROWS_AS(build_tree({"a", "b"}, {{"a", "c", 1}}), UnknownVertexError);
  REQUIRE_THROWS_AS(build_tree({"a", "b"}, {{"a", "a", 1}}), NotATreeError);
  REQUIRE_THROWS_AS(build_tree({"a", "b"}, {{"a", "b", 0}}), NonPositiveLengthError);
  REQUIRE_THROWS_AS(build_tree({"a", "b"}, {{"a", "b", -2}}), NonPositiveLengthError);
  REQUIRE_THROWS_AS(
      build_tree({"a", "b", "c", "d"}, {{"a", "b", 1}, {"a", "b", 2}, {"c", "d", 1}}),
      NotATreeError);
}

TEST_CASE("edges store the lower vertex index as tail", "[graph]") {
  Tree t = build_tree({"a", "b"}, {{"b", "a", 3}});
  REQUIRE(t.edge(0).tail == 0);
  REQUIRE(t.edge(0).head == 1);
  REQUIRE(t.label(t.edge(0).tail) == "a");
  REQUIRE(t.edge(0).length == 3);
}

TEST_CASE("single-vertex tree", "[graph]") {
  Tree t = build_tree({"x"}, {});
  REQUIRE(t.vertex_count() == 1);
  REQUIRE(t.edge_count() == 0);
  REQUIRE(t.degree(0) == 0);
  REQUIRE(t.total_length() == 0);
  REQUIRE(t.length_product() == 1);
  REQUIRE(t.unit_lengths());
  REQUIRE(VertexSubset::leaves(t).members() == std::vector<int>{0});
}

TEST_CASE("trees keep the given vertex and edge order", "[graph]") {
  Tree t = fixtures::caterpillar_tree();
  REQUIRE(t.labels() == std::vector<std::string>{"1", "A", "B", "3", "C", "D", "2"});
  REQUIRE(t.label(t.edge(0).tail) == "1");
  REQUIRE(t.label(t.edge(5).head) == "2");
  REQUIRE(t.find_vertex("C") == 4);
  REQUIRE(t.find_vertex("missing") == -1);

  Tree weighted = fixtures::weighted_caterpillar_tree();
  REQUIRE(weighted.total_length() == 2 + 3 + 5 + 7 + 11 + 13);
  REQUIRE(weighted.length_product() == 2 * 3 * 5 * 7 * 11 * 13);
  REQUIRE_FALSE(weighted.unit_lengths());
}

TEST_CASE("vertex subsets sort, deduplicate, and validate", "[graph]") {
  Tree t = fixtures::five_leaf_tree();
  VertexSubset s = VertexSubset::of(t, {4, 0, 4, 2});
  REQUIRE(s.members() == std::vector<int>{0, 2, 4});
  REQUIRE(s.size() == 3);
  REQUIRE(s[1] == 2);
  REQUIRE(s.contains(4));
  REQUIRE_FALSE(s.contains(1));
  REQUIRE(s.labels(t) == std::vector<std::string>{"1", "A", "4"});

  REQUIRE(VertexSubset::of_labels(t, {"3", "1"}).members() == std::vector<int>{0, 3});
  REQUIRE(VertexSubset::all(t).size() == 8);
  REQUIRE(VertexSubset::leaves(t).labels(t) ==
          std::vector<std::string>{"1", "2", "3", "4", "5"});

  REQUIRE(s.is_subset_of(VertexSubset::all(t)));
  REQUIRE_FALSE(VertexSubset::all(t).is_subset_of(s));
  REQUIRE(s == VertexSubset::of(t, {2, 0, 4}));
  REQUIRE(VertexSubset().empty());

  REQUIRE_THROWS_AS(VertexSubset::of(t, {-1}), InvalidVertexError);
  REQUIRE_THROWS_AS(VertexSubset::of(t, {8}), InvalidVertexError);
  REQUIRE_THROWS_AS(VertexSubset::of_labels(t, {"nope"}), UnknownVertexError);
}

TEST_CASE("tree_split separates the two sides of an edge", "[graph]") {
  Tree path = build_tree({"u", "v", "w"}, {{"u", "v", 1}, {"v", "w", 1}});
  auto [head, tail] = tree_split(path, 0);
  REQUIRE(head.labels(path) == std::vector<std::string>{"v", "w"});
  REQUIRE(tail.labels(path) == std::vector<std::string>{"u"});

  Tree star = fixtures::star_tree(1, 1, 1);
  for (int e = 0; e < star.edge_count(); ++e) {
    auto [h, t] = tree_split(star, e);
    REQUIRE(((h.size() == 1 && t.size() == 3) || (h.size() == 3 && t.size() == 1)));
  }

  Tree cat = fixtures::caterpillar_tree();
  auto [h5, t5] = tree_split(cat, 5);
  REQUIRE(h5.size() + t5.size() == cat.vertex_count());
  REQUIRE((h5.size() == 1 || t5.size() == 1));
  for (int v = 0; v < cat.vertex_count(); ++v)
    REQUIRE(h5.contains(v) != t5.contains(v));

  REQUIRE_THROWS_AS(tree_split(path, 2), InvalidEdgeError);
  REQUIRE_THROWS_AS(tree_split(path, -1), InvalidEdgeError);
}

TEST_CASE("separates tracks the tree path", "[graph]") {
  Tree t = fixtures::five_leaf_tree();
  int v1 = t.find_vertex("1"), v4 = t.find_vertex("4"), v5 = t.find_vertex("5");
  REQUIRE(separates(t, 6, v1, v4));
  REQUIRE_FALSE(separates(t, 0, v4, v5));
  REQUIRE_FALSE(separates(t, 3, v1, v1));
  REQUIRE(separates(t, 6, v4, v1));

  int crossings = 0;
  for (int e = 0; e < t.edge_count(); ++e)
    if (separates(t, e, v1, v4)) ++crossings;
  REQUIRE(crossings == 4);

  REQUIRE_THROWS_AS(separates(t, 7, v1, v4), InvalidEdgeError);
  REQUIRE_THROWS_AS(separates(t, 0, v1, 8), InvalidVertexError);
}

TEST_CASE("path distances", "[graph]") {
  Tree t = fixtures::five_leaf_tree();
  REQUIRE(path_distance(t, t.find_vertex("1"), t.find_vertex("2")) == 2);
  REQUIRE(path_distance(t, t.find_vertex("1"), t.find_vertex("4")) == 4);
  REQUIRE(path_distance(t, t.find_vertex("B"), t.find_vertex("B")) == 0);

  Tree star = fixtures::star_tree(q(1, 2), q(7, 3), 4);
  int u = star.find_vertex("u"), v = star.find_vertex("v"), o = star.find_vertex("o");
  REQUIRE(path_distance(star, u, v) == q(1, 2) + q(7, 3));
  REQUIRE(path_distance(star, u, o) + path_distance(star, o, v) == path_distance(star, u, v));

  REQUIRE_THROWS_AS(path_distance(t, 0, 9), InvalidVertexError);
}

TEST_CASE("distance submatrices", "[graph]") {
  Tree five = fixtures::five_leaf_tree();
  REQUIRE(distance_submatrix(five, fixtures::leaves(five)) ==
          Matrix{{0, 2, 3, 4, 4},
                 {2, 0, 3, 4, 4},
                 {3, 3, 0, 3, 3},
                 {4, 4, 3, 0, 2},
                 {4, 4, 3, 2, 0}});

  Tree hub = fixtures::two_hub_tree();
  REQUIRE(distance_submatrix(hub, fixtures::leaves(hub)) ==
          Matrix{{0, 2, 3, 3, 3},
                 {2, 0, 3, 3, 3},
                 {3, 3, 0, 2, 2},
                 {3, 3, 2, 0, 2},
                 {3, 3, 2, 2, 0}});

  REQUIRE(distance_submatrix(five, VertexSubset::of(five, {3})) == Matrix{{0}});
  REQUIRE(distance_matrix(five) == distance_submatrix(five, VertexSubset::all(five)));
  REQUIRE_THROWS_AS(distance_submatrix(five, VertexSubset()), EmptySubsetError);
}

TEST_CASE("distance submatrices agree with breadth-first search", "[graph][oracle]") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    oracle::RandomInstance inst = oracle::random_instance(seed);
    const VertexSubset& s = inst.subset;
    Matrix full = oracle::distance_matrix_by_search(inst.tree);
    Matrix sub = distance_submatrix(inst.tree, s);
    for (int i = 0; i < s.size(); ++i)
      for (int j = 0; j < s.size(); ++j) REQUIRE(sub.at(i, j) == full.at(s[i], s[j]));
  }
}

TEST_CASE("convex hull prunes leaves outside the subset", "[graph]") {
  Tree five = fixtures::five_leaf_tree();

  Tree whole = convex_hull(five, VertexSubset::all(five));
  REQUIRE(whole.labels() == five.labels());
  REQUIRE(whole.edge_count() == five.edge_count());

  Tree point = convex_hull(five, VertexSubset::of_labels(five, {"4"}));
  REQUIRE(point.vertex_count() == 1);
  REQUIRE(point.label(0) == "4");

  Tree twig = convex_hull(five, VertexSubset::of_labels(five, {"1", "2"}));
  REQUIRE(twig.labels() == std::vector<std::string>{"1", "2", "A"});
  REQUIRE(twig.total_length() == 2);

  Tree spine = convex_hull(five, VertexSubset::of_labels(five, {"1", "4"}));
  REQUIRE(spine.vertex_count() == 5);
  REQUIRE(spine.edge_count() == 4);
  REQUIRE(spine.labels() == std::vector<std::string>{"1", "A", "4", "C", "B"});

  VertexSubset s = VertexSubset::of_labels(five, {"1", "3", "5"});
  Tree hull = convex_hull(five, s);
  for (const std::string& leaf_label : VertexSubset::leaves(hull).labels(hull))
    REQUIRE(s.contains(five.find_vertex(leaf_label)));
  VertexSubset in_hull = VertexSubset::of_labels(hull, s.labels(five));
  REQUIRE(distance_submatrix(hull, in_hull) == distance_submatrix(five, s));

  REQUIRE_THROWS_AS(convex_hull(five, VertexSubset()), EmptySubsetError);
}

TEST_CASE("quotient merges the subset into one vertex", "[graph]") {
  Tree star = fixtures::star_tree(q(1, 2), 3, q(5, 4));
  QuotientResult qs = quotient(star, fixtures::leaves(star));
  REQUIRE(qs.graph.vertex_count() == 2);
  REQUIRE(qs.graph.edge_count() == 3);
  REQUIRE(qs.merged_vertex == 0);
  REQUIRE(qs.graph.label(0) == "[S]");
  for (int e = 0; e < 3; ++e) {
    REQUIRE_FALSE(qs.graph.is_self_loop(e));
    REQUIRE(qs.graph.edge(e).length == star.edge(e).length);
  }
  REQUIRE(qs.graph.degree(0) == 3);

  Tree hub = fixtures::two_hub_tree();
  QuotientResult qh = quotient(hub, fixtures::leaves(hub));
  REQUIRE(qh.graph.vertex_count() == 3);
  REQUIRE(qh.graph.edge_count() == 6);
  REQUIRE(qh.graph.label(0) == "[S]");
  REQUIRE(qh.graph.label(1) == "A");
  REQUIRE(qh.graph.label(2) == "B");
  int merged_a = 0, merged_b = 0, cross = 0;
  for (int e = 0; e < 6; ++e) {
    const auto& edge = qh.graph.edge(e);
    if ((edge.tail == 0 && edge.head == 1) || (edge.tail == 1 && edge.head == 0)) ++merged_a;
    if ((edge.tail == 0 && edge.head == 2) || (edge.tail == 2 && edge.head == 0)) ++merged_b;
    if (edge.tail + edge.head == 3) ++cross;
  }
  REQUIRE(merged_a == 2);
  REQUIRE(merged_b == 3);
  REQUIRE(cross == 1);
  REQUIRE(qh.graph.connected_ignoring_loops());

  QuotientResult qv = quotient(hub, VertexSubset::all(hub));
  REQUIRE(qv.graph.vertex_count() == 1);
  REQUIRE(qv.graph.edge_count() == 6);
  for (int e = 0; e < 6; ++e) REQUIRE(qv.graph.is_self_loop(e));

  QuotientResult q1 = quotient(hub, VertexSubset::of_labels(hub, {"4"}));
  REQUIRE(q1.graph.vertex_count() == hub.vertex_count());
  REQUIRE(q1.graph.edge_count() == hub.edge_count());
  REQUIRE(q1.graph.label(q1.merged_vertex) == "[S]");

  Tree clash = build_tree({"x", "[S]"}, {{"x", "[S]", 1}});
  QuotientResult qc = quotient(clash, VertexSubset::of_labels(clash, {"x"}));
  REQUIRE(qc.graph.label(qc.merged_vertex) == "[S]_");
}

TEST_CASE("canonical momentum balances at the merged vertex", "[graph]") {
  Tree hub = fixtures::two_hub_tree();
  MomentumFunction ph = canonical_momentum(hub, fixtures::leaves(hub));
  REQUIRE(ph.values() == Vector{-3, 1, 2});

  Tree star = fixtures::star_tree(1, 2, 3);
  MomentumFunction ps = canonical_momentum(star, fixtures::leaves(star));
  REQUIRE(ps.values() == Vector{-1, 1});

  MomentumFunction pv = canonical_momentum(star, VertexSubset::all(star));
  REQUIRE(pv.values() == Vector{0});

  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    oracle::RandomInstance inst = oracle::random_instance(seed);
    MomentumFunction p = canonical_momentum(inst.tree, inst.subset);
    REQUIRE(vector_sum(p.values()) == 0);
  }
}

TEST_CASE("momentum functions must balance and match the graph", "[graph]") {
  Tree star = fixtures::star_tree(1, 1, 1);
  QuotientResult qs = quotient(star, fixtures::leaves(star));
  REQUIRE_THROWS_AS(MomentumFunction(qs.graph, {1, 1}), BadMomentumError);
  REQUIRE_THROWS_AS(MomentumFunction(qs.graph, {1, -1, 0}), DimensionMismatchError);
  MomentumFunction p(qs.graph, {q(3, 2), q(-3, 2)});
  REQUIRE(p.at(0) == q(3, 2));
}

TEST_CASE("multigraph basics", "[graph]") {
  Multigraph g({"a", "b"}, {{0, 1, 1}, {1, 0, q(1, 2)}, {0, 0, 3}});
  REQUIRE(g.vertex_count() == 2);
  REQUIRE(g.edge_count() == 3);
  REQUIRE(g.is_self_loop(2));
  REQUIRE_FALSE(g.is_self_loop(0));
  REQUIRE(g.degree(0) == 4);
  REQUIRE(g.degree(1) == 2);
  REQUIRE(g.connected_ignoring_loops());

  Multigraph lonely({"a", "b"}, {{0, 0, 1}, {1, 1, 1}});
  REQUIRE_FALSE(lonely.connected_ignoring_loops());

  REQUIRE_THROWS_AS(Multigraph({"a"}, {{0, 1, 1}}), InvalidEdgeError);
  REQUIRE_THROWS_AS(Multigraph({"a", "b"}, {{0, 1, 0}}), NonPositiveLengthError);
}
