// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "treedist/forests.hpp"
#include "treedist/graph.hpp"
#include "treedist/oracle.hpp"

using namespace treedist;
using fixtures::q;

namespace {

const SpanningForest* find_forest(const ForestFamily& family, const std::vector<int>& edges) {
  for (const auto& f : family.forests)
    if (f.edges == edges) return &f;
  return nullptr;
}

std::vector<int> boundary_counts(const Tree& t, const SpanningForest& f) {
  std::vector<int> out(f.component_count, 0);
  for (int e = 0; e < t.edge_count(); ++e) {
    if (f.edge_mask & (1u << e)) continue;
    out[f.component[t.edge(e).tail]] += 1;
    out[f.component[t.edge(e).head]] += 1;
  }
  return out;
}

void check_family_structure(const Tree& t, const VertexSubset& s, const ForestFamily& family) {
  for (std::size_t i = 0; i + 1 < family.forests.size(); ++i)
    REQUIRE(family.forests[i].edges < family.forests[i + 1].edges);
  for (const auto& f : family.forests) {
    REQUIRE(f.owner == &t);
    REQUIRE(f.kind == family.kind);
    std::uint32_t mask = 0;
    for (int e : f.edges) mask |= 1u << e;
    REQUIRE(mask == f.edge_mask);

    int floating = 0;
    for (int c = 0; c < f.component_count; ++c) {
      int root = f.root_of_component[c];
      if (root < 0) {
        ++floating;
      } else {
        REQUIRE(f.component[root] == c);
        REQUIRE(s.contains(root));
      }
    }
    if (family.kind == ForestKind::SRooted) {
      REQUIRE(f.component_count == s.size());
      REQUIRE(floating == 0);
    } else {
      REQUIRE(f.component_count == s.size() + 1);
      REQUIRE(floating == 1);
    }

    std::vector<int> boundary = boundary_counts(t, f);
    for (int c = 0; c < f.component_count; ++c) {
      Rational defect = 0;
      for (int v = 0; v < t.vertex_count(); ++v)
        if (f.component[v] == c) defect += 2 - t.degree(v);
      REQUIRE(defect == 2 - boundary[c]);
    }
  }
}

}  // namespace

TEST_CASE("caterpillar forest families", "[forests]") {
  Tree t = fixtures::caterpillar_tree();
  VertexSubset s = fixtures::leaves(t);
  REQUIRE(s.labels(t) == std::vector<std::string>{"1", "3", "2"});

  ForestFamily f1 = enumerate_forests(t, s, ForestKind::SRooted);
  ForestFamily f2 = enumerate_forests(t, s, ForestKind::SStarRooted);
  REQUIRE(f1.forests.size() == 11);
  REQUIRE(f2.forests.size() == 19);
  check_family_structure(t, s, f1);
  check_family_structure(t, s, f2);
}

TEST_CASE("five-leaf forest counts and histogram", "[forests]") {
  Tree t = fixtures::five_leaf_tree();
  VertexSubset s = fixtures::leaves(t);

  REQUIRE(kappa(t, s, KappaMethod::Enumeration) == 21);
  REQUIRE(kappa(t, s, KappaMethod::MatrixTree) == 21);
  REQUIRE(enumerate_forests(t, s, ForestKind::SStarRooted).forests.size() == 19);

  std::map<int, HistogramBucket> expected{{3, {14, 14}}, {4, {4, 4}}, {5, {1, 1}}};
  REQUIRE(outdegree_histogram(t, s) == expected);
}

TEST_CASE("two-hub forest counts and histogram", "[forests]") {
  Tree t = fixtures::two_hub_tree();
  VertexSubset s = fixtures::leaves(t);

  REQUIRE(kappa(t, s, KappaMethod::Enumeration) == 11);
  REQUIRE(kappa(t, s, KappaMethod::MatrixTree) == 11);
  REQUIRE(enumerate_forests(t, s, ForestKind::SRooted).forests.size() == 11);
  REQUIRE(enumerate_forests(t, s, ForestKind::SStarRooted).forests.size() == 6);

  std::map<int, HistogramBucket> expected{{3, {3, 3}}, {4, {2, 2}}, {5, {1, 1}}};
  REQUIRE(outdegree_histogram(t, s) == expected);
}

TEST_CASE("weighted star forests", "[forests]") {
  Tree t = fixtures::star_tree(2, 3, 5);
  VertexSubset s = fixtures::leaves(t);

  ForestFamily f1 = enumerate_forests(t, s, ForestKind::SRooted);
  REQUIRE(f1.forests.size() == 3);
  REQUIRE(f1.forests[0].edges == std::vector<int>{0});
  REQUIRE(forest_weight(f1.forests[0]) == 15);
  REQUIRE(forest_weight(f1.forests[1]) == 10);
  REQUIRE(forest_weight(f1.forests[2]) == 6);
  REQUIRE(kappa(t, s, KappaMethod::Enumeration) == 31);
  REQUIRE(kappa(t, s, KappaMethod::MatrixTree) == 31);

  ForestFamily f2 = enumerate_forests(t, s, ForestKind::SStarRooted);
  REQUIRE(f2.forests.size() == 1);
  REQUIRE(f2.forests[0].edges.empty());
  REQUIRE(forest_weight(f2.forests[0]) == 30);

  std::map<int, HistogramBucket> expected{{3, {1, 30}}};
  REQUIRE(outdegree_histogram(t, s) == expected);

  Tree counting = fixtures::star_tree(1, 2, 3);
  REQUIRE(kappa(counting, fixtures::leaves(counting), KappaMethod::Enumeration) == 11);
}

TEST_CASE("full-subset and singleton families", "[forests]") {
  Tree t = fixtures::weighted_caterpillar_tree();
  VertexSubset all = VertexSubset::all(t);

  ForestFamily f1 = enumerate_forests(t, all, ForestKind::SRooted);
  REQUIRE(f1.forests.size() == 1);
  REQUIRE(f1.forests[0].edges.empty());
  REQUIRE(forest_weight(f1.forests[0]) == t.length_product());
  REQUIRE(enumerate_forests(t, all, ForestKind::SStarRooted).forests.empty());
  REQUIRE(kappa(t, all, KappaMethod::Enumeration) == t.length_product());
  REQUIRE(kappa(t, all, KappaMethod::MatrixTree) == t.length_product());

  Tree unit = fixtures::caterpillar_tree();
  REQUIRE(kappa(unit, VertexSubset::all(unit), KappaMethod::Enumeration) == 1);

  VertexSubset one = VertexSubset::of_labels(t, {"B"});
  REQUIRE(kappa(t, one, KappaMethod::Enumeration) == 1);
  REQUIRE(kappa(t, one, KappaMethod::MatrixTree) == 1);
  ForestFamily spanning = enumerate_forests(t, one, ForestKind::SRooted);
  REQUIRE(spanning.forests.size() == 1);
  REQUIRE(spanning.forests[0].edges == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("outdegrees of two caterpillar forests", "[forests]") {
  Tree t = fixtures::caterpillar_tree();
  VertexSubset s = fixtures::leaves(t);
  ForestFamily f1 = enumerate_forests(t, s, ForestKind::SRooted);
  ForestFamily f2 = enumerate_forests(t, s, ForestKind::SStarRooted);

  const SpanningForest* left = find_forest(f1, {0, 2, 3, 4});
  REQUIRE(left != nullptr);
  REQUIRE(outdegree(t, *left, t.find_vertex("1")) == 1);
  REQUIRE(outdegree(t, *left, t.find_vertex("3")) == 2);
  REQUIRE(outdegree(t, *left, t.find_vertex("2")) == 1);
  REQUIRE_THROWS_AS(outdegree(t, *left, t.find_vertex("A")), NoSuchRootError);
  REQUIRE_THROWS_AS(outdegree(t, *left, 99), InvalidVertexError);
  REQUIRE_THROWS_AS(outdegree_star(t, *left), NoSuchRootError);

  const SpanningForest* right = find_forest(f2, {0, 3, 4});
  REQUIRE(right != nullptr);
  REQUIRE(outdegree_star(t, *right) == 3);
  REQUIRE(outdegree(t, *right, t.find_vertex("1")) == 1);
  REQUIRE(outdegree(t, *right, t.find_vertex("3")) == 1);
  REQUIRE(outdegree(t, *right, t.find_vertex("2")) == 1);
}

TEST_CASE("edge deletion and union transfer forests between families", "[forests]") {
  Tree t = fixtures::caterpillar_tree();
  VertexSubset s = fixtures::leaves(t);
  ForestFamily f1 = enumerate_forests(t, s, ForestKind::SRooted);
  ForestFamily f2 = enumerate_forests(t, s, ForestKind::SStarRooted);
  const SpanningForest* left = find_forest(f1, {0, 2, 3, 4});
  const SpanningForest* right = find_forest(f2, {0, 3, 4});
  REQUIRE(left != nullptr);
  REQUIRE(right != nullptr);

  SpanningForest dropped = delete_edge_map(2, *left);
  REQUIRE(dropped == *right);
  REQUIRE(dropped.kind == ForestKind::SStarRooted);
  REQUIRE(union_edge_map(2, *right) == *left);
  REQUIRE(union_edge_map(2, dropped).kind == ForestKind::SRooted);

  REQUIRE(delete_edge_map(1, *left) == *left);
  REQUIRE(union_edge_map(0, *right) == *right);

  REQUIRE_THROWS_AS(delete_edge_map(0, *right), PreconditionError);
  REQUIRE_THROWS_AS(union_edge_map(0, *left), PreconditionError);
  REQUIRE_THROWS_AS(delete_edge_map(6, *left), InvalidEdgeError);
  REQUIRE_THROWS_AS(union_edge_map(-1, *right), InvalidEdgeError);

  Tree w = fixtures::weighted_caterpillar_tree();
  ForestFamily w1 = enumerate_forests(w, fixtures::leaves(w), ForestKind::SRooted);
  const SpanningForest* wt = find_forest(w1, {0, 2, 3, 4});
  REQUIRE(wt != nullptr);
  SpanningForest wf = delete_edge_map(2, *wt);
  REQUIRE(forest_weight(wf) == w.edge(2).length * forest_weight(*wt));
}

TEST_CASE("deletion and union preimage counts", "[forests]") {
  for (int n = 1; n <= 4; ++n) {
    for (const Tree& t : oracle::all_labeled_trees(n)) {
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
          if (mask & (1u << v)) members.push_back(v);
        VertexSubset s = VertexSubset::of(t, members);

        ForestFamily f1 = enumerate_forests(t, s, ForestKind::SRooted);
        ForestFamily f2 = enumerate_forests(t, s, ForestKind::SStarRooted);
        check_family_structure(t, s, f1);
        check_family_structure(t, s, f2);

        std::map<std::vector<int>, int> deletions, unions;
        for (const auto& rooted : f1.forests)
          for (int e : rooted.edges) {
            SpanningForest f = delete_edge_map(e, rooted);
            REQUIRE(f.kind == ForestKind::SStarRooted);
            REQUIRE(find_forest(f2, f.edges) != nullptr);
            REQUIRE(union_edge_map(e, f) == rooted);
            deletions[f.edges] += 1;
          }
        for (const auto& star : f2.forests)
          for (int e = 0; e < t.edge_count(); ++e) {
            SpanningForest u = union_edge_map(e, star);
            if (u == star) continue;
            REQUIRE(u.kind == ForestKind::SRooted);
            REQUIRE(find_forest(f1, u.edges) != nullptr);
            REQUIRE(delete_edge_map(e, u) == star);
            unions[u.edges] += 1;
          }

        for (const auto& star : f2.forests)
          REQUIRE(deletions[star.edges] == outdegree_star(t, star));
        for (const auto& rooted : f1.forests)
          REQUIRE(unions[rooted.edges] == n - s.size());
      }
    }
  }
}

TEST_CASE("floating outdegree total matches the forest count identity", "[forests]") {
  Tree t = fixtures::five_leaf_tree();
  VertexSubset s = fixtures::leaves(t);
  ForestFamily f2 = enumerate_forests(t, s, ForestKind::SStarRooted);
  int total = 0;
  for (const auto& f : f2.forests) total += outdegree_star(t, f);
  REQUIRE(total == 63);
  REQUIRE(total == (t.vertex_count() - s.size()) * 21);
}

TEST_CASE("kappa routes agree on exhaustive and random instances", "[forests]") {
  for (int n = 1; n <= 5; ++n)
    for (const Tree& t : oracle::all_labeled_trees(n))
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
          if (mask & (1u << v)) members.push_back(v);
        VertexSubset s = VertexSubset::of(t, members);
        REQUIRE(kappa(t, s, KappaMethod::Enumeration) == kappa(t, s, KappaMethod::MatrixTree));
      }

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    oracle::RandomInstance inst = oracle::random_instance(seed);
    REQUIRE(kappa(inst.tree, inst.subset, KappaMethod::Enumeration) ==
            kappa(inst.tree, inst.subset, KappaMethod::MatrixTree));
  }
}

TEST_CASE("forest enumeration guards", "[forests]") {
  Tree t = fixtures::caterpillar_tree();
  REQUIRE_THROWS_AS(enumerate_forests(t, VertexSubset(), ForestKind::SRooted),
                    EmptySubsetError);
  REQUIRE_THROWS_AS(kappa(t, VertexSubset(), KappaMethod::Enumeration), EmptySubsetError);

  std::vector<std::string> labels;
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < 33; ++i) labels.push_back("v" + std::to_string(i));
  for (int i = 0; i + 1 < 33; ++i) edges.push_back({labels[i], labels[i + 1], 1});
  Tree path = build_tree(labels, edges);
  VertexSubset origin = VertexSubset::of(path, {0});
  REQUIRE_THROWS_AS(enumerate_forests(path, origin, ForestKind::SRooted), TooLargeError);
  REQUIRE_THROWS_AS(kappa(path, origin, KappaMethod::Enumeration), TooLargeError);
  REQUIRE(kappa(path, origin, KappaMethod::MatrixTree) == 1);

  SpanningForest orphan;
  REQUIRE_THROWS_AS(forest_weight(orphan), PreconditionError);
}
