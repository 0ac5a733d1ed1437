// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "treedist/errors.hpp"
#include "treedist/graph.hpp"
#include "treedist/linalg.hpp"

namespace treedist {

/* SRooted: every component contains exactly one vertex of s.
 * SStarRooted: as above plus exactly one extra component disjoint from s. */
enum class ForestKind { SRooted, SStarRooted };

struct SpanningForest {
  const Tree* owner = nullptr;
  std::vector<int> edges;            // sorted edge indices
  std::uint32_t edge_mask = 0;
  std::vector<int> component;        // per-vertex component id, by first occurrence
  int component_count = 0;
  std::vector<int> root_of_component;  // vertex index of the root, -1 for the floating one
  ForestKind kind = ForestKind::SRooted;

  bool operator==(const SpanningForest& other) const {
    return owner == other.owner && edges == other.edges;
  }
};

/* All forests of one kind, ordered lexicographically by edge set. */
struct ForestFamily {
  ForestKind kind = ForestKind::SRooted;
  std::vector<SpanningForest> forests;
};

namespace detail {

class ForestSearch {
public:
  ForestSearch(const Tree& t, const VertexSubset& s)
      : t_(t), n_(t.vertex_count()), parent_(n_), size_(n_, 1), has_root_(n_, 0),
        in_s_(n_, 0) {
    if (s.empty()) throw EmptySubsetError("forest enumeration needs a nonempty subset");
    if (t.edge_count() > 31) throw TooLargeError("forest enumeration supports at most 31 edges");
    for (int v = 0; v < n_; ++v) parent_[v] = v;
    for (int v : s) {
      has_root_[v] = 1;
      in_s_[v] = 1;
    }
    s_size_ = s.size();
  }

  void run(ForestFamily& rooted, ForestFamily& star_rooted) {
    rooted_ = &rooted;
    star_ = &star_rooted;
    rooted.kind = ForestKind::SRooted;
    star_rooted.kind = ForestKind::SStarRooted;
    descend(0);
    auto by_edges = [](const SpanningForest& a, const SpanningForest& b) {
      return a.edges < b.edges;
    };
    std::sort(rooted.forests.begin(), rooted.forests.end(), by_edges);
    std::sort(star_rooted.forests.begin(), star_rooted.forests.end(), by_edges);
  }

private:
  int find(int v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }

  void descend(int e) {
    if (e == t_.edge_count()) {
      emit();
      return;
    }
    descend(e + 1);
    int ru = find(t_.edge(e).tail), rv = find(t_.edge(e).head);
    // A component with two vertices of s disqualifies every kind; prune.
    if (has_root_[ru] && has_root_[rv]) return;
    if (size_[ru] < size_[rv]) std::swap(ru, rv);
    char prev = has_root_[ru];
    parent_[rv] = ru;
    size_[ru] += size_[rv];
    has_root_[ru] = static_cast<char>(has_root_[ru] | has_root_[rv]);
    chosen_.push_back(e);
    descend(e + 1);
    chosen_.pop_back();
    has_root_[ru] = prev;
    size_[ru] -= size_[rv];
    parent_[rv] = rv;
  }

  void emit() {
    int components = n_ - static_cast<int>(chosen_.size());
    ForestKind kind;
    if (components == s_size_) kind = ForestKind::SRooted;
    else if (components == s_size_ + 1) kind = ForestKind::SStarRooted;
    else return;

    SpanningForest f;
    f.owner = &t_;
    f.edges = chosen_;
    for (int e : chosen_) f.edge_mask |= (1u << e);
    f.kind = kind;
    f.component.assign(n_, -1);
    f.root_of_component.assign(components, -1);
    int next_id = 0;
    std::vector<int> id_of_root(n_, -1);
    for (int v = 0; v < n_; ++v) {
      int r = find(v);
      if (id_of_root[r] < 0) id_of_root[r] = next_id++;
      f.component[v] = id_of_root[r];
      if (in_s_[v]) f.root_of_component[f.component[v]] = v;
    }
    f.component_count = components;
    (kind == ForestKind::SRooted ? rooted_ : star_)->forests.push_back(std::move(f));
  }

  const Tree& t_;
  int n_;
  int s_size_;
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<char> has_root_;
  std::vector<char> in_s_;
  std::vector<int> chosen_;
  ForestFamily* rooted_ = nullptr;
  ForestFamily* star_ = nullptr;
};

/* Enumerates both families in one pass over edge subsets. */
inline void enumerate_families(const Tree& t, const VertexSubset& s, ForestFamily& rooted,
                               ForestFamily& star_rooted) {
  ForestSearch search(t, s);
  search.run(rooted, star_rooted);
}

/* Boundary edge count of each component: edges of the owner tree with
 * exactly one endpoint inside the component. */
inline std::vector<int> component_outdegrees(const Tree& t, const SpanningForest& f) {
  std::vector<int> out(f.component_count, 0);
  for (int e = 0; e < t.edge_count(); ++e) {
    int cu = f.component[t.edge(e).tail], cv = f.component[t.edge(e).head];
    if (cu != cv) {
      ++out[cu];
      ++out[cv];
    }
  }
  return out;
}

}  // namespace detail

inline ForestFamily enumerate_forests(const Tree& t, const VertexSubset& s, ForestKind kind) {
  ForestFamily rooted, star_rooted;
  detail::enumerate_families(t, s, rooted, star_rooted);
  return kind == ForestKind::SRooted ? std::move(rooted) : std::move(star_rooted);
}

/* Product of the lengths of the edges NOT in the forest. */
inline Rational forest_weight(const SpanningForest& f) {
  if (f.owner == nullptr) throw PreconditionError("forest without an owner tree");
  const Tree& t = *f.owner;
  Rational w = 1;
  for (int e = 0; e < t.edge_count(); ++e)
    if (!(f.edge_mask & (1u << e))) w *= t.edge(e).length;
  return w;
}

/* Boundary edge count of the component rooted at the given vertex of s. */
inline int outdegree(const Tree& t, const SpanningForest& f, int root_vertex) {
  if (root_vertex < 0 || root_vertex >= t.vertex_count())
    throw InvalidVertexError("vertex index out of range");
  int c = f.component[root_vertex];
  if (f.root_of_component[c] != root_vertex)
    throw NoSuchRootError("vertex " + t.label(root_vertex) + " is not a root of this forest");
  return detail::component_outdegrees(t, f)[c];
}

/* Boundary edge count of the floating (rootless) component. */
inline int outdegree_star(const Tree& t, const SpanningForest& f) {
  for (int c = 0; c < f.component_count; ++c)
    if (f.root_of_component[c] < 0) return detail::component_outdegrees(t, f)[c];
  throw NoSuchRootError("forest has no floating component");
}

struct HistogramBucket {
  long long count = 0;
  Rational weight;
  bool operator==(const HistogramBucket&) const = default;
};

/* Floating-component outdegree histogram over the SStarRooted family:
 * outdegree -> (number of forests, total weight). */
inline std::map<int, HistogramBucket> outdegree_histogram(const Tree& t,
                                                          const VertexSubset& s) {
  ForestFamily family = enumerate_forests(t, s, ForestKind::SStarRooted);
  std::map<int, HistogramBucket> hist;
  for (const auto& f : family.forests) {
    int d = outdegree_star(t, f);
    auto& bucket = hist[d];
    bucket.count += 1;
    bucket.weight += forest_weight(f);
  }
  return hist;
}

enum class KappaMethod { Enumeration, MatrixTree };

/* Weighted count of SRooted spanning forests.  The enumeration route sums
 * forest weights directly; the matrix route scales the complementary
 * Laplacian minor determinant by the product of all edge lengths. */
inline Rational kappa(const Tree& t, const VertexSubset& s, KappaMethod method) {
  if (s.empty()) throw EmptySubsetError("kappa needs a nonempty subset");
  if (method == KappaMethod::MatrixTree)
    return t.length_product() * determinant(laplacian_minor(t, s));
  ForestFamily family = enumerate_forests(t, s, ForestKind::SRooted);
  Rational total = 0;
  for (const auto& f : family.forests) total += forest_weight(f);
  return total;
}

namespace detail {

/* Rebuilds component structure and kind for an explicit edge set. */
inline SpanningForest materialize_forest(const Tree& t, const std::vector<char>& in_s,
                                         int s_size, std::vector<int> edges) {
  const int n = t.vertex_count();
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::sort(edges.begin(), edges.end());
  for (int e : edges) {
    int ru = find(t.edge(e).tail), rv = find(t.edge(e).head);
    parent[ru] = rv;
  }
  SpanningForest f;
  f.owner = &t;
  f.edges = std::move(edges);
  for (int e : f.edges) f.edge_mask |= (1u << e);
  f.component.assign(n, -1);
  int next_id = 0;
  std::vector<int> id_of_root(n, -1);
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    if (id_of_root[r] < 0) id_of_root[r] = next_id++;
    f.component[v] = id_of_root[r];
  }
  f.component_count = next_id;
  f.root_of_component.assign(next_id, -1);
  int rooted = 0;
  for (int v = 0; v < n; ++v) {
    if (in_s[v]) {
      int c = f.component[v];
      if (f.root_of_component[c] >= 0)
        throw PreconditionError("edge set puts two subset vertices in one component");
      f.root_of_component[c] = v;
      ++rooted;
    }
  }
  if (next_id == s_size) f.kind = ForestKind::SRooted;
  else if (next_id == s_size + 1) f.kind = ForestKind::SStarRooted;
  else throw PreconditionError("edge set is not a forest of either kind");
  return f;
}

inline std::vector<char> roots_mask(const Tree& t, const SpanningForest& f, int& s_size) {
  std::vector<char> in_s(t.vertex_count(), 0);
  s_size = 0;
  for (int v : f.root_of_component) {
    if (v >= 0) {
      in_s[v] = 1;
      ++s_size;
    }
  }
  return in_s;
}

}  // namespace detail

/* Edge deletion: removing an edge of an SRooted forest splits one rooted
 * component, leaving an SStarRooted forest.  Edges outside the forest map
 * it to itself. */
inline SpanningForest delete_edge_map(int e, const SpanningForest& f) {
  if (f.owner == nullptr) throw PreconditionError("forest without an owner tree");
  const Tree& t = *f.owner;
  if (e < 0 || e >= t.edge_count()) throw InvalidEdgeError("edge index out of range");
  if (f.kind != ForestKind::SRooted)
    throw PreconditionError("edge deletion expects an SRooted forest");
  if (!(f.edge_mask & (1u << e))) return f;
  std::vector<int> edges;
  for (int x : f.edges)
    if (x != e) edges.push_back(x);
  int s_size = 0;
  std::vector<char> in_s = detail::roots_mask(t, f, s_size);
  return detail::materialize_forest(t, in_s, s_size, std::move(edges));
}

/* Edge union: attaching a boundary edge of the floating component merges it
 * into a rooted one, leaving an SRooted forest.  Other edges map the forest
 * to itself. */
inline SpanningForest union_edge_map(int e, const SpanningForest& f) {
  if (f.owner == nullptr) throw PreconditionError("forest without an owner tree");
  const Tree& t = *f.owner;
  if (e < 0 || e >= t.edge_count()) throw InvalidEdgeError("edge index out of range");
  if (f.kind != ForestKind::SStarRooted)
    throw PreconditionError("edge union expects an SStarRooted forest");
  int floating = -1;
  for (int c = 0; c < f.component_count; ++c)
    if (f.root_of_component[c] < 0) floating = c;
  int cu = f.component[t.edge(e).tail], cv = f.component[t.edge(e).head];
  bool boundary = (cu != cv) && (cu == floating || cv == floating);
  if (!boundary) return f;
  std::vector<int> edges = f.edges;
  edges.push_back(e);
  int s_size = 0;
  std::vector<char> in_s = detail::roots_mask(t, f, s_size);
  return detail::materialize_forest(t, in_s, s_size, std::move(edges));
}

}  // namespace treedist
