// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treedist/errors.hpp"
#include "treedist/matrix.hpp"
#include "treedist/rational.hpp"

namespace treedist {

struct EdgeSpec {
  std::string a, b;
  Rational length;
};

/* Oriented edge; orientation is canonical: tail < head in vertex order. */
struct Edge {
  int tail, head;
  Rational length;
};

/* Immutable vertex-labeled tree with positive rational edge lengths. */
class Tree {
public:
  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /* Index of the vertex with the given label, or -1. */
  int find_vertex(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? -1 : it->second;
  }

  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& incident_edges(int v) const { return incident_[v]; }
  int degree(int v) const { return static_cast<int>(incident_[v].size()); }

  /* True iff v lies on the head side of edge e when e is removed. */
  bool on_head_side(int e, int v) const { return head_side_[e][v] != 0; }

  Rational total_length() const {
    Rational s = 0;
    for (const auto& e : edges_) s += e.length;
    return s;
  }
  Rational length_product() const {
    Rational p = 1;
    for (const auto& e : edges_) p *= e.length;
    return p;
  }
  bool unit_lengths() const {
    for (const auto& e : edges_)
      if (e.length != 1) return false;
    return true;
  }

  friend Tree build_tree(const std::vector<std::string>& labels,
                         const std::vector<EdgeSpec>& edges);

private:
  std::vector<std::string> labels_;
  std::map<std::string, int> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::vector<char>> head_side_;
};

/* Validates labels, lengths, and treeness (|E| = |V| - 1, connected).
 * Vertex order follows the label list; edge order follows the input. */
inline Tree build_tree(const std::vector<std::string>& labels,
                       const std::vector<EdgeSpec>& edges) {
  Tree t;
  if (labels.empty()) throw NotATreeError("a tree needs at least one vertex");
  for (const auto& l : labels) {
    if (l.empty()) throw DuplicateLabelError("empty vertex label");
    if (!t.index_.emplace(l, static_cast<int>(t.labels_.size())).second)
      throw DuplicateLabelError("duplicate vertex label: " + l);
    t.labels_.push_back(l);
  }
  const int n = t.vertex_count();
  if (static_cast<int>(edges.size()) != n - 1)
    throw NotATreeError("a tree on " + std::to_string(n) + " vertices needs " +
                        std::to_string(n - 1) + " edges, got " + std::to_string(edges.size()));
  t.incident_.resize(n);
  for (const auto& spec : edges) {
    int u = t.find_vertex(spec.a), v = t.find_vertex(spec.b);
    if (u < 0) throw UnknownVertexError("unknown vertex label: " + spec.a);
    if (v < 0) throw UnknownVertexError("unknown vertex label: " + spec.b);
    if (u == v) throw NotATreeError("self-loop at vertex: " + spec.a);
    if (spec.length <= 0)
      throw NonPositiveLengthError("edge " + spec.a + "-" + spec.b + " has non-positive length");
    Edge e{std::min(u, v), std::max(u, v), spec.length};
    int idx = static_cast<int>(t.edges_.size());
    t.edges_.push_back(e);
    t.incident_[e.tail].push_back(idx);
    t.incident_[e.head].push_back(idx);
  }

  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : t.incident_[v]) {
      int w = t.edges_[e].tail == v ? t.edges_[e].head : t.edges_[e].tail;
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw NotATreeError("edge set does not connect all vertices");

  t.head_side_.assign(t.edges_.size(), std::vector<char>(n, 0));
  for (size_t e = 0; e < t.edges_.size(); ++e) {
    auto& side = t.head_side_[e];
    std::vector<int> frontier{t.edges_[e].head};
    side[t.edges_[e].head] = 1;
    while (!frontier.empty()) {
      int v = frontier.back();
      frontier.pop_back();
      for (int f : t.incident_[v]) {
        if (f == static_cast<int>(e)) continue;
        int w = t.edges_[f].tail == v ? t.edges_[f].head : t.edges_[f].tail;
        if (!side[w]) {
          side[w] = 1;
          frontier.push_back(w);
        }
      }
    }
  }
  return t;
}

/* Sorted, duplicate-free set of vertex indices of a particular tree. */
class VertexSubset {
public:
  VertexSubset() = default;

  static VertexSubset of(const Tree& t, std::vector<int> members) {
    for (int v : members)
      if (v < 0 || v >= t.vertex_count())
        throw InvalidVertexError("vertex index out of range: " + std::to_string(v));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    VertexSubset s;
    s.members_ = std::move(members);
    return s;
  }

  static VertexSubset of_labels(const Tree& t, const std::vector<std::string>& labels) {
    std::vector<int> members;
    members.reserve(labels.size());
    for (const auto& l : labels) {
      int v = t.find_vertex(l);
      if (v < 0) throw UnknownVertexError("unknown vertex label: " + l);
      members.push_back(v);
    }
    return of(t, std::move(members));
  }

  static VertexSubset all(const Tree& t) {
    std::vector<int> members(t.vertex_count());
    for (int v = 0; v < t.vertex_count(); ++v) members[v] = v;
    VertexSubset s;
    s.members_ = std::move(members);
    return s;
  }

  /* Vertices of degree <= 1; for a single-vertex tree, that vertex. */
  static VertexSubset leaves(const Tree& t) {
    std::vector<int> members;
    for (int v = 0; v < t.vertex_count(); ++v)
      if (t.degree(v) <= 1) members.push_back(v);
    VertexSubset s;
    s.members_ = std::move(members);
    return s;
  }

  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  int operator[](int i) const { return members_[i]; }
  const std::vector<int>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(int v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }
  bool is_subset_of(const VertexSubset& other) const {
    return std::includes(other.members_.begin(), other.members_.end(),
                         members_.begin(), members_.end());
  }

  std::vector<std::string> labels(const Tree& t) const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (int v : members_) out.push_back(t.label(v));
    return out;
  }

  bool operator==(const VertexSubset&) const = default;

private:
  std::vector<int> members_;
};

/* Undirected multigraph; parallel edges and self-loops permitted.
 * Edge endpoints keep the orientation they were constructed with. */
class Multigraph {
public:
  struct MultiEdge {
    int tail, head;
    Rational length;
  };

  Multigraph(std::vector<std::string> labels, std::vector<MultiEdge> edges)
      : labels_(std::move(labels)), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
      if (e.tail < 0 || e.tail >= vertex_count() || e.head < 0 || e.head >= vertex_count())
        throw InvalidEdgeError("multigraph edge endpoint out of range");
      if (e.length <= 0) throw NonPositiveLengthError("multigraph edge has non-positive length");
    }
  }

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::string& label(int v) const { return labels_[v]; }
  const MultiEdge& edge(int e) const { return edges_[e]; }
  bool is_self_loop(int e) const { return edges_[e].tail == edges_[e].head; }

  /* Loops contribute 2 to the degree of their vertex. */
  int degree(int v) const {
    int d = 0;
    for (const auto& e : edges_) {
      if (e.tail == v) ++d;
      if (e.head == v) ++d;
    }
    return d;
  }

  bool connected_ignoring_loops() const {
    const int n = vertex_count();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& e : edges_) {
        if (e.tail == e.head) continue;
        int w = -1;
        if (e.tail == v) w = e.head;
        else if (e.head == v) w = e.tail;
        if (w >= 0 && !seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == n;
  }

private:
  std::vector<std::string> labels_;
  std::vector<MultiEdge> edges_;
};

/* External momentum assignment on a multigraph; must sum to zero. */
class MomentumFunction {
public:
  MomentumFunction(const Multigraph& g, Vector values) : values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != g.vertex_count())
      throw DimensionMismatchError("momentum vector size does not match vertex count");
    if (vector_sum(values_) != 0)
      throw BadMomentumError("momentum values must sum to zero");
  }

  const Rational& at(int v) const { return values_[v]; }
  const Vector& values() const { return values_; }

private:
  Vector values_;
};

/* The two components of t with edge e removed, head side first. */
inline std::pair<VertexSubset, VertexSubset> tree_split(const Tree& t, int e) {
  if (e < 0 || e >= t.edge_count()) throw InvalidEdgeError("edge index out of range");
  std::vector<int> head, tail;
  for (int v = 0; v < t.vertex_count(); ++v)
    (t.on_head_side(e, v) ? head : tail).push_back(v);
  return {VertexSubset::of(t, std::move(head)), VertexSubset::of(t, std::move(tail))};
}

/* Indicator: does removing e disconnect v from w? */
inline bool separates(const Tree& t, int e, int v, int w) {
  if (e < 0 || e >= t.edge_count()) throw InvalidEdgeError("edge index out of range");
  if (v < 0 || v >= t.vertex_count() || w < 0 || w >= t.vertex_count())
    throw InvalidVertexError("vertex index out of range");
  return t.on_head_side(e, v) != t.on_head_side(e, w);
}

/* Path length between v and w: the sum of lengths of separating edges. */
inline Rational path_distance(const Tree& t, int v, int w) {
  if (v < 0 || v >= t.vertex_count() || w < 0 || w >= t.vertex_count())
    throw InvalidVertexError("vertex index out of range");
  Rational d = 0;
  for (int e = 0; e < t.edge_count(); ++e)
    if (t.on_head_side(e, v) != t.on_head_side(e, w)) d += t.edge(e).length;
  return d;
}

/* Pairwise distances among the vertices of s, in subset order. */
inline Matrix distance_submatrix(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("distance submatrix of an empty subset");
  const int k = s.size();
  Matrix d(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      d.at(i, j) = path_distance(t, s[i], s[j]);
      d.at(j, i) = d.at(i, j);
    }
  return d;
}

inline Matrix distance_matrix(const Tree& t) {
  return distance_submatrix(t, VertexSubset::all(t));
}

/* Smallest connected subtree of t containing s, with inherited labels,
 * lengths, and relative vertex/edge order. */
inline Tree convex_hull(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("convex hull of an empty subset");
  const int n = t.vertex_count();
  std::vector<char> keep(n, 1);
  std::vector<int> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = t.degree(v);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (deg[v] <= 1 && !s.contains(v)) queue.push_back(v);
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    if (!keep[v]) continue;
    keep[v] = 0;
    for (int e : t.incident_edges(v)) {
      int w = t.edge(e).tail == v ? t.edge(e).head : t.edge(e).tail;
      if (keep[w]) {
        if (--deg[w] <= 1 && !s.contains(w)) queue.push_back(w);
      }
    }
  }
  std::vector<std::string> labels;
  for (int v = 0; v < n; ++v)
    if (keep[v]) labels.push_back(t.label(v));
  std::vector<EdgeSpec> edges;
  for (const auto& e : t.edges())
    if (keep[e.tail] && keep[e.head])
      edges.push_back({t.label(e.tail), t.label(e.head), e.length});
  return build_tree(labels, edges);
}

struct QuotientResult {
  Multigraph graph;
  int merged_vertex;  // index of the vertex standing for all of s
};

/* Contracts s to a single vertex.  Quotient edge i corresponds to edge i
 * of t; edges inside s become self-loops at the merged vertex. */
inline QuotientResult quotient(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("quotient by an empty subset");
  std::string merged_label = "[S]";
  auto taken = [&](const std::string& candidate) {
    for (int v = 0; v < t.vertex_count(); ++v)
      if (!s.contains(v) && t.label(v) == candidate) return true;
    return false;
  };
  while (taken(merged_label)) merged_label += "_";
  std::vector<std::string> labels{merged_label};
  std::vector<int> to_quotient(t.vertex_count(), 0);
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (!s.contains(v)) {
      to_quotient[v] = static_cast<int>(labels.size());
      labels.push_back(t.label(v));
    }
  }
  std::vector<Multigraph::MultiEdge> edges;
  edges.reserve(t.edge_count());
  for (const auto& e : t.edges())
    edges.push_back({to_quotient[e.tail], to_quotient[e.head], e.length});
  return {Multigraph(std::move(labels), std::move(edges)), 0};
}

/* Momentum p(v) = deg_t(v) - 2 off s, balanced at the merged vertex. */
inline MomentumFunction canonical_momentum(const Tree& t, const VertexSubset& s) {
  QuotientResult q = quotient(t, s);
  Vector values(q.graph.vertex_count(), Rational(0));
  Rational total = 0;
  int qi = 0;
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (!s.contains(v)) {
      ++qi;
      values[qi] = Rational(t.degree(v) - 2);
      total += values[qi];
    }
  }
  values[q.merged_vertex] = -total;
  return MomentumFunction(q.graph, std::move(values));
}

}  // namespace treedist
