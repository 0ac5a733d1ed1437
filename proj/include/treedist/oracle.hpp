// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference implementations used to validate the main library.
// They share only the scalar, matrix, and tree containers with the rest of
// the code; every algorithm here is written from the definitions, without
// elimination, forest search pruning, or closed forms.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "treedist/errors.hpp"
#include "treedist/graph.hpp"
#include "treedist/matrix.hpp"
#include "treedist/rational.hpp"

namespace treedist {
namespace oracle {

/* Determinant by expansion by minors along the first remaining row.
 * Submatrix determinants are cached by column mask, never eliminated.
 * Denominators are cleared per row so inner arithmetic stays integral. */
inline Rational det_cofactor_expansion(const Matrix& m) {
  if (!m.is_square()) throw NotSquareError("determinant of a non-square matrix");
  const int n = m.rows();
  if (n > 8) throw TooLargeError("expansion oracle supports at most 8x8");
  if (n == 0) return 1;

  std::vector<Integer> a(static_cast<size_t>(n) * n);
  Integer row_factor = 1, lcm, q;
  for (int i = 0; i < n; ++i) {
    lcm = 1;
    for (int j = 0; j < n; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
    for (int j = 0; j < n; ++j) {
      mpz_divexact(q.get_mpz_t(), lcm.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
      a[static_cast<size_t>(i) * n + j] = m.at(i, j).get_num() * q;
    }
    row_factor *= lcm;
  }

  // minor_det[mask] = det of the submatrix on the columns in mask and the
  // last popcount(mask) rows; built in increasing mask order.
  const std::uint32_t full = (1u << n) - 1;
  std::vector<Integer> minor_det(full + 1);
  minor_det[0] = 1;
  Integer term;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int k = __builtin_popcount(mask);
    int row = n - k;
    Integer acc = 0;
    int position = 0;
    for (int j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      term = a[static_cast<size_t>(row) * n + j] * minor_det[mask & ~(1u << j)];
      if (position % 2 == 0) acc += term;
      else acc -= term;
      ++position;
    }
    minor_det[mask] = acc;
  }
  Rational det(minor_det[full], row_factor);
  det.canonicalize();
  return det;
}

/* Distances by explicit breadth-first search from every vertex. */
inline Matrix distance_matrix_by_search(const Tree& t) {
  const int n = t.vertex_count();
  Matrix d(n, n);
  for (int start = 0; start < n; ++start) {
    std::vector<char> seen(n, 0);
    std::vector<int> queue{start};
    seen[start] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      for (int e : t.incident_edges(v)) {
        int w = t.edge(e).tail == v ? t.edge(e).head : t.edge(e).tail;
        if (!seen[w]) {
          seen[w] = 1;
          d.at(start, w) = d.at(start, v) + t.edge(e).length;
          queue.push_back(w);
        }
      }
    }
  }
  return d;
}

/* Edge sets of each forest kind, found by checking all 2^|E| subsets with a
 * fresh component labeling per subset. */
struct SubsetClassification {
  std::vector<std::vector<int>> rooted;       // lexicographically sorted edge sets
  std::vector<std::vector<int>> star_rooted;  // likewise
  long long neither = 0;
};

inline SubsetClassification classify_all_subsets(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("classification needs a nonempty subset");
  const int m = t.edge_count();
  if (m > 20) throw TooLargeError("subset classification supports at most 20 edges");
  const int n = t.vertex_count();
  SubsetClassification result;
  std::vector<int> comp(n);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::fill(comp.begin(), comp.end(), -1);
    int comp_count = 0;
    for (int v = 0; v < n; ++v) {
      if (comp[v] >= 0) continue;
      int id = comp_count++;
      std::vector<int> stack{v};
      comp[v] = id;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int e : t.incident_edges(u)) {
          if (!(mask & (1u << e))) continue;
          int w = t.edge(e).tail == u ? t.edge(e).head : t.edge(e).tail;
          if (comp[w] < 0) {
            comp[w] = id;
            stack.push_back(w);
          }
        }
      }
    }
    std::vector<int> roots_in_comp(comp_count, 0);
    for (int v : s) ++roots_in_comp[comp[v]];
    bool each_at_most_one = true;
    int occupied = 0;
    for (int c = 0; c < comp_count; ++c) {
      if (roots_in_comp[c] > 1) each_at_most_one = false;
      if (roots_in_comp[c] == 1) ++occupied;
    }
    std::vector<int> edges;
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) edges.push_back(e);
    if (each_at_most_one && occupied == s.size() && comp_count == s.size())
      result.rooted.push_back(std::move(edges));
    else if (each_at_most_one && occupied == s.size() && comp_count == s.size() + 1)
      result.star_rooted.push_back(std::move(edges));
    else
      ++result.neither;
  }
  std::sort(result.rooted.begin(), result.rooted.end());
  std::sort(result.star_rooted.begin(), result.star_rooted.end());
  return result;
}

namespace detail {

/* Standard sequence decoding: each label list entry attaches the smallest
 * remaining leaf; the two survivors form the last edge. */
inline Tree tree_from_sequence(const std::vector<int>& seq, int n) {
  std::vector<std::string> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = std::to_string(v);
  std::vector<EdgeSpec> edges;
  if (n == 1) return build_tree(labels, edges);
  std::vector<int> degree(n, 1);
  for (int a : seq) ++degree[a];
  std::vector<char> used(n, 0);
  for (int a : seq) {
    for (int leaf = 0; leaf < n; ++leaf) {
      if (!used[leaf] && degree[leaf] == 1) {
        edges.push_back({labels[leaf], labels[a], Rational(1)});
        used[leaf] = 1;
        --degree[a];
        break;
      }
    }
  }
  int first = -1;
  for (int v = 0; v < n; ++v) {
    if (!used[v] && degree[v] == 1) {
      if (first < 0) first = v;
      else edges.push_back({labels[first], labels[v], Rational(1)});
    }
  }
  return build_tree(labels, edges);
}

/* Deterministic helper: value in [0, bound) from the raw generator stream.
 * The modulo bias is irrelevant for test-corpus generation and keeps the
 * draw sequence identical across platforms. */
inline std::uint64_t draw_below(std::mt19937_64& gen, std::uint64_t bound) {
  return gen() % bound;
}

}  // namespace detail

/* Every labeled tree on n vertices, unit lengths, in sequence order. */
inline std::vector<Tree> all_labeled_trees(int n) {
  if (n < 1) throw TooSmallError("need at least one vertex");
  if (n > 8) throw TooLargeError("exhaustive enumeration supports at most 8 vertices");
  std::vector<Tree> trees;
  if (n <= 2) {
    trees.push_back(detail::tree_from_sequence({}, n));
    return trees;
  }
  std::vector<int> seq(static_cast<size_t>(n) - 2, 0);
  while (true) {
    trees.push_back(detail::tree_from_sequence(seq, n));
    int i = static_cast<int>(seq.size()) - 1;
    while (i >= 0 && seq[i] == n - 1) {
      seq[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++seq[i];
  }
  return trees;
}

struct RandomInstance {
  Tree tree;
  VertexSubset subset;
};

/* Deterministic random tree with rational lengths plus a nonempty subset.
 * The same seed always produces the same instance. */
inline RandomInstance random_instance(std::uint64_t seed, int max_n = 10, int max_len = 20) {
  if (max_n < 2) throw TooSmallError("random instances need max_n >= 2");
  if (max_n > 62) throw TooLargeError("random instances support at most 62 vertices");
  std::mt19937_64 gen(seed);
  int n = 2 + static_cast<int>(detail::draw_below(gen, static_cast<std::uint64_t>(max_n) - 1));
  std::vector<int> seq;
  for (int i = 0; i < n - 2; ++i)
    seq.push_back(static_cast<int>(detail::draw_below(gen, n)));
  Tree unit = detail::tree_from_sequence(seq, n);

  std::vector<std::string> labels = unit.labels();
  std::vector<EdgeSpec> edges;
  for (const auto& e : unit.edges()) {
    Rational len(1 + detail::draw_below(gen, max_len), 1 + detail::draw_below(gen, max_len));
    len.canonicalize();
    edges.push_back({unit.label(e.tail), unit.label(e.head), len});
  }
  Tree tree = build_tree(labels, edges);

  std::uint64_t mask =
      1 + detail::draw_below(gen, (static_cast<std::uint64_t>(1) << n) - 1);
  std::vector<int> members;
  for (int v = 0; v < n; ++v)
    if (mask & (static_cast<std::uint64_t>(1) << v)) members.push_back(v);
  VertexSubset subset = VertexSubset::of(tree, std::move(members));
  return {std::move(tree), std::move(subset)};
}

/* A reproducible test corpus: trees, their provenance, and the subsets each
 * tree should be checked against. */
struct CorpusEntry {
  Tree tree;
  std::string provenance;
  std::vector<VertexSubset> subsets;
};

struct Corpus {
  std::vector<CorpusEntry> entries;
};

/* All labeled trees with 1..max_n vertices and every nonempty subset. */
inline Corpus exhaustive_corpus(int max_n) {
  if (max_n > 7) throw TooLargeError("materialized exhaustive corpus supports max_n <= 7");
  Corpus corpus;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<Tree> trees = all_labeled_trees(n);
    for (size_t i = 0; i < trees.size(); ++i) {
      CorpusEntry entry;
      entry.tree = std::move(trees[i]);
      entry.provenance = "exhaustive n=" + std::to_string(n) + " index=" + std::to_string(i);
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
          if (mask & (1u << v)) members.push_back(v);
        entry.subsets.push_back(VertexSubset::of(entry.tree, std::move(members)));
      }
      corpus.entries.push_back(std::move(entry));
    }
  }
  return corpus;
}

/* count random instances derived from consecutive seeds. */
inline Corpus random_corpus(long long count, std::uint64_t seed, int max_n = 10,
                            int max_len = 20) {
  Corpus corpus;
  for (long long i = 0; i < count; ++i) {
    RandomInstance inst = random_instance(seed + static_cast<std::uint64_t>(i), max_n, max_len);
    CorpusEntry entry;
    entry.tree = std::move(inst.tree);
    entry.provenance = "random seed=" + std::to_string(seed + static_cast<std::uint64_t>(i));
    entry.subsets.push_back(std::move(inst.subset));
    corpus.entries.push_back(std::move(entry));
  }
  return corpus;
}

}  // namespace oracle
}  // namespace treedist
