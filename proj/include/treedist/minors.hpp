// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treedist/errors.hpp"
#include "treedist/forests.hpp"
#include "treedist/graph.hpp"
#include "treedist/linalg.hpp"
#include "treedist/matrix.hpp"
#include "treedist/rational.hpp"

namespace treedist {

/* Distance-matrix determinant of the unit-length tree picture: depends only
 * on the vertex count. */
inline Rational graham_pollak_det(long n) {
  if (n < 1) throw PreconditionError("vertex count must be at least 1");
  if (n == 1) return 0;
  return sign_pow(n - 1) * pow2(n - 2) * Rational(n - 1);
}

/* Closed form for det of the full distance matrix of a weighted tree. */
inline Rational weighted_full_det(const Tree& t) {
  const int n = t.vertex_count();
  if (n == 1) return 0;  // the matrix is [0]; the closed form degenerates
  return sign_pow(n - 1) * pow2(n - 2) * t.total_length() * t.length_product();
}

namespace detail {

/* Shared per-subset aggregates computed from one forest enumeration. */
struct ForestAggregates {
  Rational kappa;     // total weight of the SRooted family
  Rational phi_sum;   // sum of w(F) (outdeg* - 2)^2 over the SStarRooted family
  long long f1_count = 0;
  long long f2_count = 0;
  std::map<int, HistogramBucket> histogram;
};

inline ForestAggregates aggregate_forests(const Tree& t, const ForestFamily& rooted,
                                          const ForestFamily& star_rooted) {
  ForestAggregates agg;
  agg.kappa = 0;
  agg.phi_sum = 0;
  Rational w, term;
  for (const auto& f : rooted.forests) {
    agg.kappa += forest_weight(f);
    ++agg.f1_count;
  }
  for (const auto& f : star_rooted.forests) {
    int d = outdegree_star(t, f);
    w = forest_weight(f);
    term = w * Rational((d - 2) * (d - 2));
    agg.phi_sum += term;
    auto& bucket = agg.histogram[d];
    bucket.count += 1;
    bucket.weight += w;
    ++agg.f2_count;
  }
  return agg;
}

inline ForestAggregates aggregate_forests(const Tree& t, const VertexSubset& s) {
  ForestFamily rooted, star_rooted;
  enumerate_families(t, s, rooted, star_rooted);
  return aggregate_forests(t, rooted, star_rooted);
}

}  // namespace detail

/* Principal minor of the distance matrix on s, from the forest expansion:
 * (-1)^(|s|-1) 2^(|s|-2) (sum_alpha kappa - phi_sum). */
inline Rational principal_minor_formula(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("principal minor of an empty subset");
  detail::ForestAggregates agg = detail::aggregate_forests(t, s);
  Rational bracket = t.total_length() * agg.kappa - agg.phi_sum;
  return sign_pow(s.size() - 1) * pow2(s.size() - 2) * bracket;
}

/* Cofactor sum of the distance submatrix, from the forest count:
 * (-2)^(|s|-1) kappa. */
inline Rational cofactor_identity(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("cofactor identity of an empty subset");
  return neg_two_pow(s.size() - 1) * kappa(t, s, KappaMethod::Enumeration);
}

struct EquilibriumVector {
  VertexSubset subset;
  Vector values;   // indexed like subset
  Rational total;  // equals 2 kappa
};

/* m_v = sum over SRooted forests of w(T) (2 - outdeg of the component of v). */
inline EquilibriumVector equilibrium_vector(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("equilibrium vector of an empty subset");
  ForestFamily rooted = enumerate_forests(t, s, ForestKind::SRooted);
  EquilibriumVector result;
  result.subset = s;
  result.values.assign(s.size(), Rational(0));
  Rational w, term;
  for (const auto& f : rooted.forests) {
    std::vector<int> outdeg = detail::component_outdegrees(t, f);
    w = forest_weight(f);
    for (int i = 0; i < s.size(); ++i) {
      term = w * Rational(2 - outdeg[f.component[s[i]]]);
      result.values[i] += term;
    }
  }
  result.total = vector_sum(result.values);
  return result;
}

/* lambda = sum_alpha kappa - sum over SStarRooted forests of
 * w(F) (2 - outdeg*)^2; satisfies D[s] m = lambda 1. */
inline Rational lambda_constant(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("lambda of an empty subset");
  detail::ForestAggregates agg = detail::aggregate_forests(t, s);
  return t.total_length() * agg.kappa - agg.phi_sum;
}

/* det / cofactor-sum of the distance submatrix, evaluated by three exact
 * routes that must agree. */
inline Rational normalized_minor(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("normalized minor of an empty subset");
  detail::ForestAggregates agg = detail::aggregate_forests(t, s);
  Rational forest_route = (t.total_length() - agg.phi_sum / agg.kappa) / 2;

  EquilibriumVector m = equilibrium_vector(t, s);
  Rational lambda = t.total_length() * agg.kappa - agg.phi_sum;
  Rational average_route = lambda / m.total;

  Matrix d = distance_submatrix(t, s);
  Rational direct_route = determinant(d) / cofactor_sum(d);

  if (forest_route != average_route || forest_route != direct_route)
    throw IdentityViolationError("normalized minor routes disagree");
  return forest_route;
}

struct QuadraticOptimum {
  Vector maximizer;  // sums to 1
  Rational value;
};

/* The quadratic u^T D[s] u over the affine slice 1^T u = 1 is maximized at
 * u = m / (1^T m) with value equal to the normalized minor. */
inline QuadraticOptimum optimize_quadratic(const Tree& t, const VertexSubset& s) {
  EquilibriumVector m = equilibrium_vector(t, s);
  QuadraticOptimum opt;
  opt.maximizer = scaled(m.values, 1 / m.total);
  Matrix d = distance_submatrix(t, s);
  Vector du = d * opt.maximizer;
  opt.value = dot(opt.maximizer, du);
  if (vector_sum(opt.maximizer) != 1)
    throw IdentityViolationError("maximizer does not sum to one");
  for (const auto& entry : du)
    if (entry != opt.value)
      throw IdentityViolationError("maximizer is not a critical point of the quadratic");
  if (opt.value != normalized_minor(t, s))
    throw IdentityViolationError("optimum value does not match the normalized minor");
  return opt;
}

/* Normalized minors of nested subsets are ordered; returns both ratios. */
inline std::pair<Rational, Rational> monotonicity_check(const Tree& t, const VertexSubset& a,
                                                        const VertexSubset& b) {
  if (a.empty() || b.empty()) throw EmptySubsetError("monotonicity needs nonempty subsets");
  if (!a.is_subset_of(b)) throw NotNestedError("first subset is not contained in the second");
  Rational ra = normalized_minor(t, a), rb = normalized_minor(t, b);
  if (ra > rb)
    throw IdentityViolationError("normalized minor decreased on a superset");
  return {ra, rb};
}

struct RatioBounds {
  Rational lower, upper;
};

/* Half the largest pairwise distance in s, and half the total length of the
 * convex hull of s, bracket the normalized minor. */
inline RatioBounds ratio_bounds(const Tree& t, const VertexSubset& s) {
  if (s.size() < 2) throw SubsetTooSmallError("ratio bounds need at least two vertices");
  RatioBounds bounds;
  Rational max_dist = 0, d;
  for (int i = 0; i < s.size(); ++i)
    for (int j = i + 1; j < s.size(); ++j) {
      d = path_distance(t, s[i], s[j]);
      if (d > max_dist) max_dist = d;
    }
  bounds.lower = max_dist / 2;
  bounds.upper = convex_hull(t, s).total_length() / 2;
  Rational ratio = normalized_minor(t, s);
  if (ratio < bounds.lower || ratio > bounds.upper)
    throw IdentityViolationError("normalized minor escapes its bounds");
  return bounds;
}

namespace detail {

/* Visits every acyclic subset of the non-loop edges of g.  The visitor
 * receives the component count, a component id per vertex, and the product
 * of the x-values of the excluded edges (self-loops are always excluded). */
template <class Visitor>
inline void scan_multigraph_forests(const Multigraph& g, const std::vector<Rational>& x,
                                    Visitor&& visit) {
  if (static_cast<int>(x.size()) != g.edge_count())
    throw DimensionMismatchError("one value per edge expected");
  if (g.edge_count() > 31) throw TooLargeError("forest scan supports at most 31 edges");
  const int n = g.vertex_count();
  std::vector<int> live;
  Rational loop_product = 1;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.is_self_loop(e)) loop_product *= x[e];
    else live.push_back(e);
  }
  std::vector<int> parent(n), size(n, 1), comp(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v];
    return v;
  };
  int comp_count = n;

  auto leaf = [&](const Rational& excluded) {
    std::vector<int> id_of_root(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
      int r = find(v);
      if (id_of_root[r] < 0) id_of_root[r] = next++;
      comp[v] = id_of_root[r];
    }
    visit(comp_count, comp, excluded);
  };

  auto descend = [&](auto&& self, size_t i, Rational excluded) -> void {
    if (i == live.size()) {
      leaf(excluded);
      return;
    }
    int e = live[i];
    self(self, i + 1, excluded * x[e]);
    int ru = find(g.edge(e).tail), rv = find(g.edge(e).head);
    if (ru == rv) return;  // a cycle would close; prune this branch
    if (size[ru] < size[rv]) std::swap(ru, rv);
    parent[rv] = ru;
    size[ru] += size[rv];
    --comp_count;
    self(self, i + 1, std::move(excluded));
    ++comp_count;
    size[ru] -= size[rv];
    parent[rv] = rv;
  };
  descend(descend, 0, loop_product);
}

}  // namespace detail

/* First graph polynomial: sum over spanning trees of the product of the
 * excluded edge values. */
inline Rational symanzik_first(const Multigraph& g, const std::vector<Rational>& x) {
  if (!g.connected_ignoring_loops())
    throw DisconnectedError("graph polynomial of a disconnected graph");
  Rational psi = 0;
  detail::scan_multigraph_forests(
      g, x, [&](int comps, const std::vector<int>&, const Rational& excluded) {
        if (comps == 1) psi += excluded;
      });
  return psi;
}

/* Second graph polynomial at momentum p: sum over two-component spanning
 * forests of (sum of p over one component)^2 times the excluded product. */
inline Rational symanzik_second(const Multigraph& g, const MomentumFunction& p,
                                const std::vector<Rational>& x) {
  if (!g.connected_ignoring_loops())
    throw DisconnectedError("graph polynomial of a disconnected graph");
  if (static_cast<int>(p.values().size()) != g.vertex_count())
    throw DimensionMismatchError("momentum size does not match vertex count");
  Rational phi = 0, side, term;
  detail::scan_multigraph_forests(
      g, x, [&](int comps, const std::vector<int>& comp, const Rational& excluded) {
        if (comps != 2) return;
        side = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
          if (comp[v] == 0) side += p.at(v);
        term = side * side * excluded;
        phi += term;
      });
  return phi;
}

struct SymanzikEvaluation {
  Rational psi, phi;
};

/* Evaluates both polynomials of the quotient by s at the inherited lengths
 * and the canonical momentum, and checks them against the forest expansion
 * of the principal minor. */
inline SymanzikEvaluation symanzik_det_identity(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("quotient by an empty subset");
  QuotientResult q = quotient(t, s);
  std::vector<Rational> x;
  x.reserve(q.graph.edge_count());
  for (int e = 0; e < q.graph.edge_count(); ++e) x.push_back(q.graph.edge(e).length);
  MomentumFunction p = canonical_momentum(t, s);
  SymanzikEvaluation eval{symanzik_first(q.graph, x), symanzik_second(q.graph, p, x)};

  detail::ForestAggregates agg = detail::aggregate_forests(t, s);
  if (eval.psi != agg.kappa)
    throw IdentityViolationError("first polynomial does not match the forest count");
  if (eval.phi != agg.phi_sum)
    throw IdentityViolationError("second polynomial does not match the forest expansion");
  Rational det = sign_pow(s.size() - 1) * pow2(s.size() - 2) *
                 (t.total_length() * eval.psi - eval.phi);
  if (det != determinant(distance_submatrix(t, s)))
    throw IdentityViolationError("polynomial form of the minor does not match the determinant");
  return eval;
}

/* Unit-length specialization of the principal minor:
 * (-1)^(|s|-1) 2^(|s|-2) ((|s|-1) kappa - sum (outdeg*-1)(outdeg*-4)). */
inline Rational gutierrez_lillo_form(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("unit-length form of an empty subset");
  if (!t.unit_lengths())
    throw NotUnitLengthsError("this form only applies to unit edge lengths");
  detail::ForestAggregates agg = detail::aggregate_forests(t, s);
  Rational corrections = 0;
  for (const auto& [d, bucket] : agg.histogram)
    corrections += bucket.weight * Rational((d - 1) * (d - 4));
  Rational value =
      sign_pow(s.size() - 1) * pow2(s.size() - 2) * (Rational(s.size() - 1) * agg.kappa - corrections);
  if (value != principal_minor_formula(t, s))
    throw IdentityViolationError("unit-length form does not match the forest expansion");
  return value;
}

struct DistanceLaplacianReport {
  Rational sum_alpha;
  Vector degree_vector;  // 2 - deg(v), in vertex order
  Matrix inverse;        // exact inverse of the full distance matrix
};

/* Exact identities tying the full distance matrix to the Laplacian:
 * D = -1/2 D L D + 1/2 sum_alpha J,  D (2 - deg) = sum_alpha 1,  and the
 * rank-one form of D^{-1} built from both. */
inline DistanceLaplacianReport dld_identity_check(const Tree& t) {
  const int n = t.vertex_count();
  if (n < 2) throw TooSmallError("identities need at least two vertices");
  DistanceLaplacianReport report;
  report.sum_alpha = t.total_length();
  Matrix d = distance_matrix(t);
  Matrix l = laplacian(t);
  Matrix dld = (d * l) * d;
  Matrix expected = dld.scaled(Rational(-1, 2)) +
                    Matrix::constant(n, n, report.sum_alpha / 2);
  if (expected != d)
    throw IdentityViolationError("distance matrix fails the double-product identity");

  report.degree_vector.assign(n, Rational(0));
  for (int v = 0; v < n; ++v) report.degree_vector[v] = Rational(2 - t.degree(v));
  Vector dm = d * report.degree_vector;
  for (const auto& entry : dm)
    if (entry != report.sum_alpha)
      throw IdentityViolationError("distance matrix fails the degree-vector identity");

  report.inverse = l.scaled(Rational(-1, 2)) +
                   outer(report.degree_vector, report.degree_vector)
                       .scaled(Rational(1, 2) / report.sum_alpha);
  if (d * report.inverse != Matrix::identity(n))
    throw IdentityViolationError("rank-one inverse formula fails");
  return report;
}

/* Everything the formulas say about one (tree, subset) instance. */
struct MinorReport {
  std::vector<std::string> subset;
  Rational sum_alpha;
  Rational det_formula;
  Rational det_direct;
  Rational cof;
  Rational kappa;
  Rational lambda;
  Rational ratio;
  Vector equilibrium;
  Rational equilibrium_sum;
  long long f1_count = 0;
  long long f2_count = 0;
  std::map<int, HistogramBucket> histogram;
  Inertia inertia_counts;
  Rational symanzik_psi;
  Rational symanzik_phi;
  bool has_bounds = false;
  Rational ratio_lower;
  Rational ratio_upper;
  bool operator==(const MinorReport&) const = default;
};

namespace detail {

/* One fully evaluated instance: the report, the intermediate pieces batch
 * drivers want to reuse, and a named pass/fail entry per internal identity. */
struct InstanceChecks {
  MinorReport report;
  Rational phi_sum;
  ForestFamily rooted, star_rooted;
  Matrix d;
  std::vector<std::pair<const char*, bool>> checks;

  bool all_passed() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return false;
    return true;
  }
  const char* first_failure() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return name;
    return nullptr;
  }
};

inline InstanceChecks evaluate_instance(const Tree& t, const VertexSubset& s,
                                        const Matrix* full_distances = nullptr) {
  if (s.empty()) throw EmptySubsetError("report of an empty subset");
  const int k = s.size();
  InstanceChecks out;
  MinorReport& report = out.report;
  report.subset = s.labels(t);
  report.sum_alpha = t.total_length();
  auto check = [&](const char* name, bool ok) { out.checks.emplace_back(name, ok); };

  enumerate_families(t, s, out.rooted, out.star_rooted);
  ForestAggregates agg = aggregate_forests(t, out.rooted, out.star_rooted);
  report.kappa = agg.kappa;
  report.f1_count = agg.f1_count;
  report.f2_count = agg.f2_count;
  report.histogram = std::move(agg.histogram);
  out.phi_sum = agg.phi_sum;

  Rational kappa_matrix = t.length_product() * determinant(laplacian_minor(t, s));
  check("kappa_routes", kappa_matrix == report.kappa);

  report.lambda = report.sum_alpha * report.kappa - out.phi_sum;
  report.det_formula = sign_pow(k - 1) * pow2(k - 2) * report.lambda;

  if (full_distances != nullptr) {
    out.d = Matrix(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) out.d.at(i, j) = full_distances->at(s[i], s[j]);
  } else {
    out.d = distance_submatrix(t, s);
  }
  report.det_direct = determinant(out.d);
  check("det_formula_vs_direct", report.det_formula == report.det_direct);

  Matrix bordered = out.d + Matrix::constant(k, k, Rational(1));
  report.cof = determinant(bordered) - report.det_direct;
  check("cofactor_identity", report.cof == neg_two_pow(k - 1) * report.kappa);

  report.equilibrium.assign(k, Rational(0));
  Rational w, term;
  for (const auto& f : out.rooted.forests) {
    std::vector<int> outdeg = component_outdegrees(t, f);
    w = forest_weight(f);
    for (int i = 0; i < k; ++i) {
      term = w * Rational(2 - outdeg[f.component[s[i]]]);
      report.equilibrium[i] += term;
    }
  }
  report.equilibrium_sum = vector_sum(report.equilibrium);
  bool equilibrium_ok = report.equilibrium_sum == 2 * report.kappa;
  bool nonzero = false;
  for (const auto& entry : report.equilibrium) nonzero = nonzero || entry != 0;
  equilibrium_ok = equilibrium_ok && nonzero;
  Vector dm = out.d * report.equilibrium;
  for (const auto& entry : dm) equilibrium_ok = equilibrium_ok && entry == report.lambda;
  check("equilibrium", equilibrium_ok);

  report.ratio = report.lambda / report.equilibrium_sum;
  bool routes_ok = report.det_formula == report.cof * report.ratio &&
                   report.ratio == (report.sum_alpha - out.phi_sum / report.kappa) / 2;
  check("ratio_routes", routes_ok);
  check("ratio_range", report.ratio >= 0 && report.ratio <= report.sum_alpha / 2);

  report.inertia_counts = inertia(out.d);
  Inertia expected_inertia = k >= 2 ? Inertia{1, k - 1, 0} : Inertia{0, 0, 1};
  check("inertia_signature", report.inertia_counts == expected_inertia);

  QuotientResult q = quotient(t, s);
  std::vector<Rational> x;
  x.reserve(q.graph.edge_count());
  for (int e = 0; e < q.graph.edge_count(); ++e) x.push_back(q.graph.edge(e).length);
  report.symanzik_psi = symanzik_first(q.graph, x);
  report.symanzik_phi = symanzik_second(q.graph, canonical_momentum(t, s), x);
  check("symanzik_match",
        report.symanzik_psi == report.kappa && report.symanzik_phi == out.phi_sum);

  Tree hull = convex_hull(t, s);
  if (k >= 2) {
    report.has_bounds = true;
    Rational max_dist = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (out.d.at(i, j) > max_dist) max_dist = out.d.at(i, j);
    report.ratio_lower = max_dist / 2;
    report.ratio_upper = hull.total_length() / 2;
    check("ratio_bounds",
          report.ratio >= report.ratio_lower && report.ratio <= report.ratio_upper);
  }

  if (t.unit_lengths()) {
    Rational corrections = 0;
    for (const auto& [deg, bucket] : report.histogram)
      corrections += bucket.weight * Rational((deg - 1) * (deg - 4));
    Rational gl = sign_pow(k - 1) * pow2(k - 2) *
                  (Rational(k - 1) * report.kappa - corrections);
    check("unit_length_form", gl == report.det_formula);
  }

  VertexSubset s_hull = VertexSubset::of_labels(hull, report.subset);
  check("hull_insensitivity",
        principal_minor_formula(hull, s_hull) == report.det_formula);

  return out;
}

}  // namespace detail

/* Computes the full report for one subset, asserting every internal
 * identity along the way.  The optional full distance matrix lets batch
 * drivers share it across subsets of the same tree. */
inline MinorReport compute_minor_report(const Tree& t, const VertexSubset& s,
                                        const Matrix* full_distances = nullptr) {
  detail::InstanceChecks checks = detail::evaluate_instance(t, s, full_distances);
  if (const char* failed = checks.first_failure(); failed != nullptr)
    throw IdentityViolationError(std::string("identity failed: ") + failed);
  return checks.report;
}

}  // namespace treedist
