// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treedist/errors.hpp"
#include "treedist/forests.hpp"
#include "treedist/graph.hpp"
#include "treedist/io.hpp"
#include "treedist/linalg.hpp"
#include "treedist/matrix.hpp"
#include "treedist/minors.hpp"
#include "treedist/oracle.hpp"
#include "treedist/rational.hpp"

namespace treedist {

struct VerifyOptions {
  int exhaustive_n = 5;         // check every labeled tree up to this many vertices
  long long random_count = 25;  // extra randomized (tree, subset) instances
  std::uint64_t seed = 1;
  int random_max_n = 10;
  int random_max_len = 20;
  long long optimum_instances = 50;  // instances given the perturbation treatment
  int optimum_perturbations = 50;    // zero-sum perturbations per treated instance
};

/* Tally for one named identity, checked across many instances. */
struct FamilyResult {
  std::string name;
  long long instances = 0;
  long long failures = 0;
  std::string first_counterexample;  // empty while the family is clean
};

struct VerifySummary {
  VerifyOptions options;
  std::vector<FamilyResult> families;

  long long total_instances() const {
    long long total = 0;
    for (const auto& f : families) total += f.instances;
    return total;
  }
  long long total_failures() const {
    long long total = 0;
    for (const auto& f : families) total += f.failures;
    return total;
  }
  bool all_passed() const { return total_failures() == 0; }
  const FamilyResult* family(std::string_view name) const {
    for (const auto& f : families)
      if (f.name == name) return &f;
    return nullptr;
  }
};

namespace detail {

class Verifier {
public:
  Verifier(const VerifyOptions& opt, std::ostream* progress)
      : opt_(opt), progress_(progress), optimum_gen_(opt.seed) {
    for (const char* name :
         {"distance_oracle", "laplacian_structure", "full_det_closed_form",
          "unit_det_closed_form", "matrix_identities", "kappa_routes",
          "det_formula_vs_direct", "det_oracle", "cof_oracle", "cofactor_identity",
          "equilibrium", "ratio_routes", "ratio_range", "ratio_bounds",
          "inertia_signature", "symanzik_match", "unit_length_form",
          "hull_insensitivity", "forest_families_vs_oracle", "transition_maps",
          "quadratic_optimum", "monotonicity"})
      family(name);
  }

  VerifySummary run() {
    if (opt_.exhaustive_n < 1)
      throw TooSmallError("exhaustive sweep needs at least one vertex");
    if (opt_.exhaustive_n > 7)
      throw TooLargeError("exhaustive sweep supports at most 7 vertices");
    for (int n = 1; n <= opt_.exhaustive_n; ++n) {
      std::vector<Tree> trees = oracle::all_labeled_trees(n);
      note("exhaustive n=" + std::to_string(n) + ": " + std::to_string(trees.size()) +
           " trees, all nonempty subsets");
      for (std::size_t i = 0; i < trees.size(); ++i) {
        process_tree(trees[i],
                     "exhaustive n=" + std::to_string(n) + " tree=" + std::to_string(i));
        if ((i + 1) % 4096 == 0) note("  ..." + std::to_string(i + 1) + " trees done");
      }
    }
    if (opt_.random_count > 0)
      note("random instances: " + std::to_string(opt_.random_count));
    for (long long i = 0; i < opt_.random_count; ++i) {
      std::uint64_t seed = opt_.seed + static_cast<std::uint64_t>(i);
      oracle::RandomInstance inst =
          oracle::random_instance(seed, opt_.random_max_n, opt_.random_max_len);
      std::string where = "random seed=" + std::to_string(seed);
      Matrix d = distance_matrix(inst.tree);
      check_tree(inst.tree, d, where);
      check_instance(inst.tree, inst.subset, d, /*exhaustive=*/false, where);
    }
    VerifySummary summary;
    summary.options = opt_;
    summary.families = families_;
    return summary;
  }

private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view sv) const {
      return std::hash<std::string_view>{}(sv);
    }
  };

  void note(const std::string& line) {
    if (progress_ != nullptr) *progress_ << line << std::endl;
  }

  FamilyResult& family(const char* name) {
    auto it = index_.find(std::string_view(name));
    if (it != index_.end()) return families_[it->second];
    index_.emplace(name, families_.size());
    families_.push_back({name, 0, 0, ""});
    return families_.back();
  }

  template <class MakeContext>
  void record(FamilyResult& f, bool ok, MakeContext&& context) {
    ++f.instances;
    if (!ok) {
      ++f.failures;
      if (f.first_counterexample.empty()) f.first_counterexample = context();
    }
  }

  template <class MakeContext>
  void record(const char* name, bool ok, MakeContext&& context) {
    record(family(name), ok, std::forward<MakeContext>(context));
  }

  static std::string subset_text(const Tree& t, const VertexSubset& s) {
    std::string out = "{";
    for (int i = 0; i < s.size(); ++i) {
      if (i > 0) out += ",";
      out += t.label(s[i]);
    }
    return out + "}";
  }

  void process_tree(const Tree& t, const std::string& where) {
    const int n = t.vertex_count();
    Matrix d = distance_matrix(t);
    check_tree(t, d, where);
    std::vector<Rational> ratio(std::size_t{1} << n);
    std::vector<int> members;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      members.clear();
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) members.push_back(v);
      VertexSubset s = VertexSubset::of(t, members);
      ratio[mask] = check_instance(t, s, d, /*exhaustive=*/true, where);
    }

    // The normalized minor may not decrease under subset inclusion; walk
    // every ordered pair A proper-subset-of B of nonempty subsets.
    FamilyResult& mono = family("monotonicity");
    auto pair_context = [&](std::uint32_t a, std::uint32_t b) {
      auto text = [&](std::uint32_t mask) {
        std::vector<int> picked;
        for (int v = 0; v < n; ++v)
          if (mask & (1u << v)) picked.push_back(v);
        return subset_text(t, VertexSubset::of(t, std::move(picked)));
      };
      return where + "\n" + io::format_edge_list(t) + "subset A " + text(a) +
             "\nsubset B " + text(b);
    };
    for (std::uint32_t b = 1; b < (1u << n); ++b)
      for (std::uint32_t a = (b - 1) & b; a != 0; a = (a - 1) & b)
        record(mono, ratio[a] <= ratio[b], [&] { return pair_context(a, b); });
  }

  void check_tree(const Tree& t, const Matrix& d, const std::string& where) {
    const int n = t.vertex_count();
    auto context = [&] { return where + "\n" + io::format_edge_list(t); };

    record("distance_oracle", d == oracle::distance_matrix_by_search(t), context);

    Matrix l = laplacian(t);
    Matrix expected(n, n);
    Rational c;
    for (const auto& e : t.edges()) {
      c = 1 / e.length;
      expected.at(e.tail, e.head) -= c;
      expected.at(e.head, e.tail) -= c;
      expected.at(e.tail, e.tail) += c;
      expected.at(e.head, e.head) += c;
    }
    bool structure = l.is_symmetric() && l == expected;
    Vector in_kernel = l * Vector(n, Rational(1));
    for (const auto& entry : in_kernel) structure = structure && entry == 0;
    record("laplacian_structure", structure, context);

    Rational direct = determinant(d);
    bool closed = weighted_full_det(t) == direct;
    if (n <= 8) closed = closed && oracle::det_cofactor_expansion(d) == direct;
    record("full_det_closed_form", closed, context);
    if (t.unit_lengths())
      record("unit_det_closed_form", graham_pollak_det(n) == direct, context);

    if (n >= 2) {
      bool ok = true;
      try {
        dld_identity_check(t);
      } catch (const IdentityViolationError&) {
        ok = false;
      }
      record("matrix_identities", ok, context);
    }
  }

  Rational check_instance(const Tree& t, const VertexSubset& s, const Matrix& d,
                          bool exhaustive, const std::string& where) {
    auto context = [&] {
      return where + "\n" + io::format_edge_list(t) + "subset " + subset_text(t, s);
    };
    InstanceChecks r = evaluate_instance(t, s, &d);
    for (const auto& [name, ok] : r.checks) record(name, ok, context);

    const int k = s.size();
    if (k <= 8)
      record("det_oracle", oracle::det_cofactor_expansion(r.d) == r.report.det_direct,
             context);
    if (k <= 5) record("cof_oracle", definitional_cofactor(r.d) == r.report.cof, context);

    oracle::SubsetClassification cls = oracle::classify_all_subsets(t, s);
    bool families_match = cls.rooted.size() == r.rooted.forests.size() &&
                          cls.star_rooted.size() == r.star_rooted.forests.size();
    for (std::size_t i = 0; families_match && i < cls.rooted.size(); ++i)
      families_match = cls.rooted[i] == r.rooted.forests[i].edges;
    for (std::size_t i = 0; families_match && i < cls.star_rooted.size(); ++i)
      families_match = cls.star_rooted[i] == r.star_rooted.forests[i].edges;
    record("forest_families_vs_oracle", families_match, context);

    if (exhaustive) record("transition_maps", transition_maps_consistent(t, r), context);
    else maybe_check_optimum(s, r, context);
    return r.report.ratio;
  }

  /* Sum of signed first-minor determinants, each via the expansion oracle. */
  static Rational definitional_cofactor(const Matrix& m) {
    const int n = m.rows();
    Rational total = 0;
    Matrix minor(n - 1, n - 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int r = 0, rr = 0; r < n; ++r) {
          if (r == i) continue;
          for (int c = 0, cc = 0; c < n; ++c) {
            if (c == j) continue;
            minor.at(rr, cc) = m.at(r, c);
            ++cc;
          }
          ++rr;
        }
        total += sign_pow(i + j) * oracle::det_cofactor_expansion(minor);
      }
    return total;
  }

  /* Deleting a forest edge and re-attaching a floating boundary edge are
   * mutually inverse; their preimage counts are the floating outdegree and
   * the forest edge count respectively. */
  bool transition_maps_consistent(const Tree& t, const InstanceChecks& r) {
    const long long moved = static_cast<long long>(t.vertex_count()) -
                            static_cast<long long>(r.report.subset.size());
    bool ok = true;
    std::map<std::uint32_t, long long> deletion_hits;
    long long deletions = 0;
    for (const auto& f : r.rooted.forests) {
      ok = ok && static_cast<long long>(f.edges.size()) == moved;
      for (int e : f.edges) {
        SpanningForest g = delete_edge_map(e, f);
        ok = ok && g.kind == ForestKind::SStarRooted;
        ok = ok && union_edge_map(e, g) == f;
        ok = ok && forest_weight(g) == forest_weight(f) * t.edge(e).length;
        ++deletion_hits[g.edge_mask];
        ++deletions;
      }
    }
    long long outdeg_total = 0;
    for (const auto& f : r.star_rooted.forests) {
      long long want = outdegree_star(t, f);
      outdeg_total += want;
      auto it = deletion_hits.find(f.edge_mask);
      ok = ok && it != deletion_hits.end() && it->second == want;
    }
    ok = ok && deletions == outdeg_total;
    ok = ok && deletions == moved * static_cast<long long>(r.rooted.forests.size());

    std::map<std::uint32_t, long long> union_hits;
    for (const auto& f : r.star_rooted.forests)
      for (int e = 0; e < t.edge_count(); ++e) {
        if (f.edge_mask & (1u << e)) continue;
        SpanningForest g = union_edge_map(e, f);
        if (g.edges == f.edges) continue;  // not a boundary edge of the floating part
        ok = ok && g.kind == ForestKind::SRooted;
        ok = ok && delete_edge_map(e, g) == f;
        ++union_hits[g.edge_mask];
      }
    for (const auto& f : r.rooted.forests) {
      auto it = union_hits.find(f.edge_mask);
      long long got = it == union_hits.end() ? 0 : it->second;
      ok = ok && got == moved;
    }
    return ok;
  }

  /* The equilibrium direction maximizes the quadratic on the unit-sum slice;
   * random exact zero-sum perturbations must never beat it. */
  template <class Context>
  void maybe_check_optimum(const VertexSubset& s, const InstanceChecks& r,
                           Context&& context) {
    if (optimum_done_ >= opt_.optimum_instances) return;
    const int k = s.size();
    if (k < 2) return;
    ++optimum_done_;

    Vector u = scaled(r.report.equilibrium, 1 / r.report.equilibrium_sum);
    bool ok = vector_sum(u) == 1;
    Rational value = dot(u, r.d * u);
    ok = ok && value == r.report.ratio;

    Vector v(k);
    std::vector<long> c(k);
    for (int p = 0; p < opt_.optimum_perturbations; ++p) {
      long total = 0;
      for (int i = 0; i < k; ++i) {
        c[i] = static_cast<long>(oracle::detail::draw_below(optimum_gen_, 19)) - 9;
        total += c[i];
      }
      Rational shift{Integer(total), Integer(k)};
      shift.canonicalize();
      bool moved_any = false;
      for (int i = 0; i < k; ++i) {
        Rational w = Rational(c[i]) - shift;
        moved_any = moved_any || w != 0;
        v[i] = u[i] + w;
      }
      Rational q = dot(v, r.d * v);
      ok = ok && (moved_any ? q < value : q == value);
    }
    record("quadratic_optimum", ok, context);
  }

  VerifyOptions opt_;
  std::ostream* progress_;
  std::mt19937_64 optimum_gen_;
  long long optimum_done_ = 0;
  std::vector<FamilyResult> families_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
};

}  // namespace detail

/* Sweeps every labeled tree up to the requested size (each with every
 * nonempty vertex subset) plus seeded random weighted instances, checking
 * each identity family on each applicable instance. */
inline VerifySummary run_verification(const VerifyOptions& opt = {},
                                      std::ostream* progress = nullptr) {
  detail::Verifier verifier(opt, progress);
  return verifier.run();
}

}  // namespace treedist
