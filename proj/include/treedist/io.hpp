// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "treedist/errors.hpp"
#include "treedist/graph.hpp"
#include "treedist/minors.hpp"
#include "treedist/rational.hpp"
#include "treedist/version.hpp"

namespace treedist {
namespace io {

/* Edge list: one edge per line as "<label> <label> <length>", lengths as
 * integers or quotients, '#' starts a comment, blank lines ignored. */
inline Tree parse_edge_list(const std::string& text) {
  std::vector<std::string> labels;
  std::vector<EdgeSpec> specs;
  auto note_label = [&](const std::string& l) {
    for (const auto& existing : labels)
      if (existing == l) return;
    labels.push_back(l);
  };

  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream fields(line);
    std::string a, b, len, extra;
    if (!(fields >> a)) continue;  // blank line
    if (!(fields >> b) || !(fields >> len))
      throw ParseError("expected '<label> <label> <length>'", line_no, 1);
    if (fields >> extra)
      throw ParseError("unexpected trailing field: " + extra, line_no, 1);
    Rational length;
    try {
      length = parse_rational(len, /*allow_decimal=*/false);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, 1);
    }
    note_label(a);
    note_label(b);
    specs.push_back({a, b, length});
  }
  if (labels.empty()) throw ParseError("no edges found", line_no == 0 ? 1 : line_no, 1);
  return build_tree(labels, specs);
}

/* The edge-list text for a tree; inverse of parse_edge_list up to layout. */
inline std::string format_edge_list(const Tree& t) {
  std::ostringstream out;
  if (t.vertex_count() == 1) out << "# single vertex: " << t.label(0) << "\n";
  for (const auto& e : t.edges())
    out << t.label(e.tail) << " " << t.label(e.head) << " " << to_string(e.length) << "\n";
  return out.str();
}

struct NewickResult {
  Tree tree;
  VertexSubset leaves;
};

namespace detail {

struct NewickNode {
  std::string name;
  Rational length;  // meaningless for the root
  std::vector<NewickNode> children;
};

class NewickParser {
public:
  explicit NewickParser(const std::string& text) : text_(text) {}

  NewickNode parse_root() {
    NewickNode root = parse_subtree(/*is_root=*/true);
    skip_space();
    if (peek() != ';') fail("expected ';'");
    ++pos_;
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters after ';'");
    return root;
  }

private:
  [[noreturn]] void fail(const std::string& msg) {
    int line = 1, col = 1;
    for (size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool length_char(char c) {
    return (c >= '0' && c <= '9') || c == '.' || c == '/' || c == '-';
  }

  std::string read_name() {
    skip_space();
    std::string name;
    while (pos_ < text_.size() && name_char(text_[pos_])) name += text_[pos_++];
    return name;
  }

  Rational read_length() {
    skip_space();
    if (peek() != ':') fail("expected ':' before a branch length");
    ++pos_;
    skip_space();
    std::string token;
    while (pos_ < text_.size() && length_char(text_[pos_])) token += text_[pos_++];
    if (token.empty()) fail("missing branch length");
    Rational length;
    try {
      length = parse_rational(token, /*allow_decimal=*/true);
    } catch (const ParseError& e) {
      fail(e.what());
    }
    if (length <= 0)
      throw NonPositiveLengthError("branch length must be positive, got " + token);
    return length;
  }

  NewickNode parse_subtree(bool is_root) {
    skip_space();
    NewickNode node;
    if (peek() == '(') {
      ++pos_;
      while (true) {
        node.children.push_back(parse_branch());
        skip_space();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
      node.name = read_name();  // may be empty; filled in later
    } else {
      node.name = read_name();
      if (node.name.empty()) fail("expected a vertex name");
    }
    if (is_root) {
      skip_space();
      if (peek() == ':') fail("the root takes no branch length");
    }
    return node;
  }

  NewickNode parse_branch() {
    NewickNode node = parse_subtree(/*is_root=*/false);
    node.length = read_length();
    return node;
  }

  const std::string& text_;
  size_t pos_ = 0;
};

inline void collect_explicit_names(const NewickNode& node, std::vector<std::string>& names) {
  for (const auto& child : node.children) collect_explicit_names(child, names);
  if (!node.name.empty()) names.push_back(node.name);
}

inline void collect_newick(const NewickNode& node, std::vector<std::string>& labels,
                           std::vector<EdgeSpec>& edges, std::vector<std::string>& names,
                           int& anonymous, int* out_index) {
  std::vector<int> child_indices(node.children.size());
  for (size_t c = 0; c < node.children.size(); ++c)
    collect_newick(node.children[c], labels, edges, names, anonymous, &child_indices[c]);
  std::string name = node.name;
  if (name.empty()) {
    do {
      name = "_i" + std::to_string(++anonymous);
    } while (std::find(names.begin(), names.end(), name) != names.end());
  }
  names.push_back(name);
  labels.push_back(name);
  for (size_t c = 0; c < node.children.size(); ++c)
    edges.push_back({name, labels[child_indices[c]], node.children[c].length});
  if (out_index != nullptr) *out_index = static_cast<int>(labels.size()) - 1;
}

}  // namespace detail

/* Rooted Newick with branch lengths: "name:length" leaves, optional internal
 * names, finite decimals or quotients as lengths.  Vertices are indexed in
 * child-before-parent completion order, the root last. */
inline NewickResult parse_newick(const std::string& text) {
  detail::NewickParser parser(text);
  detail::NewickNode root = parser.parse_root();
  std::vector<std::string> labels;
  std::vector<EdgeSpec> edges;
  std::vector<std::string> names;
  detail::collect_explicit_names(root, names);
  int anonymous = 0;
  detail::collect_newick(root, labels, edges, names, anonymous, nullptr);
  Tree tree = build_tree(labels, edges);
  VertexSubset leaves = VertexSubset::leaves(tree);
  return {std::move(tree), std::move(leaves)};
}

namespace detail {

inline void write_newick(const Tree& t, int v, int parent_edge, std::ostream& out) {
  std::vector<int> child_edges;
  for (int e : t.incident_edges(v))
    if (e != parent_edge) child_edges.push_back(e);
  if (!child_edges.empty()) {
    out << '(';
    for (size_t i = 0; i < child_edges.size(); ++i) {
      if (i > 0) out << ',';
      int e = child_edges[i];
      int w = t.edge(e).tail == v ? t.edge(e).head : t.edge(e).tail;
      write_newick(t, w, e, out);
      out << ':' << to_string(t.edge(e).length);
    }
    out << ')';
  }
  out << t.label(v);
}

}  // namespace detail

/* Newick text rooted at the given vertex (default: the last vertex, which
 * is where parse_newick puts the root). */
inline std::string serialize_newick(const Tree& t, int root = -1) {
  if (root < 0) root = t.vertex_count() - 1;
  if (root >= t.vertex_count()) throw InvalidVertexError("root index out of range");
  std::ostringstream out;
  detail::write_newick(t, root, -1, out);
  out << ';';
  return out.str();
}

/* Subset specs: "@all", "@leaves" (degree <= 1), or comma-separated labels. */
inline VertexSubset parse_subset_spec(const Tree& t, const std::string& spec) {
  if (spec == "@all") return VertexSubset::all(t);
  if (spec == "@leaves") return VertexSubset::leaves(t);
  std::vector<std::string> parts;
  std::string current;
  for (char c : spec) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current += c;
    }
  }
  parts.push_back(current);
  std::vector<std::string> cleaned;
  for (auto& p : parts)
    if (!p.empty()) cleaned.push_back(p);
  if (cleaned.empty()) throw EmptySubsetError("empty subset spec");
  return VertexSubset::of_labels(t, cleaned);
}

/* Full result of one analysis run, as shipped over the CLI. */
struct AnalysisReport {
  std::string format;  // "edgelist" or "newick"
  int vertex_count = 0;
  int edge_count = 0;
  std::string subset_spec;
  MinorReport minor;
  long long timing_us = 0;
  std::string tool_version;
  bool operator==(const AnalysisReport&) const = default;
};

inline constexpr int kSchemaVersion = 1;

inline nlohmann::ordered_json report_to_json(const AnalysisReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = {{"name", "treedist"}, {"version", r.tool_version}};
  j["input"] = {{"format", r.format},
                {"vertices", r.vertex_count},
                {"edges", r.edge_count},
                {"subset_spec", r.subset_spec}};
  j["timing_us"] = r.timing_us;

  nlohmann::ordered_json a;
  a["subset"] = r.minor.subset;
  a["sum_alpha"] = to_string(r.minor.sum_alpha);
  a["det_formula"] = to_string(r.minor.det_formula);
  a["det_direct"] = to_string(r.minor.det_direct);
  a["cof"] = to_string(r.minor.cof);
  a["kappa"] = to_string(r.minor.kappa);
  a["lambda"] = to_string(r.minor.lambda);
  a["ratio"] = to_string(r.minor.ratio);
  a["equilibrium"] = nlohmann::ordered_json::array();
  for (const auto& x : r.minor.equilibrium) a["equilibrium"].push_back(to_string(x));
  a["equilibrium_sum"] = to_string(r.minor.equilibrium_sum);
  a["f1_count"] = r.minor.f1_count;
  a["f2_count"] = r.minor.f2_count;
  a["histogram"] = nlohmann::ordered_json::array();
  for (const auto& [outdeg, bucket] : r.minor.histogram)
    a["histogram"].push_back({{"outdeg", outdeg},
                              {"count", bucket.count},
                              {"weight", to_string(bucket.weight)}});
  a["inertia"] = {{"positive", r.minor.inertia_counts.positive},
                  {"negative", r.minor.inertia_counts.negative},
                  {"zero", r.minor.inertia_counts.zero}};
  a["symanzik_psi"] = to_string(r.minor.symanzik_psi);
  a["symanzik_phi"] = to_string(r.minor.symanzik_phi);
  if (r.minor.has_bounds)
    a["bounds"] = {{"lower", to_string(r.minor.ratio_lower)},
                   {"upper", to_string(r.minor.ratio_upper)}};
  else
    a["bounds"] = nullptr;
  j["analysis"] = std::move(a);
  return j;
}

inline AnalysisReport report_from_json(const nlohmann::json& j) {
  AnalysisReport r;
  if (j.at("schema_version").get<int>() != kSchemaVersion)
    throw ParseError("unsupported schema version");
  r.tool_version = j.at("tool").at("version").get<std::string>();
  r.format = j.at("input").at("format").get<std::string>();
  r.vertex_count = j.at("input").at("vertices").get<int>();
  r.edge_count = j.at("input").at("edges").get<int>();
  r.subset_spec = j.at("input").at("subset_spec").get<std::string>();
  r.timing_us = j.at("timing_us").get<long long>();

  const auto& a = j.at("analysis");
  auto rat = [](const nlohmann::json& v) { return parse_rational(v.get<std::string>()); };
  r.minor.subset = a.at("subset").get<std::vector<std::string>>();
  r.minor.sum_alpha = rat(a.at("sum_alpha"));
  r.minor.det_formula = rat(a.at("det_formula"));
  r.minor.det_direct = rat(a.at("det_direct"));
  r.minor.cof = rat(a.at("cof"));
  r.minor.kappa = rat(a.at("kappa"));
  r.minor.lambda = rat(a.at("lambda"));
  r.minor.ratio = rat(a.at("ratio"));
  for (const auto& x : a.at("equilibrium")) r.minor.equilibrium.push_back(rat(x));
  r.minor.equilibrium_sum = rat(a.at("equilibrium_sum"));
  r.minor.f1_count = a.at("f1_count").get<long long>();
  r.minor.f2_count = a.at("f2_count").get<long long>();
  for (const auto& entry : a.at("histogram")) {
    HistogramBucket bucket;
    bucket.count = entry.at("count").get<long long>();
    bucket.weight = rat(entry.at("weight"));
    r.minor.histogram[entry.at("outdeg").get<int>()] = bucket;
  }
  r.minor.inertia_counts.positive = a.at("inertia").at("positive").get<int>();
  r.minor.inertia_counts.negative = a.at("inertia").at("negative").get<int>();
  r.minor.inertia_counts.zero = a.at("inertia").at("zero").get<int>();
  r.minor.symanzik_psi = rat(a.at("symanzik_psi"));
  r.minor.symanzik_phi = rat(a.at("symanzik_phi"));
  if (!a.at("bounds").is_null()) {
    r.minor.has_bounds = true;
    r.minor.ratio_lower = rat(a.at("bounds").at("lower"));
    r.minor.ratio_upper = rat(a.at("bounds").at("upper"));
  }
  return r;
}

/* JSON schema for the analysis report, versioned alongside the format. */
inline std::string report_schema() {
  nlohmann::ordered_json rational = {{"type", "string"},
                                     {"pattern", "^-?[0-9]+(/[0-9]+)?$"},
                                     {"description", "exact rational as p or p/q"}};
  nlohmann::ordered_json schema;
  schema["$schema"] = "http://json-schema.org/draft-07/schema#";
  schema["title"] = "treedist analysis report";
  schema["type"] = "object";
  schema["required"] = {"schema_version", "tool", "input", "timing_us", "analysis"};
  schema["properties"]["schema_version"] = {{"const", kSchemaVersion}};
  schema["properties"]["tool"] = {
      {"type", "object"},
      {"required", {"name", "version"}},
      {"properties",
       {{"name", {{"const", "treedist"}}}, {"version", {{"type", "string"}}}}}};
  schema["properties"]["input"] = {
      {"type", "object"},
      {"required", {"format", "vertices", "edges", "subset_spec"}},
      {"properties",
       {{"format", {{"enum", {"edgelist", "newick"}}}},
        {"vertices", {{"type", "integer"}, {"minimum", 1}}},
        {"edges", {{"type", "integer"}, {"minimum", 0}}},
        {"subset_spec", {{"type", "string"}}}}}};
  schema["properties"]["timing_us"] = {{"type", "integer"}, {"minimum", 0}};
  nlohmann::ordered_json analysis;
  analysis["type"] = "object";
  analysis["required"] = {"subset", "sum_alpha", "det_formula", "det_direct", "cof",
                          "kappa", "lambda", "ratio", "equilibrium", "equilibrium_sum",
                          "f1_count", "f2_count", "histogram", "inertia", "symanzik_psi",
                          "symanzik_phi", "bounds"};
  analysis["properties"]["subset"] = {{"type", "array"}, {"items", {{"type", "string"}}}};
  for (const char* field : {"sum_alpha", "det_formula", "det_direct", "cof", "kappa",
                            "lambda", "ratio", "equilibrium_sum", "symanzik_psi",
                            "symanzik_phi"})
    analysis["properties"][field] = rational;
  analysis["properties"]["equilibrium"] = {{"type", "array"}, {"items", rational}};
  analysis["properties"]["f1_count"] = {{"type", "integer"}, {"minimum", 0}};
  analysis["properties"]["f2_count"] = {{"type", "integer"}, {"minimum", 0}};
  analysis["properties"]["histogram"] = {
      {"type", "array"},
      {"items",
       {{"type", "object"},
        {"required", {"outdeg", "count", "weight"}},
        {"properties",
         {{"outdeg", {{"type", "integer"}}},
          {"count", {{"type", "integer"}, {"minimum", 1}}},
          {"weight", rational}}}}}};
  analysis["properties"]["inertia"] = {
      {"type", "object"},
      {"required", {"positive", "negative", "zero"}},
      {"properties",
       {{"positive", {{"type", "integer"}, {"minimum", 0}}},
        {"negative", {{"type", "integer"}, {"minimum", 0}}},
        {"zero", {{"type", "integer"}, {"minimum", 0}}}}}};
  analysis["properties"]["bounds"] = {
      {"oneOf",
       {{{"type", "null"}},
        {{"type", "object"},
         {"required", {"lower", "upper"}},
         {"properties", {{"lower", rational}, {"upper", rational}}}}}}};
  schema["properties"]["analysis"] = std::move(analysis);
  return schema.dump(2) + "\n";
}

}  // namespace io
}  // namespace treedist
