// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "treedist/treedist.hpp"

namespace {

std::string read_input(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw treedist::ParseError("cannot open " + path);
    buffer << file.rdbuf();
  }
  return buffer.str();
}

treedist::Tree load_tree(const std::string& path, const std::string& format) {
  std::string text = read_input(path);
  if (format == "newick") return treedist::io::parse_newick(text).tree;
  return treedist::io::parse_edge_list(text);
}

int cmd_analyze(const std::string& path, const std::string& format,
                const std::string& subset_spec) {
  treedist::Tree tree = load_tree(path, format);
  treedist::VertexSubset s = treedist::io::parse_subset_spec(tree, subset_spec);

  auto start = std::chrono::steady_clock::now();
  treedist::MinorReport minor = treedist::compute_minor_report(tree, s);
  auto stop = std::chrono::steady_clock::now();

  treedist::io::AnalysisReport report;
  report.format = format;
  report.vertex_count = tree.vertex_count();
  report.edge_count = tree.edge_count();
  report.subset_spec = subset_spec;
  report.minor = std::move(minor);
  report.timing_us =
      std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();
  report.tool_version = treedist::kVersionString;
  std::cout << treedist::io::report_to_json(report).dump(2) << "\n";
  return 0;
}

int cmd_forests(const std::string& path, const std::string& format,
                const std::string& subset_spec, const std::string& kind_name) {
  treedist::Tree tree = load_tree(path, format);
  treedist::VertexSubset s = treedist::io::parse_subset_spec(tree, subset_spec);
  treedist::ForestKind kind = kind_name == "f1" ? treedist::ForestKind::SRooted
                                                : treedist::ForestKind::SStarRooted;
  treedist::ForestFamily family = treedist::enumerate_forests(tree, s, kind);

  nlohmann::ordered_json j;
  j["schema_version"] = treedist::io::kSchemaVersion;
  j["tool"] = {{"name", "treedist"}, {"version", treedist::kVersionString}};
  j["kind"] = kind_name;
  j["subset"] = s.labels(tree);
  j["count"] = family.forests.size();
  j["forests"] = nlohmann::ordered_json::array();
  for (const auto& f : family.forests) {
    nlohmann::ordered_json entry;
    entry["edges"] = nlohmann::ordered_json::array();
    for (int e : f.edges)
      entry["edges"].push_back({{"tail", tree.label(tree.edge(e).tail)},
                                {"head", tree.label(tree.edge(e).head)},
                                {"length", treedist::to_string(tree.edge(e).length)}});
    entry["weight"] = treedist::to_string(treedist::forest_weight(f));
    entry["outdegrees"] = nlohmann::ordered_json::object();
    for (int root : f.root_of_component)
      if (root >= 0)
        entry["outdegrees"][tree.label(root)] = treedist::outdegree(tree, f, root);
    if (kind == treedist::ForestKind::SStarRooted)
      entry["floating_outdeg"] = treedist::outdegree_star(tree, f);
    j["forests"].push_back(std::move(entry));
  }
  if (kind == treedist::ForestKind::SStarRooted) {
    j["histogram"] = nlohmann::ordered_json::array();
    for (const auto& [outdeg, bucket] : treedist::outdegree_histogram(tree, s))
      j["histogram"].push_back({{"outdeg", outdeg},
                                {"count", bucket.count},
                                {"weight", treedist::to_string(bucket.weight)}});
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const treedist::VerifyOptions& options) {
  treedist::VerifySummary summary = treedist::run_verification(options, &std::cerr);

  nlohmann::ordered_json j;
  j["schema_version"] = treedist::io::kSchemaVersion;
  j["tool"] = {{"name", "treedist"}, {"version", treedist::kVersionString}};
  j["options"] = {{"exhaustive_n", options.exhaustive_n},
                  {"random_count", options.random_count},
                  {"seed", options.seed},
                  {"random_max_n", options.random_max_n},
                  {"random_max_len", options.random_max_len}};
  j["families"] = nlohmann::ordered_json::array();
  for (const auto& f : summary.families) {
    nlohmann::ordered_json entry = {{"name", f.name},
                                    {"instances", f.instances},
                                    {"failures", f.failures}};
    if (f.failures > 0) entry["first_counterexample"] = f.first_counterexample;
    j["families"].push_back(std::move(entry));
  }
  j["total_instances"] = summary.total_instances();
  j["total_failures"] = summary.total_failures();
  j["all_passed"] = summary.all_passed();
  std::cout << j.dump(2) << "\n";
  return summary.all_passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact principal minors of tree distance matrices"};
  app.set_version_flag("--version", treedist::kVersionString);
  app.require_subcommand(0, 1);
  bool schema = false;
  app.add_flag("--schema", schema, "print the JSON report schema and exit");

  std::string analyze_path, analyze_format = "edgelist", analyze_subset = "@all";
  CLI::App* analyze = app.add_subcommand(
      "analyze", "compute the full exact report for one tree and subset");
  analyze->add_option("input", analyze_path, "input file, or - for stdin")->required();
  analyze->add_option("--format", analyze_format, "input format")
      ->check(CLI::IsMember({"edgelist", "newick"}));
  analyze->add_option("--subset", analyze_subset,
                      "comma-separated labels, @all, or @leaves");

  std::string forests_path, forests_format = "edgelist", forests_subset = "@all",
              forests_kind;
  CLI::App* forests =
      app.add_subcommand("forests", "list one rooted spanning forest family");
  forests->add_option("input", forests_path, "input file, or - for stdin")->required();
  forests->add_option("--format", forests_format, "input format")
      ->check(CLI::IsMember({"edgelist", "newick"}));
  forests->add_option("--subset", forests_subset,
                      "comma-separated labels, @all, or @leaves");
  forests->add_option("--kind", forests_kind, "family to list")
      ->check(CLI::IsMember({"f1", "f2"}))
      ->required();

  treedist::VerifyOptions verify_options;
  CLI::App* verify =
      app.add_subcommand("verify", "run the identity suite over a tree corpus");
  verify->add_option("--exhaustive-n", verify_options.exhaustive_n,
                     "check all labeled trees up to this many vertices")
      ->check(CLI::Range(1, 7));
  verify->add_option("--random", verify_options.random_count,
                     "number of extra random weighted instances")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", verify_options.seed, "random corpus seed");
  verify->add_option("--max-n", verify_options.random_max_n,
                     "largest random instance size")
      ->check(CLI::Range(2, 62));
  verify->add_option("--max-len", verify_options.random_max_len,
                     "largest numerator/denominator drawn for random lengths")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (schema) {
      std::cout << treedist::io::report_schema();
      return 0;
    }
    if (analyze->parsed()) return cmd_analyze(analyze_path, analyze_format, analyze_subset);
    if (forests->parsed())
      return cmd_forests(forests_path, forests_format, forests_subset, forests_kind);
    if (verify->parsed()) return cmd_verify(verify_options);
    std::cerr << app.help();
    return 1;
  } catch (const treedist::IdentityViolationError& e) {
    std::cerr << "identity violation: " << e.what() << "\n";
    return 2;
  } catch (const treedist::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
