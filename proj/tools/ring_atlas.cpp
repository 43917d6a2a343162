// ring_atlas: command-line front end.
//
// Exit codes: 0 success, 1 property violation, 2 usage, input or cap error.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ring_atlas/io.hpp"
#include "ring_atlas/report.hpp"

namespace {

using namespace ring_atlas;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct GlobalFlags {
  bool json = false;
  unsigned threads = 1;
  std::optional<std::size_t> cap;
};

// The enumeration cap follows --cap (or RING_ATLAS_CAP) up to the hard maximum.
std::size_t enumeration_cap(const GlobalFlags& g) {
  if (g.cap) return std::min(*g.cap, kEnumerationHardMax);
  if (std::getenv("RING_ATLAS_CAP")) return std::min(order_cap(), kEnumerationHardMax);
  return kDefaultEnumerationCap;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_parameter, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const GlobalFlags& g, const Json& doc, const std::string& text) {
  if (g.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_analyze(const GlobalFlags& g, const std::string& path) {
  const auto text = read_text(path);
  const auto ring = parse_ring(text);
  const auto a = analyze(ring);
  emit(g, report_document("analyze", {{"path", path}, {"text", text}}, to_json(a)), format_analysis(a));
  return kExitOk;
}

int cmd_classify(const GlobalFlags& g, const std::string& path, std::optional<std::uint64_t> prime) {
  const auto text = read_text(path);
  const auto ring = parse_ring(text);
  std::vector<ClassificationReport> reports;
  if (prime)
    reports.push_back(classify(ring, *prime));
  else
    reports = classify_all(ring);
  Json list = Json::array();
  std::string summary;
  for (const auto& r : reports) {
    list.push_back(to_json(r));
    summary += format_classification(r);
  }
  Json input{{"path", path}, {"text", text}, {"prime", prime ? Json(*prime) : Json(nullptr)}};
  emit(g, report_document("classify", std::move(input), {{"classifications", std::move(list)}}), summary);
  return kExitOk;
}

std::string file_name_for(const FiniteRing& r) {
  std::string name;
  for (char c : r.label()) name += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return name + ".ring";
}

int cmd_enumerate(const GlobalFlags& g, std::uint64_t order, bool dedupe, const std::optional<std::string>& export_dir) {
  EnumerationTask task;
  task.order = order;
  task.dedupe = dedupe;
  task.cap = enumeration_cap(g);
  task.threads = g.threads;
  const auto result = enumerate_unital_rings(task);
  if (export_dir) {
    std::filesystem::create_directories(*export_dir);
    for (const auto& r : result.rings) {
      std::ofstream out(std::filesystem::path(*export_dir) / file_name_for(r));
      if (!(out << export_table(r))) fail(ErrorKind::invalid_parameter, "cannot write to " + *export_dir);
    }
  }
  Json input{{"order", order}, {"dedupe", dedupe}, {"export", export_dir ? Json(*export_dir) : Json(nullptr)}};
  emit(g, report_document("enumerate", std::move(input), {{"census", census_json(order, dedupe, result)}}),
       format_census(order, dedupe, result));
  return kExitOk;
}

int cmd_verify_theorem(const GlobalFlags& g, std::uint64_t max_order) {
  SweepOptions opt;
  opt.max_order = max_order;
  opt.block_max_order = max_order;
  // Block sums over distinct primes, each block within max_order.
  opt.composite_max_order = std::min<std::uint64_t>(max_order * max_order, order_cap());
  opt.enumeration_cap = enumeration_cap(g);
  opt.threads = g.threads;
  const auto report = sweep(opt);
  Json input{{"max_order", max_order}, {"block_max_order", opt.block_max_order}, {"composite_max_order", opt.composite_max_order}};
  emit(g, report_document("verify-theorem", std::move(input), {{"sweep", to_json(report)}}), format_sweep(report));
  return report.passed() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite unital rings: structure, unit groups and classification"};
  app.require_subcommand(1);
  GlobalFlags g;
  std::size_t cap_value = 0;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--threads", g.threads, "Worker threads for enumeration and sweeps")->check(CLI::Range(1u, 256u));
  auto* cap_opt = app.add_option("--cap", cap_value, "Ring order cap (also the enumeration cap, at most 32)")
                      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));

  std::string path;
  std::optional<std::uint64_t> prime;
  std::uint64_t order = 0, max_order = 0;
  bool dedupe = false;
  std::optional<std::string> export_dir;

  auto* analyze_cmd = app.add_subcommand("analyze", "Structure and unit-group report for a ring file");
  analyze_cmd->add_option("path", path, "Ring spec file")->required();
  analyze_cmd->fallthrough();

  auto* classify_cmd = app.add_subcommand("classify", "Classify a ring at a prime");
  classify_cmd->add_option("path", path, "Ring spec file")->required();
  classify_cmd->add_option("--prime", prime, "Prime dividing |R| (default: every prime divisor)");
  classify_cmd->fallthrough();

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Census of unital rings of one order");
  enumerate_cmd->add_option("--order", order, "Ring order")->required()->check(CLI::PositiveNumber);
  enumerate_cmd->add_flag("--dedupe", dedupe, "Keep one ring per isomorphism class");
  enumerate_cmd->add_option("--export", export_dir, "Write each ring as a raw table file into this directory");
  enumerate_cmd->fallthrough();

  auto* verify_cmd = app.add_subcommand("verify-theorem", "Sweep every checked property over small rings");
  verify_cmd->add_option("--max-order", max_order, "Largest census order")->required()->check(CLI::PositiveNumber);
  verify_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cap_opt->count() > 0) {
      set_order_cap(cap_value);
      g.cap = cap_value;
    }
    if (analyze_cmd->parsed()) return cmd_analyze(g, path);
    if (classify_cmd->parsed()) return cmd_classify(g, path, prime);
    if (enumerate_cmd->parsed()) return cmd_enumerate(g, order, dedupe, export_dir);
    if (verify_cmd->parsed()) return cmd_verify_theorem(g, max_order);
  } catch (const Error& e) {
    std::cerr << "ring_atlas: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ring_atlas: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
