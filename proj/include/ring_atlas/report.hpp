#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ring_atlas/classify.hpp"
#include "ring_atlas/enumerator.hpp"
#include "ring_atlas/structure.hpp"
#include "ring_atlas/sweep.hpp"
#include "ring_atlas/units.hpp"
#include "ring_atlas/wedderburn.hpp"

namespace ring_atlas {

inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::ordered_json;

struct SylowData {
  std::uint64_t p = 0;
  std::uint64_t order = 0;
  std::uint64_t subgroups_of_order_p = 0;
  bool cyclic = false;
  bool generalized_quaternion = false;  // only ever true for p = 2
};

/// Everything `analyze` reports about one ring.
struct RingAnalysis {
  std::string label;
  std::uint64_t order = 0;
  std::vector<index_type> components;
  std::uint64_t characteristic = 0;
  bool commutative = false;
  std::vector<index_type> jacobson;
  std::vector<MatrixBlock> semisimple_blocks;  // Wedderburn blocks of R/J(R)
  std::uint64_t minimal_ideals = 0;
  std::uint64_t maximal_ideals = 0;
  std::uint64_t center_size = 0;
  std::uint64_t unit_count = 0;
  std::map<std::uint64_t, std::uint64_t> unit_order_profile;
  std::uint64_t involutions = 0;
  std::vector<SylowData> sylow;  // one per prime dividing |R*|
};

inline RingAnalysis analyze(const FiniteRing& r) {
  RingAnalysis a;
  a.label = r.label();
  a.order = r.order();
  a.components.assign(r.components().begin(), r.components().end());
  a.characteristic = characteristic(r);
  a.commutative = is_commutative(r);
  const auto j = jacobson_radical(r);
  a.jacobson = j.members;
  a.semisimple_blocks = wedderburn_blocks(quotient(r, j).quotient);
  a.minimal_ideals = minimal_ideals(r).size();
  a.maximal_ideals = maximal_ideals(r).size();
  a.center_size = center(r).size();
  const auto g = units(r);
  a.unit_count = g.size();
  a.unit_order_profile = g.order_profile();
  a.involutions = involution_count(g);
  if (g.size() > 1)
    for (std::uint64_t p : prime_divisors(g.size())) {
      const auto s = sylow_subgroup(g, p);
      a.sylow.push_back({p, s.size(), count_subgroups_of_order_p(g, p), is_cyclic(s),
                         p == 2 && is_generalized_quaternion(s)});
    }
  return a;
}

// ---------------------------------------------------------------------------
// JSON

inline Json table_json(const FiniteRing& r) {
  const auto n = static_cast<index_type>(r.order());
  Json add = Json::array(), mul = Json::array();
  for (index_type a = 0; a < n; ++a) {
    Json add_row = Json::array(), mul_row = Json::array();
    for (index_type b = 0; b < n; ++b) {
      add_row.push_back(r.add(a, b));
      mul_row.push_back(r.mul(a, b));
    }
    add.push_back(std::move(add_row));
    mul.push_back(std::move(mul_row));
  }
  return Json{{"order", n}, {"add", std::move(add)}, {"mul", std::move(mul)}, {"one", r.one()}};
}

inline Json to_json(const RingAnalysis& a) {
  Json profile = Json::array();
  for (auto [k, count] : a.unit_order_profile) profile.push_back({{"order", k}, {"count", count}});
  Json blocks = Json::array();
  for (const auto& b : a.semisimple_blocks) blocks.push_back({{"n", b.n}, {"q", b.q}});
  Json sylow = Json::array();
  for (const auto& s : a.sylow)
    sylow.push_back({{"p", s.p},
                     {"order", s.order},
                     {"subgroups_of_order_p", s.subgroups_of_order_p},
                     {"cyclic", s.cyclic},
                     {"generalized_quaternion", s.generalized_quaternion}});
  return Json{{"ring",
               {{"label", a.label},
                {"order", a.order},
                {"additive_components", a.components},
                {"characteristic", a.characteristic},
                {"commutative", a.commutative}}},
              {"structure",
               {{"jacobson_radical", {{"size", a.jacobson.size()}, {"members", a.jacobson}}},
                {"semisimple_quotient", std::move(blocks)},
                {"minimal_ideals", a.minimal_ideals},
                {"maximal_ideals", a.maximal_ideals},
                {"center_size", a.center_size}}},
              {"unit_group",
               {{"order", a.unit_count},
                {"element_orders", std::move(profile)},
                {"involutions", a.involutions},
                {"sylow", std::move(sylow)}}}};
}

inline Json to_json(const CanonicalTypeDescriptor& d) {
  Json out{{"family", to_string(d.family)}, {"p", d.p}};
  if (has_alpha(d.family)) out["alpha"] = d.alpha;
  if (has_field_summands(d.family)) out["degrees"] = d.degrees;
  out["name"] = to_string(d);
  return out;
}

inline Json to_json(const ClassificationReport& c) {
  Json out{{"label", c.label},
           {"p", c.p},
           {"hypothesis_subgroup_count", c.hypothesis_subgroup_count},
           {"hypothesis_holds", c.hypothesis_holds},
           {"sylow_cyclic", c.sylow_cyclic},
           {"p_block_order", c.p_block_order},
           {"coprime_block_order", c.coprime_block_order},
           {"matched", c.matched ? to_json(*c.matched) : Json(nullptr)},
           {"witness", c.witness ? Json(*c.witness) : Json(nullptr)},
           {"failure_reason", c.failure_reason ? Json(*c.failure_reason) : Json(nullptr)}};
  return out;
}

inline std::uint64_t noncommutative_count(const std::vector<FiniteRing>& rings) {
  std::uint64_t k = 0;
  for (const auto& r : rings) k += !is_commutative(r);
  return k;
}

inline Json census_json(std::uint64_t order, bool dedupe, const EnumerationResult& result) {
  Json groups = Json::array();
  for (const auto& g : result.groups)
    groups.push_back({{"additive_group", g.components}, {"structures", g.structures}, {"classes", g.classes}});
  Json rings = Json::array();
  for (const auto& r : result.rings) rings.push_back({{"label", r.label()}, {"commutative", is_commutative(r)}});
  return Json{{"order", order},
              {"dedupe", dedupe},
              {"groups", std::move(groups)},
              {"total", result.rings.size()},
              {"noncommutative", noncommutative_count(result.rings)},
              {"search_nodes", result.nodes},
              {"rings", std::move(rings)}};
}

inline Json to_json(const SweepReport& s) {
  Json outcomes = Json::array();
  for (const auto& o : s.outcomes) {
    Json violations = Json::array();
    for (const auto& v : o.violations)
      violations.push_back({{"label", v.ring.label()},
                            {"additive_components", std::vector<index_type>(v.ring.components().begin(), v.ring.components().end())},
                            {"detail", v.detail},
                            {"table", table_json(v.ring)}});
    outcomes.push_back({{"property", to_string(o.property)},
                        {"checked", o.checked},
                        {"excluded", o.excluded},
                        {"passed", o.violations.empty()},
                        {"violations", std::move(violations)}});
  }
  return Json{{"orders", s.orders}, {"rings", s.rings}, {"passed", s.passed()}, {"properties", std::move(outcomes)}};
}

/// Top-level document: schema version, the command and its input, then the body.
inline Json report_document(const std::string& command, Json input, Json body) {
  Json doc{{"schema_version", kReportSchemaVersion}, {"command", command}, {"input", std::move(input)}};
  for (auto& [key, value] : body.items()) doc[key] = std::move(value);
  return doc;
}

// ---------------------------------------------------------------------------
// Human-readable summaries

namespace detail {

template <class Range>
std::string join(const Range& xs, const char* sep = ", ") {
  std::ostringstream out;
  bool first = true;
  for (const auto& x : xs) {
    out << (first ? "" : sep) << x;
    first = false;
  }
  return out.str();
}

inline std::string group_name(std::span<const index_type> comps) {
  if (comps.empty()) return "0";
  std::string s;
  for (auto c : comps) s += (s.empty() ? "Z" : " x Z") + std::to_string(c);
  return s;
}

}  // namespace detail

inline std::string format_analysis(const RingAnalysis& a) {
  std::ostringstream out;
  out << "ring " << a.label << "\n";
  out << "  order " << a.order << ", additive group " << detail::group_name(a.components) << ", characteristic "
      << a.characteristic << ", " << (a.commutative ? "commutative" : "noncommutative") << "\n";
  out << "  |J(R)| = " << a.jacobson.size() << ", members {" << detail::join(a.jacobson) << "}\n";
  out << "  R/J(R) = ";
  for (std::size_t i = 0; i < a.semisimple_blocks.size(); ++i) {
    const auto& b = a.semisimple_blocks[i];
    out << (i ? " + " : "") << (b.n == 1 ? "GF(" + std::to_string(b.q) + ")"
                                          : "M" + std::to_string(b.n) + "(GF(" + std::to_string(b.q) + "))");
  }
  out << "\n";
  out << "  minimal ideals " << a.minimal_ideals << ", maximal ideals " << a.maximal_ideals << ", |Z(R)| = "
      << a.center_size << "\n";
  out << "  |R*| = " << a.unit_count << ", involutions " << a.involutions << ", element orders";
  for (auto [k, count] : a.unit_order_profile) out << " " << k << ":" << count;
  out << "\n";
  for (const auto& s : a.sylow)
    out << "  Sylow " << s.p << ": order " << s.order << ", " << (s.cyclic ? "cyclic" : "not cyclic")
        << (s.generalized_quaternion ? ", generalized quaternion" : "") << ", subgroups of order " << s.p << ": "
        << s.subgroups_of_order_p << "\n";
  return out.str();
}

inline std::string format_classification(const ClassificationReport& c) {
  std::ostringstream out;
  out << "classify " << c.label << " at p = " << c.p << "\n";
  out << "  subgroups of order " << c.p << " in R*: " << c.hypothesis_subgroup_count << " (hypothesis "
      << (c.hypothesis_holds ? "holds" : "fails") << ")\n";
  out << "  Sylow " << c.p << "-subgroup " << (c.sylow_cyclic ? "cyclic" : "not cyclic") << "\n";
  out << "  R = A + B with |A| = " << c.p_block_order << ", |B| = " << c.coprime_block_order << "\n";
  if (c.matched) out << "  A matches " << to_string(*c.matched) << "\n";
  if (c.failure_reason) out << "  " << *c.failure_reason << "\n";
  return out.str();
}

inline std::string format_census(std::uint64_t order, bool dedupe, const EnumerationResult& result) {
  std::ostringstream out;
  out << "unital rings of order " << order << (dedupe ? " up to isomorphism" : " (labelled structures)") << "\n";
  for (const auto& g : result.groups)
    out << "  " << detail::group_name(g.components) << ": " << (dedupe ? g.classes : g.structures) << "\n";
  out << "total " << result.rings.size() << ", noncommutative " << noncommutative_count(result.rings) << "\n";
  return out.str();
}

inline std::string format_sweep(const SweepReport& s) {
  std::ostringstream out;
  out << "swept " << s.rings << " rings of orders " << detail::join(s.orders) << "\n";
  for (const auto& o : s.outcomes) {
    out << "  " << to_string(o.property) << ": " << (o.violations.empty() ? "ok" : "VIOLATED") << " (checked "
        << o.checked << ", excluded " << o.excluded << ", violations " << o.violations.size() << ")\n";
    for (const auto& v : o.violations) out << "    " << v.ring.label() << ": " << v.detail << "\n";
  }
  out << (s.passed() ? "all properties hold\n" : "counterexamples found\n");
  return out.str();
}

}  // namespace ring_atlas
