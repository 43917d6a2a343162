#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ring_atlas/arith.hpp"
#include "ring_atlas/isomorphism.hpp"
#include "ring_atlas/ring.hpp"
#include "ring_atlas/structure.hpp"
#include "ring_atlas/units.hpp"

namespace ring_atlas {

/// The six ring families of the cyclic-Sylow classification, in matching order.
enum class Family { Zpa, Zpa_plus_fields, T2, T2_plus_fields, M2, M2_plus_fields };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Zpa: return "Zpa";
    case Family::Zpa_plus_fields: return "Zpa_plus_fields";
    case Family::T2: return "T2";
    case Family::T2_plus_fields: return "T2_plus_fields";
    case Family::M2: return "M2";
    case Family::M2_plus_fields: return "M2_plus_fields";
  }
  return "?";
}

inline std::optional<Family> family_from_string(std::string_view s) {
  for (Family f : {Family::Zpa, Family::Zpa_plus_fields, Family::T2, Family::T2_plus_fields, Family::M2,
                   Family::M2_plus_fields})
    if (s == to_string(f)) return f;
  return std::nullopt;
}

inline bool has_field_summands(Family f) {
  return f == Family::Zpa_plus_fields || f == Family::T2_plus_fields || f == Family::M2_plus_fields;
}

inline bool has_alpha(Family f) { return f == Family::Zpa || f == Family::Zpa_plus_fields; }

/// Z_{p^alpha}, M_2(GF(p)) or T_2(GF(2)), optionally plus GF(p^{n_i}) summands.
/// `alpha` is meaningful for the Z families only; `degrees` stays sorted.
struct CanonicalTypeDescriptor {
  Family family = Family::Zpa;
  std::uint64_t p = 2;
  unsigned alpha = 0;
  std::vector<unsigned> degrees;

  bool operator==(const CanonicalTypeDescriptor&) const = default;
};

/// Empty when the descriptor is well formed, otherwise the violated rule.
inline std::string descriptor_problem(const CanonicalTypeDescriptor& d) {
  if (!is_prime(d.p)) return "p must be prime";
  if ((d.family == Family::T2 || d.family == Family::T2_plus_fields) && d.p != 2) return "T2 families need p = 2";
  if (has_alpha(d.family)) {
    if (d.alpha < 1) return "alpha must be positive";
    if (d.p == 2 && d.alpha > 2) return "alpha <= 2 when p = 2";
  } else if (d.alpha != 0) {
    return "alpha only applies to the Z families";
  }
  if (has_field_summands(d.family) == d.degrees.empty())
    return has_field_summands(d.family) ? "field-summand family needs at least one degree" : "family takes no degrees";
  if (std::ranges::any_of(d.degrees, [](unsigned n) { return n == 0; })) return "degrees must be positive";
  if (!std::ranges::is_sorted(d.degrees)) return "degrees must be sorted";
  return {};
}

/// Exponent of p in the realized order.
inline unsigned descriptor_beta(const CanonicalTypeDescriptor& d) {
  unsigned beta = 0;
  switch (d.family) {
    case Family::Zpa:
    case Family::Zpa_plus_fields: beta = d.alpha; break;
    case Family::T2:
    case Family::T2_plus_fields: beta = 3; break;
    case Family::M2:
    case Family::M2_plus_fields: beta = 4; break;
  }
  for (unsigned n : d.degrees) beta += n;
  return beta;
}

/// Realized order, or nullopt if it does not fit in 64 bits.
inline std::optional<std::uint64_t> realized_order(const CanonicalTypeDescriptor& d) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < descriptor_beta(d); ++i) {
    if (out > UINT64_MAX / d.p) return std::nullopt;
    out *= d.p;
  }
  return out;
}

inline std::string to_string(const CanonicalTypeDescriptor& d) {
  std::string s = std::string(to_string(d.family)) + "(p=" + std::to_string(d.p);
  if (has_alpha(d.family)) s += ",alpha=" + std::to_string(d.alpha);
  if (!d.degrees.empty()) {
    s += ",degrees=[";
    for (std::size_t i = 0; i < d.degrees.size(); ++i) s += (i ? "," : "") + std::to_string(d.degrees[i]);
    s += "]";
  }
  return s + ")";
}

inline FiniteRing canonical_ring(const CanonicalTypeDescriptor& d) {
  if (auto problem = descriptor_problem(d); !problem.empty())
    fail(ErrorKind::invalid_parameter, "bad descriptor " + to_string(d) + ": " + problem);
  auto order = realized_order(d);
  if (!order || *order > order_cap())
    fail(ErrorKind::resource_limit, "descriptor " + to_string(d) + " exceeds the order cap");
  std::vector<FiniteRing> parts;
  switch (d.family) {
    case Family::Zpa:
    case Family::Zpa_plus_fields: parts.push_back(make_zmod(ipow(d.p, d.alpha))); break;
    case Family::T2:
    case Family::T2_plus_fields: parts.push_back(make_upper_triangular(make_galois_field(2, 1), 2)); break;
    case Family::M2:
    case Family::M2_plus_fields: parts.push_back(make_matrix_ring(make_galois_field(d.p, 1), 2)); break;
  }
  for (unsigned n : d.degrees) parts.push_back(make_galois_field(d.p, n));
  return direct_sum(parts).relabeled(to_string(d));
}

namespace detail {

/// Sorted (non-decreasing) partitions of n, lexicographic.
inline void partitions_into(unsigned n, unsigned min_part, std::vector<unsigned>& prefix,
                            std::vector<std::vector<unsigned>>& out) {
  if (n == 0) {
    out.push_back(prefix);
    return;
  }
  for (unsigned part = min_part; part <= n; ++part) {
    prefix.push_back(part);
    partitions_into(n - part, part, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<std::vector<unsigned>> sorted_partitions(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> prefix;
  if (n > 0) partitions_into(n, 1, prefix, out);
  return out;
}

}  // namespace detail

/// Every well-formed descriptor realizing order p^beta, in matching order:
/// family (Zpa, Zpa+fields, T2, T2+fields, M2, M2+fields), then alpha, then
/// degree list lexicographically.
inline std::vector<CanonicalTypeDescriptor> enumerate_descriptors(std::uint64_t p, unsigned beta) {
  if (!is_prime(p)) fail(ErrorKind::invalid_parameter, "enumerate_descriptors needs a prime");
  std::vector<CanonicalTypeDescriptor> out;
  const unsigned max_alpha = p == 2 ? 2 : beta;
  if (beta >= 1 && beta <= max_alpha) out.push_back({Family::Zpa, p, beta, {}});
  for (unsigned alpha = 1; alpha < beta && alpha <= max_alpha; ++alpha)
    for (auto& degrees : detail::sorted_partitions(beta - alpha)) out.push_back({Family::Zpa_plus_fields, p, alpha, degrees});
  if (p == 2) {
    if (beta == 3) out.push_back({Family::T2, 2, 0, {}});
    if (beta > 3)
      for (auto& degrees : detail::sorted_partitions(beta - 3)) out.push_back({Family::T2_plus_fields, 2, 0, degrees});
  }
  if (beta == 4) out.push_back({Family::M2, p, 0, {}});
  if (beta > 4)
    for (auto& degrees : detail::sorted_partitions(beta - 4)) out.push_back({Family::M2_plus_fields, p, 0, degrees});
  return out;
}

namespace detail {

/// Profiles of canonical rings, built once per descriptor.
inline const RingProfile& canonical_profile(const CanonicalTypeDescriptor& d) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<RingProfile>> cache;
  const std::string key = to_string(d);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto profile = std::make_unique<RingProfile>(canonical_ring(d));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(profile));
  return *it->second;
}

}  // namespace detail

/// Descriptor of the first canonical ring isomorphic to `a` (|a| = p^beta),
/// with the isomorphism a -> canonical_ring(descriptor).
struct DescriptorMatch {
  CanonicalTypeDescriptor descriptor;
  std::vector<index_type> witness;
};

inline std::optional<DescriptorMatch> match_descriptor(const FiniteRing& a, std::uint64_t p) {
  auto pp = prime_power(a.order());
  if (!pp || pp->first != p) return std::nullopt;
  const RingProfile profile(a);
  for (const auto& d : enumerate_descriptors(p, pp->second)) {
    if (auto phi = is_isomorphic(profile, detail::canonical_profile(d))) return DescriptorMatch{d, std::move(*phi)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Characteristic blocks

/// R = A (+) B with |A| the full p-part of |R|. Both parts come with their
/// embedding into R.
struct PrimeSplit {
  std::uint64_t p = 0;
  FiniteRing a;
  std::vector<index_type> a_embedding;
  std::optional<FiniteRing> b;  // absent when R is a p-ring
  std::vector<index_type> b_embedding;
};

namespace detail {

inline std::pair<FiniteRing, std::vector<index_type>> corner(const FiniteRing& r, index_type e, std::string label) {
  std::vector<char> mask(r.order(), 0);
  for (index_type x = 0; x < r.order(); ++x) mask[r.mul(e, x)] = 1;
  std::vector<index_type> members;
  for (index_type x = 0; x < r.order(); ++x)
    if (mask[x]) members.push_back(x);
  auto normalized = restrict_ring(r, members, e, std::move(label));
  std::vector<index_type> embedding(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) embedding[normalized.new_of_old[i]] = members[i];
  return {std::move(normalized.ring), std::move(embedding)};
}

}  // namespace detail

inline PrimeSplit split_by_prime(const FiniteRing& r, std::uint64_t p) {
  if (!is_prime(p) || r.order() % p != 0) fail(ErrorKind::invalid_parameter, "split_by_prime needs a prime dividing |R|");
  index_type ep = r.zero(), eq = r.zero();
  for (const auto& block : central_idempotent_split(r)) {
    auto pp = prime_power(block.ring.order());
    if (!pp) fail(ErrorKind::internal_error, "indecomposable block of order " + std::to_string(block.ring.order()) +
                                                 " is not of prime-power order");
    (pp->first == p ? ep : eq) = r.add(pp->first == p ? ep : eq, block.idempotent);
  }
  PrimeSplit out;
  out.p = p;
  auto [a, a_embed] = detail::corner(r, ep, "pblock(" + r.label() + ")");
  if (a.order() != p_part(r.order(), p)) fail(ErrorKind::internal_error, "p-block has the wrong order");
  out.a = std::move(a);
  out.a_embedding = std::move(a_embed);
  if (eq != r.zero()) {
    auto [b, b_embed] = detail::corner(r, eq, "coprime(" + r.label() + ")");
    out.b = std::move(b);
    out.b_embedding = std::move(b_embed);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hypothesis, membership and the classification verdict

struct HypothesisResult {
  std::uint64_t count = 0;
  bool holds = false;
};

/// Number of subgroups of order p in R*; the hypothesis is count <= 1.
inline HypothesisResult check_hypothesis(const FiniteRing& r, std::uint64_t p) {
  if (!is_prime(p) || r.order() % p != 0) fail(ErrorKind::invalid_parameter, "check_hypothesis needs a prime dividing |R|");
  const auto count = count_subgroups_of_order_p(units(r), p);
  return {count, count <= 1};
}

/// Membership in the auxiliary family: sums of order-p fields with at most one
/// extra block, which is Z_{p^m} (m >= 2, only Z_4 for p = 2) or M_2(GF(p)).
inline bool gamma_p_member(const FiniteRing& r, std::uint64_t p) {
  auto pp = prime_power(r.order());
  if (!is_prime(p) || !pp || pp->first != p) fail(ErrorKind::invalid_parameter, "gamma_p_member needs |R| a power of p");
  unsigned extra = 0;
  for (const auto& block : central_idempotent_split(r)) {
    const FiniteRing& b = block.ring;
    if (b.order() == p) continue;  // unital of prime order: GF(p)
    const bool cyclic = b.components().size() == 1;
    if (cyclic && (p != 2 || b.order() == 4)) {
      ++extra;
      continue;
    }
    if (b.order() == ipow(p, 4) && is_isomorphic(b, make_matrix_ring(make_galois_field(p, 1), 2))) {
      ++extra;
      continue;
    }
    return false;
  }
  return extra <= 1;
}

struct ClassificationReport {
  std::string label;
  std::uint64_t p = 0;
  std::uint64_t hypothesis_subgroup_count = 0;
  bool hypothesis_holds = false;
  bool sylow_cyclic = false;
  std::uint64_t p_block_order = 0;
  std::uint64_t coprime_block_order = 0;
  std::optional<CanonicalTypeDescriptor> matched;
  std::optional<std::vector<index_type>> witness;  // p-block index -> canonical ring index
  std::optional<std::string> failure_reason;
};

/// Splits off the p-block A, checks the hypothesis on the full R*, and when it
/// holds matches A against the canonical families.
inline ClassificationReport classify(const FiniteRing& r, std::uint64_t p) {
  if (!is_prime(p) || r.order() % p != 0) fail(ErrorKind::invalid_parameter, "classify needs a prime dividing |R|");
  ClassificationReport report;
  report.label = r.label();
  report.p = p;
  const auto g = units(r);
  const auto count = count_subgroups_of_order_p(g, p);
  report.hypothesis_subgroup_count = count;
  report.hypothesis_holds = count <= 1;
  report.sylow_cyclic = sylow_cyclic(g, p);
  auto split = split_by_prime(r, p);
  report.p_block_order = split.a.order();
  report.coprime_block_order = r.order() / split.a.order();
  if (!report.hypothesis_holds) return report;
  if (auto match = match_descriptor(split.a, p)) {
    report.matched = match->descriptor;
    report.witness = std::move(match->witness);
  } else {
    report.failure_reason = "counterexample: R* has " + std::to_string(count) + " subgroup(s) of order " +
                            std::to_string(p) + " but the p-block of order " + std::to_string(split.a.order()) +
                            " matches none of the canonical families";
  }
  return report;
}

/// One report per prime divisor of |R|, ascending.
inline std::vector<ClassificationReport> classify_all(const FiniteRing& r) {
  std::vector<ClassificationReport> out;
  for (std::uint64_t p : prime_divisors(r.order())) out.push_back(classify(r, p));
  return out;
}

struct TheoremCheck {
  bool passed = true;
  std::vector<ClassificationReport> reports;
};

/// Hypothesis implies a match, for every prime dividing |R|.
inline TheoremCheck verify_theorem_on(const FiniteRing& r) {
  TheoremCheck out;
  out.reports = classify_all(r);
  for (const auto& rep : out.reports)
    if (rep.hypothesis_holds && !rep.matched) out.passed = false;
  return out;
}

/// Converse direction on one descriptor: the canonical ring has cyclic Sylow
/// p-subgroups in its unit group.
inline bool canonical_has_cyclic_sylow(const CanonicalTypeDescriptor& d) {
  return sylow_cyclic(units(canonical_ring(d)), d.p);
}

}  // namespace ring_atlas
