#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ring_atlas/classify.hpp"
#include "ring_atlas/enumerator.hpp"
#include "ring_atlas/structure.hpp"
#include "ring_atlas/units.hpp"

namespace ring_atlas {

enum class SweepProperty {
  quotient_units,        // (R/I)* = image of R* for ideals I inside J(R)
  direct_sum_units,      // R* splits along the central idempotent blocks
  odd_order_generation,  // odd |R|: the prime subring and R* generate R
  single_involution,     // |R| = 2^b with one involution: Sylow 2 is cyclic
  minimal_ideal,         // minimal I in J(R): I^2 = 0, char p, 1 + I elementary abelian
  main_theorem,          // hypothesis implies a canonical match
};

inline constexpr SweepProperty kAllSweepProperties[] = {
    SweepProperty::quotient_units,    SweepProperty::direct_sum_units, SweepProperty::odd_order_generation,
    SweepProperty::single_involution, SweepProperty::minimal_ideal,    SweepProperty::main_theorem};

inline const char* to_string(SweepProperty p) {
  switch (p) {
    case SweepProperty::quotient_units: return "quotient-units";
    case SweepProperty::direct_sum_units: return "direct-sum-units";
    case SweepProperty::odd_order_generation: return "odd-order-generation";
    case SweepProperty::single_involution: return "single-involution";
    case SweepProperty::minimal_ideal: return "minimal-ideal";
    case SweepProperty::main_theorem: return "main-theorem";
  }
  return "?";
}

/// Result of one property on one ring. `applicable` false means the
/// property's guard excluded the ring.
struct PropertyVerdict {
  bool applicable = true;
  bool ok = true;
  std::string detail;
};

namespace detail {

inline PropertyVerdict violated(std::string detail) { return {true, false, std::move(detail)}; }

inline bool is_unit_in(const FiniteRing& r, index_type x) {
  for (index_type y = 0; y < r.order(); ++y)
    if (r.mul(x, y) == r.one() && r.mul(y, x) == r.one()) return true;
  return false;
}

}  // namespace detail

inline PropertyVerdict check_quotient_units(const FiniteRing& r) {
  const auto j = jacobson_radical(r);
  const auto g = units(r);
  for (const auto& ideal : ideals_within(r, j)) {
    auto q = quotient(r, ideal);
    std::vector<index_type> image;
    for (index_type u : g.elements()) image.push_back(q.projection[u]);
    std::ranges::sort(image);
    image.erase(std::unique(image.begin(), image.end()), image.end());
    const auto gq = units(q.quotient);
    std::vector<index_type> target(gq.elements().begin(), gq.elements().end());
    if (image != target)
      return detail::violated("ideal of order " + std::to_string(ideal.size()) + ": |(R/I)*| = " +
                              std::to_string(target.size()) + " but R* projects onto " + std::to_string(image.size()));
  }
  return {};
}

inline PropertyVerdict check_direct_sum_units(const FiniteRing& r) {
  const auto blocks = central_idempotent_split(r);
  index_type sum = r.zero();
  std::uint64_t product = 1;
  std::vector<std::vector<index_type>> local(blocks.size(), std::vector<index_type>(r.order(), 0));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    sum = r.add(sum, blocks[i].idempotent);
    product *= units(blocks[i].ring).size();
    for (index_type k = 0; k < blocks[i].embedding.size(); ++k) local[i][blocks[i].embedding[k]] = k;
  }
  if (sum != r.one()) return detail::violated("block idempotents do not sum to 1");
  const auto g = units(r);
  if (g.size() != product)
    return detail::violated("|R*| = " + std::to_string(g.size()) + " but the blocks give " + std::to_string(product));
  for (index_type u : g.elements())
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const index_type part = local[i][r.mul(blocks[i].idempotent, u)];
      if (!detail::is_unit_in(blocks[i].ring, part))
        return detail::violated("unit " + std::to_string(u) + " has a non-unit block component");
    }
  return {};
}

inline PropertyVerdict check_odd_order_generation(const FiniteRing& r) {
  if (r.order() % 2 == 0) return {false, true, "even order"};
  const auto g = units(r);
  const auto closure = prime_subring_closure(r, g.elements());
  if (closure.size() != r.order())
    return detail::violated("prime subring and units generate only " + std::to_string(closure.size()) + " elements");
  return {};
}

inline PropertyVerdict check_single_involution(const FiniteRing& r) {
  if (!is_power_of(r.order(), 2)) return {false, true, "order is not a power of 2"};
  const auto g = units(r);
  if (involution_count(g) != 1) return {false, true, "involution count is not 1"};
  if (!sylow_cyclic(g, 2)) return detail::violated("one involution but the Sylow 2-subgroup is not cyclic");
  return {};
}

inline PropertyVerdict check_minimal_ideal_laws(const FiniteRing& r) {
  const auto j = jacobson_radical(r);
  if (j.size() == 1) return {false, true, "J(R) = 0"};
  for (const auto& ideal : minimal_ideals(r)) {
    if (!ideal.is_subset_of(j)) continue;
    const std::string where = "minimal ideal of order " + std::to_string(ideal.size());
    for (index_type a : ideal.members)
      for (index_type b : ideal.members)
        if (r.mul(a, b) != r.zero()) return detail::violated(where + ": I^2 != 0");
    const std::uint64_t p = additive_order(r, ideal.members[1]);
    if (!is_prime(p)) return detail::violated(where + ": nonzero element of composite additive order");
    for (index_type a : ideal.members)
      if (a != r.zero() && additive_order(r, a) != p) return detail::violated(where + ": characteristic is not prime");
    for (index_type a : ideal.members) {
      const index_type u = r.add(r.one(), a);
      if (detail::unit_power(r, u, p) != r.one()) return detail::violated(where + ": (1+a)^p != 1");
      for (index_type b : ideal.members) {
        const index_type v = r.add(r.one(), b);
        if (r.mul(u, v) != r.mul(v, u)) return detail::violated(where + ": 1 + I is not abelian");
      }
    }
  }
  return {};
}

inline PropertyVerdict check_main_theorem(const FiniteRing& r) {
  const auto check = verify_theorem_on(r);
  if (check.passed) return {};
  std::string detail;
  for (const auto& rep : check.reports)
    if (rep.failure_reason) detail += (detail.empty() ? "" : "; ") + ("p=" + std::to_string(rep.p) + ": " + *rep.failure_reason);
  return detail::violated(detail);
}

inline PropertyVerdict check_property(SweepProperty p, const FiniteRing& r) {
  switch (p) {
    case SweepProperty::quotient_units: return check_quotient_units(r);
    case SweepProperty::direct_sum_units: return check_direct_sum_units(r);
    case SweepProperty::odd_order_generation: return check_odd_order_generation(r);
    case SweepProperty::single_involution: return check_single_involution(r);
    case SweepProperty::minimal_ideal: return check_minimal_ideal_laws(r);
    case SweepProperty::main_theorem: return check_main_theorem(r);
  }
  fail(ErrorKind::internal_error, "unknown sweep property");
}

struct SweepOptions {
  std::uint64_t max_order = 8;            // every census ring up to this order
  std::uint64_t block_max_order = 0;      // prime-power blocks for composites; 0 = max_order
  std::uint64_t composite_max_order = 0;  // block sums with >= 2 primes up to this order; 0 = none
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  unsigned threads = 1;
  std::vector<SweepProperty> properties{std::begin(kAllSweepProperties), std::end(kAllSweepProperties)};
};

struct Counterexample {
  FiniteRing ring;
  std::string detail;
};

struct PropertyOutcome {
  SweepProperty property{};
  std::uint64_t checked = 0;
  std::uint64_t excluded = 0;
  std::vector<Counterexample> violations;
};

struct SweepReport {
  std::vector<std::uint64_t> orders;  // orders that contributed rings
  std::uint64_t rings = 0;
  std::vector<PropertyOutcome> outcomes;

  bool passed() const {
    return std::ranges::all_of(outcomes, [](const PropertyOutcome& o) { return o.violations.empty(); });
  }
};

/// The rings a sweep visits, in ascending order of |R| and census order
/// within an order.
inline std::vector<FiniteRing> sweep_rings(const SweepOptions& opt) {
  const std::uint64_t blocks = opt.block_max_order ? opt.block_max_order : opt.max_order;
  if (opt.max_order > opt.enumeration_cap || blocks > opt.enumeration_cap)
    fail(ErrorKind::resource_limit, "sweep order exceeds the enumeration cap " + std::to_string(opt.enumeration_cap));
  // Census per prime power.
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::vector<FiniteRing>>>> by_prime;
  for (std::uint64_t q = 2; q <= std::max(opt.max_order, blocks); ++q) {
    auto pp = prime_power(q);
    if (!pp) continue;
    EnumerationTask task;
    task.order = q;
    task.cap = opt.enumeration_cap;
    task.threads = opt.threads;
    by_prime[pp->first].emplace_back(q, enumerate_unital_rings(task).rings);
  }
  const std::uint64_t top = std::max(opt.max_order, opt.composite_max_order);
  // Block sums, one block per prime, keyed by total order.
  std::map<std::uint64_t, std::vector<FiniteRing>> by_order;
  struct Partial {
    std::uint64_t order;
    unsigned primes;
    std::optional<FiniteRing> ring;
  };
  std::vector<Partial> partials{{1, 0, std::nullopt}};
  for (const auto& [p, levels] : by_prime) {
    std::vector<Partial> next;
    for (const auto& base : partials) {
      next.push_back(base);
      for (const auto& [q, rings] : levels) {
        if (base.order * q > top) continue;
        if (base.primes > 0 && (q > blocks || (base.primes == 1 && base.order > blocks))) continue;
        for (const auto& r : rings) next.push_back({base.order * q, base.primes + 1, base.ring ? direct_sum(*base.ring, r) : r});
      }
    }
    partials = std::move(next);
  }
  for (auto& part : partials) {
    if (!part.ring) continue;
    const bool composite = part.primes >= 2;
    const bool wanted = part.order <= opt.max_order || (composite && part.order <= opt.composite_max_order);
    if (!wanted) continue;
    by_order[part.order].push_back(std::move(*part.ring));
  }
  std::vector<FiniteRing> out;
  for (auto& [order, rings] : by_order)
    for (auto& r : rings) out.push_back(std::move(r));
  return out;
}

inline SweepReport sweep(const SweepOptions& opt) {
  SweepReport report;
  if (opt.max_order < 2 && opt.composite_max_order < 2) {
    for (auto p : opt.properties) report.outcomes.push_back({p, 0, 0, {}});
    return report;
  }
  const auto rings = sweep_rings(opt);
  report.rings = rings.size();
  for (const auto& r : rings)
    if (report.orders.empty() || report.orders.back() != r.order()) report.orders.push_back(r.order());
  std::vector<std::vector<PropertyVerdict>> verdicts(rings.size());
  detail::parallel_for(rings.size(), opt.threads, [&](std::size_t i) {
    for (auto p : opt.properties) verdicts[i].push_back(check_property(p, rings[i]));
  });
  for (std::size_t k = 0; k < opt.properties.size(); ++k) {
    PropertyOutcome outcome{opt.properties[k], 0, 0, {}};
    for (std::size_t i = 0; i < rings.size(); ++i) {
      const auto& v = verdicts[i][k];
      if (!v.applicable) {
        ++outcome.excluded;
        continue;
      }
      ++outcome.checked;
      if (!v.ok) outcome.violations.push_back({rings[i], v.detail});
    }
    report.outcomes.push_back(std::move(outcome));
  }
  return report;
}

}  // namespace ring_atlas
