#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ring_atlas/ring.hpp"

namespace ring_atlas {

enum class SubKind { subring, left_ideal, right_ideal, two_sided_ideal };

enum class Side { left, right, two_sided };

inline const char* to_string(SubKind kind) {
  switch (kind) {
    case SubKind::subring: return "subring";
    case SubKind::left_ideal: return "left-ideal";
    case SubKind::right_ideal: return "right-ideal";
    case SubKind::two_sided_ideal: return "two-sided-ideal";
  }
  return "unknown";
}

/// A subset of a ring's elements closed under addition, tagged with the
/// strongest closure property it was built or verified to have. Kind
/// `subring` means closed under multiplication; contains_one() tells whether
/// it is a unital subring.
struct SubStructure {
  FiniteRing parent;
  std::vector<index_type> members;  // sorted
  SubKind kind = SubKind::subring;
  std::vector<index_type> generators;

  std::size_t size() const { return members.size(); }
  bool contains(index_type x) const { return std::binary_search(members.begin(), members.end(), x); }
  bool contains_one() const { return contains(parent.one()); }
  bool is_zero() const { return members.size() == 1; }

  std::vector<char> mask() const {
    std::vector<char> m(parent.order(), 0);
    for (index_type x : members) m[x] = 1;
    return m;
  }

  bool is_subset_of(const SubStructure& other) const {
    return std::includes(other.members.begin(), other.members.end(), members.begin(), members.end());
  }
};

inline bool operator==(const SubStructure& a, const SubStructure& b) { return a.members == b.members; }

namespace detail {

inline std::vector<index_type> sorted_members(const std::vector<char>& mask) {
  std::vector<index_type> out;
  for (index_type x = 0; x < mask.size(); ++x)
    if (mask[x]) out.push_back(x);
  return out;
}

/// Closure of `seed` under addition and the requested multiplications.
/// `left` adds r*x, `right` adds x*r for every ring element r; `internal`
/// adds products of members with each other.
inline std::vector<char> closure(const FiniteRing& r, std::span<const index_type> seed, bool left, bool right,
                                 bool internal, std::vector<char> mask = {}) {
  const auto n = static_cast<index_type>(r.order());
  std::vector<index_type> list;
  if (mask.empty()) {
    mask.assign(n, 0);
  } else {
    for (index_type x = 0; x < n; ++x)
      if (mask[x]) list.push_back(x);
  }
  std::deque<index_type> queue;
  auto push = [&](index_type x) {
    if (!mask[x]) {
      mask[x] = 1;
      list.push_back(x);
      queue.push_back(x);
    }
  };
  push(r.zero());
  for (index_type s : seed) push(s);
  // Existing members of a pre-seeded mask must be re-processed against new ones;
  // handled because each new element is combined with the full member list.
  while (!queue.empty()) {
    index_type x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < list.size(); ++i) {
      index_type y = list[i];
      push(r.add(x, y));
      if (internal) {
        push(r.mul(x, y));
        push(r.mul(y, x));
      }
    }
    if (left || right)
      for (index_type t = 0; t < n; ++t) {
        if (left) push(r.mul(t, x));
        if (right) push(r.mul(x, t));
      }
  }
  return mask;
}

inline bool absorbs(const FiniteRing& r, const std::vector<index_type>& members, const std::vector<char>& mask,
                    bool left) {
  const auto n = static_cast<index_type>(r.order());
  for (index_type x : members)
    for (index_type t = 0; t < n; ++t)
      if (!mask[left ? r.mul(t, x) : r.mul(x, t)]) return false;
  return true;
}

inline bool mult_closed(const FiniteRing& r, const std::vector<index_type>& members, const std::vector<char>& mask) {
  for (index_type x : members)
    for (index_type y : members)
      if (!mask[r.mul(x, y)]) return false;
  return true;
}

/// Strongest kind an additive subgroup actually has; nullopt if it is not
/// closed under multiplication at all.
inline std::optional<SubKind> detect_kind(const FiniteRing& r, const std::vector<index_type>& members,
                                          const std::vector<char>& mask) {
  bool l = absorbs(r, members, mask, true);
  bool rt = absorbs(r, members, mask, false);
  if (l && rt) return SubKind::two_sided_ideal;
  if (l) return SubKind::left_ideal;
  if (rt) return SubKind::right_ideal;
  if (mult_closed(r, members, mask)) return SubKind::subring;
  return std::nullopt;
}

/// Greedy generator witness: walk members ascending and keep each one not
/// already in the closure of those kept so far.
inline std::vector<index_type> greedy_generators(const FiniteRing& r, const std::vector<index_type>& members,
                                                 SubKind kind) {
  bool left = kind == SubKind::left_ideal || kind == SubKind::two_sided_ideal;
  bool right = kind == SubKind::right_ideal || kind == SubKind::two_sided_ideal;
  bool internal = kind == SubKind::subring;
  std::vector<index_type> gens;
  std::vector<char> current = closure(r, {}, left, right, internal);
  std::size_t count = 1;
  for (index_type x : members) {
    if (count == members.size()) break;
    if (current[x]) continue;
    gens.push_back(x);
    current = closure(r, std::span<const index_type>(&x, 1), left, right, internal, std::move(current));
    count = static_cast<std::size_t>(std::count(current.begin(), current.end(), 1));
  }
  return gens;
}

inline SubStructure make_sub(const FiniteRing& r, std::vector<index_type> members, SubKind kind,
                             std::vector<index_type> generators) {
  return SubStructure{r, std::move(members), kind, std::move(generators)};
}

}  // namespace detail

/// Least ideal of the given sidedness containing S.
inline SubStructure ideal_generated(const FiniteRing& r, std::span<const index_type> s, Side side) {
  bool left = side != Side::right;
  bool right = side != Side::left;
  auto mask = detail::closure(r, s, left, right, false);
  SubKind kind = side == Side::left    ? SubKind::left_ideal
                 : side == Side::right ? SubKind::right_ideal
                                       : SubKind::two_sided_ideal;
  return detail::make_sub(r, detail::sorted_members(mask), kind, {s.begin(), s.end()});
}

inline SubStructure ideal_generated(const FiniteRing& r, std::initializer_list<index_type> s, Side side) {
  return ideal_generated(r, std::span<const index_type>(s.begin(), s.size()), side);
}

/// Builds a SubStructure from an explicit member set, detecting its kind.
/// Fails if the set is not an additive subgroup closed under multiplication.
inline SubStructure substructure_from_members(const FiniteRing& r, std::vector<index_type> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<char> mask(r.order(), 0);
  for (index_type x : members) mask[x] = 1;
  if (members.empty() || !mask[r.zero()]) fail(ErrorKind::invalid_parameter, "subset does not contain zero");
  for (index_type x : members)
    for (index_type y : members)
      if (!mask[r.add(x, y)]) fail(ErrorKind::invalid_parameter, "subset is not closed under addition");
  auto kind = detail::detect_kind(r, members, mask);
  if (!kind) fail(ErrorKind::invalid_parameter, "subset is not closed under multiplication");
  auto gens = detail::greedy_generators(r, members, *kind);
  return detail::make_sub(r, std::move(members), *kind, std::move(gens));
}

/// J(R) = { x : 1 - r x is a unit for every r }.
inline SubStructure jacobson_radical(const FiniteRing& r) {
  const auto n = static_cast<index_type>(r.order());
  const auto unit = unit_mask(r);
  std::vector<index_type> members;
  for (index_type x = 0; x < n; ++x) {
    bool quasi_regular = true;
    for (index_type t = 0; t < n && quasi_regular; ++t) quasi_regular = unit[r.sub(r.one(), r.mul(t, x))];
    if (quasi_regular) members.push_back(x);
  }
  auto gens = detail::greedy_generators(r, members, SubKind::two_sided_ideal);
  return detail::make_sub(r, std::move(members), SubKind::two_sided_ideal, std::move(gens));
}

/// Left: {x : x a = 0}. Right: {x : a x = 0}. Two-sided: both. The kind
/// records the closure actually present; it is two-sided-ideal whenever a is
/// central, and may be weaker otherwise.
inline SubStructure annihilator(const FiniteRing& r, index_type a, Side side) {
  const auto n = static_cast<index_type>(r.order());
  std::vector<index_type> members;
  for (index_type x = 0; x < n; ++x) {
    bool in_left = r.mul(x, a) == r.zero();
    bool in_right = r.mul(a, x) == r.zero();
    bool keep = side == Side::left ? in_left : side == Side::right ? in_right : (in_left && in_right);
    if (keep) members.push_back(x);
  }
  std::vector<char> mask(n, 0);
  for (index_type x : members) mask[x] = 1;
  auto kind = detail::detect_kind(r, members, mask).value_or(SubKind::subring);
  auto gens = detail::greedy_generators(r, members, kind);
  return detail::make_sub(r, std::move(members), kind, std::move(gens));
}

/// Z(R) = { x : x r = r x for all r }.
inline SubStructure center(const FiniteRing& r) {
  const auto n = static_cast<index_type>(r.order());
  std::vector<index_type> members;
  for (index_type x = 0; x < n; ++x) {
    bool central = true;
    for (index_type t = 0; t < n && central; ++t) central = r.mul(x, t) == r.mul(t, x);
    if (central) members.push_back(x);
  }
  auto gens = detail::greedy_generators(r, members, SubKind::subring);
  return detail::make_sub(r, std::move(members), SubKind::subring, std::move(gens));
}

/// Least subring containing 1 and S, i.e. R_0[S] where R_0 is the prime subring.
inline SubStructure prime_subring_closure(const FiniteRing& r, std::span<const index_type> s) {
  std::vector<index_type> seed(s.begin(), s.end());
  seed.push_back(r.one());
  auto mask = detail::closure(r, seed, false, false, true);
  return detail::make_sub(r, detail::sorted_members(mask), SubKind::subring, {s.begin(), s.end()});
}

/// All minimal nonzero two-sided ideals. Every minimal ideal is principal,
/// so these are the inclusion-minimal ideals generated by single elements.
inline std::vector<SubStructure> minimal_ideals(const FiniteRing& r) {
  const auto n = static_cast<index_type>(r.order());
  std::vector<SubStructure> principal;
  for (index_type x = 1; x < n; ++x) {
    auto ideal = ideal_generated(r, {x}, Side::two_sided);
    ideal.generators = {x};
    if (std::ranges::find(principal, ideal) == principal.end()) principal.push_back(std::move(ideal));
  }
  std::vector<SubStructure> out;
  for (const auto& ideal : principal) {
    bool minimal = std::ranges::none_of(principal, [&](const SubStructure& other) {
      return other.size() < ideal.size() && other.is_subset_of(ideal);
    });
    if (minimal) out.push_back(ideal);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quotients

struct QuotientRing {
  FiniteRing base;
  SubStructure modulus;
  std::vector<index_type> coset_of;         // base index -> coset number
  std::vector<index_type> representatives;  // coset number -> least base index in the coset
  FiniteRing quotient;
  std::vector<index_type> projection;       // base index -> quotient index
};

inline QuotientRing quotient(const FiniteRing& r, const SubStructure& ideal) {
  const auto n = static_cast<index_type>(r.order());
  auto mask = ideal.mask();
  if (!mask[r.zero()] || !detail::absorbs(r, ideal.members, mask, true) ||
      !detail::absorbs(r, ideal.members, mask, false))
    fail(ErrorKind::invalid_parameter, "quotient needs a two-sided ideal");
  for (index_type x : ideal.members)
    for (index_type y : ideal.members)
      if (!mask[r.add(x, y)]) fail(ErrorKind::invalid_parameter, "quotient needs an additive subgroup");
  if (ideal.size() == r.order()) fail(ErrorKind::invalid_parameter, "quotient by the whole ring has no identity");

  QuotientRing q;
  q.base = r;
  q.modulus = ideal;
  q.coset_of.assign(n, n);
  for (index_type x = 0; x < n; ++x) {
    if (q.coset_of[x] != n) continue;
    auto c = static_cast<index_type>(q.representatives.size());
    q.representatives.push_back(x);
    for (index_type i : ideal.members) q.coset_of[r.add(x, i)] = c;
  }
  const auto m = static_cast<index_type>(q.representatives.size());
  std::vector<index_type> add(m * m), mul(m * m);
  for (index_type a = 0; a < m; ++a)
    for (index_type b = 0; b < m; ++b) {
      add[a * m + b] = q.coset_of[r.add(q.representatives[a], q.representatives[b])];
      mul[a * m + b] = q.coset_of[r.mul(q.representatives[a], q.representatives[b])];
    }
  auto normalized = normalize_tables(m, add, mul, q.coset_of[r.one()], r.label() + "/I", true);
  q.quotient = std::move(normalized.ring);
  q.projection.resize(n);
  for (index_type x = 0; x < n; ++x) q.projection[x] = normalized.new_of_old[q.coset_of[x]];
  return q;
}

// ---------------------------------------------------------------------------
// Central idempotents

struct CentralBlock {
  index_type idempotent = 0;
  SubStructure ideal;                // e R inside the parent
  FiniteRing ring;                   // e R as a unitary ring with identity e
  std::vector<index_type> embedding; // ring index -> parent index
};

inline std::vector<index_type> central_idempotents(const FiniteRing& r) {
  std::vector<index_type> out;
  for (index_type x : center(r).members)
    if (r.mul(x, x) == x) out.push_back(x);
  return out;
}

/// Finest decomposition of R into two-sided ideals by primitive central
/// idempotents e_1..e_k (ascending index). The e_i are orthogonal and sum to 1.
inline std::vector<CentralBlock> central_idempotent_split(const FiniteRing& r) {
  const auto idempotents = central_idempotents(r);
  std::vector<index_type> primitive;
  for (index_type e : idempotents) {
    if (e == r.zero()) continue;
    bool atom = std::ranges::none_of(idempotents, [&](index_type f) {
      return f != r.zero() && f != e && r.mul(e, f) == f;
    });
    if (atom) primitive.push_back(e);
  }
  std::vector<CentralBlock> blocks;
  for (index_type e : primitive) {
    std::vector<char> mask(r.order(), 0);
    for (index_type x = 0; x < r.order(); ++x) mask[r.mul(e, x)] = 1;
    auto members = detail::sorted_members(mask);
    auto normalized = restrict_ring(r, members, e, "block(" + r.label() + ")");
    CentralBlock block;
    block.idempotent = e;
    block.ring = std::move(normalized.ring);
    block.embedding.resize(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) block.embedding[normalized.new_of_old[i]] = members[i];
    block.ideal = detail::make_sub(r, std::move(members), SubKind::two_sided_ideal, {e});
    blocks.push_back(std::move(block));
  }
  return blocks;
}

/// All maximal two-sided ideals. A maximal ideal contains J(R) and is the
/// preimage of the complement of one simple block of R/J(R).
inline std::vector<SubStructure> maximal_ideals(const FiniteRing& r) {
  auto radical = jacobson_radical(r);
  auto q = quotient(r, radical);
  auto blocks = central_idempotent_split(q.quotient);
  std::vector<SubStructure> out;
  for (const auto& block : blocks) {
    index_type complement = q.quotient.sub(q.quotient.one(), block.idempotent);
    std::vector<index_type> members;
    for (index_type x = 0; x < r.order(); ++x) {
      index_type image = q.projection[x];
      if (q.quotient.mul(complement, image) == image) members.push_back(x);
    }
    auto gens = detail::greedy_generators(r, members, SubKind::two_sided_ideal);
    out.push_back(detail::make_sub(r, std::move(members), SubKind::two_sided_ideal, std::move(gens)));
  }
  std::ranges::sort(out, [](const SubStructure& a, const SubStructure& b) { return a.members < b.members; });
  return out;
}

/// Every two-sided ideal of R contained in `bound` (all ideals when bound is
/// R itself), found by adjoining one element at a time.
inline std::vector<SubStructure> ideals_within(const FiniteRing& r, const SubStructure& bound) {
  std::vector<std::vector<char>> seen;
  std::vector<SubStructure> out;
  std::deque<std::vector<char>> queue;
  auto zero = detail::closure(r, {}, true, true, false);
  seen.push_back(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    auto current = queue.front();
    queue.pop_front();
    auto members = detail::sorted_members(current);
    out.push_back(detail::make_sub(r, members, SubKind::two_sided_ideal, {}));
    for (index_type x : bound.members) {
      if (current[x]) continue;
      auto next = detail::closure(r, std::span<const index_type>(&x, 1), true, true, false, current);
      if (std::ranges::find(seen, next) == seen.end()) {
        seen.push_back(next);
        queue.push_back(std::move(next));
      }
    }
  }
  std::ranges::sort(out, [](const SubStructure& a, const SubStructure& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.members < b.members;
  });
  for (auto& ideal : out) ideal.generators = detail::greedy_generators(r, ideal.members, SubKind::two_sided_ideal);
  return out;
}

/// Whether the ideal I satisfies I^k = 0 for some k (products of k members).
inline bool is_nilpotent_ideal(const FiniteRing& r, const SubStructure& ideal) {
  std::vector<char> power = ideal.mask();
  for (std::size_t step = 0; step <= r.order(); ++step) {
    auto members = detail::sorted_members(power);
    if (members.size() == 1) return true;
    // Next power: additive span of products p * i.
    std::vector<index_type> products;
    for (index_type p : members)
      for (index_type i : ideal.members) products.push_back(r.mul(p, i));
    auto next = detail::closure(r, products, false, false, false);
    if (next == power) return false;
    power = std::move(next);
  }
  return false;
}

}  // namespace ring_atlas
