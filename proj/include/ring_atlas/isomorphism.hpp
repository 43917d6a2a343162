#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "ring_atlas/ring.hpp"
#include "ring_atlas/structure.hpp"
#include "ring_atlas/units.hpp"

namespace ring_atlas {

/// Per-element isomorphism invariant. Any ring isomorphism maps an element to
/// one with an equal invariant.
struct ElementInvariant {
  std::uint64_t additive_order = 0;
  std::uint64_t unit_order = 0;       // 0 for non-units
  std::uint64_t nilpotency_index = 0; // 0 if not nilpotent
  bool idempotent = false;
  bool central = false;
  std::uint32_t left_annihilator = 0;
  std::uint32_t right_annihilator = 0;
  std::uint32_t left_principal = 0;   // |R x|
  std::uint32_t right_principal = 0;  // |x R|

  auto operator<=>(const ElementInvariant&) const = default;
};

inline std::vector<ElementInvariant> element_invariants(const FiniteRing& r) {
  const auto n = static_cast<index_type>(r.order());
  const UnitGroupView g(r);
  std::vector<ElementInvariant> out(n);
  std::vector<index_type> seen_left(n, n), seen_right(n, n);
  for (index_type x = 0; x < n; ++x) {
    ElementInvariant& inv = out[x];
    inv.additive_order = additive_order(r, x);
    inv.unit_order = g.contains(x) ? g.element_order(x) : 0;
    inv.idempotent = r.mul(x, x) == x;
    index_type power = x;
    for (std::uint64_t k = 1; k <= n; ++k) {
      if (power == r.zero()) {
        inv.nilpotency_index = k;
        break;
      }
      power = r.mul(power, x);
    }
    inv.central = true;
    for (index_type t = 0; t < n; ++t) {
      index_type tx = r.mul(t, x), xt = r.mul(x, t);
      if (tx != xt) inv.central = false;
      if (tx == r.zero()) ++inv.left_annihilator;
      if (xt == r.zero()) ++inv.right_annihilator;
      if (seen_left[tx] != x) {
        seen_left[tx] = x;
        ++inv.left_principal;
      }
      if (seen_right[xt] != x) {
        seen_right[xt] = x;
        ++inv.right_principal;
      }
    }
  }
  return out;
}

/// Isomorphism-invariant summary used to reject non-isomorphic pairs cheaply.
struct RingFingerprint {
  std::uint64_t order = 0;
  std::uint64_t characteristic = 0;
  std::vector<index_type> components;  // sorted
  std::uint64_t unit_count = 0;
  std::uint64_t radical_size = 0;
  std::uint64_t center_size = 0;
  std::uint64_t idempotent_count = 0;
  bool commutative = false;
  std::map<std::uint64_t, std::uint64_t> unit_order_profile;
  std::map<std::uint64_t, std::uint64_t> additive_order_profile;
  std::vector<ElementInvariant> invariant_multiset;  // sorted

  bool operator==(const RingFingerprint&) const = default;
};

inline RingFingerprint fingerprint(const FiniteRing& r, const std::vector<ElementInvariant>& invariants) {
  RingFingerprint f;
  f.order = r.order();
  f.characteristic = characteristic(r);
  f.components.assign(r.components().begin(), r.components().end());
  std::ranges::sort(f.components);
  const UnitGroupView g(r);
  f.unit_count = g.size();
  f.unit_order_profile = g.order_profile();
  f.radical_size = jacobson_radical(r).size();
  f.center_size = std::ranges::count_if(invariants, [](const ElementInvariant& e) { return e.central; });
  f.idempotent_count = std::ranges::count_if(invariants, [](const ElementInvariant& e) { return e.idempotent; });
  f.commutative = f.center_size == f.order;
  for (const auto& e : invariants) ++f.additive_order_profile[e.additive_order];
  f.invariant_multiset = invariants;
  std::ranges::sort(f.invariant_multiset);
  return f;
}

inline RingFingerprint fingerprint(const FiniteRing& r) { return fingerprint(r, element_invariants(r)); }

/// Checks that `phi` (R index -> S index) is a bijective unital ring isomorphism.
inline bool verify_isomorphism(const FiniteRing& r, const FiniteRing& s, const std::vector<index_type>& phi) {
  const auto n = static_cast<index_type>(r.order());
  if (s.order() != n || phi.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (index_type v : phi) {
    if (v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  if (phi[r.one()] != s.one()) return false;
  for (index_type a = 0; a < n; ++a)
    for (index_type b = 0; b < n; ++b)
      if (phi[r.add(a, b)] != s.add(phi[a], phi[b]) || phi[r.mul(a, b)] != s.mul(phi[a], phi[b])) return false;
  return true;
}

namespace detail {

class RingIsoSearch {
 public:
  RingIsoSearch(const FiniteRing& r, const FiniteRing& s, const std::vector<ElementInvariant>& inv_r,
                const std::vector<ElementInvariant>& inv_s)
      : r_(r), s_(s), inv_r_(inv_r), inv_s_(inv_s) {
    const std::size_t rank = r.components().size();
    // Assign the largest cyclic components first.
    order_.resize(rank);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::ranges::stable_sort(order_, [&](std::size_t a, std::size_t b) { return r.components()[a] > r.components()[b]; });
    position_rank_.assign(rank, 0);
    for (std::size_t k = 0; k < rank; ++k) position_rank_[order_[k]] = k;
    basis_.resize(rank);
    for (std::size_t j = 0; j < rank; ++j) {
      ElementVector e(rank, 0);
      e[j] = 1;
      basis_[j] = r.encode(e);
    }
    // products_[a][b]: coordinates of e_a * e_b, plus the deepest rank needed.
    products_.assign(rank, std::vector<ElementVector>(rank));
    needed_.assign(rank, std::vector<std::size_t>(rank, 0));
    for (std::size_t a = 0; a < rank; ++a)
      for (std::size_t b = 0; b < rank; ++b) {
        products_[a][b] = r.decode(r.mul(basis_[a], basis_[b]));
        std::size_t need = std::max(position_rank_[a], position_rank_[b]);
        for (std::size_t j = 0; j < rank; ++j)
          if (products_[a][b][j] != 0) need = std::max(need, position_rank_[j]);
        needed_[a][b] = need;
      }
    one_coords_ = r.decode(r.one());
    one_needed_ = 0;
    for (std::size_t j = 0; j < rank; ++j)
      if (one_coords_[j] != 0) one_needed_ = std::max(one_needed_, position_rank_[j]);
    images_.assign(rank, 0);
    in_span_.assign(s.order(), 0);
    in_span_[s.zero()] = 1;
    span_.push_back(s.zero());
  }

  std::optional<std::vector<index_type>> run() {
    if (!search(0)) return std::nullopt;
    return phi_;
  }

 private:
  index_type image_of(const ElementVector& coords) const {
    index_type acc = s_.zero();
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (coords[j] != 0) acc = s_.add(acc, s_.times(coords[j], images_[j]));
    return acc;
  }

  bool consistent_at(std::size_t depth) const {
    const std::size_t rank = order_.size();
    for (std::size_t a = 0; a < rank; ++a)
      for (std::size_t b = 0; b < rank; ++b) {
        if (needed_[a][b] != depth) continue;
        if (image_of(products_[a][b]) != s_.mul(images_[a], images_[b])) return false;
      }
    if (one_needed_ == depth && image_of(one_coords_) != s_.one()) return false;
    return true;
  }

  bool search(std::size_t depth) {
    const std::size_t rank = order_.size();
    if (depth == rank) return finish();
    const std::size_t pos = order_[depth];
    const index_type d = r_.components()[pos];
    const auto& want = inv_r_[basis_[pos]];
    for (index_type t = 0; t < s_.order(); ++t) {
      if (in_span_[t] || inv_s_[t] != want) continue;
      std::vector<index_type> added;
      bool independent = true;
      index_type mult = t;
      for (index_type c = 1; c < d && independent; ++c) {
        for (index_type v : span_) {
          index_type w = s_.add(v, mult);
          if (in_span_[w]) {
            independent = false;
            break;
          }
          in_span_[w] = 1;
          added.push_back(w);
        }
        mult = s_.add(mult, t);
      }
      if (independent) {
        images_[pos] = t;
        if (consistent_at(depth)) {
          const std::size_t old = span_.size();
          span_.insert(span_.end(), added.begin(), added.end());
          if (search(depth + 1)) return true;
          span_.resize(old);
        }
      }
      for (index_type w : added) in_span_[w] = 0;
    }
    return false;
  }

  bool finish() {
    const auto n = static_cast<index_type>(r_.order());
    phi_.assign(n, 0);
    for (index_type x = 0; x < n; ++x) phi_[x] = image_of(r_.decode(x));
    return verify_isomorphism(r_, s_, phi_);
  }

  const FiniteRing& r_;
  const FiniteRing& s_;
  const std::vector<ElementInvariant>& inv_r_;
  const std::vector<ElementInvariant>& inv_s_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> position_rank_;
  std::vector<index_type> basis_;
  std::vector<std::vector<ElementVector>> products_;
  std::vector<std::vector<std::size_t>> needed_;
  ElementVector one_coords_;
  std::size_t one_needed_ = 0;
  std::vector<index_type> images_;
  std::vector<char> in_span_;
  std::vector<index_type> span_;
  std::vector<index_type> phi_;
};

}  // namespace detail

/// Precomputed invariants of a ring, reusable across many isomorphism tests.
struct RingProfile {
  FiniteRing ring;
  std::vector<ElementInvariant> invariants;
  RingFingerprint print;

  explicit RingProfile(FiniteRing r) : ring(std::move(r)), invariants(element_invariants(ring)), print(fingerprint(ring, invariants)) {}
};

/// A verified unital ring isomorphism R -> S (as an index map), or nullopt.
inline std::optional<std::vector<index_type>> is_isomorphic(const RingProfile& r, const RingProfile& s) {
  if (!(r.print == s.print)) return std::nullopt;
  return detail::RingIsoSearch(r.ring, s.ring, r.invariants, s.invariants).run();
}

inline std::optional<std::vector<index_type>> is_isomorphic(const FiniteRing& r, const FiniteRing& s) {
  if (r.order() != s.order()) return std::nullopt;
  return is_isomorphic(RingProfile(r), RingProfile(s));
}

}  // namespace ring_atlas
