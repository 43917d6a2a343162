#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ring_atlas/arith.hpp"
#include "ring_atlas/ring.hpp"

namespace ring_atlas {

/// R* as a view over the parent ring's element indices. Element orders and
/// the order profile are computed once at construction.
class UnitGroupView {
 public:
  explicit UnitGroupView(FiniteRing ring) : ring_(std::move(ring)) {
    const auto n = static_cast<index_type>(ring_.order());
    inverse_ = unit_inverses(ring_);
    order_of_.assign(n, 0);
    for (index_type x = 0; x < n; ++x) {
      if (inverse_[x] == n) continue;
      units_.push_back(x);
      std::uint64_t k = 1;
      for (index_type y = x; y != ring_.one(); y = ring_.mul(y, x)) ++k;
      order_of_[x] = k;
      ++profile_[k];
    }
  }

  const FiniteRing& ring() const { return ring_; }
  std::size_t size() const { return units_.size(); }
  std::span<const index_type> elements() const { return units_; }
  index_type identity() const { return ring_.one(); }
  bool contains(index_type x) const { return x < ring_.order() && inverse_[x] != ring_.order(); }
  index_type mul(index_type a, index_type b) const { return ring_.mul(a, b); }

  index_type inverse(index_type g) const {
    require_unit(g);
    return inverse_[g];
  }

  /// o(g): least k >= 1 with g^k = 1.
  std::uint64_t element_order(index_type g) const {
    require_unit(g);
    return order_of_[g];
  }

  /// element order -> number of units with that order.
  const std::map<std::uint64_t, std::uint64_t>& order_profile() const { return profile_; }

 private:
  void require_unit(index_type g) const {
    if (!contains(g)) fail(ErrorKind::invalid_parameter, "element " + std::to_string(g) + " is not a unit");
  }

  FiniteRing ring_;
  std::vector<index_type> units_;
  std::vector<index_type> inverse_;
  std::vector<std::uint64_t> order_of_;
  std::map<std::uint64_t, std::uint64_t> profile_;
};

inline UnitGroupView units(const FiniteRing& r) { return UnitGroupView(r); }

inline std::uint64_t element_order(const UnitGroupView& g, index_type x) { return g.element_order(x); }

inline std::uint64_t count_elements_of_order(const UnitGroupView& g, std::uint64_t k) {
  auto it = g.order_profile().find(k);
  return it == g.order_profile().end() ? 0 : it->second;
}

/// Number of subgroups of order p: elements of order exactly p, in groups of p - 1.
inline std::uint64_t count_subgroups_of_order_p(const UnitGroupView& g, std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorKind::invalid_parameter, "subgroup count needs a prime");
  if (g.size() % p != 0) return 0;
  return count_elements_of_order(g, p) / (p - 1);
}

inline std::uint64_t involution_count(const UnitGroupView& g) { return count_elements_of_order(g, 2); }

/// True iff some unit has order equal to the full p-part of |G|.
inline bool sylow_cyclic(const UnitGroupView& g, std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorKind::invalid_parameter, "sylow_cyclic needs a prime");
  return p_part(g.size(), p) == 1 || count_elements_of_order(g, p_part(g.size(), p)) > 0;
}

/// A p-subgroup of a unit group, as a sorted set of parent-ring indices.
struct PSubgroup {
  FiniteRing ring;
  std::uint64_t p = 0;
  std::vector<index_type> members;
  std::vector<index_type> generators;

  std::size_t size() const { return members.size(); }
  bool contains(index_type x) const { return std::binary_search(members.begin(), members.end(), x); }
};

namespace detail {

/// Subgroup of R* generated by `gens` (closure under multiplication).
inline std::vector<index_type> generated_subgroup(const FiniteRing& r, std::span<const index_type> gens) {
  std::vector<char> mask(r.order(), 0);
  std::vector<index_type> list{r.one()};
  mask[r.one()] = 1;
  for (std::size_t i = 0; i < list.size(); ++i)
    for (index_type s : gens) {
      index_type y = r.mul(list[i], s);
      if (!mask[y]) {
        mask[y] = 1;
        list.push_back(y);
      }
    }
  std::sort(list.begin(), list.end());
  return list;
}

inline bool is_p_power_or_one(std::uint64_t k, std::uint64_t p) { return k == 1 || is_power_of(k, p); }

}  // namespace detail

/// A Sylow p-subgroup, grown from the first element of order p by repeatedly
/// adjoining the first p-element of the normalizer lying outside the current
/// subgroup. Searches scan units in ascending index order.
inline PSubgroup sylow_subgroup(const UnitGroupView& g, std::uint64_t p) {
  if (!is_prime(p) || g.size() % p != 0)
    fail(ErrorKind::invalid_parameter, "sylow_subgroup needs a prime dividing |G|");
  const FiniteRing& r = g.ring();
  const std::uint64_t target = p_part(g.size(), p);
  PSubgroup sub{r, p, {}, {}};
  for (index_type x : g.elements())
    if (g.element_order(x) == p) {
      sub.generators.push_back(x);
      break;
    }
  sub.members = detail::generated_subgroup(r, sub.generators);
  while (sub.size() < target) {
    std::optional<index_type> next;
    for (index_type x : g.elements()) {
      if (sub.contains(x) || !detail::is_p_power_or_one(g.element_order(x), p)) continue;
      index_type xi = g.inverse(x);
      bool normalizes = std::ranges::all_of(sub.members, [&](index_type s) { return sub.contains(r.mul(r.mul(x, s), xi)); });
      if (normalizes) {
        next = x;
        break;
      }
    }
    if (!next) fail(ErrorKind::internal_error, "no p-element in the normalizer outside a proper p-subgroup");
    sub.generators.push_back(*next);
    sub.members = detail::generated_subgroup(r, sub.generators);
  }
  return sub;
}

namespace detail {

inline std::uint64_t unit_order(const FiniteRing& r, index_type x) {
  std::uint64_t k = 1;
  for (index_type y = x; y != r.one(); y = r.mul(y, x)) ++k;
  return k;
}

inline index_type unit_power(const FiniteRing& r, index_type x, std::uint64_t k) {
  index_type acc = r.one();
  for (std::uint64_t i = 0; i < k; ++i) acc = r.mul(acc, x);
  return acc;
}

}  // namespace detail

inline bool is_cyclic(const PSubgroup& sub) {
  return std::ranges::any_of(sub.members, [&](index_type x) { return detail::unit_order(sub.ring, x) == sub.size(); });
}

/// Generalized quaternion test: |P| >= 8, P not cyclic, exactly one
/// involution, confirmed by finding u, l with u^{2n} = l^4 = 1, u^n = l^2 and
/// l^{-1} u l = u^{-1}, where |P| = 4n.
inline bool is_generalized_quaternion(const PSubgroup& sub) {
  if (sub.p != 2 || !is_power_of(sub.size(), 2))
    fail(ErrorKind::invalid_parameter, "generalized quaternion test needs a 2-group");
  if (sub.size() < 8 || is_cyclic(sub)) return false;
  const FiniteRing& r = sub.ring;
  std::vector<std::uint64_t> ord(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) ord[i] = detail::unit_order(r, sub.members[i]);
  if (std::ranges::count(ord, 2u) != 1) return false;
  const std::uint64_t half = sub.size() / 2;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (ord[i] != half) continue;
    const index_type u = sub.members[i];
    auto cyclic = detail::generated_subgroup(r, std::span<const index_type>(&u, 1));
    const index_type u_n = detail::unit_power(r, u, half / 2);
    const index_type u_inv = detail::unit_power(r, u, half - 1);
    for (std::size_t j = 0; j < sub.size(); ++j) {
      const index_type l = sub.members[j];
      if (ord[j] != 4 || std::binary_search(cyclic.begin(), cyclic.end(), l)) continue;
      const index_type l_inv = detail::unit_power(r, l, 3);
      if (r.mul(l, l) == u_n && r.mul(r.mul(l_inv, u), l) == u_inv) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Abstract groups given by Cayley tables

struct GroupTable {
  std::size_t order = 0;
  std::vector<index_type> mul;  // order x order
  index_type identity = 0;

  index_type op(index_type a, index_type b) const { return mul[a * order + b]; }
};

inline GroupTable as_group_table(const UnitGroupView& g) {
  GroupTable t;
  t.order = g.size();
  std::vector<index_type> local(g.ring().order(), 0);
  for (index_type i = 0; i < g.size(); ++i) local[g.elements()[i]] = i;
  t.mul.resize(t.order * t.order);
  for (index_type a = 0; a < t.order; ++a)
    for (index_type b = 0; b < t.order; ++b) t.mul[a * t.order + b] = local[g.mul(g.elements()[a], g.elements()[b])];
  t.identity = local[g.identity()];
  return t;
}

inline GroupTable cyclic_group_table(std::size_t n) {
  GroupTable t{n, std::vector<index_type>(n * n), 0};
  for (index_type a = 0; a < n; ++a)
    for (index_type b = 0; b < n; ++b) t.mul[a * n + b] = static_cast<index_type>((a + b) % n);
  return t;
}

inline GroupTable direct_product_table(const GroupTable& a, const GroupTable& b) {
  const std::size_t n = a.order * b.order;
  GroupTable t{n, std::vector<index_type>(n * n), static_cast<index_type>(a.identity + a.order * b.identity)};
  for (index_type x = 0; x < n; ++x)
    for (index_type y = 0; y < n; ++y)
      t.mul[x * n + y] = static_cast<index_type>(a.op(x % a.order, y % a.order) +
                                                 a.order * b.op(x / a.order, y / a.order));
  return t;
}

/// Symmetric group on k letters, permutations in lexicographic order,
/// product (s t)(i) = s(t(i)).
inline GroupTable symmetric_group_table(unsigned k) {
  std::vector<std::vector<unsigned>> perms;
  std::vector<unsigned> perm(k);
  std::iota(perm.begin(), perm.end(), 0u);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  const std::size_t n = perms.size();
  GroupTable t{n, std::vector<index_type>(n * n), 0};
  for (index_type a = 0; a < n; ++a)
    for (index_type b = 0; b < n; ++b) {
      std::vector<unsigned> c(k);
      for (unsigned i = 0; i < k; ++i) c[i] = perms[a][perms[b][i]];
      t.mul[a * n + b] = static_cast<index_type>(std::ranges::find(perms, c) - perms.begin());
    }
  return t;
}

namespace detail {

inline std::vector<std::uint64_t> group_element_orders(const GroupTable& g) {
  std::vector<std::uint64_t> ord(g.order);
  for (index_type x = 0; x < g.order; ++x) {
    std::uint64_t k = 1;
    for (index_type y = x; y != g.identity; y = g.op(y, x)) ++k;
    ord[x] = k;
  }
  return ord;
}

inline bool group_extend(const GroupTable& g, const GroupTable& h, const std::vector<index_type>& gens,
                         const std::vector<std::uint64_t>& ord_h, const std::vector<std::uint64_t>& ord_g,
                         std::vector<index_type>& images) {
  if (images.size() == gens.size()) {
    // Propagate along the Cayley graph; consistency on every edge makes the
    // map a homomorphism.
    std::vector<index_type> phi(g.order, static_cast<index_type>(h.order));
    phi[g.identity] = h.identity;
    std::deque<index_type> queue{g.identity};
    while (!queue.empty()) {
      index_type x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        index_type y = g.op(x, gens[i]);
        index_type image = h.op(phi[x], images[i]);
        if (phi[y] == h.order) {
          phi[y] = image;
          queue.push_back(y);
        } else if (phi[y] != image) {
          return false;
        }
      }
    }
    std::vector<char> hit(h.order, 0);
    for (index_type v : phi) {
      if (v == h.order || hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  }
  const index_type s = gens[images.size()];
  for (index_type t = 0; t < h.order; ++t) {
    if (ord_h[t] != ord_g[s]) continue;
    images.push_back(t);
    if (group_extend(g, h, gens, ord_h, ord_g, images)) return true;
    images.pop_back();
  }
  return false;
}

}  // namespace detail

/// Backtracking isomorphism test between two groups given by tables.
inline bool abstract_isomorphic_groups(const GroupTable& g, const GroupTable& h) {
  if (g.order != h.order) return false;
  auto ord_g = detail::group_element_orders(g);
  auto ord_h = detail::group_element_orders(h);
  std::map<std::uint64_t, std::uint64_t> prof_g, prof_h;
  for (auto o : ord_g) ++prof_g[o];
  for (auto o : ord_h) ++prof_h[o];
  if (prof_g != prof_h) return false;
  // Generators chosen greedily, largest order first.
  std::vector<index_type> by_order(g.order);
  std::iota(by_order.begin(), by_order.end(), 0u);
  std::ranges::stable_sort(by_order, [&](index_type a, index_type b) { return ord_g[a] > ord_g[b]; });
  std::vector<index_type> gens;
  std::vector<char> covered(g.order, 0);
  covered[g.identity] = 1;
  std::vector<index_type> span{g.identity};
  for (index_type x : by_order) {
    if (covered[x]) continue;
    gens.push_back(x);
    span.assign(1, g.identity);
    std::fill(covered.begin(), covered.end(), 0);
    covered[g.identity] = 1;
    for (std::size_t i = 0; i < span.size(); ++i)
      for (index_type s : gens) {
        index_type y = g.op(span[i], s);
        if (!covered[y]) {
          covered[y] = 1;
          span.push_back(y);
        }
      }
  }
  std::vector<index_type> images;
  return detail::group_extend(g, h, gens, ord_h, ord_g, images);
}

inline bool abstract_isomorphic_groups(const UnitGroupView& g, const GroupTable& h) {
  return abstract_isomorphic_groups(as_group_table(g), h);
}

inline bool abstract_isomorphic_groups(const UnitGroupView& g, const UnitGroupView& h) {
  return abstract_isomorphic_groups(as_group_table(g), as_group_table(h));
}

}  // namespace ring_atlas
