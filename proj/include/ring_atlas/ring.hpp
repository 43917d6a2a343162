#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ring_atlas/arith.hpp"
#include "ring_atlas/error.hpp"

namespace ring_atlas {

using index_type = std::uint32_t;

/// Additive coordinates of an element: coeffs[j] lies in [0, d_j).
using ElementVector = std::vector<index_type>;

/// A finite ring with identity, stored as full addition and multiplication
/// tables over dense element indices 0..order-1.
///
/// Indices are a mixed-radix encoding of additive coordinates over the cyclic
/// components d_1..d_r of (R,+): index = c_1 + d_1*(c_2 + d_2*(c_3 + ...)).
/// Consequently zero is always index 0 and addition is coordinatewise.
/// Rings are immutable; copies share the underlying tables.
class FiniteRing {
 public:
  FiniteRing() = default;

  /// Builds a ring whose addition is coordinatewise over `components` and
  /// whose multiplication is `mul` (row-major, order x order). Tables are
  /// range-checked but ring laws are not; use validate() for that.
  static FiniteRing from_structure(std::vector<index_type> components, std::vector<index_type> mul,
                                   index_type one, std::string label);

  std::size_t order() const { return data_ ? data_->order : 0; }
  index_type zero() const { return 0; }
  index_type one() const { return data_->one; }
  const std::string& label() const { return data_->label; }
  std::span<const index_type> components() const { return data_->components; }

  index_type add(index_type a, index_type b) const { return data_->add[a * data_->order + b]; }
  index_type mul(index_type a, index_type b) const { return data_->mul[a * data_->order + b]; }
  index_type neg(index_type a) const { return data_->neg[a]; }
  index_type sub(index_type a, index_type b) const { return add(a, neg(b)); }

  std::span<const index_type> add_table() const { return data_->add; }
  std::span<const index_type> mul_table() const { return data_->mul; }

  /// k * a for a nonnegative integer k.
  index_type times(std::uint64_t k, index_type a) const;

  ElementVector decode(index_type index) const;
  index_type encode(std::span<const index_type> coeffs) const;

  /// Same tables, different label.
  FiniteRing relabeled(std::string label) const;

  bool same_tables(const FiniteRing& other) const;

 private:
  struct Data {
    std::size_t order = 0;
    index_type one = 0;
    std::vector<index_type> components;
    std::vector<index_type> strides;
    std::vector<index_type> add;
    std::vector<index_type> mul;
    std::vector<index_type> neg;
    std::string label;
  };

  std::shared_ptr<const Data> data_;
};

/// A ring re-indexed into mixed-radix form, with the map from the caller's
/// original element labels to the new indices.
struct NormalizedRing {
  FiniteRing ring;
  std::vector<index_type> new_of_old;
};

namespace detail {

inline void check_cap(std::uint64_t order, const char* what) {
  if (order > order_cap())
    fail(ErrorKind::resource_limit, std::string(what) + " of order " + std::to_string(order) +
                                        " exceeds order cap " + std::to_string(order_cap()));
}

inline std::vector<index_type> strides_of(std::span<const index_type> components) {
  std::vector<index_type> strides(components.size());
  index_type s = 1;
  for (std::size_t j = 0; j < components.size(); ++j) {
    strides[j] = s;
    s *= components[j];
  }
  return strides;
}

/// Cyclic decomposition of an abelian group given by its Cayley table.
/// Components are grouped by ascending prime, descending within a prime.
struct AdditiveBasis {
  std::vector<index_type> components;
  std::vector<index_type> generators;
};

inline std::vector<index_type> additive_orders(std::size_t n, std::span<const index_type> add,
                                               index_type zero) {
  std::vector<index_type> ord(n, 0);
  for (index_type x = 0; x < n; ++x) {
    index_type y = x;
    index_type k = 1;
    while (y != zero) {
      y = add[y * n + x];
      ++k;
      if (k > n) fail(ErrorKind::invalid_parameter, "additive table is not a group");
    }
    ord[x] = k;
  }
  return ord;
}

inline bool extend_basis(std::size_t n, std::span<const index_type> add, index_type zero,
                         const std::vector<index_type>& ord, const std::vector<index_type>& targets,
                         std::size_t depth, std::vector<char>& in_span,
                         std::vector<index_type>& span, std::vector<index_type>& chosen) {
  if (depth == targets.size()) return true;
  const index_type d = targets[depth];
  for (index_type g = 0; g < n; ++g) {
    if (ord[g] != d || in_span[g]) continue;
    // New span is span + {0, g, 2g, ...}; independence means no collisions.
    std::vector<index_type> added;
    bool ok = true;
    index_type mult = g;
    for (index_type t = 1; t < d && ok; ++t) {
      for (index_type s : span) {
        index_type v = add[s * n + mult];
        if (in_span[v]) {
          ok = false;
          break;
        }
        in_span[v] = 1;
        added.push_back(v);
      }
      mult = add[mult * n + g];
    }
    if (ok) {
      std::size_t old = span.size();
      span.insert(span.end(), added.begin(), added.end());
      chosen.push_back(g);
      if (extend_basis(n, add, zero, ord, targets, depth + 1, in_span, span, chosen)) return true;
      chosen.pop_back();
      span.resize(old);
    }
    for (index_type v : added) in_span[v] = 0;
  }
  return false;
}

inline AdditiveBasis decompose_abelian(std::size_t n, std::span<const index_type> add, index_type zero) {
  const auto ord = additive_orders(n, add, zero);
  AdditiveBasis basis;
  for (auto [p, e] : factorize(n)) {
    // c[k] = number of elements of p-power order killed by p^k.
    std::vector<std::uint64_t> c(e + 1, 0);
    for (index_type x = 0; x < n; ++x) {
      if (!is_power_of(ord[x], p) && ord[x] != 1) continue;
      std::uint64_t q = 1;
      for (unsigned k = 0; k <= e; ++k, q *= p)
        if (q % ord[x] == 0) ++c[k];
    }
    if (c[e] != ipow(p, e)) fail(ErrorKind::invalid_parameter, "additive table is not an abelian group");
    // m[k] = number of cyclic components of order >= p^k.
    std::vector<unsigned> m(e + 2, 0);
    for (unsigned k = 1; k <= e; ++k) {
      std::uint64_t ratio = c[k] / c[k - 1];
      unsigned lg = 0;
      while (ratio > 1) {
        ratio /= p;
        ++lg;
      }
      m[k] = lg;
    }
    std::vector<index_type> targets;
    for (unsigned k = e; k >= 1; --k)
      for (unsigned i = 0; i < m[k] - m[k + 1]; ++i) targets.push_back(static_cast<index_type>(ipow(p, k)));
    std::vector<char> in_span(n, 0);
    in_span[zero] = 1;
    std::vector<index_type> span{zero};
    std::vector<index_type> chosen;
    if (!extend_basis(n, add, zero, ord, targets, 0, in_span, span, chosen))
      fail(ErrorKind::internal_error, "failed to find additive basis");
    basis.components.insert(basis.components.end(), targets.begin(), targets.end());
    basis.generators.insert(basis.generators.end(), chosen.begin(), chosen.end());
  }
  return basis;
}

/// Checks the abelian group laws of an addition table; returns an empty
/// string when they hold, otherwise a description of the first failure.
inline std::string check_abelian_group(std::size_t n, std::span<const index_type> add, index_type zero) {
  for (index_type x = 0; x < n; ++x) {
    if (add[zero * n + x] != x || add[x * n + zero] != x)
      return "zero is not an additive identity at element " + std::to_string(x);
    bool has_inverse = false;
    for (index_type y = 0; y < n; ++y) {
      if (add[x * n + y] != add[y * n + x])
        return "addition not commutative at (" + std::to_string(x) + "," + std::to_string(y) + ")";
      if (add[x * n + y] == zero) has_inverse = true;
    }
    if (!has_inverse) return "element " + std::to_string(x) + " has no additive inverse";
  }
  auto assoc = [&](index_type a, index_type b, index_type c) {
    return add[add[a * n + b] * n + c] == add[a * n + add[b * n + c]];
  };
  if (n <= 512) {
    for (index_type a = 0; a < n; ++a)
      for (index_type b = 0; b < n; ++b)
        for (index_type c = 0; c < n; ++c)
          if (!assoc(a, b, c)) return "addition not associative";
  } else {
    std::mt19937_64 rng(0x5eedu);
    std::uniform_int_distribution<index_type> pick(0, static_cast<index_type>(n - 1));
    for (int i = 0; i < (1 << 18); ++i)
      if (!assoc(pick(rng), pick(rng), pick(rng))) return "addition not associative";
  }
  return {};
}

}  // namespace detail

inline FiniteRing FiniteRing::from_structure(std::vector<index_type> components, std::vector<index_type> mul,
                                             index_type one, std::string label) {
  std::uint64_t n = 1;
  for (index_type d : components) {
    if (d < 2) fail(ErrorKind::invalid_parameter, "additive component must be at least 2");
    n *= d;
  }
  detail::check_cap(n, "ring");
  if (mul.size() != n * n) fail(ErrorKind::invalid_parameter, "multiplication table has wrong size");
  if (one >= n) fail(ErrorKind::invalid_parameter, "identity index out of range");
  for (index_type v : mul)
    if (v >= n) fail(ErrorKind::invalid_parameter, "multiplication table entry out of range");

  auto data = std::make_shared<Data>();
  data->order = n;
  data->one = one;
  data->strides = detail::strides_of(components);
  data->components = std::move(components);
  data->mul = std::move(mul);
  data->label = std::move(label);

  const std::size_t r = data->components.size();
  std::vector<std::vector<index_type>> coords(n, std::vector<index_type>(r));
  for (index_type i = 0; i < n; ++i) {
    index_type rest = i;
    for (std::size_t j = 0; j < r; ++j) {
      coords[i][j] = rest % data->components[j];
      rest /= data->components[j];
    }
  }
  data->add.resize(n * n);
  data->neg.resize(n);
  for (index_type a = 0; a < n; ++a) {
    index_type ng = 0;
    for (std::size_t j = 0; j < r; ++j) {
      index_type d = data->components[j];
      ng += ((d - coords[a][j]) % d) * data->strides[j];
    }
    data->neg[a] = ng;
    for (index_type b = 0; b < n; ++b) {
      index_type s = 0;
      for (std::size_t j = 0; j < r; ++j) {
        index_type d = data->components[j];
        s += ((coords[a][j] + coords[b][j]) % d) * data->strides[j];
      }
      data->add[a * n + b] = s;
    }
  }
  FiniteRing ring;
  ring.data_ = std::move(data);
  return ring;
}

inline index_type FiniteRing::times(std::uint64_t k, index_type a) const {
  index_type acc = 0;
  index_type base = a;
  while (k > 0) {
    if (k & 1u) acc = add(acc, base);
    base = add(base, base);
    k >>= 1u;
  }
  return acc;
}

inline ElementVector FiniteRing::decode(index_type index) const {
  ElementVector v(data_->components.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = index % data_->components[j];
    index /= data_->components[j];
  }
  return v;
}

inline index_type FiniteRing::encode(std::span<const index_type> coeffs) const {
  if (coeffs.size() != data_->components.size())
    fail(ErrorKind::invalid_parameter, "coordinate vector has wrong length");
  index_type index = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] >= data_->components[j]) fail(ErrorKind::invalid_parameter, "coordinate out of range");
    index += coeffs[j] * data_->strides[j];
  }
  return index;
}

inline FiniteRing FiniteRing::relabeled(std::string label) const {
  auto data = std::make_shared<Data>(*data_);
  data->label = std::move(label);
  FiniteRing ring;
  ring.data_ = std::move(data);
  return ring;
}

inline bool FiniteRing::same_tables(const FiniteRing& other) const {
  return order() == other.order() && one() == other.one() &&
         std::ranges::equal(components(), other.components()) &&
         std::ranges::equal(mul_table(), other.mul_table());
}

/// Re-indexes a ring given by arbitrary tables into mixed-radix form.
/// Unless `trusted`, the addition table is first checked to be an abelian
/// group (ring laws are left to validate()).
inline NormalizedRing normalize_tables(std::size_t n, std::span<const index_type> add,
                                       std::span<const index_type> mul, index_type one, std::string label,
                                       bool trusted = false) {
  if (n < 1) fail(ErrorKind::invalid_parameter, "ring order must be positive");
  detail::check_cap(n, "ring");
  if (add.size() != n * n || mul.size() != n * n)
    fail(ErrorKind::invalid_parameter, "table has wrong size");
  if (one >= n) fail(ErrorKind::invalid_parameter, "identity index out of range");
  for (std::size_t i = 0; i < n * n; ++i)
    if (add[i] >= n || mul[i] >= n) fail(ErrorKind::invalid_parameter, "table entry out of range");

  index_type zero = n;
  for (index_type z = 0; z < n && zero == n; ++z) {
    bool is_zero = true;
    for (index_type x = 0; x < n && is_zero; ++x) is_zero = add[z * n + x] == x;
    if (is_zero) zero = z;
  }
  if (zero == n) fail(ErrorKind::invalid_parameter, "addition table has no identity element");
  if (!trusted) {
    if (auto why = detail::check_abelian_group(n, add, zero); !why.empty())
      fail(ErrorKind::invalid_parameter, why);
  }
  if (n == 1) fail(ErrorKind::invalid_parameter, "a unitary ring needs one != zero");

  auto basis = detail::decompose_abelian(n, add, zero);
  const std::size_t r = basis.components.size();
  // multiples[j][c] = c * g_j in the original labels.
  std::vector<std::vector<index_type>> multiples(r);
  for (std::size_t j = 0; j < r; ++j) {
    multiples[j].push_back(zero);
    for (index_type c = 1; c < basis.components[j]; ++c)
      multiples[j].push_back(add[multiples[j].back() * n + basis.generators[j]]);
  }
  std::vector<index_type> old_of_new(n);
  std::vector<index_type> new_of_old(n);
  std::vector<index_type> coords(r, 0);
  for (index_type idx = 0; idx < n; ++idx) {
    index_type old = zero;
    for (std::size_t j = 0; j < r; ++j) old = add[old * n + multiples[j][coords[j]]];
    old_of_new[idx] = old;
    new_of_old[old] = idx;
    for (std::size_t j = 0; j < r; ++j) {
      if (++coords[j] < basis.components[j]) break;
      coords[j] = 0;
    }
  }
  std::vector<index_type> new_mul(n * n);
  for (index_type a = 0; a < n; ++a)
    for (index_type b = 0; b < n; ++b)
      new_mul[a * n + b] = new_of_old[mul[old_of_new[a] * n + old_of_new[b]]];
  auto ring = FiniteRing::from_structure(basis.components, std::move(new_mul), new_of_old[one], std::move(label));
  if (!trusted) {
    for (index_type a = 0; a < n; ++a)
      for (index_type b = 0; b < n; ++b)
        if (ring.add(new_of_old[a], new_of_old[b]) != new_of_old[add[a * n + b]])
          fail(ErrorKind::invalid_parameter, "addition table is inconsistent with its cyclic decomposition");
  }
  return {std::move(ring), std::move(new_of_old)};
}

/// Builds a ring on the elements of `members` (indices into `parent`) closed
/// under the parent's operations, with identity `one`.
inline NormalizedRing restrict_ring(const FiniteRing& parent, std::span<const index_type> members, index_type one,
                                    std::string label) {
  const std::size_t m = members.size();
  std::vector<index_type> local(parent.order(), static_cast<index_type>(-1));
  for (index_type i = 0; i < m; ++i) local[members[i]] = i;
  std::vector<index_type> add(m * m), mul(m * m);
  for (index_type i = 0; i < m; ++i)
    for (index_type j = 0; j < m; ++j) {
      index_type s = local[parent.add(members[i], members[j])];
      index_type p = local[parent.mul(members[i], members[j])];
      if (s == static_cast<index_type>(-1) || p == static_cast<index_type>(-1))
        fail(ErrorKind::invalid_parameter, "subset is not closed under the ring operations");
      add[i * m + j] = s;
      mul[i * m + j] = p;
    }
  if (local[one] == static_cast<index_type>(-1)) fail(ErrorKind::invalid_parameter, "identity not in subset");
  return normalize_tables(m, add, mul, local[one], std::move(label), true);
}

// ---------------------------------------------------------------------------
// Elementary queries

inline std::uint64_t additive_order(const FiniteRing& r, index_type x) {
  std::uint64_t k = 1;
  for (index_type y = x; y != r.zero(); y = r.add(y, x)) ++k;
  return k;
}

/// Least c >= 1 with c * 1 = 0.
inline std::uint64_t characteristic(const FiniteRing& r) { return additive_order(r, r.one()); }

inline bool is_commutative(const FiniteRing& r) {
  const auto n = static_cast<index_type>(r.order());
  for (index_type a = 0; a < n; ++a)
    for (index_type b = a + 1; b < n; ++b)
      if (r.mul(a, b) != r.mul(b, a)) return false;
  return true;
}

/// inverse[x] is the two-sided inverse of x, or order() when x is not a unit.
inline std::vector<index_type> unit_inverses(const FiniteRing& r) {
  const auto n = static_cast<index_type>(r.order());
  std::vector<index_type> inv(n, n);
  for (index_type x = 0; x < n; ++x) {
    if (inv[x] != n) continue;
    for (index_type y = 0; y < n; ++y) {
      if (r.mul(x, y) == r.one() && r.mul(y, x) == r.one()) {
        inv[x] = y;
        inv[y] = x;
        break;
      }
    }
  }
  return inv;
}

inline std::vector<char> unit_mask(const FiniteRing& r) {
  auto inv = unit_inverses(r);
  std::vector<char> mask(r.order());
  for (std::size_t x = 0; x < mask.size(); ++x) mask[x] = inv[x] != r.order();
  return mask;
}

inline bool is_field(const FiniteRing& r) {
  if (!is_commutative(r)) return false;
  auto mask = unit_mask(r);
  return std::count(mask.begin(), mask.end(), 1) == static_cast<std::ptrdiff_t>(r.order() - 1);
}

// ---------------------------------------------------------------------------
// Constructors

inline std::vector<index_type> primary_components(std::uint64_t m) {
  std::vector<index_type> comps;
  for (auto [p, e] : factorize(m)) comps.push_back(static_cast<index_type>(ipow(p, e)));
  return comps;
}

/// The integers modulo m.
inline FiniteRing make_zmod(std::uint64_t m) {
  if (m < 2) fail(ErrorKind::invalid_parameter, "Z(m) needs m >= 2");
  detail::check_cap(m, "Z(m)");
  auto comps = primary_components(m);
  auto strides = detail::strides_of(comps);
  std::vector<index_type> index_of(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    index_type idx = 0;
    for (std::size_t j = 0; j < comps.size(); ++j) idx += static_cast<index_type>(k % comps[j]) * strides[j];
    index_of[k] = idx;
  }
  std::vector<index_type> mul(m * m);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b) mul[index_of[a] * m + index_of[b]] = index_of[(a * b) % m];
  return FiniteRing::from_structure(comps, std::move(mul), index_of[1], "Z(" + std::to_string(m) + ")");
}

namespace detail {

using Poly = std::vector<std::uint64_t>;  // coefficients, lowest degree first

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& monic, std::uint64_t p) {
  trim(a);
  const std::size_t dm = monic.size() - 1;
  while (a.size() > dm) {
    std::uint64_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - lead) * monic[i]) % p;
    trim(a);
  }
  return a;
}

inline Poly monic_from_tuple(std::uint64_t t, unsigned degree, std::uint64_t p, bool low_first_major) {
  Poly f(degree + 1, 0);
  f[degree] = 1;
  for (unsigned i = 0; i < degree; ++i) {
    unsigned digit = low_first_major ? degree - 1 - i : i;
    f[i] = (t / ipow(p, digit)) % p;
  }
  return f;
}

inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= n / 2; ++d) {
    for (std::uint64_t t = 0; t < ipow(p, d); ++t) {
      Poly g = monic_from_tuple(t, d, p, false);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Lexicographically least monic irreducible polynomial of the given degree
/// over Z_p, coefficient tuples (c_0, ..., c_{n-1}) compared c_0 first.
inline std::vector<std::uint64_t> least_irreducible(std::uint64_t p, unsigned degree) {
  for (std::uint64_t t = 0; t < ipow(p, degree); ++t) {
    auto f = detail::monic_from_tuple(t, degree, p, true);
    if (detail::is_irreducible(f, p)) return f;
  }
  fail(ErrorKind::internal_error, "no irreducible polynomial found");
}

/// GF(p^n) as Z_p[x]/(f) with f = least_irreducible(p, n). Element index is
/// sum a_j p^j for the residue a_0 + a_1 x + ... + a_{n-1} x^{n-1}.
inline FiniteRing make_galois_field(std::uint64_t p, unsigned n) {
  if (!is_prime(p)) fail(ErrorKind::invalid_parameter, "GF(p,n) needs p prime");
  if (n < 1) fail(ErrorKind::invalid_parameter, "GF(p,n) needs n >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > order_cap()) detail::check_cap(q, "GF(p,n)");
  }
  const auto f = least_irreducible(p, n);
  std::vector<detail::Poly> elems(q);
  for (std::uint64_t i = 0; i < q; ++i) {
    elems[i].resize(n);
    for (unsigned j = 0; j < n; ++j) elems[i][j] = (i / ipow(p, j)) % p;
  }
  auto index_of = [&](const detail::Poly& a) {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < a.size(); ++j) idx += a[j] * ipow(p, static_cast<unsigned>(j));
    return static_cast<index_type>(idx);
  };
  std::vector<index_type> mul(q * q);
  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b) {
      detail::Poly prod(2 * n, 0);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + elems[a][i] * elems[b][j]) % p;
      mul[a * q + b] = index_of(detail::poly_mod(prod, f, p));
    }
  std::vector<index_type> comps(n, static_cast<index_type>(p));
  return FiniteRing::from_structure(comps, std::move(mul), 1,
                                    "GF(" + std::to_string(p) + "," + std::to_string(n) + ")");
}

namespace detail {

// Matrix-like rings over a field: elements are vectors of entries at the
// given (row, col) positions, index = sum entry_e * |F|^e.
inline FiniteRing make_matrix_like(const FiniteRing& field, unsigned n,
                                   const std::vector<std::pair<unsigned, unsigned>>& positions,
                                   std::string label) {
  if (n < 1) fail(ErrorKind::invalid_parameter, "matrix size must be at least 1");
  if (!is_field(field)) fail(ErrorKind::invalid_parameter, "matrix rings need a field of coefficients");
  const std::uint64_t q = field.order();
  const std::size_t m = positions.size();
  std::uint64_t total = 1;
  for (std::size_t e = 0; e < m; ++e) {
    total *= q;
    if (total > order_cap()) check_cap(total, "matrix ring");
  }
  std::vector<int> pos_of(n * n, -1);
  for (std::size_t e = 0; e < m; ++e) pos_of[positions[e].first * n + positions[e].second] = static_cast<int>(e);

  std::vector<std::vector<index_type>> entries(total, std::vector<index_type>(m));
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t rest = i;
    for (std::size_t e = 0; e < m; ++e) {
      entries[i][e] = static_cast<index_type>(rest % q);
      rest /= q;
    }
  }
  std::vector<index_type> mul(total * total);
  std::vector<index_type> prod(m);
  for (std::uint64_t a = 0; a < total; ++a)
    for (std::uint64_t b = 0; b < total; ++b) {
      for (std::size_t e = 0; e < m; ++e) {
        auto [i, k] = positions[e];
        index_type acc = field.zero();
        for (unsigned j = 0; j < n; ++j) {
          int left = pos_of[i * n + j];
          int right = pos_of[j * n + k];
          if (left < 0 || right < 0) continue;
          acc = field.add(acc, field.mul(entries[a][left], entries[b][right]));
        }
        prod[e] = acc;
      }
      std::uint64_t idx = 0, scale = 1;
      for (std::size_t e = 0; e < m; ++e, scale *= q) idx += prod[e] * scale;
      mul[a * total + b] = static_cast<index_type>(idx);
    }
  std::uint64_t one = 0, scale = 1;
  for (std::size_t e = 0; e < m; ++e, scale *= q)
    if (positions[e].first == positions[e].second) one += field.one() * scale;
  std::vector<index_type> comps;
  for (std::size_t e = 0; e < m; ++e) comps.insert(comps.end(), field.components().begin(), field.components().end());
  return FiniteRing::from_structure(std::move(comps), std::move(mul), static_cast<index_type>(one), std::move(label));
}

}  // namespace detail

/// Full n x n matrix ring over a field.
inline FiniteRing make_matrix_ring(const FiniteRing& field, unsigned n) {
  std::vector<std::pair<unsigned, unsigned>> positions;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) positions.emplace_back(i, j);
  return detail::make_matrix_like(field, n, positions, "M(" + std::to_string(n) + "," + field.label() + ")");
}

/// Upper triangular n x n matrices over a field.
inline FiniteRing make_upper_triangular(const FiniteRing& field, unsigned n) {
  std::vector<std::pair<unsigned, unsigned>> positions;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i; j < n; ++j) positions.emplace_back(i, j);
  return detail::make_matrix_like(field, n, positions, "T(" + std::to_string(n) + "," + field.label() + ")");
}

/// Direct sum of one or more rings; element index is the mixed-radix
/// combination a_0 + |A_0| * (a_1 + |A_1| * ...), identity (1, ..., 1).
inline FiniteRing direct_sum(std::span<const FiniteRing> parts) {
  if (parts.empty()) fail(ErrorKind::invalid_parameter, "direct sum needs at least one summand");
  if (parts.size() == 1) return parts.front();
  std::uint64_t total = 1;
  for (const auto& part : parts) {
    total *= part.order();
    if (total > order_cap()) detail::check_cap(total, "direct sum");
  }
  std::vector<std::uint64_t> scale(parts.size());
  std::uint64_t s = 1;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    scale[k] = s;
    s *= parts[k].order();
  }
  std::vector<std::vector<index_type>> coord(total, std::vector<index_type>(parts.size()));
  for (std::uint64_t i = 0; i < total; ++i)
    for (std::size_t k = 0; k < parts.size(); ++k) coord[i][k] = static_cast<index_type>((i / scale[k]) % parts[k].order());
  std::vector<index_type> mul(total * total);
  for (std::uint64_t a = 0; a < total; ++a)
    for (std::uint64_t b = 0; b < total; ++b) {
      std::uint64_t idx = 0;
      for (std::size_t k = 0; k < parts.size(); ++k) idx += parts[k].mul(coord[a][k], coord[b][k]) * scale[k];
      mul[a * total + b] = static_cast<index_type>(idx);
    }
  std::uint64_t one = 0;
  std::vector<index_type> comps;
  std::string label = "sum(";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    one += parts[k].one() * scale[k];
    comps.insert(comps.end(), parts[k].components().begin(), parts[k].components().end());
    label += (k ? "," : "") + parts[k].label();
  }
  label += ")";
  return FiniteRing::from_structure(std::move(comps), std::move(mul), static_cast<index_type>(one), std::move(label));
}

inline FiniteRing direct_sum(const FiniteRing& a, const FiniteRing& b) {
  const FiniteRing parts[] = {a, b};
  return direct_sum(parts);
}

// ---------------------------------------------------------------------------
// Validation

struct LawViolation {
  std::string law;
  index_type a = 0, b = 0, c = 0;
};

struct ValidationReport {
  bool exhaustive = true;
  bool commutative = true;
  std::vector<LawViolation> violations;

  bool ok() const { return violations.empty(); }
  bool violated(const std::string& law) const {
    return std::ranges::any_of(violations, [&](const LawViolation& v) { return v.law == law; });
  }
};

/// Checks every ring law. Triple laws are scanned exhaustively up to order
/// 512 and sampled with a fixed seed above that. At most one witness is
/// reported per violated law.
inline ValidationReport validate(const FiniteRing& r, std::size_t exhaustive_limit = 512) {
  ValidationReport report;
  const auto n = static_cast<index_type>(r.order());
  auto note = [&](const char* law, index_type a, index_type b = 0, index_type c = 0) {
    if (!report.violated(law)) report.violations.push_back({law, a, b, c});
  };
  if (n < 2) {
    note("one-nonzero", 0);
    return report;
  }
  for (index_type a = 0; a < n; ++a) {
    for (index_type b = 0; b < n; ++b) {
      index_type expected = r.encode([&] {
        auto u = r.decode(a), v = r.decode(b);
        for (std::size_t j = 0; j < u.size(); ++j) u[j] = (u[j] + v[j]) % r.components()[j];
        return u;
      }());
      if (r.add(a, b) != expected) note("mixed-radix", a, b);
      if (r.add(a, b) != r.add(b, a)) note("add-commutative", a, b);
      if (r.mul(a, b) != r.mul(b, a)) report.commutative = false;
    }
    if (r.add(a, r.zero()) != a) note("add-identity", a);
    if (r.add(a, r.neg(a)) != r.zero()) note("add-inverse", a);
    if (r.mul(a, r.one()) != a || r.mul(r.one(), a) != a) note("one-identity", a);
  }
  if (r.one() == r.zero()) note("one-nonzero", r.one());

  auto check = [&](index_type a, index_type b, index_type c) {
    if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c))) note("add-associative", a, b, c);
    if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c))) note("mul-associative", a, b, c);
    if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c))) note("left-distributive", a, b, c);
    if (r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c))) note("right-distributive", a, b, c);
  };
  if (n <= exhaustive_limit) {
    for (index_type a = 0; a < n; ++a)
      for (index_type b = 0; b < n; ++b)
        for (index_type c = 0; c < n; ++c) check(a, b, c);
  } else {
    report.exhaustive = false;
    std::mt19937_64 rng(0x5eedu);
    std::uniform_int_distribution<index_type> pick(0, n - 1);
    for (int i = 0; i < (1 << 20); ++i) check(pick(rng), pick(rng), pick(rng));
  }
  return report;
}

}  // namespace ring_atlas
