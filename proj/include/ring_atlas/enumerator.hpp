#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <ranges>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "ring_atlas/arith.hpp"
#include "ring_atlas/isomorphism.hpp"
#include "ring_atlas/ring.hpp"

namespace ring_atlas {

inline constexpr std::size_t kDefaultEnumerationCap = 16;
inline constexpr std::size_t kEnumerationHardMax = 32;

/// All abelian groups of order n as component lists: ascending prime, and per
/// prime the partitions of the exponent from coarsest to finest.
inline std::vector<std::vector<index_type>> abelian_groups_of_order(std::uint64_t n) {
  if (n < 1) fail(ErrorKind::invalid_parameter, "group order must be positive");
  std::vector<std::vector<index_type>> out{{}};
  for (auto [p, e] : factorize(n)) {
    std::vector<std::vector<index_type>> local;
    std::vector<unsigned> parts;
    // Partitions in reverse lexicographic order, parts non-increasing.
    auto rec = [&](auto& self, unsigned rest, unsigned max_part) -> void {
      if (rest == 0) {
        std::vector<index_type> comps;
        for (unsigned k : parts) comps.push_back(static_cast<index_type>(ipow(p, k)));
        local.push_back(std::move(comps));
        return;
      }
      for (unsigned k = std::min(rest, max_part); k >= 1; --k) {
        parts.push_back(k);
        self(self, rest - k, k);
        parts.pop_back();
      }
    };
    rec(rec, e, e);
    std::vector<std::vector<index_type>> next;
    for (const auto& prefix : out)
      for (const auto& tail : local) {
        auto joined = prefix;
        joined.insert(joined.end(), tail.begin(), tail.end());
        next.push_back(std::move(joined));
      }
    out = std::move(next);
  }
  return out;
}

struct EnumerationBudget {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0;       // 0 = unlimited
};

struct EnumerationTask {
  std::uint64_t order = 0;
  std::vector<index_type> additive_group;  // empty: every group of this order
  EnumerationBudget budget;
  bool dedupe = true;
  std::size_t cap = kDefaultEnumerationCap;
  unsigned threads = 1;
};

struct GroupCensus {
  std::vector<index_type> components;
  std::uint64_t structures = 0;  // labelled rings with identity at the first basis vector
  std::uint64_t classes = 0;     // isomorphism classes (equals structures without dedupe)
};

struct EnumerationResult {
  std::vector<FiniteRing> rings;
  std::vector<GroupCensus> groups;
  std::uint64_t nodes = 0;
};

/// Thrown when the budget runs out; carries everything found so far.
class EnumerationBudgetExhausted : public Error {
 public:
  EnumerationBudgetExhausted(const std::string& what, EnumerationResult partial)
      : Error(ErrorKind::budget_exhausted, what), partial_(std::move(partial)) {}
  const EnumerationResult& partial() const noexcept { return partial_; }

 private:
  EnumerationResult partial_;
};

namespace detail {

class BudgetTracker {
 public:
  explicit BudgetTracker(EnumerationBudget budget) : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  /// Counts one node; false once the budget is exhausted.
  bool tick() {
    const std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (exhausted_.load(std::memory_order_relaxed)) return false;
    if (budget_.max_nodes && n > budget_.max_nodes) exhausted_ = true;
    if (budget_.max_seconds > 0 && (n & 255u) == 0) {
      std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed.count() > budget_.max_seconds) exhausted_ = true;
    }
    return !exhausted_.load(std::memory_order_relaxed);
  }
  bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
  std::uint64_t nodes() const { return nodes_.load(std::memory_order_relaxed); }

 private:
  EnumerationBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> exhausted_{false};
};

/// Runs f(i) for i in [0, count) on up to `threads` workers.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  pool.clear();
  if (error) std::rethrow_exception(error);
}

using Endo = std::vector<index_type>;

/// Unital rings on a p-group G with identity fixed at the first basis vector
/// e1. Such a ring is the same thing as a subring S of End(G) containing the
/// identity for which s -> s(e1) is a bijection S -> G (S = left regular
/// representation). Starting from S = <id>, the least g outside S(e1) must
/// be the image of e1 under L_g, so the search branches over endomorphisms A
/// with A(e1) = g and replaces S by the ring closure of S and A. Every
/// structure is reached along exactly one path.
class PrimaryRingSearch {
 public:
  PrimaryRingSearch(std::vector<index_type> components, BudgetTracker& budget)
      : comps_(std::move(components)), budget_(budget) {
    strides_ = strides_of(comps_);
    n_ = 1;
    for (index_type d : comps_) n_ *= d;
    coords_.assign(n_, std::vector<index_type>(comps_.size()));
    for (index_type x = 0; x < n_; ++x) {
      index_type rest = x;
      for (std::size_t j = 0; j < comps_.size(); ++j) {
        coords_[x][j] = rest % comps_[j];
        rest /= comps_[j];
      }
    }
    add_.resize(n_ * n_);
    for (index_type a = 0; a < n_; ++a)
      for (index_type b = 0; b < n_; ++b) {
        index_type s = 0;
        for (std::size_t j = 0; j < comps_.size(); ++j) s += (coords_[a][j] + coords_[b][j]) % comps_[j] * strides_[j];
        add_[a * n_ + b] = s;
      }
    // Images allowed for basis vector j: elements killed by d_j.
    for (index_type d : comps_) {
      std::vector<index_type> killed;
      for (index_type x = 0; x < n_; ++x)
        if (std::ranges::all_of(std::views::iota(std::size_t{0}, comps_.size()),
                                [&](std::size_t j) { return coords_[x][j] * d % comps_[j] == 0; }))
          killed.push_back(x);
      killed_.push_back(std::move(killed));
    }
  }

  struct State {
    std::vector<Endo> elems;
    std::vector<int> slot;  // eval value -> position in elems, -1 if absent
  };

  State initial() const {
    State s;
    s.slot.assign(n_, -1);
    s.elems.push_back(Endo(n_, 0));
    s.slot[0] = 0;
    Endo id(n_);
    for (index_type x = 0; x < n_; ++x) id[x] = x;
    if (!close_with(s, std::move(id))) fail(ErrorKind::internal_error, "identity closure failed");
    return s;
  }

  /// Candidate generators at a state: all A with A(e1) = least missing g.
  std::vector<Endo> candidates(const State& s) const {
    index_type g = 0;
    while (s.slot[g] >= 0) ++g;
    const std::size_t r = comps_.size();
    std::vector<index_type> images(r, 0);
    images[0] = g;
    std::vector<Endo> out;
    auto rec = [&](auto& self, std::size_t j) -> void {
      if (j == r) {
        out.push_back(build(images));
        return;
      }
      for (index_type y : killed_[j]) {
        images[j] = y;
        self(self, j + 1);
      }
    };
    rec(rec, 1);
    return out;
  }

  /// Extends `s` by the ring closure with `a`; false if evaluation at e1
  /// stops being injective.
  bool close_with(State& s, Endo a) const {
    std::vector<std::size_t> work;
    if (!insert(s, std::move(a), work)) return false;
    Endo tmp(n_);
    while (!work.empty()) {
      const std::size_t u = work.back();
      work.pop_back();
      const std::size_t size = s.elems.size();
      for (std::size_t t = 0; t < size; ++t) {
        for (int op = 0; op < 3; ++op) {
          const Endo& x = s.elems[u];
          const Endo& y = s.elems[t];
          for (index_type v = 0; v < n_; ++v) {
            if (op == 0) tmp[v] = add_[x[v] * n_ + y[v]];
            else if (op == 1) tmp[v] = x[y[v]];
            else tmp[v] = y[x[v]];
          }
          if (!insert(s, tmp, work)) return false;
        }
      }
    }
    return true;
  }

  bool complete(const State& s) const { return s.elems.size() == n_; }

  /// Multiplication table x*y = L_x(y).
  std::vector<index_type> table(const State& s) const {
    std::vector<index_type> mul(n_ * n_);
    for (index_type x = 0; x < n_; ++x) {
      const Endo& lx = s.elems[s.slot[x]];
      std::copy(lx.begin(), lx.end(), mul.begin() + x * n_);
    }
    return mul;
  }

  /// Depth-first search from `s`, appending complete tables to `out`.
  void search(const State& s, std::vector<std::vector<index_type>>& out) const {
    if (complete(s)) {
      out.push_back(table(s));
      return;
    }
    for (auto& a : candidates(s)) {
      if (!budget_.tick()) return;
      if (!compatible(s, a)) continue;
      State next = s;
      if (close_with(next, std::move(a))) search(next, out);
    }
  }

  /// Products of `a` with members of `s` that already have a slot must land
  /// on that slot's endomorphism. Cheap necessary condition for close_with.
  bool compatible(const State& s, const Endo& a) const {
    for (const Endo& t : s.elems) {
      const int at = s.slot[a[t[1]]];
      if (at >= 0) {
        const Endo& want = s.elems[at];
        for (index_type v = 0; v < n_; ++v)
          if (a[t[v]] != want[v]) return false;
      }
      const int ta = s.slot[t[a[1]]];
      if (ta >= 0) {
        const Endo& want = s.elems[ta];
        for (index_type v = 0; v < n_; ++v)
          if (t[a[v]] != want[v]) return false;
      }
    }
    return true;
  }

  index_type order() const { return n_; }
  const std::vector<index_type>& components() const { return comps_; }

 private:
  Endo build(const std::vector<index_type>& images) const {
    Endo e(n_, 0);
    for (index_type x = 1; x < n_; ++x) {
      std::size_t j = 0;
      while (coords_[x][j] == 0) ++j;
      e[x] = add_[e[x - strides_[j]] * n_ + images[j]];
    }
    return e;
  }

  bool insert(State& s, const Endo& e, std::vector<std::size_t>& work) const {
    const index_type key = e[1];  // e1 has index 1
    if (s.slot[key] >= 0) return s.elems[s.slot[key]] == e;
    s.slot[key] = static_cast<int>(s.elems.size());
    s.elems.push_back(e);
    work.push_back(s.elems.size() - 1);
    return true;
  }

  std::vector<index_type> comps_;
  BudgetTracker& budget_;
  std::vector<index_type> strides_;
  index_type n_ = 0;
  std::vector<std::vector<index_type>> coords_;
  std::vector<index_type> add_;
  std::vector<std::vector<index_type>> killed_;
};

inline std::string group_string(std::span<const index_type> comps) {
  std::string s = "[";
  for (std::size_t i = 0; i < comps.size(); ++i) s += (i ? "," : "") + std::to_string(comps[i]);
  return s + "]";
}

/// Representatives of isomorphism classes, keeping the first of each class
/// in input order.
class IsomorphismDeduper {
 public:
  /// Returns true if `r` starts a new class.
  bool offer(RingProfile profile) {
    const auto& f = profile.print;
    auto key = std::make_tuple(f.characteristic, f.unit_count, f.radical_size, f.center_size, f.idempotent_count);
    auto& bucket = buckets_[key];
    for (std::size_t i : bucket)
      if (is_isomorphic(reps_[i], profile)) return false;
    bucket.push_back(reps_.size());
    reps_.push_back(std::move(profile));
    return true;
  }
  const std::vector<RingProfile>& representatives() const { return reps_; }

 private:
  std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>, std::vector<std::size_t>>
      buckets_;
  std::vector<RingProfile> reps_;
};

struct PrimaryCensus {
  std::vector<FiniteRing> rings;
  std::uint64_t structures = 0;
  bool complete = true;
};

inline PrimaryCensus enumerate_primary(const std::vector<index_type>& comps, bool dedupe, unsigned threads,
                                       BudgetTracker& budget) {
  PrimaryRingSearch search(comps, budget);
  const auto root = search.initial();
  PrimaryCensus census;
  std::vector<std::vector<std::vector<index_type>>> tables;
  if (search.complete(root)) {
    tables.push_back({search.table(root)});
  } else {
    const auto top = search.candidates(root);
    tables.resize(top.size());
    parallel_for(top.size(), threads, [&](std::size_t i) {
      if (!budget.tick()) return;
      auto s = root;
      if (search.compatible(s, top[i]) && search.close_with(s, top[i])) search.search(s, tables[i]);
    });
  }
  census.complete = !budget.exhausted();
  std::vector<std::vector<index_type>> flat;
  for (auto& part : tables)
    for (auto& t : part) flat.push_back(std::move(t));
  census.structures = flat.size();
  const std::string base = "R" + std::to_string(search.order()) + group_string(comps) + "#";
  auto make = [&](std::size_t i) { return FiniteRing::from_structure(comps, std::move(flat[i]), 1, base); };
  if (!dedupe) {
    for (std::size_t i = 0; i < flat.size(); ++i)
      census.rings.push_back(make(i).relabeled(base + std::to_string(i + 1)));
    return census;
  }
  IsomorphismDeduper deduper;
  constexpr std::size_t chunk = 512;
  for (std::size_t lo = 0; lo < flat.size(); lo += chunk) {
    const std::size_t hi = std::min(flat.size(), lo + chunk);
    std::vector<std::optional<RingProfile>> profiles(hi - lo);
    parallel_for(hi - lo, threads, [&](std::size_t k) { profiles[k].emplace(make(lo + k)); });
    for (auto& p : profiles) deduper.offer(std::move(*p));
  }
  for (const auto& rep : deduper.representatives())
    census.rings.push_back(rep.ring.relabeled(base + std::to_string(census.rings.size() + 1)));
  return census;
}

}  // namespace detail

/// Unital rings of the task's order (optionally one additive group), as
/// isomorphism-class representatives when `dedupe`. Composite orders are
/// assembled as direct sums of the primary parts.
inline EnumerationResult enumerate_unital_rings(const EnumerationTask& task) {
  const std::size_t cap = std::min(task.cap, kEnumerationHardMax);
  if (task.cap > kEnumerationHardMax)
    fail(ErrorKind::invalid_parameter, "enumeration cap cannot exceed " + std::to_string(kEnumerationHardMax));
  if (task.order < 1) fail(ErrorKind::invalid_parameter, "order must be positive");
  if (task.order > cap)
    fail(ErrorKind::resource_limit,
         "order " + std::to_string(task.order) + " exceeds the enumeration cap " + std::to_string(cap));
  std::vector<std::vector<index_type>> groups;
  if (task.additive_group.empty()) {
    groups = abelian_groups_of_order(task.order);
  } else {
    auto all = abelian_groups_of_order(task.order);
    if (std::ranges::find(all, task.additive_group) == all.end())
      fail(ErrorKind::invalid_parameter, "additive group " + detail::group_string(task.additive_group) +
                                             " is not a normalized group of order " + std::to_string(task.order));
    groups.push_back(task.additive_group);
  }
  EnumerationResult result;
  if (task.order == 1) return result;

  detail::BudgetTracker budget(task.budget);
  std::map<std::vector<index_type>, detail::PrimaryCensus> primary;
  for (const auto& comps : groups) {
    std::vector<FiniteRing> rings{};
    std::vector<std::vector<FiniteRing>> per_prime;
    std::uint64_t structures = 1;
    bool first = true;
    for (auto [p, e] : factorize(task.order)) {
      std::vector<index_type> part;
      for (index_type d : comps)
        if (d % p == 0) part.push_back(d);
      auto it = primary.find(part);
      if (it == primary.end()) it = primary.emplace(part, detail::enumerate_primary(part, task.dedupe, task.threads, budget)).first;
      structures *= it->second.structures;
      if (first) {
        rings = it->second.rings;
        first = false;
      } else {
        std::vector<FiniteRing> next;
        for (const auto& a : rings)
          for (const auto& b : it->second.rings) next.push_back(direct_sum(a, b));
        rings = std::move(next);
      }
      if (budget.exhausted()) break;
    }
    result.groups.push_back({comps, structures, rings.size()});
    result.rings.insert(result.rings.end(), rings.begin(), rings.end());
    if (budget.exhausted()) break;
  }
  result.nodes = budget.nodes();
  if (budget.exhausted())
    throw EnumerationBudgetExhausted("enumeration of order " + std::to_string(task.order) + " stopped after " +
                                         std::to_string(result.nodes) + " nodes",
                                     std::move(result));
  return result;
}

}  // namespace ring_atlas
