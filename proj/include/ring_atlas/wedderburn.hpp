#pragma once

#include <cstdint>
#include <vector>

#include "ring_atlas/arith.hpp"
#include "ring_atlas/isomorphism.hpp"
#include "ring_atlas/structure.hpp"

namespace ring_atlas {

/// A simple block M_n(GF(q)) of a semisimple ring.
struct MatrixBlock {
  unsigned n = 0;
  std::uint64_t q = 0;

  bool operator==(const MatrixBlock&) const = default;
};

/// |GL_n(q)| = prod_{i<n} (q^n - q^i).
inline std::uint64_t general_linear_order(unsigned n, std::uint64_t q) {
  std::uint64_t qn = ipow(q, n), out = 1;
  for (unsigned i = 0; i < n; ++i) out *= qn - ipow(q, i);
  return out;
}

/// Identifies a simple ring as M_n(GF(q)): candidates with q^{n^2} = |R| and
/// the right unit count, confirmed by an explicit isomorphism.
inline MatrixBlock identify_simple_block(const FiniteRing& block) {
  const std::uint64_t m = block.order();
  const RingProfile profile(block);
  for (unsigned n = 1; ipow(2, n * n) <= m; ++n) {
    for (std::uint64_t q = 2; ipow(q, n * n) <= m; ++q) {
      if (ipow(q, n * n) != m) continue;
      auto pp = prime_power(q);
      if (!pp) continue;
      if (general_linear_order(n, q) != profile.print.unit_count) continue;
      auto candidate = make_matrix_ring(make_galois_field(pp->first, pp->second), n);
      if (is_isomorphic(profile, RingProfile(candidate))) return {n, q};
    }
  }
  fail(ErrorKind::internal_error, "simple block of order " + std::to_string(m) + " is not a matrix ring over a field");
}

/// Artin-Wedderburn blocks (n_i, q_i) of a semisimple ring, one per primitive
/// central idempotent in ascending index order.
inline std::vector<MatrixBlock> wedderburn_blocks(const FiniteRing& r) {
  if (jacobson_radical(r).size() != 1)
    fail(ErrorKind::precondition_violation, "wedderburn_blocks needs a ring with zero Jacobson radical");
  std::vector<MatrixBlock> out;
  for (const auto& block : central_idempotent_split(r)) out.push_back(identify_simple_block(block.ring));
  return out;
}

}  // namespace ring_atlas
