#pragma once

#include <optional>
#include <vector>

#include "cubics/grouptool.hpp"

namespace cubics {

// A certificate computation found a false fact; the message names it.
struct CertificateFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Permutation images of a matrix group over F_2 on the canonical points of
// P^3(F_2), in enumerate_points order. The constructor path re-checks the
// homomorphism property exhaustively for |G| <= 1000.
struct PermAction {
  int degree = 0;
  std::vector<std::vector<uint8_t>> images;  // one permutation per element
  bool faithful = false;
  std::vector<int> orbit_sizes;  // ascending
};

PermAction action_on_points(const FiniteGroup& group);

// S_n as a permutation group generated by (1 2) and (1 2 ... n), n <= 7.
FiniteGroup symmetric_group(int n);

struct IsoWitness {
  // Images of a small generating set of g inside h, by element index.
  std::vector<std::pair<int, int>> generator_images;
  bool verified = false;
};

// Backtracking over images of a greedy generating set, pruned by element
// order and conjugacy-class size; candidates are tried in index order so a
// found witness is deterministic. The witness is re-verified independently
// before being returned.
std::optional<IsoWitness> is_isomorphic(const FiniteGroup& g, const FiniteGroup& h);

// Re-check a witness from scratch: close the generator correspondence over
// the full multiplication tables, then confirm bijectivity and the
// homomorphism law on every pair.
bool verify_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                        const IsoWitness& witness);

// The four arithmetic/action facts consumed by the fixed-point argument for
// the order-720 stabilizer.
struct PointActionCertificates {
  long gl3_f2_order = 0;            // (a) = 168, not divisible by 5
  bool a_pass = false;
  std::vector<size_t> normal_orders;  // (b) {1, 360, 720} + divisibility chain
  bool no_index_five_subgroup = false;
  bool b_pass = false;
  bool faithful = false;            // (c) faithful and transitive on 15 points
  bool transitive = false;
  bool c_pass = false;
  uint64_t forms_scanned = 0;       // (d) every nonzero F_2 cubic has a zero
  uint64_t forms_without_rational_point = 0;
  bool d_pass = false;
  double seconds[4] = {0, 0, 0, 0};

  bool all_pass() const { return a_pass && b_pass && c_pass && d_pass; }
};

PointActionCertificates compute_point_action_certificates(const FiniteGroup& group);

// Same, but aborts with the first failing certificate named.
PointActionCertificates point_action_certificates(const FiniteGroup& group);

}  // namespace cubics
