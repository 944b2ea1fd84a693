#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cubics/forms.hpp"
#include "cubics/gf2k.hpp"

namespace cubics {

// BFS closure passed the caller's order limit.
struct LimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conjugacy class count too large for lattice enumeration.
struct ClassLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A fully materialized finite group. Elements are canonical byte strings:
// scalar-normalized row-major matrix entries (PGL) or permutation images.
// Identity sits at index 0; multiplication is by element index. Immutable
// after construction, safe to share across threads.
class FiniteGroup {
 public:
  enum class Kind { matrix, permutation };

  // Breadth-first closure of the generators under multiplication. Throws
  // LimitExceeded if the order passes `limit`. With `projective` every
  // element is scalar-normalized, which materializes the image in PGL_n.
  static FiniteGroup matrix_closure(int n, const FieldSpec& spec,
                                    const std::vector<Matrix>& generators,
                                    size_t limit, bool projective = true);

  static FiniteGroup permutation_closure(int degree,
                                         const std::vector<std::vector<uint8_t>>& generators,
                                         size_t limit);

  // Wrap an explicit element set (must be closed under multiplication).
  static FiniteGroup from_matrices(int n, const FieldSpec& spec,
                                   std::vector<Matrix> elements,
                                   bool projective = true);

  Kind kind() const { return kind_; }
  size_t order() const { return count_; }
  int dimension() const { return n_; }
  const FieldSpec& field() const { return *spec_; }
  const std::vector<int>& generator_indices() const { return gens_; }

  int mul(int i, int j) const;
  int inverse(int i) const;
  int element_order(int i) const;

  std::span<const uint8_t> element_bytes(int i) const {
    return {bytes_.data() + size_t(i) * width_, size_t(width_)};
  }
  Matrix matrix_at(int i) const;
  std::optional<int> find_matrix(Matrix m) const;

 private:
  FiniteGroup() = default;
  void index_elements();
  void build_mul_table();
  void pick_generators();
  int lookup(std::span<const uint8_t> key) const;
  int mul_raw(int i, int j) const;

  Kind kind_ = Kind::matrix;
  int n_ = 0;  // matrix dimension or permutation degree
  const FieldSpec* spec_ = &FieldSpec::get(1);
  bool projective_ = true;
  int width_ = 0;  // bytes per element
  size_t count_ = 0;
  std::vector<uint8_t> bytes_;  // count_ * width_
  std::vector<int> gens_;
  std::vector<uint32_t> hash_slots_;  // open addressing: index+1, 0 = empty
  std::vector<uint16_t> mul_table_;   // full table when order <= kMulTableLimit

  static constexpr size_t kMulTableLimit = 2048;
};

struct ConjugacyClasses {
  std::vector<int> reps;      // least element index per class
  std::vector<int> class_of;  // element index -> class id
  std::vector<long> sizes;
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

struct NormalSubgroup {
  std::vector<int> members;  // sorted element indices
  bool abelian = false;
};

struct NormalSubgroupLattice {
  std::vector<NormalSubgroup> subgroups;  // sorted by order, then members
};

// Every normal subgroup: normal closures of conjugacy classes, closed under
// pairwise join and intersection. Requires at most 64 classes.
NormalSubgroupLattice normal_subgroups(const FiniteGroup& g);

// |G| divided by the largest order of an abelian member of the lattice.
long min_index_normal_abelian(const FiniteGroup& g);

// Subgroup generated by the seed elements (sorted indices).
std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& seeds);

// Greedy small generating set of a subgroup given as a sorted member list.
std::vector<int> small_generating_set(const FiniteGroup& g,
                                      std::span<const int> members);

// The full group PGL_4(F_2) (order 20160), materialized once from a
// transvection and a 4-cycle and cached.
const FiniteGroup& pgl4_f2();

// PGL_3(F_q) for q in {2, 4} (order q^3(q^3-1)(q^2-1)); q = 8 is handled by
// the dedicated compact routine below.
FiniteGroup pgl3_group(const FieldSpec& spec);

// Subgroup {g : g^T omega g = omega} of PGL_4(F_2), by filtering all 20160
// elements.
FiniteGroup symplectic_group(const Matrix& omega);

// Subgroup {g : act(g, f) = f}, by scanning every element of `group`.
FiniteGroup stabilizer(const FiniteGroup& group, const CubicForm& f);

// Opt-in heavyweight check: materialize PGL_3(F_8) (16 482 816 elements,
// packed 27-bit codes) and certify simplicity by showing the normal closure
// of a representative of every conjugacy class is the whole group.
struct Pgl3F8Report {
  uint64_t order = 0;
  int classes = 0;
  bool simple = false;
  double seconds = 0.0;
};
Pgl3F8Report verify_pgl3_f8_simple(int threads = 1);

}  // namespace cubics
