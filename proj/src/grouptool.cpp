#include "cubics/grouptool.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <set>
#include <thread>

namespace cubics {

namespace {

uint64_t fnv1a(std::span<const uint8_t> bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

int FiniteGroup::lookup(std::span<const uint8_t> key) const {
  size_t mask = hash_slots_.size() - 1;
  size_t pos = fnv1a(key) & mask;
  for (;;) {
    uint32_t slot = hash_slots_[pos];
    if (slot == 0) return -1;
    int idx = int(slot - 1);
    if (std::equal(key.begin(), key.end(), bytes_.begin() + size_t(idx) * width_))
      return idx;
    pos = (pos + 1) & mask;
  }
}

void FiniteGroup::index_elements() {
  size_t want = std::bit_ceil(std::max<size_t>(16, count_ * 2));
  hash_slots_.assign(want, 0);
  size_t mask = want - 1;
  for (size_t i = 0; i < count_; ++i) {
    std::span<const uint8_t> key{bytes_.data() + i * width_, size_t(width_)};
    size_t pos = fnv1a(key) & mask;
    while (hash_slots_[pos] != 0) {
      int idx = int(hash_slots_[pos] - 1);
      if (std::equal(key.begin(), key.end(), bytes_.begin() + size_t(idx) * width_))
        throw std::invalid_argument("FiniteGroup: duplicate element");
      pos = (pos + 1) & mask;
    }
    hash_slots_[pos] = uint32_t(i + 1);
  }
}

int FiniteGroup::mul_raw(int i, int j) const {
  const uint8_t* a = bytes_.data() + size_t(i) * width_;
  const uint8_t* b = bytes_.data() + size_t(j) * width_;
  std::array<uint8_t, 16> out{};
  if (kind_ == Kind::matrix) {
    const FieldSpec& F = *spec_;
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) {
        uint8_t s = 0;
        for (int l = 0; l < n_; ++l) s ^= F.mul(a[r * n_ + l], b[l * n_ + c]);
        out[r * n_ + c] = s;
      }
    if (projective_) {
      for (int p = 0; p < width_; ++p) {
        if (out[p] != 0) {
          if (out[p] != 1) {
            uint8_t s = F.inv(out[p]);
            for (int q = p; q < width_; ++q) out[q] = F.mul(out[q], s);
          }
          break;
        }
      }
    }
  } else {
    for (int p = 0; p < n_; ++p) out[p] = a[b[p]];
  }
  int idx = lookup({out.data(), size_t(width_)});
  if (idx < 0) throw std::logic_error("FiniteGroup: product escaped the element set");
  return idx;
}

int FiniteGroup::mul(int i, int j) const {
  if (!mul_table_.empty()) return mul_table_[size_t(i) * count_ + j];
  return mul_raw(i, j);
}

void FiniteGroup::build_mul_table() {
  if (count_ > kMulTableLimit) return;
  mul_table_.resize(count_ * count_);
  for (size_t i = 0; i < count_; ++i)
    for (size_t j = 0; j < count_; ++j)
      mul_table_[i * count_ + j] = uint16_t(mul_raw(int(i), int(j)));
}

int FiniteGroup::inverse(int i) const {
  if (kind_ == Kind::matrix) {
    Matrix inv = matrix_at(i).inverse().value();
    if (projective_) inv.projective_normalize();
    int idx = lookup(inv.data());
    if (idx < 0) throw std::logic_error("FiniteGroup: inverse escaped the element set");
    return idx;
  }
  const uint8_t* a = bytes_.data() + size_t(i) * width_;
  std::array<uint8_t, 16> out{};
  for (int p = 0; p < n_; ++p) out[a[p]] = uint8_t(p);
  int idx = lookup({out.data(), size_t(width_)});
  if (idx < 0) throw std::logic_error("FiniteGroup: inverse escaped the element set");
  return idx;
}

int FiniteGroup::element_order(int i) const {
  int ord = 1;
  int x = i;
  while (x != 0) {
    x = mul(x, i);
    ++ord;
    if (size_t(ord) > count_) throw std::logic_error("element_order: runaway");
  }
  return ord;
}

Matrix FiniteGroup::matrix_at(int i) const {
  if (kind_ != Kind::matrix) throw std::logic_error("matrix_at: permutation group");
  Matrix m(n_, *spec_);
  const uint8_t* a = bytes_.data() + size_t(i) * width_;
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) m.set(r, c, a[r * n_ + c]);
  return m;
}

std::optional<int> FiniteGroup::find_matrix(Matrix m) const {
  if (kind_ != Kind::matrix || m.n() != n_ || &m.field() != spec_) return std::nullopt;
  if (projective_) m.projective_normalize();
  int idx = lookup(m.data());
  if (idx < 0) return std::nullopt;
  return idx;
}

void FiniteGroup::pick_generators() {
  if (!gens_.empty()) return;
  std::vector<int> gens;
  std::vector<char> in(count_, 0);
  in[0] = 1;
  size_t covered = 1;
  while (covered < count_) {
    int next = -1;
    for (size_t i = 1; i < count_; ++i)
      if (!in[i]) {
        next = int(i);
        break;
      }
    gens.push_back(next);
    // Re-close from scratch with the enlarged generating set.
    std::fill(in.begin(), in.end(), 0);
    in[0] = 1;
    covered = 1;
    std::vector<int> queue{0};
    while (!queue.empty()) {
      int x = queue.back();
      queue.pop_back();
      for (int g : gens) {
        int y = mul(x, g);
        if (!in[y]) {
          in[y] = 1;
          ++covered;
          queue.push_back(y);
        }
      }
    }
  }
  gens_ = gens;
}

FiniteGroup FiniteGroup::matrix_closure(int n, const FieldSpec& spec,
                                        const std::vector<Matrix>& generators,
                                        size_t limit, bool projective) {
  FiniteGroup G;
  G.kind_ = Kind::matrix;
  G.n_ = n;
  G.spec_ = &spec;
  G.projective_ = projective;
  G.width_ = n * n;

  auto key_of = [&](Matrix m) {
    if (projective) m.projective_normalize();
    std::array<uint8_t, 16> key{};
    std::copy(m.data().begin(), m.data().end(), key.begin());
    return key;
  };

  // Grow-as-you-go open addressing during the BFS.
  std::vector<uint32_t> slots(64, 0);
  auto insert = [&](const std::array<uint8_t, 16>& key) -> int {
    if ((G.count_ + 1) * 2 > slots.size()) {
      std::vector<uint32_t> bigger(slots.size() * 4, 0);
      size_t mask = bigger.size() - 1;
      for (size_t i = 0; i < G.count_; ++i) {
        size_t pos =
            fnv1a({G.bytes_.data() + i * G.width_, size_t(G.width_)}) & mask;
        while (bigger[pos] != 0) pos = (pos + 1) & mask;
        bigger[pos] = uint32_t(i + 1);
      }
      slots.swap(bigger);
    }
    size_t mask = slots.size() - 1;
    size_t pos = fnv1a({key.data(), size_t(G.width_)}) & mask;
    while (slots[pos] != 0) {
      int idx = int(slots[pos] - 1);
      if (std::equal(key.begin(), key.begin() + G.width_,
                     G.bytes_.begin() + size_t(idx) * G.width_))
        return idx;
      pos = (pos + 1) & mask;
    }
    G.bytes_.insert(G.bytes_.end(), key.begin(), key.begin() + G.width_);
    slots[pos] = uint32_t(++G.count_);
    return int(G.count_ - 1);
  };

  insert(key_of(Matrix::identity(n, spec)));
  std::vector<Matrix> gens;
  for (const Matrix& g : generators) {
    if (!g.inverse().has_value())
      throw std::invalid_argument("matrix_closure: singular generator");
    Matrix c = g;
    if (projective) c.projective_normalize();
    gens.push_back(c);
  }

  for (size_t head = 0; head < G.count_; ++head) {
    Matrix x(n, spec);
    {
      const uint8_t* a = G.bytes_.data() + head * G.width_;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) x.set(r, c, a[r * n + c]);
    }
    for (const Matrix& g : gens) {
      insert(key_of(x * g));
      if (G.count_ > limit) throw LimitExceeded("matrix_closure: order limit passed");
    }
  }

  G.index_elements();
  G.build_mul_table();
  for (const Matrix& g : gens) G.gens_.push_back(G.lookup(g.data()));
  if (G.gens_.empty()) G.pick_generators();
  return G;
}

FiniteGroup FiniteGroup::permutation_closure(
    int degree, const std::vector<std::vector<uint8_t>>& generators, size_t limit) {
  if (degree < 1 || degree > 16)
    throw std::invalid_argument("permutation_closure: degree 1..16");
  FiniteGroup G;
  G.kind_ = Kind::permutation;
  G.n_ = degree;
  G.width_ = degree;

  std::vector<uint32_t> slots(64, 0);
  auto insert = [&](const std::array<uint8_t, 16>& key) -> int {
    if ((G.count_ + 1) * 2 > slots.size()) {
      std::vector<uint32_t> bigger(slots.size() * 4, 0);
      size_t mask = bigger.size() - 1;
      for (size_t i = 0; i < G.count_; ++i) {
        size_t pos =
            fnv1a({G.bytes_.data() + i * G.width_, size_t(G.width_)}) & mask;
        while (bigger[pos] != 0) pos = (pos + 1) & mask;
        bigger[pos] = uint32_t(i + 1);
      }
      slots.swap(bigger);
    }
    size_t mask = slots.size() - 1;
    size_t pos = fnv1a({key.data(), size_t(G.width_)}) & mask;
    while (slots[pos] != 0) {
      int idx = int(slots[pos] - 1);
      if (std::equal(key.begin(), key.begin() + G.width_,
                     G.bytes_.begin() + size_t(idx) * G.width_))
        return idx;
      pos = (pos + 1) & mask;
    }
    G.bytes_.insert(G.bytes_.end(), key.begin(), key.begin() + G.width_);
    slots[pos] = uint32_t(++G.count_);
    return int(G.count_ - 1);
  };

  std::array<uint8_t, 16> id{};
  for (int i = 0; i < degree; ++i) id[i] = uint8_t(i);
  insert(id);

  std::vector<std::array<uint8_t, 16>> gens;
  for (const auto& g : generators) {
    if (int(g.size()) != degree)
      throw std::invalid_argument("permutation_closure: wrong degree");
    std::array<uint8_t, 16> key{};
    std::vector<char> seen(degree, 0);
    for (int i = 0; i < degree; ++i) {
      if (g[i] >= degree || seen[g[i]])
        throw std::invalid_argument("permutation_closure: not a permutation");
      seen[g[i]] = 1;
      key[i] = g[i];
    }
    gens.push_back(key);
  }

  for (size_t head = 0; head < G.count_; ++head) {
    std::array<uint8_t, 16> x{};
    std::copy_n(G.bytes_.begin() + head * G.width_, G.width_, x.begin());
    for (const auto& g : gens) {
      std::array<uint8_t, 16> y{};
      for (int p = 0; p < degree; ++p) y[p] = x[g[p]];
      insert(y);
      if (G.count_ > limit)
        throw LimitExceeded("permutation_closure: order limit passed");
    }
  }

  G.index_elements();
  G.build_mul_table();
  for (const auto& g : gens) G.gens_.push_back(G.lookup({g.data(), size_t(degree)}));
  if (G.gens_.empty()) G.pick_generators();
  return G;
}

FiniteGroup FiniteGroup::from_matrices(int n, const FieldSpec& spec,
                                       std::vector<Matrix> elements, bool projective) {
  FiniteGroup G;
  G.kind_ = Kind::matrix;
  G.n_ = n;
  G.spec_ = &spec;
  G.projective_ = projective;
  G.width_ = n * n;

  Matrix id = Matrix::identity(n, spec);
  std::stable_partition(elements.begin(), elements.end(),
                        [&](const Matrix& m) { return m == id; });
  if (elements.empty() || !(elements.front() == id))
    throw std::invalid_argument("from_matrices: identity missing");

  for (Matrix m : elements) {
    if (projective) m.projective_normalize();
    G.bytes_.insert(G.bytes_.end(), m.data().begin(), m.data().end());
    ++G.count_;
  }
  G.index_elements();
  G.build_mul_table();
  G.pick_generators();
  return G;
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& G) {
  size_t n = G.order();
  ConjugacyClasses cc;
  cc.class_of.assign(n, -1);
  std::vector<int> geninv;
  for (int g : G.generator_indices()) geninv.push_back(G.inverse(g));

  for (size_t start = 0; start < n; ++start) {
    if (cc.class_of[start] != -1) continue;
    int cid = int(cc.reps.size());
    cc.reps.push_back(int(start));
    cc.class_of[start] = cid;
    long size = 1;
    std::vector<int> queue{int(start)};
    while (!queue.empty()) {
      int x = queue.back();
      queue.pop_back();
      for (size_t gi = 0; gi < G.generator_indices().size(); ++gi) {
        int y = G.mul(G.mul(geninv[gi], x), G.generator_indices()[gi]);
        if (cc.class_of[y] == -1) {
          cc.class_of[y] = cid;
          ++size;
          queue.push_back(y);
        }
      }
    }
    cc.sizes.push_back(size);
  }
  return cc;
}

std::vector<int> generated_subgroup(const FiniteGroup& G, const std::vector<int>& seeds) {
  std::vector<char> in(G.order(), 0);
  std::vector<int> members{0};
  in[0] = 1;
  std::vector<int> queue{0};
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    for (int g : seeds) {
      int y = G.mul(x, g);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
        queue.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<int> small_generating_set(const FiniteGroup& G,
                                      std::span<const int> members) {
  std::vector<int> gens;
  std::vector<int> cur{0};
  for (int m : members) {
    if (std::binary_search(cur.begin(), cur.end(), m)) continue;
    gens.push_back(m);
    cur = generated_subgroup(G, gens);
    if (cur.size() == members.size()) break;
  }
  return gens;
}

namespace {

// Normal closure of a conjugacy class: grow a generating set from class
// members until the generated subgroup swallows the whole class.
std::vector<int> class_closure(const FiniteGroup& G, const ConjugacyClasses& cc,
                               int cid) {
  std::vector<int> gens{cc.reps[cid]};
  std::vector<int> H = generated_subgroup(G, gens);
  for (;;) {
    int missing = -1;
    for (size_t i = 0; i < G.order(); ++i) {
      if (cc.class_of[i] == cid && !std::binary_search(H.begin(), H.end(), int(i))) {
        missing = int(i);
        break;
      }
    }
    if (missing < 0) return H;
    gens.push_back(missing);
    H = generated_subgroup(G, gens);
  }
}

std::vector<int> join_subgroups(const FiniteGroup& G, const std::vector<int>& A,
                                const std::vector<int>& B) {
  std::vector<int> both;
  std::merge(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(both));
  both.erase(std::unique(both.begin(), both.end()), both.end());
  std::vector<int> gens;
  std::vector<int> cur{0};
  for (int m : both) {
    if (std::binary_search(cur.begin(), cur.end(), m)) continue;
    gens.push_back(m);
    cur = generated_subgroup(G, gens);
  }
  return cur;
}

bool subgroup_abelian(const FiniteGroup& G, const std::vector<int>& members) {
  std::vector<int> gens = small_generating_set(G, members);
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (G.mul(gens[i], gens[j]) != G.mul(gens[j], gens[i])) return false;
  return true;
}

}  // namespace

NormalSubgroupLattice normal_subgroups(const FiniteGroup& G) {
  ConjugacyClasses cc = conjugacy_classes(G);
  if (cc.reps.size() > 64)
    throw ClassLimitExceeded("normal_subgroups: more than 64 conjugacy classes");

  std::set<std::vector<int>> pool;
  std::vector<int> trivial{0};
  std::vector<int> full(G.order());
  for (size_t i = 0; i < G.order(); ++i) full[i] = int(i);
  pool.insert(trivial);
  pool.insert(full);
  for (size_t cid = 0; cid < cc.reps.size(); ++cid)
    pool.insert(class_closure(G, cc, int(cid)));

  // Close under pairwise join and intersection.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> items(pool.begin(), pool.end());
    for (size_t i = 0; i < items.size() && !grew; ++i) {
      for (size_t j = i + 1; j < items.size() && !grew; ++j) {
        std::vector<int> meet;
        std::set_intersection(items[i].begin(), items[i].end(), items[j].begin(),
                              items[j].end(), std::back_inserter(meet));
        if (pool.insert(meet).second) grew = true;
        std::vector<int> join = join_subgroups(G, items[i], items[j]);
        if (pool.insert(join).second) grew = true;
      }
    }
  }

  NormalSubgroupLattice lattice;
  for (const auto& members : pool)
    lattice.subgroups.push_back({members, subgroup_abelian(G, members)});
  std::sort(lattice.subgroups.begin(), lattice.subgroups.end(),
            [](const NormalSubgroup& a, const NormalSubgroup& b) {
              if (a.members.size() != b.members.size())
                return a.members.size() < b.members.size();
              return a.members < b.members;
            });
  return lattice;
}

long min_index_normal_abelian(const FiniteGroup& G) {
  NormalSubgroupLattice lattice = normal_subgroups(G);
  size_t best = 1;
  for (const auto& sub : lattice.subgroups)
    if (sub.abelian) best = std::max(best, sub.members.size());
  return long(G.order() / best);
}

const FiniteGroup& pgl4_f2() {
  static const FiniteGroup G = [] {
    const FieldSpec& F2 = FieldSpec::get(1);
    Matrix transvection = Matrix::identity(4, F2);
    transvection.set(0, 1, 1);
    Matrix cycle(4, F2);  // e_i -> e_{i+1 mod 4}
    for (int i = 0; i < 4; ++i) cycle.set((i + 1) % 4, i, 1);
    FiniteGroup g =
        FiniteGroup::matrix_closure(4, F2, {transvection, cycle}, 30000);
    if (g.order() != 20160) throw std::logic_error("pgl4_f2: wrong order");
    return g;
  }();
  return G;
}

FiniteGroup pgl3_group(const FieldSpec& spec) {
  Matrix transvection = Matrix::identity(3, spec);
  transvection.set(0, 1, 1);
  Matrix cycle(3, spec);
  for (int i = 0; i < 3; ++i) cycle.set((i + 1) % 3, i, 1);
  std::vector<Matrix> gens{transvection, cycle};
  if (spec.q() > 2) {
    Matrix diag = Matrix::identity(3, spec);
    diag.set(0, 0, 2);  // x, a generator of the multiplicative group
    gens.push_back(diag);
  }
  long q = spec.q();
  size_t expected = size_t(q * q * q) * size_t(q * q * q - 1) * size_t(q * q - 1);
  FiniteGroup G = FiniteGroup::matrix_closure(3, spec, gens, expected + 1);
  if (G.order() != expected) throw std::logic_error("pgl3_group: wrong order");
  return G;
}

FiniteGroup symplectic_group(const Matrix& omega) {
  const FiniteGroup& G = pgl4_f2();
  std::vector<Matrix> members;
  for (size_t i = 0; i < G.order(); ++i) {
    Matrix g = G.matrix_at(int(i));
    if (g.transposed() * omega * g == omega) members.push_back(g);
  }
  return FiniteGroup::from_matrices(4, omega.field(), std::move(members));
}

FiniteGroup stabilizer(const FiniteGroup& group, const CubicForm& f) {
  if (group.kind() != FiniteGroup::Kind::matrix)
    throw std::invalid_argument("stabilizer: matrix group required");
  std::vector<Matrix> members;
  if (group.field().q() == 2 && group.dimension() == 4 && f.spec->q() == 2) {
    uint32_t w = form_index(f);
    for (size_t i = 0; i < group.order(); ++i) {
      Matrix g = group.matrix_at(int(i));
      if (Gf2FormAction(g).image(w) == w) members.push_back(g);
    }
  } else {
    for (size_t i = 0; i < group.order(); ++i) {
      Matrix g = group.matrix_at(int(i));
      if (act(g, f) == f) members.push_back(g);
    }
  }
  return FiniteGroup::from_matrices(group.dimension(), group.field(),
                                    std::move(members));
}

// ---- PGL_3(F_8), packed representation ------------------------------------
//
// A scalar-normalized 3x3 matrix over GF(8) packs into 27 bits (3 per entry,
// row-major). 16 482 816 elements; a bitset over the 2^27 code space stands
// in for a hash index.

namespace {

struct Gf8Packed {
  const FieldSpec& F = FieldSpec::get(3);
  uint8_t mul[8][8];
  uint8_t inv[8];

  Gf8Packed() {
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) mul[a][b] = F.mul(uint8_t(a), uint8_t(b));
    inv[0] = 0;
    for (int a = 1; a < 8; ++a) inv[a] = F.inv(uint8_t(a));
  }

  static uint32_t encode(const uint8_t* e) {
    uint32_t c = 0;
    for (int i = 0; i < 9; ++i) c |= uint32_t(e[i]) << (3 * i);
    return c;
  }

  static void decode(uint32_t c, uint8_t* e) {
    for (int i = 0; i < 9; ++i) e[i] = uint8_t(c >> (3 * i) & 7);
  }

  uint32_t normalize(uint8_t* e) const {
    for (int i = 0; i < 9; ++i) {
      if (e[i] != 0) {
        if (e[i] != 1) {
          uint8_t s = inv[e[i]];
          for (int j = i; j < 9; ++j) e[j] = mul[s][e[j]];
        }
        break;
      }
    }
    return encode(e);
  }

  uint32_t mul_codes(uint32_t ca, uint32_t cb) const {
    uint8_t a[9], b[9], out[9];
    decode(ca, a);
    decode(cb, b);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        out[3 * r + c] = uint8_t(mul[a[3 * r]][b[c]] ^ mul[a[3 * r + 1]][b[3 + c]] ^
                                 mul[a[3 * r + 2]][b[6 + c]]);
    return normalize(out);
  }
};

struct CodeBitset {
  std::vector<uint64_t> bits;
  explicit CodeBitset(size_t n) : bits((n + 63) / 64, 0) {}
  bool test_and_set(uint32_t c) {
    uint64_t& word = bits[c >> 6];
    uint64_t mask = 1ull << (c & 63);
    if (word & mask) return true;
    word |= mask;
    return false;
  }
  void clear() { std::fill(bits.begin(), bits.end(), 0); }
};

}  // namespace

Pgl3F8Report verify_pgl3_f8_simple(int threads) {
  auto t0 = std::chrono::steady_clock::now();
  Pgl3F8Report report;
  const Gf8Packed gf;

  uint8_t id[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  uint8_t tv[9] = {1, 1, 0, 0, 1, 0, 0, 0, 1};
  uint8_t cy[9] = {0, 0, 1, 1, 0, 0, 0, 1, 0};
  uint8_t dg[9] = {2, 0, 0, 0, 1, 0, 0, 0, 1};
  std::vector<uint32_t> gens{gf.normalize(tv), gf.normalize(cy), gf.normalize(dg)};

  constexpr uint64_t kExpectedOrder = 16482816;  // 8^3 (8^3-1)(8^2-1)

  // Materialize the group.
  std::vector<uint32_t> elements;
  elements.reserve(kExpectedOrder);
  CodeBitset visited(1u << 27);
  uint32_t idc = gf.encode(id);
  visited.test_and_set(idc);
  elements.push_back(idc);
  for (size_t head = 0; head < elements.size(); ++head) {
    uint32_t x = elements[head];
    for (uint32_t g : gens) {
      uint32_t y = gf.mul_codes(x, g);
      if (!visited.test_and_set(y)) elements.push_back(y);
    }
  }
  report.order = elements.size();
  if (report.order != kExpectedOrder)
    throw std::logic_error("verify_pgl3_f8_simple: wrong order");

  // Inverses of the generators, via the generic matrix code.
  const FieldSpec& F8 = FieldSpec::get(3);
  std::vector<uint32_t> geninv;
  for (uint32_t g : gens) {
    uint8_t e[9];
    Gf8Packed::decode(g, e);
    Matrix m(3, F8);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m.set(r, c, e[3 * r + c]);
    Matrix inv = m.inverse().value();
    inv.projective_normalize();
    uint8_t ei[9];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) ei[3 * r + c] = inv.at(r, c);
    geninv.push_back(gf.encode(ei));
  }

  // Conjugacy class representatives by sweeping the element list and
  // flooding each new class orbit.
  std::vector<uint32_t> reps;
  {
    CodeBitset covered(1u << 27);
    std::vector<uint32_t> orbit;
    for (uint32_t x : elements) {
      if (covered.test_and_set(x)) continue;
      reps.push_back(x);
      orbit.clear();
      orbit.push_back(x);
      for (size_t head = 0; head < orbit.size(); ++head) {
        uint32_t e = orbit[head];
        for (size_t gi = 0; gi < gens.size(); ++gi) {
          uint32_t conj = gf.mul_codes(gf.mul_codes(geninv[gi], e), gens[gi]);
          if (!covered.test_and_set(conj)) orbit.push_back(conj);
        }
      }
    }
  }
  report.classes = int(reps.size());

  // Simplicity: for each nontrivial class rep r, the subgroup generated by r
  // and a few conjugates reaches more than half the group, hence (Lagrange)
  // is the whole group; it sits inside the normal closure of the class, so
  // that closure is the whole group too.
  std::atomic<size_t> next{1};  // reps[0] is the identity
  std::atomic<bool> ok{true};
  auto worker = [&] {
    CodeBitset seen(1u << 27);
    std::vector<uint32_t> members;
    members.reserve(kExpectedOrder / 2 + 2);
    for (;;) {
      size_t my = next.fetch_add(1);
      if (my >= reps.size() || !ok.load()) return;
      uint32_t r = reps[my];
      std::vector<uint32_t> sub_gens{r};
      for (size_t gi = 0; gi < gens.size(); ++gi)
        sub_gens.push_back(gf.mul_codes(gf.mul_codes(geninv[gi], r), gens[gi]));

      for (;;) {
        seen.clear();
        members.clear();
        members.push_back(gf.encode(id));
        seen.test_and_set(members[0]);
        bool big = false;
        for (size_t head = 0; head < members.size() && !big; ++head) {
          for (uint32_t g : sub_gens) {
            uint32_t y = gf.mul_codes(members[head], g);
            if (!seen.test_and_set(y)) {
              members.push_back(y);
              if (members.size() > kExpectedOrder / 2) {
                big = true;
                break;
              }
            }
          }
        }
        if (big) break;
        // Proper subgroup: conjugate r by the first group element that
        // pushes the closure further.
        bool extended = false;
        for (uint32_t h : elements) {
          uint8_t e[9];
          Gf8Packed::decode(h, e);
          Matrix m(3, F8);
          for (int row = 0; row < 3; ++row)
            for (int col = 0; col < 3; ++col) m.set(row, col, e[3 * row + col]);
          Matrix inv = m.inverse().value();
          inv.projective_normalize();
          uint8_t ei[9];
          for (int row = 0; row < 3; ++row)
            for (int col = 0; col < 3; ++col) ei[3 * row + col] = inv.at(row, col);
          uint32_t conj = gf.mul_codes(gf.mul_codes(gf.encode(ei), r), h);
          if (!seen.test_and_set(conj)) {
            sub_gens.push_back(conj);
            extended = true;
            break;
          }
        }
        if (!extended) {
          ok.store(false);  // genuinely proper normal closure
          return;
        }
      }
    }
  };

  int workers = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  report.simple = ok.load();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace cubics
