#include "cubics/recognize.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

#include "cubics/projspace.hpp"

namespace cubics {

PermAction action_on_points(const FiniteGroup& group) {
  if (group.kind() != FiniteGroup::Kind::matrix || group.dimension() != 4 ||
      group.field().q() != 2)
    throw std::invalid_argument("action_on_points: 4x4 group over F_2 required");

  const FieldSpec& F2 = FieldSpec::get(1);
  std::vector<ProjPoint> pts = enumerate_points(3, F2);
  std::map<std::array<uint8_t, 4>, uint8_t> point_index;
  for (size_t i = 0; i < pts.size(); ++i) point_index[pts[i].coords] = uint8_t(i);

  PermAction action;
  action.degree = int(pts.size());
  action.images.reserve(group.order());
  for (size_t e = 0; e < group.order(); ++e) {
    Matrix g = group.matrix_at(int(e));
    std::vector<uint8_t> img(pts.size());
    for (size_t p = 0; p < pts.size(); ++p)
      img[p] = point_index.at(apply(g, pts[p]).coords);
    action.images.push_back(std::move(img));
  }

  // Faithfulness: only the identity acts trivially.
  std::vector<uint8_t> id(pts.size());
  std::iota(id.begin(), id.end(), 0);
  action.faithful = true;
  for (size_t e = 1; e < group.order(); ++e)
    if (action.images[e] == id) action.faithful = false;

  // Orbits of the generator images.
  std::vector<int> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int g : group.generator_indices())
    for (size_t p = 0; p < pts.size(); ++p) {
      int a = find(int(p)), b = find(action.images[g][p]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, int> counts;
  for (size_t p = 0; p < pts.size(); ++p) ++counts[find(int(p))];
  for (const auto& [root, size] : counts) action.orbit_sizes.push_back(size);
  std::sort(action.orbit_sizes.begin(), action.orbit_sizes.end());

  if (group.order() <= 1000) {
    for (size_t i = 0; i < group.order(); ++i)
      for (size_t j = 0; j < group.order(); ++j) {
        const auto& lhs = action.images[group.mul(int(i), int(j))];
        for (size_t p = 0; p < pts.size(); ++p)
          if (lhs[p] != action.images[i][action.images[j][p]])
            throw std::logic_error("action_on_points: not a homomorphism");
      }
  }
  return action;
}

FiniteGroup symmetric_group(int n) {
  if (n < 1 || n > 7) throw std::invalid_argument("symmetric_group: n in 1..7");
  size_t factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= size_t(i);
  std::vector<std::vector<uint8_t>> gens;
  if (n >= 2) {
    std::vector<uint8_t> transposition(n), cycle(n);
    std::iota(transposition.begin(), transposition.end(), 0);
    std::swap(transposition[0], transposition[1]);
    for (int i = 0; i < n; ++i) cycle[i] = uint8_t((i + 1) % n);
    gens = {transposition, cycle};
  }
  return FiniteGroup::permutation_closure(n, gens, factorial + 1);
}

namespace {

// Close the generator correspondence over the subgroup it generates.
// Returns the subgroup size, or -1 on a homomorphism/injectivity conflict.
// `map` receives g-index -> h-index for reached elements.
long paired_closure(const FiniteGroup& g, const FiniteGroup& h,
                    std::span<const std::pair<int, int>> pairs,
                    std::vector<int>& map) {
  map.assign(g.order(), -1);
  std::vector<char> used(h.order(), 0);
  map[0] = 0;
  used[0] = 1;
  std::vector<int> queue{0};
  long size = 1;
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    for (const auto& [ga, hb] : pairs) {
      int xa = g.mul(x, ga);
      int yb = h.mul(map[x], hb);
      if (map[xa] == -1) {
        if (used[yb]) return -1;
        map[xa] = yb;
        used[yb] = 1;
        ++size;
        queue.push_back(xa);
      } else if (map[xa] != yb) {
        return -1;
      }
    }
  }
  return size;
}

struct IsoSearch {
  const FiniteGroup& g;
  const FiniteGroup& h;
  std::vector<int> gens;
  std::vector<std::vector<int>> candidates;
  std::vector<std::pair<int, int>> chosen;
  std::vector<int> scratch_map;

  bool extend() {
    size_t pos = chosen.size();
    if (pos == gens.size()) return true;  // full map already validated
    for (int cand : candidates[pos]) {
      chosen.push_back({gens[pos], cand});
      long size = paired_closure(g, h, chosen, scratch_map);
      bool viable = size > 0;
      if (viable && pos + 1 == gens.size()) viable = size == long(g.order());
      if (viable && extend()) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

bool verify_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                        const IsoWitness& witness) {
  if (g.order() != h.order()) return false;
  std::vector<int> map;
  if (paired_closure(g, h, witness.generator_images, map) != long(g.order()))
    return false;
  for (size_t x = 0; x < g.order(); ++x)
    for (size_t y = 0; y < g.order(); ++y)
      if (map[g.mul(int(x), int(y))] != h.mul(map[x], map[y])) return false;
  std::vector<char> hit(h.order(), 0);
  for (size_t x = 0; x < g.order(); ++x) {
    if (hit[map[x]]) return false;
    hit[map[x]] = 1;
  }
  return true;
}

std::optional<IsoWitness> is_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  if (g.order() > 20160) throw std::invalid_argument("is_isomorphic: order > 20160");

  std::vector<int> order_g(g.order()), order_h(h.order());
  for (size_t i = 0; i < g.order(); ++i) order_g[i] = g.element_order(int(i));
  for (size_t i = 0; i < h.order(); ++i) order_h[i] = h.element_order(int(i));
  {
    std::vector<int> a = order_g, b = order_h;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  ConjugacyClasses cc_g = conjugacy_classes(g);
  ConjugacyClasses cc_h = conjugacy_classes(h);
  {
    // (element order, class size) profiles are isomorphism invariants.
    std::vector<std::pair<int, long>> a, b;
    for (size_t i = 0; i < g.order(); ++i)
      a.push_back({order_g[i], cc_g.sizes[cc_g.class_of[i]]});
    for (size_t i = 0; i < h.order(); ++i)
      b.push_back({order_h[i], cc_h.sizes[cc_h.class_of[i]]});
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  std::vector<int> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  IsoSearch search{g, h, small_generating_set(g, all), {}, {}, {}};
  search.candidates.resize(search.gens.size());
  for (size_t pos = 0; pos < search.gens.size(); ++pos) {
    int gen = search.gens[pos];
    for (size_t x = 0; x < h.order(); ++x)
      if (order_h[x] == order_g[gen] &&
          cc_h.sizes[cc_h.class_of[x]] == cc_g.sizes[cc_g.class_of[gen]])
        search.candidates[pos].push_back(int(x));
  }

  if (!search.extend()) return std::nullopt;
  IsoWitness witness{search.chosen, false};
  witness.verified = verify_isomorphism(g, h, witness);
  if (!witness.verified)
    throw std::logic_error("is_isomorphic: witness failed re-verification");
  return witness;
}

PointActionCertificates compute_point_action_certificates(const FiniteGroup& group) {
  using Clock = std::chrono::steady_clock;
  PointActionCertificates cert;

  // (a) |GL_3(F_2)| = 168 and 5 does not divide it.
  auto t0 = Clock::now();
  cert.gl3_f2_order = long(pgl3_group(FieldSpec::get(1)).order());
  cert.a_pass = cert.gl3_f2_order == 168 && cert.gl3_f2_order % 5 != 0;
  cert.seconds[0] = std::chrono::duration<double>(Clock::now() - t0).count();

  // (b) Normal subgroup orders are {1, 360, 720}; a subgroup of index 5
  // would give a transitive action on 5 cosets whose kernel K is normal with
  // G/K of order dividing 120 and divisible by 5. No normal subgroup allows
  // that.
  t0 = Clock::now();
  NormalSubgroupLattice lattice = normal_subgroups(group);
  for (const auto& sub : lattice.subgroups)
    cert.normal_orders.push_back(sub.members.size());
  cert.no_index_five_subgroup = true;
  for (size_t order : cert.normal_orders) {
    size_t quotient = group.order() / order;
    if (120 % quotient == 0 && quotient % 5 == 0) cert.no_index_five_subgroup = false;
  }
  cert.b_pass = cert.normal_orders == std::vector<size_t>{1, 360, 720} &&
                cert.no_index_five_subgroup;
  cert.seconds[1] = std::chrono::duration<double>(Clock::now() - t0).count();

  // (c) The 15-point action is faithful and transitive.
  t0 = Clock::now();
  PermAction action = action_on_points(group);
  cert.faithful = action.faithful;
  cert.transitive = action.orbit_sizes == std::vector<int>{15};
  cert.c_pass = cert.faithful && cert.transitive;
  cert.seconds[2] = std::chrono::duration<double>(Clock::now() - t0).count();

  // (d) Chevalley-Warning, exhaustively: every nonzero cubic over F_2
  // vanishes at one of the 15 points.
  t0 = Clock::now();
  std::array<uint32_t, 15> masks{};
  {
    auto pts = enumerate_points(3, FieldSpec::get(1));
    for (size_t i = 0; i < pts.size(); ++i) masks[i] = f2_point_mask(pts[i]);
  }
  for (uint32_t w = 1; w < (1u << 20); ++w) {
    bool has_zero = false;
    for (uint32_t mask : masks)
      if ((std::popcount(w & mask) & 1) == 0) {
        has_zero = true;
        break;
      }
    if (!has_zero) ++cert.forms_without_rational_point;
    ++cert.forms_scanned;
  }
  cert.d_pass = cert.forms_without_rational_point == 0;
  cert.seconds[3] = std::chrono::duration<double>(Clock::now() - t0).count();
  return cert;
}

PointActionCertificates point_action_certificates(const FiniteGroup& group) {
  PointActionCertificates cert = compute_point_action_certificates(group);
  if (!cert.a_pass)
    throw CertificateFailure("certificate (a): 5 divides |GL_3(F_2)| or order wrong");
  if (!cert.b_pass)
    throw CertificateFailure(
        "certificate (b): an index-5 subgroup is not excluded by the lattice");
  if (!cert.c_pass)
    throw CertificateFailure("certificate (c): action not faithful and transitive");
  if (!cert.d_pass)
    throw CertificateFailure("certificate (d): a form without a rational point exists");
  return cert;
}

}  // namespace cubics
