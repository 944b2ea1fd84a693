#include "cubics/forms.hpp"

#include <stdexcept>

namespace cubics {

namespace {

constexpr int pack_exponents(const std::array<uint8_t, 4>& e) {
  return e[0] | e[1] << 2 | e[2] << 4 | e[3] << 6;
}

struct IndexTables {
  std::array<int8_t, 256> cubic;
  std::array<int8_t, 256> quad;
  IndexTables() {
    cubic.fill(-1);
    quad.fill(-1);
    for (int i = 0; i < 20; ++i) cubic[pack_exponents(kCubicMonomials[i].e)] = int8_t(i);
    for (int i = 0; i < 10; ++i) quad[pack_exponents(kQuadMonomials[i].e)] = int8_t(i);
  }
};

const IndexTables& index_tables() {
  static const IndexTables t;
  return t;
}

using Lin = std::array<uint8_t, 4>;

// (sum a_i v_i) * (sum b_j v_j) accumulated on the quadratic basis.
std::array<uint8_t, 10> lin_mul(const Lin& a, const Lin& b, const FieldSpec& F) {
  std::array<uint8_t, 10> out{};
  for (int i = 0; i < 4; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (b[j] == 0) continue;
      std::array<uint8_t, 4> e{};
      e[i] += 1;
      e[j] += 1;
      int idx = index_tables().quad[pack_exponents(e)];
      out[idx] ^= F.mul(a[i], b[j]);
    }
  }
  return out;
}

std::array<uint8_t, 20> quad_lin_mul(const std::array<uint8_t, 10>& q, const Lin& b,
                                     const FieldSpec& F) {
  std::array<uint8_t, 20> out{};
  for (int m = 0; m < 10; ++m) {
    if (q[m] == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (b[j] == 0) continue;
      std::array<uint8_t, 4> e = kQuadMonomials[m].e;
      e[j] += 1;
      int idx = index_tables().cubic[pack_exponents(e)];
      out[idx] ^= F.mul(q[m], b[j]);
    }
  }
  return out;
}

// Cubic expansion of the product of three linear forms.
std::array<uint8_t, 20> lin_cube(const Lin& a, const Lin& b, const Lin& c,
                                 const FieldSpec& F) {
  return quad_lin_mul(lin_mul(a, b, F), c, F);
}

}  // namespace

int cubic_monomial_index(const std::array<uint8_t, 4>& e) {
  int idx = index_tables().cubic[pack_exponents(e)];
  if (idx < 0) throw std::invalid_argument("not a cubic monomial");
  return idx;
}

int quad_monomial_index(const std::array<uint8_t, 4>& e) {
  int idx = index_tables().quad[pack_exponents(e)];
  if (idx < 0) throw std::invalid_argument("not a quadratic monomial");
  return idx;
}

uint32_t form_index(const CubicForm& f) {
  if (f.spec->q() != 2) throw std::logic_error("form_index: F_2 forms only");
  uint32_t w = 0;
  for (int i = 0; i < 20; ++i) w |= uint32_t(f.c[i] & 1) << i;
  return w;
}

CubicForm form_from_index(uint32_t w) {
  if (w >= (1u << 20)) throw std::invalid_argument("form_from_index: word too wide");
  CubicForm f{&FieldSpec::get(1), {}};
  for (int i = 0; i < 20; ++i) f.c[i] = uint8_t((w >> i) & 1);
  return f;
}

std::string form_to_hex(uint32_t w) {
  if (w >= (1u << 20)) throw std::invalid_argument("form_to_hex: word too wide");
  static const char* digits = "0123456789abcdef";
  std::string s(5, '0');
  for (int i = 4; i >= 0; --i) {
    s[i] = digits[w & 0xf];
    w >>= 4;
  }
  return s;
}

uint32_t form_from_hex(const std::string& s) {
  if (s.size() != 5) throw std::invalid_argument("form hex must be 5 digits");
  uint32_t w = 0;
  for (char ch : s) {
    int d;
    if (ch >= '0' && ch <= '9') d = ch - '0';
    else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
    else throw std::invalid_argument("form hex must be 5 hex digits");
    w = w << 4 | uint32_t(d);
  }
  return w;
}

uint8_t evaluate_at(const CubicForm& f, std::span<const uint8_t> coords) {
  const FieldSpec& F = *f.spec;
  uint8_t acc = 0;
  for (int i = 0; i < 20; ++i) {
    if (f.c[i] == 0) continue;
    uint8_t term = f.c[i];
    const auto& e = kCubicMonomials[i].e;
    for (int v = 0; v < 4; ++v)
      for (int rep = 0; rep < e[v]; ++rep) term = F.mul(term, coords[v]);
    acc ^= term;
  }
  return acc;
}

uint8_t evaluate_quad_at(const QuadForm& f, std::span<const uint8_t> coords) {
  const FieldSpec& F = *f.spec;
  uint8_t acc = 0;
  for (int i = 0; i < 10; ++i) {
    if (f.c[i] == 0) continue;
    uint8_t term = f.c[i];
    const auto& e = kQuadMonomials[i].e;
    for (int v = 0; v < 4; ++v)
      for (int rep = 0; rep < e[v]; ++rep) term = F.mul(term, coords[v]);
    acc ^= term;
  }
  return acc;
}

FieldElement evaluate(const CubicForm& f, const ProjPoint& p) {
  if (f.spec != p.spec) throw std::invalid_argument("evaluate: mixed fields");
  return {evaluate_at(f, p.coords), *f.spec};
}

CubicForm act(const Matrix& g, const CubicForm& f) {
  if (&g.field() != f.spec || g.n() != 4)
    throw std::invalid_argument("act: need a 4x4 matrix over the form's field");
  if (g.determinant() == 0) throw std::invalid_argument("act: singular matrix");
  const FieldSpec& F = *f.spec;

  // Substituting v_i -> (g v)_i replaces variable i by the linear form given
  // by row i of g.
  std::array<Lin, 4> rows;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows[i][j] = g.at(i, j);

  CubicForm out{f.spec, {}};
  for (int m = 0; m < 20; ++m) {
    if (f.c[m] == 0) continue;
    std::array<int, 3> factor{};
    int pos = 0;
    for (int v = 0; v < 4; ++v)
      for (int rep = 0; rep < kCubicMonomials[m].e[v]; ++rep) factor[pos++] = v;
    auto cube = lin_cube(rows[factor[0]], rows[factor[1]], rows[factor[2]], F);
    for (int i = 0; i < 20; ++i) out.c[i] ^= F.mul(f.c[m], cube[i]);
  }
  return out;
}

QuadForm derivative(const CubicForm& f, int var) {
  if (var < 0 || var > 3) throw std::invalid_argument("derivative: variable 0..3");
  QuadForm out{f.spec, {}};
  for (int m = 0; m < 20; ++m) {
    if (f.c[m] == 0) continue;
    const auto& e = kCubicMonomials[m].e;
    if (e[var] % 2 == 0) continue;  // exponent coefficient vanishes mod 2
    std::array<uint8_t, 4> d = e;
    d[var] -= 1;
    out.c[quad_monomial_index(d)] ^= f.c[m];
  }
  return out;
}

CubicForm lift(const CubicForm& f, const FieldSpec& target) {
  if (f.spec->q() != 2) throw std::logic_error("lift: source must be F_2");
  CubicForm out{&target, f.c};
  return out;
}

CubicForm symplectic_cubic_form(const FieldSpec& spec) {
  CubicForm f{&spec, {}};
  f.c[cubic_monomial_index({2, 0, 0, 1})] = 1;  // x^2 t
  f.c[cubic_monomial_index({0, 2, 1, 0})] = 1;  // y^2 z
  f.c[cubic_monomial_index({0, 1, 2, 0})] = 1;  // z^2 y
  f.c[cubic_monomial_index({1, 0, 0, 2})] = 1;  // t^2 x
  return f;
}

CubicForm fermat_form(const FieldSpec& spec) {
  CubicForm f{&spec, {}};
  f.c[cubic_monomial_index({3, 0, 0, 0})] = 1;
  f.c[cubic_monomial_index({0, 3, 0, 0})] = 1;
  f.c[cubic_monomial_index({0, 0, 3, 0})] = 1;
  f.c[cubic_monomial_index({0, 0, 0, 3})] = 1;
  return f;
}

CubicForm vanishing_family_form(unsigned a) {
  if (a == 0 || a >= 64)
    throw std::invalid_argument("vanishing_family_form: a must be in 1..63");
  const FieldSpec& F2 = FieldSpec::get(1);
  // Basis member for the variable pair (u,v): u*v*(u+v).
  static constexpr std::array<std::pair<int, int>, 6> kPairs = {
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  CubicForm f{&F2, {}};
  for (int i = 0; i < 6; ++i) {
    if (!(a >> i & 1)) continue;
    auto [u, v] = kPairs[i];
    Lin lu{}, lv{}, luv{};
    lu[u] = 1;
    lv[v] = 1;
    luv[u] = luv[v] = 1;
    auto cube = lin_cube(lu, lv, luv, F2);
    for (int j = 0; j < 20; ++j) f.c[j] ^= cube[j];
  }
  return f;
}

PencilCubic pencil_cubic(const ProjLine& l) {
  const FieldSpec& F = *l.spec;
  if (F.q() != 2) throw std::invalid_argument("pencil_cubic: q = 2 only");
  // The three nonzero functionals vanishing on both basis rows.
  std::vector<Lin> duals;
  for (unsigned m = 1; m < 16; ++m) {
    Lin lam{uint8_t(m & 1), uint8_t(m >> 1 & 1), uint8_t(m >> 2 & 1),
            uint8_t(m >> 3 & 1)};
    bool ok = true;
    for (const auto& row : l.basis) {
      uint8_t dot = 0;
      for (int c = 0; c < 4; ++c) dot ^= F.mul(lam[c], row[c]);
      if (dot != 0) ok = false;
    }
    if (ok) duals.push_back(lam);
  }
  if (duals.size() != 3) throw std::logic_error("pencil_cubic: bad line basis");
  CubicForm f{&F, lin_cube(duals[0], duals[1], duals[2], F)};
  return PencilCubic{l, f};
}

std::array<uint8_t, 20> cubic_monomial_values(std::span<const uint8_t> coords,
                                              const FieldSpec& F) {
  std::array<uint8_t, 20> out{};
  for (int i = 0; i < 20; ++i) {
    uint8_t v = 1;
    const auto& e = kCubicMonomials[i].e;
    for (int var = 0; var < 4; ++var)
      for (int rep = 0; rep < e[var]; ++rep) v = F.mul(v, coords[var]);
    out[i] = v;
  }
  return out;
}

std::array<uint8_t, 10> quad_monomial_values(std::span<const uint8_t> coords,
                                             const FieldSpec& F) {
  std::array<uint8_t, 10> out{};
  for (int i = 0; i < 10; ++i) {
    uint8_t v = 1;
    const auto& e = kQuadMonomials[i].e;
    for (int var = 0; var < 4; ++var)
      for (int rep = 0; rep < e[var]; ++rep) v = F.mul(v, coords[var]);
    out[i] = v;
  }
  return out;
}

uint16_t derivative_word(uint32_t w, int var) {
  uint16_t out = 0;
  while (w) {
    int m = std::countr_zero(w);
    w &= w - 1;
    const auto& e = kCubicMonomials[m].e;
    if (e[var] % 2 == 0) continue;
    std::array<uint8_t, 4> d = e;
    d[var] -= 1;
    out ^= uint16_t(1u << index_tables().quad[pack_exponents(d)]);
  }
  return out;
}

uint32_t var_times_quad(int var, uint16_t quad) {
  uint32_t out = 0;
  while (quad) {
    int m = std::countr_zero(uint32_t(quad));
    quad &= uint16_t(quad - 1);
    std::array<uint8_t, 4> e = kQuadMonomials[m].e;
    e[var] += 1;
    out ^= 1u << index_tables().cubic[pack_exponents(e)];
  }
  return out;
}

uint32_t f2_point_mask(const ProjPoint& p) {
  if (p.spec->q() != 2 || p.n != 3)
    throw std::invalid_argument("f2_point_mask: points of P^3(F_2) only");
  uint32_t mask = 0;
  for (int i = 0; i < 20; ++i) {
    bool nonzero = true;
    for (int v = 0; v < 4; ++v)
      if (kCubicMonomials[i].e[v] > 0 && p.coords[v] == 0) nonzero = false;
    if (nonzero) mask |= 1u << i;
  }
  return mask;
}

Gf2FormAction::Gf2FormAction(const Matrix& g) {
  if (g.field().q() != 2 || g.n() != 4)
    throw std::invalid_argument("Gf2FormAction: 4x4 matrices over F_2 only");
  const FieldSpec& F2 = g.field();
  std::array<Lin, 4> rows;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows[i][j] = g.at(i, j);
  for (int m = 0; m < 20; ++m) {
    std::array<int, 3> factor{};
    int pos = 0;
    for (int v = 0; v < 4; ++v)
      for (int rep = 0; rep < kCubicMonomials[m].e[v]; ++rep) factor[pos++] = v;
    auto cube = lin_cube(rows[factor[0]], rows[factor[1]], rows[factor[2]], F2);
    uint32_t w = 0;
    for (int i = 0; i < 20; ++i) w |= uint32_t(cube[i] & 1) << i;
    cols_[m] = w;
  }
}

std::vector<uint32_t> Gf2FormAction::full_table() const {
  std::vector<uint32_t> img(1u << 20);
  img[0] = 0;
  for (uint32_t w = 1; w < (1u << 20); ++w) {
    uint32_t lsb = w & (0u - w);
    img[w] = img[w ^ lsb] ^ cols_[std::countr_zero(lsb)];
  }
  return img;
}

}  // namespace cubics
