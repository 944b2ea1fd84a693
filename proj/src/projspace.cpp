#include "cubics/projspace.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cubics {

std::string ProjPoint::str() const {
  std::string out = "(";
  for (int i = 0; i <= n; ++i) {
    if (i) out += ':';
    out += std::to_string(int(coords[i]));
  }
  out += ')';
  return out;
}

ProjPoint make_point(std::array<uint8_t, 4> coords, int n, const FieldSpec& spec) {
  for (int i = 0; i <= n; ++i) {
    if (coords[i] != 0) {
      if (coords[i] != 1) {
        uint8_t s = spec.inv(coords[i]);
        for (int j = i; j <= n; ++j) coords[j] = spec.mul(coords[j], s);
      }
      return ProjPoint{n, &spec, coords};
    }
  }
  throw std::invalid_argument("make_point: zero vector");
}

std::vector<ProjPoint> enumerate_points(int n, const FieldSpec& spec) {
  if (n < 1 || n > 3) throw std::invalid_argument("enumerate_points: n must be 1..3");
  std::vector<ProjPoint> out;
  // Normalized points have a leading 1 at some pivot position with zeros
  // before it and free entries after it.
  for (int pivot = 0; pivot <= n; ++pivot) {
    int free = n - pivot;
    long count = 1;
    for (int i = 0; i < free; ++i) count *= spec.q();
    for (long v = 0; v < count; ++v) {
      ProjPoint p{n, &spec, {}};
      p.coords[pivot] = 1;
      long rest = v;
      for (int i = n; i > pivot; --i) {
        p.coords[i] = uint8_t(rest % spec.q());
        rest /= spec.q();
      }
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ProjLine line_through(const ProjPoint& a, const ProjPoint& b) {
  if (a.spec != b.spec || a.n != 3 || b.n != 3)
    throw std::invalid_argument("line_through: need two points of P^3 over one field");
  std::array<std::array<uint8_t, 4>, 2> rows{a.coords, b.coords};
  if (rref_in_place(rows, 4, *a.spec) != 2)
    throw std::invalid_argument("line_through: points coincide");
  return ProjLine{a.spec, rows};
}

std::vector<ProjLine> enumerate_lines(const FieldSpec& spec) {
  std::vector<ProjPoint> pts = enumerate_points(3, spec);
  std::set<ProjLine> seen;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      seen.insert(line_through(pts[i], pts[j]));
  return {seen.begin(), seen.end()};
}

bool are_skew(const ProjLine& a, const ProjLine& b) {
  if (a.spec != b.spec) throw std::invalid_argument("are_skew: mixed fields");
  std::array<std::array<uint8_t, 4>, 4> stacked{a.basis[0], a.basis[1], b.basis[0],
                                                b.basis[1]};
  return row_rank(std::span<const std::array<uint8_t, 4>>(stacked), 4, *a.spec) == 4;
}

std::vector<ProjPoint> points_on_line(const ProjLine& l) {
  const FieldSpec& F = *l.spec;
  std::set<ProjPoint> seen;
  for (int s = 0; s < F.q(); ++s) {
    for (int t = 0; t < F.q(); ++t) {
      if (s == 0 && t == 0) continue;
      std::array<uint8_t, 4> v{};
      for (int c = 0; c < 4; ++c)
        v[c] = F.add(F.mul(uint8_t(s), l.basis[0][c]), F.mul(uint8_t(t), l.basis[1][c]));
      seen.insert(make_point(v, 3, F));
    }
  }
  return {seen.begin(), seen.end()};
}

ProjPoint apply(const Matrix& g, const ProjPoint& p) {
  if (&g.field() != p.spec || g.n() != p.n + 1)
    throw std::invalid_argument("apply: matrix/point mismatch");
  return make_point(g.apply(p.coords), p.n, *p.spec);
}

}  // namespace cubics
