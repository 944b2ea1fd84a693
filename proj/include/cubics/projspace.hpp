#pragma once

#include <array>
#include <string>
#include <vector>

#include "cubics/gf2k.hpp"

namespace cubics {

// A point of P^n(F_q), n <= 3. Coordinates are normalized so the first
// nonzero one equals 1 (leftmost-pivot normalization); that makes the byte
// tuple the unique representative of the projective class.
struct ProjPoint {
  int n;
  const FieldSpec* spec;
  std::array<uint8_t, 4> coords{};

  bool operator==(const ProjPoint& o) const {
    return n == o.n && spec == o.spec && coords == o.coords;
  }
  bool operator<(const ProjPoint& o) const { return coords < o.coords; }

  std::string str() const;  // "(c0:c1:...:cn)", decimal entries
};

// Normalize an arbitrary nonzero coordinate vector into a ProjPoint.
ProjPoint make_point(std::array<uint8_t, 4> coords, int n, const FieldSpec& spec);

// All (q^{n+1}-1)/(q-1) points in ascending lexicographic order of the
// normalized coordinate tuple.
std::vector<ProjPoint> enumerate_points(int n, const FieldSpec& spec);

// A line of P^3(F_q) as the reduced row echelon basis of its 2-dimensional
// subspace; RREF is the unique canonical representative.
struct ProjLine {
  const FieldSpec* spec;
  std::array<std::array<uint8_t, 4>, 2> basis{};

  bool operator==(const ProjLine& o) const {
    return spec == o.spec && basis == o.basis;
  }
  bool operator<(const ProjLine& o) const { return basis < o.basis; }
};

// Line through two distinct points.
ProjLine line_through(const ProjPoint& a, const ProjPoint& b);

// All (q^2+1)(q^2+q+1) lines of P^3(F_q), deduplicated and sorted by the
// encoded basis bytes.
std::vector<ProjLine> enumerate_lines(const FieldSpec& spec);

// True iff the lines do not meet (the stacked 4x4 basis matrix has rank 4).
bool are_skew(const ProjLine& a, const ProjLine& b);

// The q+1 points spanned by the basis, normalized and sorted.
std::vector<ProjPoint> points_on_line(const ProjLine& l);

// Image of a point under an invertible matrix (column-vector convention),
// renormalized.
ProjPoint apply(const Matrix& g, const ProjPoint& p);

}  // namespace cubics
