#include "cubics/gf2k.hpp"

#include <stdexcept>
#include <vector>

namespace cubics {

namespace {

// Bit-encoded moduli, index = k. k=1 is the prime-field sentinel x+1; the
// rest are the numerically smallest primitive polynomials of their degree.
constexpr uint16_t kModuli[9] = {0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d};

int poly_degree(uint32_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

uint32_t poly_mod(uint32_t a, uint32_t m) {
  int dm = poly_degree(m);
  while (a && poly_degree(a) >= dm) a ^= m << (poly_degree(a) - dm);
  return a;
}

// Trial division against every polynomial of degree 1..k/2.
bool is_irreducible(uint16_t m, int k) {
  for (int d = 1; d <= k / 2; ++d) {
    for (uint32_t p = 1u << d; p < (2u << d); ++p) {
      if (poly_mod(m, p) == 0) return false;
    }
  }
  return true;
}

}  // namespace

FieldSpec::FieldSpec(int k) : k_(k), q_(1 << k), modulus_(kModuli[k]) {
  if (k < 1 || k > 8) throw std::invalid_argument("FieldSpec: k must be in 1..8");
  if (!is_irreducible(modulus_, k))
    throw std::logic_error("FieldSpec: modulus is reducible");

  // exp_[i] = x^i reduced mod the modulus; log_ is its inverse on nonzero
  // elements. x is a generator because the modulus is primitive.
  uint32_t v = 1;
  for (int i = 0; i < q_ - 1; ++i) {
    exp_[i] = uint8_t(v);
    log_[v] = uint8_t(i);
    v <<= 1;
    if (v & q_) v ^= modulus_;
  }
  if (v != 1) throw std::logic_error("FieldSpec: modulus is not primitive");
}

const FieldSpec& FieldSpec::get(int k) {
  static const std::vector<FieldSpec> specs = [] {
    std::vector<FieldSpec> s;
    for (int i = 1; i <= 8; ++i) s.push_back(FieldSpec(i));
    return s;
  }();
  if (k < 1 || k > 8) throw std::invalid_argument("FieldSpec: k must be in 1..8");
  return specs[k - 1];
}

uint8_t FieldSpec::inv(uint8_t a) const {
  if (a == 0) throw std::domain_error("FieldSpec: inverse of zero");
  int e = (q_ - 1 - log_[a]) % (q_ - 1);
  return exp_[e];
}

uint8_t FieldSpec::pow(uint8_t a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[int(uint64_t(log_[a]) * e % uint64_t(q_ - 1))];
}

namespace {
void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  if (&a != &b) throw std::logic_error("mixed field specs");
}
}  // namespace

FieldElement FieldElement::operator+(FieldElement o) const {
  require_same_field(*spec_, *o.spec_);
  return {spec_->add(bits_, o.bits_), *spec_};
}

FieldElement FieldElement::operator*(FieldElement o) const {
  require_same_field(*spec_, *o.spec_);
  return {spec_->mul(bits_, o.bits_), *spec_};
}

FieldElement FieldElement::operator/(FieldElement o) const {
  require_same_field(*spec_, *o.spec_);
  return {spec_->div(bits_, o.bits_), *spec_};
}

FieldElement FieldElement::inverse() const { return {spec_->inv(bits_), *spec_}; }

Matrix::Matrix(int n, const FieldSpec& spec) : n_(n), spec_(&spec) {
  if (n < 1 || n > 4) throw std::invalid_argument("Matrix: n must be in 1..4");
}

Matrix Matrix::identity(int n, const FieldSpec& spec) {
  Matrix m(n, spec);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<int>> rows,
                         const FieldSpec& spec) {
  Matrix m(int(rows.size()), spec);
  int r = 0;
  for (const auto& row : rows) {
    if (int(row.size()) != m.n_) throw std::invalid_argument("Matrix: ragged rows");
    int c = 0;
    for (int v : row) m.set(r, c++, uint8_t(v));
    ++r;
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require_same_field(*spec_, *rhs.spec_);
  if (n_ != rhs.n_) throw std::invalid_argument("Matrix: dimension mismatch");
  Matrix out(n_, *spec_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      uint8_t s = 0;
      for (int l = 0; l < n_; ++l) s ^= spec_->mul(at(i, l), rhs.at(l, j));
      out.set(i, j, s);
    }
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(n_, *spec_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out.set(j, i, at(i, j));
  return out;
}

std::array<uint8_t, 4> Matrix::apply(std::span<const uint8_t> v) const {
  std::array<uint8_t, 4> out{};
  for (int i = 0; i < n_; ++i) {
    uint8_t s = 0;
    for (int j = 0; j < n_; ++j) s ^= spec_->mul(at(i, j), v[j]);
    out[i] = s;
  }
  return out;
}

namespace {

// Gaussian elimination on an n x (n+aug) augmented system; returns the
// determinant of the left block and leaves the matrix in reduced form.
uint8_t eliminate(std::array<std::array<uint8_t, 8>, 4>& m, int n, int aug,
                  const FieldSpec& F) {
  int w = n + aug;
  uint8_t det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) std::swap(m[pivot], m[col]);  // swap: det *= -1 == 1 in char 2
    det = F.mul(det, m[col][col]);
    uint8_t pinv = F.inv(m[col][col]);
    for (int c = 0; c < w; ++c) m[col][c] = F.mul(m[col][c], pinv);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      uint8_t f = m[r][col];
      for (int c = 0; c < w; ++c) m[r][c] ^= F.mul(f, m[col][c]);
    }
  }
  return det;
}

}  // namespace

uint8_t Matrix::determinant() const {
  std::array<std::array<uint8_t, 8>, 4> w{};
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) w[i][j] = at(i, j);
  return eliminate(w, n_, 0, *spec_);
}

std::optional<Matrix> Matrix::inverse() const {
  std::array<std::array<uint8_t, 8>, 4> w{};
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) w[i][j] = at(i, j);
    w[i][n_ + i] = 1;
  }
  if (eliminate(w, n_, n_, *spec_) == 0) return std::nullopt;
  Matrix out(n_, *spec_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out.set(i, j, w[i][n_ + j]);
  return out;
}

void Matrix::projective_normalize() {
  for (int i = 0; i < n_ * n_; ++i) {
    if (a_[i] != 0) {
      if (a_[i] == 1) return;
      uint8_t s = spec_->inv(a_[i]);
      for (int j = i; j < n_ * n_; ++j) a_[j] = spec_->mul(a_[j], s);
      return;
    }
  }
}

std::string Matrix::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(size_t(n_ * n_) * 2);
  for (int i = 0; i < n_ * n_; ++i) {
    out.push_back(digits[a_[i] >> 4]);
    out.push_back(digits[a_[i] & 0xf]);
  }
  return out;
}

int rref_in_place(std::span<std::array<uint8_t, 4>> rows, int width,
                  const FieldSpec& F) {
  int rank = 0;
  for (int col = 0; col < width && rank < int(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < int(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rank]);
    uint8_t pinv = F.inv(rows[rank][col]);
    for (int c = 0; c < width; ++c) rows[rank][c] = F.mul(rows[rank][c], pinv);
    for (int r = 0; r < int(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      uint8_t f = rows[r][col];
      for (int c = 0; c < width; ++c) rows[r][c] ^= F.mul(f, rows[rank][c]);
    }
    ++rank;
  }
  return rank;
}

int row_rank(std::span<const std::array<uint8_t, 4>> rows, int width,
             const FieldSpec& F) {
  std::vector<std::array<uint8_t, 4>> copy(rows.begin(), rows.end());
  return rref_in_place(copy, width, F);
}

}  // namespace cubics
