#include "cubics/idealtest.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cubics {

int expo_degree(const Expo& e) { return e[0] + e[1] + e[2] + e[3]; }

bool grevlex_greater(const Expo& a, const Expo& b) {
  int da = expo_degree(a), db = expo_degree(b);
  if (da != db) return da > db;
  // Same degree: greater iff the rightmost differing exponent is smaller.
  for (int v = 3; v >= 0; --v)
    if (a[v] != b[v]) return a[v] < b[v];
  return false;
}

bool expo_divides(const Expo& d, const Expo& m) {
  for (int v = 0; v < 4; ++v)
    if (d[v] > m[v]) return false;
  return true;
}

Expo expo_lcm(const Expo& a, const Expo& b) {
  Expo out{};
  for (int v = 0; v < 4; ++v) out[v] = std::max(a[v], b[v]);
  return out;
}

namespace {

Expo expo_sub(const Expo& a, const Expo& b) {
  Expo out{};
  for (int v = 0; v < 4; ++v) out[v] = uint8_t(a[v] - b[v]);
  return out;
}

Expo expo_add(const Expo& a, const Expo& b) {
  Expo out{};
  for (int v = 0; v < 4; ++v) out[v] = uint8_t(a[v] + b[v]);
  return out;
}

}  // namespace

void SparsePoly::add_term(const Expo& e, uint8_t coeff) {
  if (coeff == 0) return;
  auto pos = std::lower_bound(
      terms_.begin(), terms_.end(), e,
      [](const auto& t, const Expo& key) { return grevlex_greater(t.first, key); });
  if (pos != terms_.end() && pos->first == e) {
    pos->second = spec_->add(pos->second, coeff);
    if (pos->second == 0) terms_.erase(pos);
  } else {
    terms_.insert(pos, {e, coeff});
  }
}

SparsePoly SparsePoly::from_cubic(const CubicForm& f) {
  SparsePoly p(*f.spec);
  for (int i = 0; i < 20; ++i)
    if (f.c[i]) p.add_term(kCubicMonomials[i].e, f.c[i]);
  return p;
}

SparsePoly SparsePoly::from_quad(const QuadForm& f) {
  SparsePoly p(*f.spec);
  for (int i = 0; i < 10; ++i)
    if (f.c[i]) p.add_term(kQuadMonomials[i].e, f.c[i]);
  return p;
}

SparsePoly SparsePoly::constant(uint8_t value, const FieldSpec& spec) {
  SparsePoly p(spec);
  p.add_term(Expo{}, value);
  return p;
}

SparsePoly SparsePoly::monomial(const Expo& e, uint8_t coeff, const FieldSpec& spec) {
  SparsePoly p(spec);
  p.add_term(e, coeff);
  return p;
}

bool SparsePoly::is_one() const {
  return terms_.size() == 1 && terms_[0].first == Expo{} && terms_[0].second == 1;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  if (spec_ != o.spec_) throw std::logic_error("SparsePoly: mixed fields");
  SparsePoly out(*spec_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].first == o.terms_[j].first) {
      uint8_t c = spec_->add(terms_[i].second, o.terms_[j].second);
      if (c) out.terms_.push_back({terms_[i].first, c});
      ++i, ++j;
    } else if (grevlex_greater(terms_[i].first, o.terms_[j].first)) {
      out.terms_.push_back(terms_[i++]);
    } else {
      out.terms_.push_back(o.terms_[j++]);
    }
  }
  while (i < terms_.size()) out.terms_.push_back(terms_[i++]);
  while (j < o.terms_.size()) out.terms_.push_back(o.terms_[j++]);
  return out;
}

SparsePoly SparsePoly::times_term(const Expo& e, uint8_t coeff) const {
  SparsePoly out(*spec_);
  if (coeff == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& [te, tc] : terms_)
    out.terms_.push_back({expo_add(te, e), spec_->mul(tc, coeff)});
  return out;  // multiplying by a monomial preserves grevlex order
}

SparsePoly SparsePoly::monic() const {
  if (is_zero() || leading_coeff() == 1) return *this;
  return times_term(Expo{}, spec_->inv(leading_coeff()));
}

SparsePoly SparsePoly::dehomogenized(int var) const {
  SparsePoly out(*spec_);
  for (const auto& [e, c] : terms_) {
    Expo d = e;
    d[var] = 0;
    out.add_term(d, c);
  }
  return out;
}

uint8_t SparsePoly::evaluate(std::span<const uint8_t> coords) const {
  uint8_t acc = 0;
  for (const auto& [e, c] : terms_) {
    uint8_t term = c;
    for (int v = 0; v < 4; ++v)
      for (int rep = 0; rep < e[v]; ++rep) term = spec_->mul(term, coords[v]);
    acc ^= term;
  }
  return acc;
}

IdealBasis jacobian_ideal(const CubicForm& f) {
  if (f.is_zero()) throw std::invalid_argument("jacobian_ideal: zero form");
  IdealBasis b;
  b.gens.push_back(SparsePoly::from_cubic(f));
  for (int v = 0; v < 4; ++v) b.gens.push_back(SparsePoly::from_quad(derivative(f, v)));
  return b;
}

SparsePoly normal_form(const SparsePoly& p, const std::vector<SparsePoly>& basis) {
  const FieldSpec& F = p.spec();
  SparsePoly rest = p;
  SparsePoly remainder(F);
  while (!rest.is_zero()) {
    const Expo& lt = rest.leading_expo();
    uint8_t lc = rest.leading_coeff();
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.is_zero() || !expo_divides(g.leading_expo(), lt)) continue;
      uint8_t factor = F.div(lc, g.leading_coeff());
      rest = rest + g.times_term(expo_sub(lt, g.leading_expo()), factor);
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder.add_term(lt, lc);
      // Move past the leading term: subtract it.
      rest = rest + SparsePoly::monomial(lt, lc, F);
    }
  }
  return remainder;
}

namespace {

SparsePoly s_polynomial(const SparsePoly& f, const SparsePoly& g) {
  const FieldSpec& F = f.spec();
  Expo l = expo_lcm(f.leading_expo(), g.leading_expo());
  SparsePoly a = f.times_term(expo_sub(l, f.leading_expo()),
                              F.inv(f.leading_coeff()));
  SparsePoly b = g.times_term(expo_sub(l, g.leading_expo()),
                              F.inv(g.leading_coeff()));
  return a + b;  // characteristic 2: difference is sum
}

struct Pair {
  int i, j;
  Expo lcm;
};

bool pair_before(const Pair& a, const Pair& b) {
  int da = expo_degree(a.lcm), db = expo_degree(b.lcm);
  if (da != db) return da < db;
  if (!(a.lcm == b.lcm)) return grevlex_greater(b.lcm, a.lcm);
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

bool coprime_leading(const Expo& a, const Expo& b) {
  for (int v = 0; v < 4; ++v)
    if (a[v] && b[v]) return false;
  return true;
}

}  // namespace

IdealBasis buchberger(const IdealBasis& input) {
  if (input.gens.empty()) throw std::invalid_argument("buchberger: empty basis");
  const FieldSpec& F = input.gens.front().spec();

  std::vector<SparsePoly> basis;
  for (const auto& g : input.gens)
    if (!g.is_zero()) basis.push_back(g.monic());
  if (basis.empty()) throw std::invalid_argument("buchberger: all generators zero");

  std::vector<Pair> pending;
  std::set<std::pair<int, int>> done;
  auto push_pairs_for = [&](int idx) {
    for (int i = 0; i < idx; ++i)
      pending.push_back({i, idx, expo_lcm(basis[i].leading_expo(),
                                          basis[idx].leading_expo())});
  };
  for (int i = 1; i < int(basis.size()); ++i) push_pairs_for(i);

  while (!pending.empty()) {
    auto best = std::min_element(pending.begin(), pending.end(), pair_before);
    Pair p = *best;
    pending.erase(best);
    done.insert({p.i, p.j});

    // First Buchberger criterion: coprime leading monomials.
    if (coprime_leading(basis[p.i].leading_expo(), basis[p.j].leading_expo()))
      continue;
    // Chain criterion: some other leading term divides the lcm and both
    // side pairs are already treated.
    bool chained = false;
    for (int k = 0; k < int(basis.size()) && !chained; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!expo_divides(basis[k].leading_expo(), p.lcm)) continue;
      auto key_ik = std::minmax(p.i, k);
      auto key_jk = std::minmax(p.j, k);
      if (done.count({key_ik.first, key_ik.second}) &&
          done.count({key_jk.first, key_jk.second}))
        chained = true;
    }
    if (chained) continue;

    SparsePoly s = normal_form(s_polynomial(basis[p.i], basis[p.j]), basis);
    if (s.is_zero()) continue;
    basis.push_back(s.monic());
    push_pairs_for(int(basis.size()) - 1);
  }

  // Minimalize: drop members whose leading term another member's divides.
  std::vector<SparsePoly> minimal;
  for (int i = 0; i < int(basis.size()); ++i) {
    bool redundant = false;
    for (int j = 0; j < int(basis.size()) && !redundant; ++j) {
      if (i == j) continue;
      const Expo& li = basis[i].leading_expo();
      const Expo& lj = basis[j].leading_expo();
      if (expo_divides(lj, li) && !(li == lj && j > i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }

  // Full reduction of every member against the others.
  std::vector<SparsePoly> reduced;
  for (int i = 0; i < int(minimal.size()); ++i) {
    std::vector<SparsePoly> others;
    for (int j = 0; j < int(minimal.size()); ++j)
      if (j != i) others.push_back(minimal[j]);
    SparsePoly r = normal_form(minimal[i], others);
    if (!r.is_zero()) reduced.push_back(r.monic());
  }

  std::sort(reduced.begin(), reduced.end(), [](const SparsePoly& a, const SparsePoly& b) {
    return grevlex_greater(b.leading_expo(), a.leading_expo());
  });
  (void)F;
  return IdealBasis{reduced};
}

namespace {

// One affine chart of the Jacobian system has no solution over the closure
// iff its reduced basis is {1}.
bool chart_is_empty(const IdealBasis& jac, int var) {
  IdealBasis chart;
  for (const auto& g : jac.gens) {
    SparsePoly d = g.dehomogenized(var);
    if (!d.is_zero()) chart.gens.push_back(d);
  }
  if (chart.gens.empty()) return false;  // whole chart singular
  IdealBasis gb = buchberger(chart);
  return gb.gens.size() == 1 && gb.gens[0].is_one();
}

std::optional<std::pair<int, ProjPoint>> search_witness(const CubicForm& f, int kmax) {
  uint32_t w = form_index(f);
  std::array<uint16_t, 4> partials{};
  for (int v = 0; v < 4; ++v) partials[v] = derivative_word(w, v);

  for (int k = 1; k <= kmax; ++k) {
    const FieldSpec& F = FieldSpec::get(k);
    for (const auto& p : enumerate_points(3, F)) {
      auto cvals = cubic_monomial_values(p.coords, F);
      uint8_t fval = 0;
      for (int i = 0; i < 20; ++i)
        if (w >> i & 1) fval ^= cvals[i];
      if (fval != 0) continue;
      auto qvals = quad_monomial_values(p.coords, F);
      bool singular = true;
      for (int v = 0; v < 4 && singular; ++v) {
        uint8_t dval = 0;
        for (int i = 0; i < 10; ++i)
          if (partials[v] >> i & 1) dval ^= qvals[i];
        if (dval != 0) singular = false;
      }
      if (singular) return std::make_pair(k, p);
    }
  }
  return std::nullopt;
}

}  // namespace

SmoothnessVerdict is_smooth(const CubicForm& f, int kmax,
                            SmoothnessVerdict::Method method) {
  if (f.is_zero()) throw std::invalid_argument("is_smooth: zero form");
  if (f.spec->q() != 2) throw std::invalid_argument("is_smooth: base field F_2");
  using Method = SmoothnessVerdict::Method;

  std::optional<bool> groebner_smooth;
  if (method != Method::search) {
    IdealBasis jac = jacobian_ideal(f);
    bool smooth = true;
    for (int var = 0; var < 4 && smooth; ++var)
      if (!chart_is_empty(jac, var)) smooth = false;
    groebner_smooth = smooth;
  }

  std::optional<std::pair<int, ProjPoint>> witness;
  if (method != Method::groebner) witness = search_witness(f, kmax);

  SmoothnessVerdict verdict;
  verdict.certificate = method;
  switch (method) {
    case Method::groebner:
      verdict.smooth = *groebner_smooth;
      break;
    case Method::search:
      verdict.smooth = !witness.has_value();
      verdict.witness = witness;
      break;
    case Method::both:
      if (*groebner_smooth && witness.has_value())
        throw std::logic_error("is_smooth: certificate disagreement");
      verdict.smooth = *groebner_smooth;
      verdict.witness = witness;
      if (!verdict.smooth && !witness.has_value())
        verdict.certificate = Method::groebner;  // search was inconclusive
      break;
  }
  return verdict;
}

}  // namespace cubics
