#include "cubics/census.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <memory>
#include <set>

#include "cubics/parallel.hpp"
#include "cubics/projspace.hpp"
#include "cubics/recognize.hpp"

namespace cubics {

namespace {

constexpr uint32_t kWords = 1u << 20;

uint32_t uf_find(std::vector<uint32_t>& parent, uint32_t w) {
  uint32_t root = w;
  while (parent[root] != root) root = parent[root];
  while (parent[w] != root) {
    uint32_t next = parent[w];
    parent[w] = root;
    w = next;
  }
  return root;
}

}  // namespace

OrbitPartition build_partition() {
  const FiniteGroup& G = pgl4_f2();  // asserts the generators close to 20160
  std::vector<std::vector<uint32_t>> tables;
  for (int g : G.generator_indices())
    tables.push_back(Gf2FormAction(G.matrix_at(g)).full_table());

  OrbitPartition part;
  part.parent.resize(kWords);
  for (uint32_t w = 0; w < kWords; ++w) part.parent[w] = w;

  for (uint32_t w = 1; w < kWords; ++w) {
    for (const auto& table : tables) {
      uint32_t a = uf_find(part.parent, w);
      uint32_t b = uf_find(part.parent, table[w]);
      if (a != b) part.parent[std::max(a, b)] = std::min(a, b);
    }
  }

  // Full compression: parent[w] becomes the least member of the orbit.
  std::vector<uint32_t> sizes(kWords, 0);
  for (uint32_t w = 1; w < kWords; ++w) {
    part.parent[w] = uf_find(part.parent, w);
    ++sizes[part.parent[w]];
  }
  for (uint32_t w = 1; w < kWords; ++w) {
    if (part.parent[w] == w) {
      part.reps.push_back(w);
      part.orbit_size.push_back(sizes[w]);
    }
  }
  return part;
}

std::vector<OrbitRecord> orbit_records(const OrbitPartition& partition, int threads) {
  const FiniteGroup& G = pgl4_f2();

  // Per-element coefficient action columns, shared by every stabilizer scan.
  std::vector<std::array<uint32_t, 20>> columns(G.order());
  parallel_for(G.order(), threads, [&](size_t i) {
    Gf2FormAction action(G.matrix_at(int(i)));
    for (int m = 0; m < 20; ++m) columns[i][m] = action.image(1u << m);
  });

  std::array<uint32_t, 15> masks{};
  {
    auto pts = enumerate_points(3, FieldSpec::get(1));
    for (size_t i = 0; i < pts.size(); ++i) masks[i] = f2_point_mask(pts[i]);
  }

  std::vector<OrbitRecord> records(partition.reps.size());
  parallel_for(partition.reps.size(), threads, [&](size_t r) {
    uint32_t w = partition.reps[r];
    OrbitRecord rec;
    rec.rep = w;
    rec.orbit_size = partition.orbit_size[r];

    uint32_t count = 0;
    for (const auto& cols : columns) {
      uint32_t img = 0;
      uint32_t rest = w;
      while (rest) {
        img ^= cols[std::countr_zero(rest)];
        rest &= rest - 1;
      }
      if (img == w) ++count;
    }
    rec.aut_order = count;

    rec.smooth = is_smooth(form_from_index(w)).smooth;

    rec.passes_all_15 = true;
    for (uint32_t mask : masks)
      if (std::popcount(w & mask) & 1) rec.passes_all_15 = false;

    records[r] = rec;
  });
  return records;
}

FifteenPointSummary fifteen_point_analysis(const std::vector<OrbitRecord>& records,
                                           const OrbitPartition& partition) {
  const FieldSpec& F2 = FieldSpec::get(1);
  FifteenPointSummary out;

  std::array<uint32_t, 15> masks{};
  {
    auto pts = enumerate_points(3, F2);
    for (size_t i = 0; i < pts.size(); ++i) masks[i] = f2_point_mask(pts[i]);
  }

  // (i) Exhaustive count of forms vanishing on all 15 points, cross-checked
  // against the per-orbit records.
  std::set<uint32_t> all15;
  for (uint32_t w = 1; w < kWords; ++w) {
    bool vanishes = true;
    for (uint32_t mask : masks)
      if (std::popcount(w & mask) & 1) {
        vanishes = false;
        break;
      }
    if (vanishes) all15.insert(w);
  }
  out.forms_on_all_15 = all15.size();
  if (out.forms_on_all_15 != 63)
    throw CensusMismatch("fifteen_point_analysis: all-15 form count != 63");

  uint64_t via_records = 0;
  for (const auto& rec : records)
    if (rec.passes_all_15) via_records += rec.orbit_size;
  if (via_records != out.forms_on_all_15)
    throw CensusMismatch("fifteen_point_analysis: record sum disagrees with scan");

  // (ii) The pencil cubics: pairwise distinct, all on the 15 points, all
  // singular with an F_2-rational witness.
  std::set<uint32_t> pencils;
  for (const auto& line : enumerate_lines(F2)) {
    uint32_t w = form_index(pencil_cubic(line).form);
    if (!all15.count(w))
      throw CensusMismatch("fifteen_point_analysis: pencil cubic misses a point");
    SmoothnessVerdict v = is_smooth(form_from_index(w));
    if (v.smooth || !v.witness.has_value() || v.witness->first != 1)
      throw CensusMismatch(
          "fifteen_point_analysis: pencil cubic lacks a rational singular point");
    pencils.insert(w);
  }
  out.pencil_count = int(pencils.size());
  if (out.pencil_count != 35)
    throw CensusMismatch("fifteen_point_analysis: pencil cubic count != 35");

  // (iii)+(iv) The remaining forms are smooth and sit in one orbit: the
  // orbit of the symplectic cubic.
  uint32_t symplectic_root = partition.find(form_index(symplectic_cubic_form(F2)));
  std::set<uint32_t> roots;
  for (uint32_t w : all15) {
    if (pencils.count(w)) {
      ++out.singular_count;
      continue;
    }
    if (!is_smooth(form_from_index(w)).smooth)
      throw CensusMismatch("fifteen_point_analysis: non-pencil 15-point form is singular");
    ++out.smooth_count;
    roots.insert(partition.find(w));
  }
  if (out.singular_count != 35 || out.smooth_count != 28)
    throw CensusMismatch("fifteen_point_analysis: split is not 35 + 28");
  if (roots.size() != 1)
    throw CensusMismatch("fifteen_point_analysis: smooth 15-point forms span several orbits");
  out.smooth_orbit_root = *roots.begin();
  if (out.smooth_orbit_root != symplectic_root)
    throw CensusMismatch("fifteen_point_analysis: smooth orbit differs from the symplectic one");
  return out;
}

bool corollary_check(const std::vector<OrbitRecord>& records) {
  const FieldSpec& F2 = FieldSpec::get(1);
  for (const auto& rec : records) {
    if (!rec.smooth) continue;
    bool rhs = rec.passes_all_15;
    bool lhs = false;
    if (rec.aut_order == 720) {
      FiniteGroup stab = stabilizer(pgl4_f2(), form_from_index(rec.rep));
      if (stab.order() != 720) return false;
      auto witness = is_isomorphic(stab, symmetric_group(6));
      lhs = witness.has_value() && witness->verified;
    }
    if (lhs != rhs) return false;
  }
  return true;
}

CensusReport census_report(const OrbitPartition& partition,
                           std::vector<OrbitRecord> records) {
  CensusReport report;
  report.orbit_count = records.size();
  for (const auto& rec : records) {
    report.total_forms += rec.orbit_size;
    if (uint64_t(rec.aut_order) * rec.orbit_size != 20160)
      throw CensusMismatch("census_report: orbit-stabilizer identity violated");
    if (!rec.smooth) continue;
    ++report.smooth_orbit_count;
    if (rec.aut_order > report.max_smooth_aut_order) {
      report.max_smooth_aut_order = rec.aut_order;
      report.max_smooth_aut_rep = rec.rep;
      report.max_attained_once = true;
    } else if (rec.aut_order == report.max_smooth_aut_order) {
      report.max_attained_once = false;
    }
  }
  if (report.total_forms != kWords - 1)
    throw CensusMismatch("census_report: orbit sizes do not cover all nonzero forms");

  uint32_t symplectic_root =
      partition.find(form_index(symplectic_cubic_form(FieldSpec::get(1))));
  report.symplectic_orbit_attains_max =
      report.max_attained_once && report.max_smooth_aut_rep == symplectic_root;

  report.fifteen = fifteen_point_analysis(records, partition);
  report.corollary_holds = corollary_check(records);
  report.records = std::move(records);
  return report;
}

// ---- cache ----------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'C', 'B', 'C', '1'};

void put_u32(std::FILE* f, uint32_t v) {
  uint8_t b[4] = {uint8_t(v), uint8_t(v >> 8), uint8_t(v >> 16), uint8_t(v >> 24)};
  if (std::fwrite(b, 1, 4, f) != 4) throw CacheFormatError("cache write failed");
}

void put_u8(std::FILE* f, uint8_t v) {
  if (std::fwrite(&v, 1, 1, f) != 1) throw CacheFormatError("cache write failed");
}

uint32_t take_u32(std::FILE* f) {
  uint8_t b[4];
  if (std::fread(b, 1, 4, f) != 4) throw CacheFormatError("cache truncated");
  return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 |
         uint32_t(b[3]) << 24;
}

uint8_t take_u8(std::FILE* f) {
  uint8_t b;
  if (std::fread(&b, 1, 1, f) != 1) throw CacheFormatError("cache truncated");
  return b;
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

}  // namespace

void write_cache(const std::string& path, const OrbitPartition& partition,
                 const std::vector<OrbitRecord>& records) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
  if (!f) throw CacheFormatError("cannot open cache for writing: " + path);
  if (std::fwrite(kMagic, 1, 4, f.get()) != 4)
    throw CacheFormatError("cache write failed");
  for (const auto& m : kCubicMonomials)
    for (int v = 0; v < 4; ++v) put_u8(f.get(), m.e[v]);
  for (uint32_t w = 1; w < kWords; ++w) put_u32(f.get(), partition.parent[w]);
  for (const auto& rec : records) {
    put_u32(f.get(), rec.rep);
    put_u32(f.get(), rec.orbit_size);
    put_u8(f.get(), rec.smooth ? 1 : 0);
    put_u32(f.get(), rec.aut_order);
    put_u8(f.get(), rec.passes_all_15 ? 1 : 0);
  }
}

CachedCensus read_cache(const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "rb"));
  if (!f) throw CacheFormatError("cannot open cache: " + path);
  char magic[4];
  if (std::fread(magic, 1, 4, f.get()) != 4 || !std::equal(magic, magic + 4, kMagic))
    throw CacheFormatError("unknown cache magic");
  for (const auto& m : kCubicMonomials)
    for (int v = 0; v < 4; ++v)
      if (take_u8(f.get()) != m.e[v])
        throw CacheFormatError("cache monomial order mismatch");

  CachedCensus out;
  out.partition.parent.resize(kWords);
  out.partition.parent[0] = 0;
  for (uint32_t w = 1; w < kWords; ++w) {
    uint32_t p = take_u32(f.get());
    if (p == 0 || p > w) throw CacheFormatError("cache parent array corrupt");
    out.partition.parent[w] = p;
  }
  std::vector<uint32_t> sizes(kWords, 0);
  for (uint32_t w = 1; w < kWords; ++w) {
    if (out.partition.parent[out.partition.parent[w]] != out.partition.parent[w])
      throw CacheFormatError("cache parent array not compressed");
    ++sizes[out.partition.parent[w]];
  }
  for (uint32_t w = 1; w < kWords; ++w) {
    if (out.partition.parent[w] == w) {
      out.partition.reps.push_back(w);
      out.partition.orbit_size.push_back(sizes[w]);
    }
  }

  out.records.resize(out.partition.reps.size());
  for (size_t r = 0; r < out.records.size(); ++r) {
    OrbitRecord rec;
    rec.rep = take_u32(f.get());
    rec.orbit_size = take_u32(f.get());
    rec.smooth = take_u8(f.get()) != 0;
    rec.aut_order = take_u32(f.get());
    rec.passes_all_15 = take_u8(f.get()) != 0;
    if (rec.rep != out.partition.reps[r] || rec.orbit_size != out.partition.orbit_size[r])
      throw CacheFormatError("cache records disagree with parent array");
    out.records[r] = rec;
  }
  uint8_t extra;
  if (std::fread(&extra, 1, 1, f.get()) == 1)
    throw CacheFormatError("cache has trailing bytes");
  return out;
}

}  // namespace cubics
