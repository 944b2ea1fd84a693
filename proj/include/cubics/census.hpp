#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubics/forms.hpp"
#include "cubics/grouptool.hpp"
#include "cubics/idealtest.hpp"

namespace cubics {

// Cache file rejected (bad magic, wrong monomial table, truncation, junk).
struct CacheFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A census self-check came out wrong; the message names the failing count.
struct CensusMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Union-find over the 2^20 - 1 nonzero form words under the PGL_4(F_2)
// substitution action. The root of every orbit is its least member, so the
// structure is canonical.
struct OrbitPartition {
  std::vector<uint32_t> parent;      // size 2^20, entry 0 unused; fully compressed
  std::vector<uint32_t> reps;        // roots, ascending
  std::vector<uint32_t> orbit_size;  // parallel to reps

  uint32_t find(uint32_t w) const { return parent[w]; }
};

// Build the partition by sweeping the precomputed coefficient actions of the
// two standard generators over every nonzero word.
OrbitPartition build_partition();

struct OrbitRecord {
  uint32_t rep = 0;         // least form word in the orbit
  uint32_t orbit_size = 0;
  bool smooth = false;
  uint32_t aut_order = 0;   // stabilizer order inside PGL_4(F_2)
  bool passes_all_15 = false;
};

// One record per orbit, sorted by representative: smoothness by the Groebner
// certificate (search cross-check at k <= 4), stabilizer order by scanning
// all 20160 group elements, 15-point membership by mask parity.
std::vector<OrbitRecord> orbit_records(const OrbitPartition& partition, int threads);

struct FifteenPointSummary {
  uint64_t forms_on_all_15 = 0;  // exhaustive scan over all nonzero words
  int pencil_count = 0;          // distinct hyperplane-pencil cubics
  int singular_count = 0;        // 15-point forms that are singular
  int smooth_count = 0;          // 15-point forms that are smooth
  uint32_t smooth_orbit_root = 0;
};

// Checks the 63 / 35 / 28 split: the pencil cubics are pairwise distinct,
// vanish on all 15 points and are singular with F_2-rational witnesses; the
// remaining forms are smooth and form a single orbit, the orbit of the
// symplectic cubic. Throws CensusMismatch on any failed count.
FifteenPointSummary fifteen_point_analysis(const std::vector<OrbitRecord>& records,
                                           const OrbitPartition& partition);

// {smooth orbits with aut_order 720 and a verified S_6 witness} equals
// {smooth orbits vanishing on all 15 points}.
bool corollary_check(const std::vector<OrbitRecord>& records);

struct CensusReport {
  uint64_t total_forms = 0;   // sum of orbit sizes
  uint64_t orbit_count = 0;
  uint64_t smooth_orbit_count = 0;
  uint32_t max_smooth_aut_order = 0;
  uint32_t max_smooth_aut_rep = 0;  // representative of the attaining orbit
  bool max_attained_once = false;
  bool symplectic_orbit_attains_max = false;
  FifteenPointSummary fifteen;
  bool corollary_holds = false;
  std::vector<OrbitRecord> records;
};

CensusReport census_report(const OrbitPartition& partition,
                           std::vector<OrbitRecord> records);

// Cache file ("CBC1", little-endian): magic, the 20 monomial exponent tuples
// (4 bytes each), the parent array for words 1..2^20-1 as u32, then one
// record per root in ascending order: root u32, size u32, smooth u8,
// aut_order u32, all15 u8. Readers reject anything else.
void write_cache(const std::string& path, const OrbitPartition& partition,
                 const std::vector<OrbitRecord>& records);

struct CachedCensus {
  OrbitPartition partition;
  std::vector<OrbitRecord> records;
};

CachedCensus read_cache(const std::string& path);

}  // namespace cubics
