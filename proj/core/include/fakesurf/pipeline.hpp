#pragma once

// End-to-end classification with sharded, resumable persistence; tables and
// verification of surface files.
//
// On-disk layout of a run under out_dir:
//   t3/                     (t5-min3/ when min_disk_len > 1)
//     manifest.json
//     surfaces.jsonl        merged output, sorted by skeleton then key
//     parts/s2-p0of4.jsonl  one work unit: skeleton 2, config range 0 of 4
//     parts/s2-p0of4.done   completion marker with the part's sha256

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fakesurf/presentation.hpp"
#include "fakesurf/records.hpp"

namespace fakesurf {

struct ClassifyOptions {
  int min_disk_len = 1;
  /// Config-index ranges per skeleton.
  int shards = 1;
  int jobs = 1;
  /// Process only this range (0-based) of every skeleton; merge only if all
  /// other ranges are already done.
  std::optional<int> only_shard;
  /// Empty: keep everything in memory.
  std::filesystem::path out_dir;
  std::size_t coset_cap = kDefaultCosetCap;
  bool pi1 = true;
};

struct SkeletonSurfaces {
  int index = 0;
  std::vector<SurfaceRecord> surfaces;
};

struct ClassificationResult {
  int complexity = 0;
  int min_disk_len = 1;
  bool complete = false;
  std::vector<SkeletonSurfaces> skeleta;

  std::size_t total() const;
  std::size_t spines() const;
  /// Entry n counts surfaces with n disks whose T-bundle is nontrivial.
  std::vector<std::size_t> nontrivial_histogram() const;
  std::size_t with_embedded_disk() const;
  /// Surfaces whose stored pi1 verdict is exactly `verdict`.
  std::size_t pi1_count(const std::string& verdict) const;
};

/// Subdirectory of out_dir holding one run.
std::string run_name(int complexity, int min_disk_len);

ClassificationResult classify(int t, const ClassifyOptions& opts);

/// Reads the merged output of a finished run. nullopt when absent.
std::optional<ClassificationResult> load_result(const std::filesystem::path& out_dir, int t, int min_disk_len = 1);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& p);

struct SpineRatio {
  int complexity = 0;
  std::size_t spines = 0;
  std::size_t total = 0;
  /// round(100 * spines / total, 1), in tenths of a percent.
  long long tenths = 0;

  std::string percent() const;
};

std::vector<SpineRatio> stats_spine_ratio(const std::vector<ClassificationResult>& results);

/// Surface counts by nontrivial-T-bundle disks for `results`, then skeleton
/// counts by self-loops and by shortest cycle for complexities
/// 1..max_skeleton_complexity. Throws std::invalid_argument on an incomplete
/// result.
std::string emit_tables(const std::vector<ClassificationResult>& results, int max_skeleton_complexity);

struct VerifiedSurface {
  std::size_t line = 0;
  int complexity = 0;
  int skeleton_index = 0;
  bool valid = false;
  bool acyclic = false;
  bool spine = false;
  std::string pi1;
  /// Canonical key as hex, empty when invalid.
  std::string key;
};

struct VerifyIssue {
  std::size_t line = 0;
  std::string message;
};

struct VerifyReport {
  std::vector<VerifiedSurface> surfaces;
  std::vector<VerifyIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Re-derives validity, acyclicity, per-disk flags, spine status and the
/// pi1 verdict for every record (JSONL or listing) and reports every
/// disagreement. Parse errors become a single issue carrying their line.
VerifyReport verify_surfaces(std::istream& in, std::size_t coset_cap = kDefaultCosetCap);
VerifyReport verify_file(const std::filesystem::path& p, std::size_t coset_cap = kDefaultCosetCap);

/// Skeleta of one complexity, computed once per process.
const std::vector<std::shared_ptr<const Skeleton>>& skeleta_of(int t);

} // namespace fakesurf
