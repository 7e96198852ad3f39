#pragma once

// Line-oriented file formats.
//
// Surface record (one JSON object per line):
//   {"acyclic":true,"disks":[[1,2,2,1,-2],[1]],"flags":[[false,true],[true,true]],
//    "pi1":"trivial","skeleton":{"complexity":1,"index":1},"spine":true}
//
// Paper listing (blank lines separate surfaces, '#' starts a comment):
//   G 1 1
//   1 2 2 1 -2 | N Y
//   1 | Y Y

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fakesurf/surface.hpp"
#include "fakesurf/topology.hpp"

namespace fakesurf {

class RecordError : public std::runtime_error {
public:
  RecordError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct SurfaceRecord {
  int complexity = 0;
  int skeleton_index = 0;
  WordList disks;
  std::vector<DiskFlags> flags;
  bool acyclic = false;
  bool spine = false;
  /// to_string(Pi1Verdict), empty when not computed.
  std::string pi1;
  /// Source line, for reports; not serialized.
  std::size_t line = 0;

  friend bool operator==(const SurfaceRecord& a, const SurfaceRecord& b) {
    return a.complexity == b.complexity && a.skeleton_index == b.skeleton_index && a.disks == b.disks &&
           a.flags == b.flags && a.acyclic == b.acyclic && a.spine == b.spine && a.pi1 == b.pi1;
  }
};

std::string to_json_line(const SurfaceRecord& r);
/// Throws RecordError carrying `line`.
SurfaceRecord surface_from_json(std::string_view text, std::size_t line = 0);

struct SkeletonRecord {
  int complexity = 0;
  int index = 0;
  std::vector<int> adjacency; // row-major
  int self_loops = 0;
  int girth = 0;
  std::size_t automorphism_order = 0;
};

SkeletonRecord skeleton_record(const Skeleton& s);
std::string to_json_line(const SkeletonRecord& r);

/// A surface as printed in a paper-style listing. Flags are the Y/N columns.
struct ListedSurface {
  int complexity = 0;
  int skeleton_index = 0;
  WordList disks;
  std::vector<DiskFlags> flags;
  std::size_t line = 0;
};

std::vector<ListedSurface> read_listing(std::istream& in);
void write_listing(std::ostream& out, const std::vector<SurfaceRecord>& records);

enum class FileFormat { Jsonl, Listing };

/// First meaningful line starting with '{' means JSONL.
FileFormat sniff_format(std::istream& in);

/// Any file in either format, as listed surfaces (JSONL flags carried over).
std::vector<ListedSurface> read_surfaces(std::istream& in);

/// Listings write non-loop edges with an arbitrary direction. Returns the
/// words with the smallest set of non-loop edges reversed (in label order)
/// that makes them a valid disk system on `s`, or nullopt.
std::optional<WordList> orient_to_skeleton(const Skeleton& s, const WordList& words);

} // namespace fakesurf
