#pragma once

// Per-disk topology of a fake surface: embeddedness and the triod bundle
// over the disk's boundary curve.

#include <vector>

#include "fakesurf/surface.hpp"

namespace fakesurf {

struct DiskFlags {
  bool embedded = false;
  bool t_trivial = false;
  friend bool operator==(const DiskFlags&, const DiskFlags&) = default;
};

/// No edge repeats in the boundary word and no vertex is met twice.
bool is_embedded(const Skeleton& s, const DiskWord& w);

/// Follows the two non-disk arms of the triod fiber once around the boundary
/// of disk `d`. Over an edge the arms are the other two strands there; at a
/// corner {a, b} the arm on face {a, x} passes to the strand on face {b, x}.
/// True when the arms come back unswapped.
bool t_bundle_trivial(const Skeleton& s, const WordList& words, std::size_t d);

/// Flags for every disk, in disk order.
std::vector<DiskFlags> disk_flags(const Skeleton& s, const WordList& words);

bool is_embedded(const FakeSurface& f, std::size_t d);
bool t_bundle_trivial(const FakeSurface& f, std::size_t d);

/// Every disk has a trivial T-bundle.
bool is_spine(const FakeSurface& f);
bool has_embedded_disk(const FakeSurface& f);
int nontrivial_t_count(const FakeSurface& f);

} // namespace fakesurf
