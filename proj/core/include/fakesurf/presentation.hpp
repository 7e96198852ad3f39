#pragma once

// Finitely presented groups: the fundamental group of a fake surface after
// collapsing a spanning tree, simplification, and coset enumeration.
//
//   auto p = parse_presentation("x,y | x^5 y^-3, y^3 (xy)^-2");
//   coset_enumerate(p).order  // 120

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fakesurf/surface.hpp"

namespace fakesurf {

/// Signed 1-based generator indices; -g is the inverse of generator g.
using Relator = std::vector<int>;

class Presentation {
public:
  Presentation() = default;
  /// Names default to a, b, c, ... (x1, x2, ... past 26 generators).
  Presentation(int generators, std::vector<Relator> relators, std::vector<std::string> names = {});

  int generator_count() const { return static_cast<int>(names_.size()); }
  const std::vector<Relator>& relators() const { return relators_; }
  const std::vector<std::string>& names() const { return names_; }

  /// n_x for every generator, counting letters of either sign.
  std::vector<int> occurrences() const;
  /// L = sum of all relator lengths.
  int total_length() const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

private:
  std::vector<std::string> names_;
  std::vector<Relator> relators_;
};

class PresentationSyntaxError : public std::runtime_error {
public:
  PresentationSyntaxError(std::size_t position, const std::string& what);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// "x,y | xyXY" or "a | a^5". Generator names are a lowercase letter plus
/// optional digits; the uppercase spelling is the inverse. Atoms and
/// parenthesized groups take an optional ^n (n may be negative); "1" is the
/// empty relator. Whitespace is ignored.
Presentation parse_presentation(std::string_view text);

/// Inverse of parse_presentation; runs print as x^n.
std::string to_string(const Presentation& p);

/// Generators are the edges outside `tree`, renumbered 1.. in label order;
/// relators are the disk words with tree letters deleted.
Presentation presentation_of(const Skeleton& s, const WordList& disks, const std::vector<int>& tree);
/// Uses spanning_tree(skeleton).
Presentation presentation_of(const FakeSurface& f);

/// Free and cyclic reduction, elimination of generators that occur once in
/// some relator, and shortening by common subwords, repeated to a fixpoint.
/// The result presents an isomorphic group and is itself a fixpoint.
Presentation tietze_simplify(const Presentation& p);

constexpr std::size_t kDefaultCosetCap = 200000;

struct Pi1Verdict {
  enum class Kind { TrivialProven, FiniteOrder, Inconclusive };
  Kind kind = Kind::Inconclusive;
  /// Group order when the table closed.
  std::uint64_t order = 0;
  /// Cosets ever defined, and the peak number alive.
  std::uint64_t cosets_defined = 0;
  std::uint64_t peak_cosets = 0;

  bool trivial() const { return kind == Kind::TrivialProven; }
};

std::string to_string(const Pi1Verdict& v);

/// Relator-driven (HLT) enumeration of the cosets of the trivial subgroup.
/// Inconclusive once more than `cap` cosets would be alive.
Pi1Verdict coset_enumerate(const Presentation& p, std::size_t cap = kDefaultCosetCap);

/// coset_enumerate(tietze_simplify(presentation_of(f))).
Pi1Verdict pi1_trivial(const FakeSurface& f, std::size_t cap = kDefaultCosetCap);

/// Complexity of the banana-pineapple fake surface of the standard 2-complex:
/// 2L - 4k - max n_x + 2. Throws std::domain_error when some generator
/// occurs fewer than twice.
long long bp_complexity(const Presentation& p);

} // namespace fakesurf
