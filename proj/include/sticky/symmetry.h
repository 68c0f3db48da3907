#ifndef STICKY_SYMMETRY_H_
#define STICKY_SYMMETRY_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "sticky/geometry.h"
#include "sticky/groups.h"
#include "sticky/manifold.h"

namespace sticky {

// How the elements of G x C2 outside the point group are decided.
enum class SearchStrategy {
  // Every element gets its own path search (in parallel); the found set is
  // completed to a group at the end.
  kExhaustive,
  // Elements are visited in canonical order.  A found element adds every
  // product with the elements already found; an element lying in F r F for
  // a found subgroup F and an unreachable r is skipped.
  kCosets,
};

std::string_view SearchStrategyName(SearchStrategy s);
SearchStrategy ParseSearchStrategy(std::string_view name);

struct SymmetryOptions {
  PathConfig path;
  bool include_inversions = true;
  bool fix_com = true;
  double eps_contact = kDefaultContactTolerance;
  double eps_d = 1e-6;
  SearchStrategy strategy = SearchStrategy::kCosets;
  int jobs = 0;
  // Re-run the search for closure-inferred elements with fresh seeds.
  bool reverify_closure = false;
};

enum class ElementStatus { kRotation, kPath, kProduct, kClosure, kNotFound };
std::string_view ElementStatusName(ElementStatus s);

// Outcome for one element of G x C2 (or G).
struct ElementRecord {
  PiOperation op;
  ElementStatus status = ElementStatus::kNotFound;
  bool searched = false;
  // True when membership (or its absence) was implied by other results
  // without a search of its own.
  bool inferred = false;
  PathStats stats;
  std::uint64_t seed = 0;
  // Points in the found path; 0 otherwise.
  int path_length = 0;
  double final_distance = 0.0;
  // Result of the optional re-search of closure-inferred elements:
  // 0 not run, 1 found, -1 not found.
  int reverified = 0;
};

struct SymmetryReport {
  Cluster cluster;  // centered embedding actually used
  AdjacencyMatrix adjacency;
  Partition radii_partition;
  // Partition used for the counting number (radii partition or colors).
  Partition partition;
  std::vector<Permutation> automorphisms;
  PiGroup point_group;
  PiGroup sticky_group;
  std::vector<ElementRecord> elements;
  std::uint64_t sigma = 0;
  std::uint64_t counting_number = 0;
  bool include_inversions = true;
  SymmetryOptions options;
  int path_searches = 0;

  int closure_count() const { return sticky_group.Count(Provenance::kClosure); }
};

// Newton-projects the cluster onto the exact contact set of its detected
// contacts (center of mass fixed at the origin).  Throws Error(kOverlap) or
// Error(kRankDeficient).
Cluster SnapToContacts(const Cluster& cluster, const AdjacencyMatrix& adjacency,
                       double tol_q = 1e-12);

// Full pipeline: contacts, automorphisms (restricted to the radii
// partition), point group, path searches, closure, sigma and n.
SymmetryReport StickySymmetryGroup(const Cluster& cluster,
                                   const SymmetryOptions& options);

// Restricts a finished report to a coloring without new path searches.
// Throws Error(kColorRadiiConflict) if a color class mixes radii.
SymmetryReport ColoredSymmetry(const SymmetryReport& report, const Partition& colors);

// Verifies P ⊆ T ⊆ G x C2, the group axioms and sigma * n = 2 prod |C_i|!.
// Throws Error(kNotAGroup) or Error(kNotDivisible) on violation.
void CheckReport(const SymmetryReport& report);

}  // namespace sticky

#endif  // STICKY_SYMMETRY_H_
