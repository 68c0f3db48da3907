#ifndef STICKY_ENUMERATION_H_
#define STICKY_ENUMERATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sticky/geometry.h"
#include "sticky/symmetry.h"

namespace sticky {

// Witness P with P A P^T = B, or nullopt.  N <= 10.
std::optional<Permutation> GraphsIsomorphic(const AdjacencyMatrix& a,
                                            const AdjacencyMatrix& b);

bool IsConnected(const AdjacencyMatrix& a);

// Upper triangle of P A P^T packed row by row into bits (bit 0 = entry
// (0,1)), minimized over all N! relabelings; equal iff isomorphic.  N <= 8.
std::uint64_t CanonicalForm(const AdjacencyMatrix& a);
// Permutation attaining CanonicalForm.
Permutation CanonicalLabeling(const AdjacencyMatrix& a);

struct RelaxOptions {
  double eps_gap = 1e-3;
  int max_iters = 500;
  double tol_q = 1e-12;
};

// Moves a boundary embedding (contacts of `a` satisfied, some non-contacts
// touching) into the interior of its manifold until every non-contact pair
// is at least eps_gap beyond contact.  Throws Error(kRelaxationFailed).
Cluster RelaxOffBoundary(const Cluster& seed, const AdjacencyMatrix& a,
                         const RelaxOptions& options = {});

struct SurveyOptions {
  SymmetryOptions symmetry;
  int max_d = 7;
  RelaxOptions relax;
  int jobs = 0;
};

struct SurveyEntry {
  AdjacencyMatrix adjacency;  // canonically labeled
  std::uint64_t canonical_form = 0;
  int d = 0;
  std::string seed_name;               // "octahedron" or "polytetrahedron"
  std::vector<std::pair<int, int>> broken;  // seed contacts removed
  Cluster representative;
  int automorphism_order = 0;
  int point_group_order = 0;
  std::uint64_t sigma = 0;
  std::uint64_t counting_number = 0;
  int closure_count = 0;
  int path_searches = 0;
  std::string error;  // non-empty if the pipeline failed for this entry
  std::optional<SymmetryReport> report;
};

struct SurveyResult {
  std::vector<SurveyEntry> entries;  // sorted by d, then canonical form
  std::map<int, int> counts;         // d -> number of clusters
  std::map<int, std::map<std::uint64_t, int>> sigma_histogram;  // d -> sigma -> count
};

// Distinct connected contact graphs obtained by removing up to max_d
// contacts from the octahedron and the polytetrahedron, without symmetry
// computations.
std::vector<SurveyEntry> EnumerateN6Graphs(int max_d, const RelaxOptions& relax = {});

// EnumerateN6Graphs followed by the symmetry pipeline on every entry.  Per
// entry failures are recorded in SurveyEntry::error.
SurveyResult Survey(const SurveyOptions& options);

}  // namespace sticky

#endif  // STICKY_ENUMERATION_H_
