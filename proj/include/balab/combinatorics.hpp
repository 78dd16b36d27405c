#pragma once

#include <cstdint>
#include <vector>

namespace balab {

using FiniteSet = std::vector<int>;  // sorted, unique

struct DeltaResult {
  bool found = false;
  std::vector<int> indices;  // members of the extracted Delta-system
  FiniteSet heart;
  bool exact = false;  // exhaustive search (family size <= 20)
};

// Delta-system of size `target` (>=2) inside the family: pairwise
// intersections all equal the heart. Exact DFS up to 20 members; beyond that
// the classical disjoint/popular-element extraction runs first (complete for
// families above the sunflower bound) followed by a pair-heart greedy pass,
// flagged exact=false since misses are then inconclusive.
DeltaResult delta_system_extract(const std::vector<FiniteSet>& family, int target);

// Sunflower bound: families of k-sets larger than k!*(lambda-1)^k contain a
// sunflower with lambda petals. Returns the bound, or 0 on overflow.
std::uint64_t sunflower_bound(int k, int lambda);

struct DeltaSeqResult {
  bool found = false;
  std::vector<int> indices;
  std::vector<int> heart_positions;  // positions where all selected agree
  bool exact = false;
};

// Delta-system of equal-length sequences: the selected sequences agree
// exactly on the heart positions and are pairwise distinct at every other
// position (at each position: values all equal, or pairwise distinct).
DeltaSeqResult delta_system_sequences(const std::vector<std::vector<int>>& seqs,
                                      int target);

struct FreeSetResult {
  bool found = false;
  std::vector<int> members;
};

// image[y] = F(y) for y in 0..n-1. Free set S: y not in F(y') for all
// distinct y,y' in S. Exact branch and bound, n <= 24.
FreeSetResult free_set_search(const std::vector<FiniteSet>& image, int target);

}  // namespace balab
