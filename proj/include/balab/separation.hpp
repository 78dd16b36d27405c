#pragma once

#include <cstdint>
#include <vector>

#include "balab/algebra.hpp"

namespace balab {

enum class SeparationKind { IdealIndependent, LeftSeparated, RightSeparated };

// IdealIndependent: a_i !<= join of the others, for every i.
// LeftSeparated:    a_i !<= join of the later elements.
// RightSeparated:   a_i !<= join of the earlier elements.
// Empty and singleton-nonzero sequences are separated of every kind.
bool is_separated(const PresentedAlgebra& a, const std::vector<Term>& seq,
                  SeparationKind kind);

struct WitnessResult {
  bool ok = false;
  // rows[i] sends seq[i] to 1 and the required other elements to 0.
  std::vector<HomRow> rows;
  int failed_index = -1;  // first index with no witness, when !ok
};

WitnessResult witness_homomorphisms(const PresentedAlgebra& a,
                                    const std::vector<Term>& seq,
                                    SeparationKind kind);

// All nonzero elementary conjunctions of arity 1..max_arity over distinct
// generators, deduplicated up to equality in a. Deterministic order.
std::vector<Term> elementary_candidates(const PresentedAlgebra& a, int max_arity);

// a <= join of Y (the ideal generated by Y; empty Y means a = 0).
bool ideal_membership(const PresentedAlgebra& a, const Term& t,
                      const std::vector<Term>& ideal_gens);

struct SearchResult {
  int length = 0;
  bool exact = false;       // search space fully explored within budget
  std::vector<int> chosen;  // pool indices, in sequence order
  std::vector<HomRow> witness_rows;
  std::uint64_t expansions = 0;
};

// Longest sequence drawn from pool (distinct pool indices, any order for the
// ordered kinds) that is separated of the given kind. Branch and bound;
// budget caps node expansions, exceeded => exact=false with best found.
SearchResult max_separated_length(const PresentedAlgebra& a, SeparationKind kind,
                                  const std::vector<Term>& pool,
                                  std::uint64_t budget = 1u << 22);

struct InvariantReport {
  SearchResult ideal, left, right;
  int atom_count = 0;
};

InvariantReport invariant_report(const PresentedAlgebra& a, int max_arity,
                                 std::uint64_t budget = 1u << 22);

}  // namespace balab
