#pragma once

#include <optional>
#include <vector>

#include "balab/term.hpp"

namespace balab {

// Presented Boolean algebra B_(w,F): generators x0..x{width-1}, defining
// rows F (each f in F extends to the homomorphism it names; a term is
// nonzero iff some f evaluates it to 1).
struct PresentedAlgebra {
  int width = 0;
  std::vector<HomRow> rows;  // sorted, deduplicated
};

PresentedAlgebra make_algebra(int width, std::vector<HomRow> rows);

bool is_nonzero(const PresentedAlgebra& a, const Term& t);

// lhs <= rhs0 | rhs1 | ... : no f in F with f(lhs)=1 and f(rhs_i)=0 for all i.
bool leq_holds(const PresentedAlgebra& a, const Term& lhs,
               const std::vector<Term>& rhs);

bool equal_holds(const PresentedAlgebra& a, const Term& s, const Term& t);

// One full-pattern elementary conjunction per row of F; these are the atoms
// of the (finitely presented, hence atomic) algebra.
std::vector<Term> atoms(const PresentedAlgebra& a);

// Independent decision route: interpret each term as the subset of F
// satisfying it (structural set operations), decide <= by set inclusion.
// Guard: width must be <= max_width (the closure table is 2^width).
bool oracle_leq(const PresentedAlgebra& a, const Term& lhs,
                const std::vector<Term>& rhs);

// cl(F): all g in 2^w such that every finite restriction of g is matched by
// some f in F. For finite w the restriction to all of w is the binding one,
// so cl(F) = F; computed from the definition, width <= 20.
std::vector<HomRow> closure(int width, const std::vector<HomRow>& rows);

// Is `small` (over generators positions[i] of `big`) a subalgebra of `big`?
// Criterion: every f in F_small extends to some g in F_big, and every
// g in F_big restricts into cl(F_small). positions must be strictly
// increasing indices into big's generators; if empty, the identity
// embedding of the first small.width generators is used.
bool subalgebra_check(const PresentedAlgebra& small, const PresentedAlgebra& big,
                      std::vector<int> positions = {});

}  // namespace balab
