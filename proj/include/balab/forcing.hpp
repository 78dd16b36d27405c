#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "balab/algebra.hpp"
#include "balab/rng.hpp"

namespace balab {

enum class Flavor { Q, P };

struct SParams {
  std::vector<int> widths;  // chi_i per level, all > 0
  int ucap = 0;             // max |u|; 0 = unbounded
  int levels() const { return int(widths.size()); }
};

struct GridPoint {
  int level = 0;
  int col = 0;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

// Condition p = (w, u, <f_s : s in u>); rows[a][b] = f_{points[a]}(points[b]).
struct Condition {
  std::vector<int> levels;             // w, strictly increasing
  std::vector<GridPoint> points;       // u, in ≺_S order
  std::vector<std::vector<uint8_t>> rows;

  int index_of(GridPoint s) const;  // position in points, -1 if absent
};

struct Verdict {
  bool ok = true;
  std::string reason;
};

// Q flavor: f_s(s)=1, f_s(t)=0 for t ≺ s. P flavor: f_s(t)=0 for s ≺ t.
Verdict validate_condition(const SParams& sp, const Condition& c, Flavor flavor);

// Shifts of a row defined on `pts` (Q and P respectively), and the level cut:
//   (f)_eps  : zero at (level, g) for g < eps
//   (f)^eps  : zero at (level, g) for g >= eps
//   (f)_jcut : zero at every (j, g) with j >= jcut
std::vector<uint8_t> shift_below(const std::vector<GridPoint>& pts,
                                 const std::vector<uint8_t>& row, int level, int eps);
std::vector<uint8_t> shift_above(const std::vector<GridPoint>& pts,
                                 const std::vector<uint8_t>& row, int level, int eps);
std::vector<uint8_t> cut_levels(const std::vector<GridPoint>& pts,
                                const std::vector<uint8_t>& row, int jcut);

struct LeqWitness {
  GridPoint point;      // the u^q point being justified
  std::string branch;   // "extends", "zero", "same-level", "other-level"
  GridPoint via;        // witness point in u^p (when applicable)
  int eps = -1;
  int jcut = -1;        // P other-level cut form, -1 when unused
};

struct LeqCert {
  bool holds = false;
  std::string reason;            // first failure, when !holds
  std::vector<LeqWitness> cases;
};

LeqCert condition_leq(const SParams& sp, const Condition& p, const Condition& q,
                      Flavor flavor);

// The unique ≺_S order isomorphism of u-sets transporting one condition to
// the other (same w-pattern sizes, (i,xi)->(j,0) iff xi=0, rows transported).
struct IsoResult {
  bool ok = false;
  std::string reason;
  std::vector<int> map;  // map[a] = index in q of the image of p's a-th point
};

IsoResult condition_iso(const SParams& sp, const Condition& p, const Condition& q,
                        Flavor flavor);

// Derived algebra B_p: generators = points of u in ≺_S order, rows:
//   Q: {0} ∪ {(f_{i,xi})_z : (i,xi) in u, z <= chi_i}
//   P: {(f_{i,xi})^e : e <= chi_i} ∪ {(f_{i,xi})_j : j <= i}
PresentedAlgebra condition_algebra(const SParams& sp, const Condition& c,
                                   Flavor flavor);

// Pair amalgamation. Preconditions (checked, Verdict on failure): both valid,
// isomorphic via the unique H, H identity on u^p ∩ u^q, common levels carry
// identical point sets, and the interleaving
// sup(w∩) < min(w^p\w^q) <= sup(w^p\w^q) < min(w^q\w^p) (empty parts vacuous).
struct AmalgamResult {
  bool ok = false;
  std::string reason;
  Condition r;
};

AmalgamResult pair_amalgamate(const SParams& sp, const Condition& p,
                              const Condition& q, Flavor flavor);

// Triple amalgamation data: q >= q0; q0,q1,q2 pairwise isomorphic, isos
// identity on the common heart u*; tau = elementary conjunction over
// u^{q0} positions, transported along the isos position-wise.
struct TripleInstance {
  Condition q, q0, q1, q2;
  std::vector<Literal> tau;  // (dense index into u^{q0}, negated)
};

struct TripleResult {
  bool ok = false;
  std::string reason;   // precondition failure
  Condition r;
  bool conclusion = false;  // Q: tau0 <= tau1 | tau2 in B_r;  P: tau1 & -tau2 <= tau0
};

TripleResult triple_amalgamate(const SParams& sp, const TripleInstance& in,
                               Flavor flavor);

// Term over B_r's generators naming src's points (src's u must embed in r's u).
Term transport_conjunction(const std::vector<Literal>& lits, const Condition& src,
                           const Condition& r);

// Every valid condition for sp (requires small widths / ucap).
std::vector<Condition> enumerate_conditions(const SParams& sp, Flavor flavor);

// Seeded generator of precondition-valid triple-amalgamation instances.
TripleInstance random_triple_instance(const SParams& sp, Rng& rng, Flavor flavor);
SParams triple_instance_params(Flavor flavor);

// Union algebra of an increasing chain: checks each step's order and that
// B_{c_k} embeds in B_{c_{k+1}}, returns the final algebra.
struct ChainResult {
  bool ok = false;
  std::string reason;
  PresentedAlgebra algebra;
};

ChainResult chain_union_algebra(const SParams& sp,
                                const std::vector<Condition>& chain, Flavor flavor);

}  // namespace balab
