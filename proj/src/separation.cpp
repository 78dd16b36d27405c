#include "balab/separation.hpp"

#include <algorithm>
#include <stdexcept>

namespace balab {

namespace {

// Indices of the elements that seq[i] must avoid (be !<= their join).
std::vector<int> others(std::size_t n, std::size_t i, SeparationKind kind) {
  std::vector<int> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    bool relevant = kind == SeparationKind::IdealIndependent ||
                    (kind == SeparationKind::LeftSeparated && j > i) ||
                    (kind == SeparationKind::RightSeparated && j < i);
    if (relevant) out.push_back(int(j));
  }
  return out;
}

}  // namespace

bool is_separated(const PresentedAlgebra& a, const std::vector<Term>& seq,
                  SeparationKind kind) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::vector<Term> rhs;
    for (int j : others(seq.size(), i, kind)) rhs.push_back(seq[j]);
    if (leq_holds(a, seq[i], rhs)) return false;
  }
  return true;
}

WitnessResult witness_homomorphisms(const PresentedAlgebra& a,
                                    const std::vector<Term>& seq,
                                    SeparationKind kind) {
  WitnessResult res;
  res.rows.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::vector<int> zero = others(seq.size(), i, kind);
    const HomRow* found = nullptr;
    for (const HomRow& f : a.rows) {
      if (!evaluate_hom(f, seq[i])) continue;
      bool ok = true;
      for (int j : zero)
        if (evaluate_hom(f, seq[j])) {
          ok = false;
          break;
        }
      if (ok) {
        found = &f;
        break;
      }
    }
    if (!found) {
      res.failed_index = int(i);
      return res;
    }
    res.rows.push_back(*found);
  }
  res.ok = true;
  return res;
}

std::vector<Term> elementary_candidates(const PresentedAlgebra& a, int max_arity) {
  max_arity = std::min(max_arity, a.width);
  std::vector<Term> out;
  // subsets of generators by increasing size, then sign patterns
  std::vector<int> subset;
  auto emit = [&]() {
    int k = int(subset.size());
    for (std::uint32_t signs = 0; signs < (1u << k); ++signs) {
      std::vector<Literal> lits;
      for (int i = 0; i < k; ++i) lits.emplace_back(subset[i], (signs >> i) & 1);
      Term t = elementary_conjunction(lits);
      if (!is_nonzero(a, t)) continue;
      bool dup = false;
      for (const Term& u : out)
        if (equal_holds(a, u, t)) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(std::move(t));
    }
  };
  // iterate subsets ordered by (size, lex)
  for (int size = 1; size <= max_arity; ++size) {
    subset.assign(std::size_t(size), 0);
    for (int i = 0; i < size; ++i) subset[i] = i;
    while (true) {
      emit();
      int i = size - 1;
      while (i >= 0 && subset[i] == a.width - size + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return out;
}

bool ideal_membership(const PresentedAlgebra& a, const Term& t,
                      const std::vector<Term>& ideal_gens) {
  return leq_holds(a, t, ideal_gens);
}

namespace {

// Satisfaction mask of a term: one bit per presentation row. leq_holds is
// exactly mask inclusion (no row may satisfy the lhs but none of the rhs),
// which makes the search feasibility checks pure bit operations.
struct Mask {
  std::vector<std::uint64_t> w;

  explicit Mask(std::size_t rows) : w((rows + 63) / 64, 0) {}
  void set(std::size_t i) { w[i / 64] |= std::uint64_t(1) << (i % 64); }
  void or_with(const Mask& o) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] |= o.w[k];
  }
  bool subset_of(const Mask& o) const {
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] & ~o.w[k]) return false;
    return true;
  }
};

struct Search {
  const std::vector<Mask>& masks;
  bool ordered;  // left/right kinds search over orderable sets
  std::uint64_t budget;
  std::uint64_t expansions = 0;
  bool exhausted = false;
  std::vector<int> current, best;

  bool ideal_feasible(int cand) const {
    // all members of current+{cand} must avoid the join of the rest
    std::vector<int> all = current;
    all.push_back(cand);
    for (std::size_t i = 0; i < all.size(); ++i) {
      Mask join(0);
      join.w.assign(masks[0].w.size(), 0);
      for (std::size_t j = 0; j < all.size(); ++j)
        if (j != i) join.or_with(masks[std::size_t(all[j])]);
      if (masks[std::size_t(all[i])].subset_of(join)) return false;
    }
    return true;
  }

  // A set admits a right-separated order iff repeatedly removing some
  // element not below the join of the remaining ones empties it (such an
  // element can always go last). Fills `order` with a valid sequence.
  bool orderable(const std::vector<int>& s, std::vector<int>* order) const {
    std::vector<int> alive = s;
    std::vector<int> elim;
    while (!alive.empty()) {
      int pick = -1;
      for (std::size_t i = 0; i < alive.size() && pick < 0; ++i) {
        Mask join(0);
        join.w.assign(masks[0].w.size(), 0);
        for (std::size_t j = 0; j < alive.size(); ++j)
          if (j != i) join.or_with(masks[std::size_t(alive[j])]);
        if (!masks[std::size_t(alive[i])].subset_of(join)) pick = int(i);
      }
      if (pick < 0) return false;
      elim.push_back(alive[std::size_t(pick)]);
      alive.erase(alive.begin() + pick);
    }
    if (order) order->assign(elim.rbegin(), elim.rend());
    return true;
  }

  bool feasible(int cand) const {
    if (!ordered) return ideal_feasible(cand);
    std::vector<int> all = current;
    all.push_back(cand);
    return orderable(all, nullptr);
  }

  void dfs(int from, int pool_size) {
    if (current.size() > best.size()) best = current;
    if (current.size() + std::size_t(pool_size - from) <= best.size()) return;
    for (int c = from; c < pool_size; ++c) {
      if (++expansions > budget) {
        exhausted = true;
        return;
      }
      if (!feasible(c)) continue;
      current.push_back(c);
      dfs(c + 1, pool_size);
      current.pop_back();
      if (exhausted) return;
    }
  }
};

}  // namespace

SearchResult max_separated_length(const PresentedAlgebra& a, SeparationKind kind,
                                  const std::vector<Term>& pool,
                                  std::uint64_t budget) {
  if (pool.empty()) throw std::invalid_argument("empty candidate pool");
  std::vector<Mask> masks;
  masks.reserve(pool.size());
  for (const Term& t : pool) {
    Mask m(a.rows.size());
    for (std::size_t j = 0; j < a.rows.size(); ++j)
      if (evaluate_hom(a.rows[j], t)) m.set(j);
    masks.push_back(std::move(m));
  }
  Search s{masks, kind != SeparationKind::IdealIndependent, budget};
  if (!pool.empty()) s.dfs(0, int(pool.size()));
  SearchResult res;
  res.length = int(s.best.size());
  res.exact = !s.exhausted;
  res.expansions = s.expansions;
  if (kind == SeparationKind::IdealIndependent) {
    res.chosen = s.best;
  } else {
    // recover a right-separated order for the winning set
    s.orderable(s.best, &res.chosen);
    if (kind == SeparationKind::LeftSeparated)
      std::reverse(res.chosen.begin(), res.chosen.end());
  }
  std::vector<Term> seq;
  for (int i : res.chosen) seq.push_back(pool[i]);
  WitnessResult w = witness_homomorphisms(a, seq, kind);
  if (w.ok) res.witness_rows = std::move(w.rows);
  return res;
}

InvariantReport invariant_report(const PresentedAlgebra& a, int max_arity,
                                 std::uint64_t budget) {
  std::vector<Term> pool = elementary_candidates(a, max_arity);
  InvariantReport rep;
  rep.ideal = max_separated_length(a, SeparationKind::IdealIndependent, pool, budget);
  rep.left = max_separated_length(a, SeparationKind::LeftSeparated, pool, budget);
  rep.right = max_separated_length(a, SeparationKind::RightSeparated, pool, budget);
  rep.atom_count = int(a.rows.size());
  return rep;
}

}  // namespace balab
