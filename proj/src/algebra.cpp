#include "balab/algebra.hpp"

#include <algorithm>

namespace balab {

PresentedAlgebra make_algebra(int width, std::vector<HomRow> rows) {
  if (width < 0 || width > 64) throw std::invalid_argument("algebra width out of range");
  for (const HomRow& r : rows)
    if (r.width != width) throw std::invalid_argument("row width mismatch");
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return PresentedAlgebra{width, std::move(rows)};
}

bool is_nonzero(const PresentedAlgebra& a, const Term& t) {
  if (max_generator(t) >= a.width) throw std::out_of_range("term mentions unknown generator");
  for (const HomRow& f : a.rows)
    if (evaluate_hom(f, t)) return true;
  return false;
}

bool leq_holds(const PresentedAlgebra& a, const Term& lhs,
               const std::vector<Term>& rhs) {
  int m = max_generator(lhs);
  for (const Term& t : rhs) m = std::max(m, max_generator(t));
  if (m >= a.width) throw std::out_of_range("term mentions unknown generator");
  for (const HomRow& f : a.rows) {
    if (!evaluate_hom(f, lhs)) continue;
    bool covered = false;
    for (const Term& t : rhs)
      if (evaluate_hom(f, t)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool equal_holds(const PresentedAlgebra& a, const Term& s, const Term& t) {
  return leq_holds(a, s, {t}) && leq_holds(a, t, {s});
}

std::vector<Term> atoms(const PresentedAlgebra& a) {
  std::vector<Term> out;
  for (const HomRow& f : a.rows) {
    std::vector<Literal> lits;
    for (int g = 0; g < a.width; ++g) lits.emplace_back(g, !f.get(g));
    out.push_back(elementary_conjunction(lits));
  }
  return out;
}

namespace {

// Characteristic vector over a.rows of the element t names.
std::vector<bool> sat_set(const PresentedAlgebra& a, const Term& t) {
  std::size_t n = a.rows.size();
  switch (t.kind) {
    case Term::Kind::Const0: return std::vector<bool>(n, false);
    case Term::Kind::Const1: return std::vector<bool>(n, true);
    case Term::Kind::Atom: {
      std::vector<bool> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = a.rows[i].get(t.atom);
      return v;
    }
    case Term::Kind::Not: {
      std::vector<bool> v = sat_set(a, t.kids[0]);
      for (std::size_t i = 0; i < n; ++i) v[i] = !v[i];
      return v;
    }
    case Term::Kind::And: {
      std::vector<bool> v(n, true);
      for (const Term& k : t.kids) {
        std::vector<bool> u = sat_set(a, k);
        for (std::size_t i = 0; i < n; ++i) v[i] = v[i] && u[i];
      }
      return v;
    }
    case Term::Kind::Or: {
      std::vector<bool> v(n, false);
      for (const Term& k : t.kids) {
        std::vector<bool> u = sat_set(a, k);
        for (std::size_t i = 0; i < n; ++i) v[i] = v[i] || u[i];
      }
      return v;
    }
  }
  return {};
}

}  // namespace

bool oracle_leq(const PresentedAlgebra& a, const Term& lhs,
                const std::vector<Term>& rhs) {
  int m = max_generator(lhs);
  for (const Term& t : rhs) m = std::max(m, max_generator(t));
  if (m >= a.width) throw std::out_of_range("term mentions unknown generator");
  std::vector<bool> l = sat_set(a, lhs);
  std::vector<bool> cover(a.rows.size(), false);
  for (const Term& t : rhs) {
    std::vector<bool> u = sat_set(a, t);
    for (std::size_t i = 0; i < cover.size(); ++i) cover[i] = cover[i] || u[i];
  }
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] && !cover[i]) return false;
  return true;
}

std::vector<HomRow> closure(int width, const std::vector<HomRow>& rows) {
  if (width > 20) throw std::invalid_argument("closure: width too large");
  std::vector<HomRow> out;
  for (std::uint64_t g = 0; g < (std::uint64_t(1) << width); ++g) {
    // g belongs iff every finite restriction of g matches some f in F;
    // the restriction to all of w subsumes the rest at finite width.
    bool hit = false;
    for (const HomRow& f : rows)
      if (f.bits == g) {
        hit = true;
        break;
      }
    if (hit) out.emplace_back(g, width);
  }
  return out;
}

bool subalgebra_check(const PresentedAlgebra& small, const PresentedAlgebra& big,
                      std::vector<int> positions) {
  if (positions.empty()) {
    for (int i = 0; i < small.width; ++i) positions.push_back(i);
  }
  if (int(positions.size()) != small.width)
    throw std::invalid_argument("subalgebra_check: embedding size mismatch");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 0 || positions[i] >= big.width ||
        (i > 0 && positions[i] <= positions[i - 1]))
      throw std::invalid_argument("subalgebra_check: bad embedding");
  }
  auto restrict_row = [&](const HomRow& g) {
    HomRow r(0, small.width);
    for (int i = 0; i < small.width; ++i) r.set(i, g.get(positions[i]));
    return r;
  };
  // every f in F extends to some g in F*
  for (const HomRow& f : small.rows) {
    bool ext = false;
    for (const HomRow& g : big.rows)
      if (restrict_row(g) == f) {
        ext = true;
        break;
      }
    if (!ext) return false;
  }
  // every g in F* restricts into cl(F) (= F here, but go through closure)
  std::vector<HomRow> cl = small.width <= 20 ? closure(small.width, small.rows)
                                             : small.rows;
  for (const HomRow& g : big.rows) {
    HomRow r = restrict_row(g);
    if (std::find(cl.begin(), cl.end(), r) == cl.end()) return false;
  }
  return true;
}

}  // namespace balab
