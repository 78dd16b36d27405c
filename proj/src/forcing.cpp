#include "balab/forcing.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace balab {

int Condition::index_of(GridPoint s) const {
  auto it = std::lower_bound(points.begin(), points.end(), s);
  if (it == points.end() || !(*it == s)) return -1;
  return int(it - points.begin());
}

Verdict validate_condition(const SParams& sp, const Condition& c, Flavor flavor) {
  auto fail = [](std::string r) { return Verdict{false, std::move(r)}; };
  for (std::size_t i = 0; i < c.levels.size(); ++i) {
    int lv = c.levels[i];
    if (lv < 0 || lv >= sp.levels()) return fail("w level out of range");
    if (i > 0 && lv <= c.levels[i - 1]) return fail("w not strictly increasing");
  }
  if (sp.ucap > 0 && int(c.points.size()) > sp.ucap) return fail("|u| exceeds cap");
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    GridPoint s = c.points[i];
    if (s.level < 0 || s.level >= sp.levels() || s.col < 0 ||
        s.col >= sp.widths[std::size_t(s.level)])
      return fail("u point outside grid");
    if (i > 0 && !(c.points[i - 1] < s)) return fail("u not in <_S order");
  }
  // w <-> u coupling: i in w => (i,0) in u; (i,xi) in u => i in w
  for (int lv : c.levels)
    if (c.index_of({lv, 0}) < 0) return fail("level in w without (i,0) in u");
  for (GridPoint s : c.points)
    if (!std::binary_search(c.levels.begin(), c.levels.end(), s.level))
      return fail("u point at level outside w");
  if (c.rows.size() != c.points.size()) return fail("row count != |u|");
  for (std::size_t a = 0; a < c.rows.size(); ++a) {
    if (c.rows[a].size() != c.points.size()) return fail("row width != |u|");
    for (std::size_t b = 0; b < c.rows[a].size(); ++b) {
      uint8_t v = c.rows[a][b];
      if (v > 1) return fail("row entry not a bit");
      if (a == b && v != 1) return fail("f_s(s) != 1");
      bool forced_zero = flavor == Flavor::Q ? c.points[b] < c.points[a]
                                             : c.points[a] < c.points[b];
      if (forced_zero && a != b && v != 0)
        return fail(flavor == Flavor::Q ? "Q row nonzero below its point"
                                        : "P row nonzero above its point");
    }
  }
  return {};
}

std::vector<uint8_t> shift_below(const std::vector<GridPoint>& pts,
                                 const std::vector<uint8_t>& row, int level, int eps) {
  std::vector<uint8_t> out = row;
  for (std::size_t b = 0; b < pts.size(); ++b)
    if (pts[b].level == level && pts[b].col < eps) out[b] = 0;
  return out;
}

std::vector<uint8_t> shift_above(const std::vector<GridPoint>& pts,
                                 const std::vector<uint8_t>& row, int level, int eps) {
  std::vector<uint8_t> out = row;
  for (std::size_t b = 0; b < pts.size(); ++b)
    if (pts[b].level == level && pts[b].col >= eps) out[b] = 0;
  return out;
}

std::vector<uint8_t> cut_levels(const std::vector<GridPoint>& pts,
                                const std::vector<uint8_t>& row, int jcut) {
  std::vector<uint8_t> out = row;
  for (std::size_t b = 0; b < pts.size(); ++b)
    if (pts[b].level >= jcut) out[b] = 0;
  return out;
}

namespace {

// f restricted to the points of `small` (all of which must lie in `big`).
std::vector<uint8_t> restrict_row(const Condition& big, const std::vector<uint8_t>& row,
                                  const Condition& small) {
  std::vector<uint8_t> out(small.points.size(), 0);
  for (std::size_t a = 0; a < small.points.size(); ++a) {
    int idx = big.index_of(small.points[a]);
    if (idx < 0) throw std::logic_error("restrict_row: point not in big");
    out[a] = row[std::size_t(idx)];
  }
  return out;
}

bool all_zero(const std::vector<uint8_t>& v) {
  for (uint8_t x : v)
    if (x) return false;
  return true;
}

}  // namespace

LeqCert condition_leq(const SParams& sp, const Condition& p, const Condition& q,
                      Flavor flavor) {
  LeqCert cert;
  auto fail = [&](std::string r) {
    cert.holds = false;
    cert.reason = std::move(r);
    return cert;
  };
  // (alpha) w^p ⊆ w^q, u^p ⊆ u^q
  for (int lv : p.levels)
    if (!std::binary_search(q.levels.begin(), q.levels.end(), lv))
      return fail("w^p not contained in w^q");
  for (GridPoint s : p.points)
    if (q.index_of(s) < 0) return fail("u^p not contained in u^q");
  // (beta) rows extend
  for (std::size_t a = 0; a < p.points.size(); ++a) {
    int qa = q.index_of(p.points[a]);
    if (restrict_row(q, q.rows[std::size_t(qa)], p) != p.rows[a])
      return fail("f^q does not extend f^p at a u^p point");
  }
  // (gamma) every u^q row restricts to a shift of a u^p row (or to zero)
  for (std::size_t a = 0; a < q.points.size(); ++a) {
    GridPoint s = q.points[a];
    std::vector<uint8_t> r = restrict_row(q, q.rows[a], p);
    LeqWitness w;
    w.point = s;
    if (all_zero(r)) {
      w.branch = "zero";
      cert.cases.push_back(w);
      continue;
    }
    bool in_wp = std::binary_search(p.levels.begin(), p.levels.end(), s.level);
    bool matched = false;
    auto try_point = [&](std::size_t b) {
      GridPoint t = p.points[b];
      for (int eps = 0; eps <= sp.widths[std::size_t(t.level)] && !matched; ++eps) {
        std::vector<uint8_t> cand =
            flavor == Flavor::Q ? shift_below(p.points, p.rows[b], t.level, eps)
                                : shift_above(p.points, p.rows[b], t.level, eps);
        if (cand == r) {
          matched = true;
          w.branch = t.level == s.level ? "same-level" : "other-level";
          w.via = t;
          w.eps = eps;
        }
      }
      if (flavor == Flavor::P && !in_wp && !matched) {
        for (int jc = 0; jc <= t.level && !matched; ++jc) {
          if (cut_levels(p.points, p.rows[b], jc) == r) {
            matched = true;
            w.branch = "other-level";
            w.via = t;
            w.jcut = jc;
          }
        }
      }
    };
    for (std::size_t b = 0; b < p.points.size() && !matched; ++b) {
      GridPoint t = p.points[b];
      if (in_wp && t.level != s.level) continue;  // same-level branch only
      if (!in_wp && flavor == Flavor::Q && t.level == s.level) {
        // i not in w^p: witness may be at any level, including s.level's
        // (cannot happen: level of a u^p point is in w^p), so no filter.
      }
      try_point(b);
    }
    if (!matched)
      return fail("clause (gamma) fails at (" + std::to_string(s.level) + "," +
                  std::to_string(s.col) + ")");
    cert.cases.push_back(w);
  }
  cert.holds = true;
  return cert;
}

IsoResult condition_iso(const SParams& sp, const Condition& p, const Condition& q,
                        Flavor flavor) {
  (void)sp;
  (void)flavor;
  IsoResult res;
  if (p.points.size() != q.points.size()) {
    res.reason = "different |u|";
    return res;
  }
  // the only <_S order isomorphism is positional
  for (std::size_t a = 0; a < p.points.size(); ++a) {
    if ((p.points[a].col == 0) != (q.points[a].col == 0)) {
      res.reason = "column-0 pattern mismatch";
      return res;
    }
  }
  for (std::size_t a = 0; a < p.points.size(); ++a)
    for (std::size_t b = 0; b < p.points.size(); ++b)
      if (p.rows[a][b] != q.rows[a][b]) {
        res.reason = "rows not transported";
        return res;
      }
  res.ok = true;
  for (std::size_t a = 0; a < p.points.size(); ++a) res.map.push_back(int(a));
  return res;
}

PresentedAlgebra condition_algebra(const SParams& sp, const Condition& c,
                                   Flavor flavor) {
  int n = int(c.points.size());
  if (n > 64) throw std::invalid_argument("condition too large for algebra rows");
  std::vector<HomRow> rows;
  auto push = [&](const std::vector<uint8_t>& v) {
    HomRow r(0, n);
    for (int b = 0; b < n; ++b) r.set(b, v[std::size_t(b)]);
    rows.push_back(r);
  };
  if (flavor == Flavor::Q) {
    push(std::vector<uint8_t>(std::size_t(n), 0));
    for (int a = 0; a < n; ++a) {
      int lv = c.points[std::size_t(a)].level;
      for (int z = 0; z <= sp.widths[std::size_t(lv)]; ++z)
        push(shift_below(c.points, c.rows[std::size_t(a)], lv, z));
    }
  } else {
    for (int a = 0; a < n; ++a) {
      int lv = c.points[std::size_t(a)].level;
      for (int e = 0; e <= sp.widths[std::size_t(lv)]; ++e)
        push(shift_above(c.points, c.rows[std::size_t(a)], lv, e));
      for (int j = 0; j <= lv; ++j) push(cut_levels(c.points, c.rows[std::size_t(a)], j));
    }
    if (n == 0) push({});
  }
  return make_algebra(n, std::move(rows));
}

namespace {

std::vector<int> level_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<GridPoint> point_union(const std::vector<GridPoint>& a,
                                   const std::vector<GridPoint>& b) {
  std::vector<GridPoint> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<GridPoint> point_intersection(const std::vector<GridPoint>& a,
                                          const std::vector<GridPoint>& b) {
  std::vector<GridPoint> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

// Piecewise row assembly: for each point of target, take the value from the
// first part whose condition contains it. Every target point must be covered.
struct Piece {
  const Condition* cond;
  std::vector<uint8_t> row;  // over cond->points
};

std::vector<uint8_t> assemble(const Condition& target, const std::vector<Piece>& parts) {
  std::vector<uint8_t> out(target.points.size(), 0);
  for (std::size_t b = 0; b < target.points.size(); ++b) {
    bool covered = false;
    for (const Piece& pc : parts) {
      int idx = pc.cond->index_of(target.points[b]);
      if (idx >= 0) {
        out[b] = pc.row[std::size_t(idx)];
        covered = true;
        break;
      }
    }
    if (!covered) throw std::logic_error("assemble: uncovered point");
  }
  return out;
}

}  // namespace

AmalgamResult pair_amalgamate(const SParams& sp, const Condition& p,
                              const Condition& q, Flavor flavor) {
  AmalgamResult res;
  auto fail = [&](std::string r) {
    res.ok = false;
    res.reason = std::move(r);
    return res;
  };
  Verdict v = validate_condition(sp, p, flavor);
  if (!v.ok) return fail("p invalid: " + v.reason);
  v = validate_condition(sp, q, flavor);
  if (!v.ok) return fail("q invalid: " + v.reason);
  IsoResult iso = condition_iso(sp, p, q, flavor);
  if (!iso.ok) return fail("not isomorphic: " + iso.reason);
  // H identity on the overlap
  std::vector<GridPoint> overlap = point_intersection(p.points, q.points);
  for (GridPoint s : overlap) {
    int a = p.index_of(s);
    if (!(q.points[std::size_t(iso.map[std::size_t(a)])] == s))
      return fail("iso not identity on the overlap");
  }
  // common levels carry identical point sets
  std::vector<int> wc, wp_only, wq_only;
  std::set_intersection(p.levels.begin(), p.levels.end(), q.levels.begin(),
                        q.levels.end(), std::back_inserter(wc));
  std::set_difference(p.levels.begin(), p.levels.end(), q.levels.begin(),
                      q.levels.end(), std::back_inserter(wp_only));
  std::set_difference(q.levels.begin(), q.levels.end(), p.levels.begin(),
                      p.levels.end(), std::back_inserter(wq_only));
  for (int lv : wc) {
    std::set<int> cp, cq;
    for (GridPoint s : p.points)
      if (s.level == lv) cp.insert(s.col);
    for (GridPoint s : q.points)
      if (s.level == lv) cq.insert(s.col);
    if (cp != cq) return fail("common level with differing point sets");
  }
  // level interleaving: w∩ < w^p\w^q <= ... < w^q\w^p (empty parts vacuous)
  if (!wc.empty() && !wp_only.empty() && wc.back() >= wp_only.front())
    return fail("interleaving: common levels not below p-only levels");
  if (!wp_only.empty() && !wq_only.empty() && wp_only.back() >= wq_only.front())
    return fail("interleaving: p-only levels not below q-only levels");
  if (!wc.empty() && !wq_only.empty() && wc.back() >= wq_only.front())
    return fail("interleaving: common levels not below q-only levels");

  Condition r;
  r.levels = level_union(p.levels, q.levels);
  r.points = point_union(p.points, q.points);
  auto H = [&](GridPoint s) {  // image in q of a u^p point
    return q.points[std::size_t(iso.map[std::size_t(p.index_of(s))])];
  };
  auto Hinv = [&](GridPoint s) {  // preimage in p of a u^q point
    int qa = q.index_of(s);
    for (std::size_t a = 0; a < p.points.size(); ++a)
      if (iso.map[a] == qa) return p.points[a];
    throw std::logic_error("Hinv");
  };
  for (GridPoint s : r.points) {
    int pa = p.index_of(s), qa = q.index_of(s);
    bool common_level = std::binary_search(wc.begin(), wc.end(), s.level);
    std::vector<Piece> parts;
    if (pa >= 0) {
      const std::vector<uint8_t>& fp = p.rows[std::size_t(pa)];
      parts.push_back({&p, fp});
      if (common_level) {
        // s in both u's; second part is the matching shift of f^q_s
        const std::vector<uint8_t>& fq = q.rows[std::size_t(q.index_of(s))];
        parts.push_back({&q, flavor == Flavor::Q
                                 ? shift_below(q.points, fq, s.level, s.col)
                                 : shift_above(q.points, fq, s.level, s.col + 1)});
      } else {
        GridPoint hs = H(s);
        const std::vector<uint8_t>& fq = q.rows[std::size_t(q.index_of(hs))];
        parts.push_back({&q, flavor == Flavor::Q ? fq : cut_levels(q.points, fq, s.level)});
      }
    } else {
      const std::vector<uint8_t>& fq = q.rows[std::size_t(qa)];
      if (flavor == Flavor::Q) {
        parts.push_back({&q, fq});
        parts.push_back({&p, std::vector<uint8_t>(p.points.size(), 0)});
      } else {
        GridPoint hs = Hinv(s);
        const std::vector<uint8_t>& fp = p.rows[std::size_t(p.index_of(hs))];
        parts.push_back({&q, fq});
        parts.push_back({&p, cut_levels(p.points, fp, s.level)});
      }
    }
    r.rows.push_back(assemble(r, parts));
  }
  v = validate_condition(sp, r, flavor);
  if (!v.ok) return fail("amalgam invalid: " + v.reason);
  if (!condition_leq(sp, p, r, flavor).holds) return fail("amalgam does not extend p");
  if (!condition_leq(sp, q, r, flavor).holds) return fail("amalgam does not extend q");
  res.ok = true;
  res.r = std::move(r);
  return res;
}

Term transport_conjunction(const std::vector<Literal>& lits, const Condition& src,
                           const Condition& r) {
  std::vector<Literal> out;
  for (auto [idx, neg] : lits) {
    if (idx < 0 || idx >= int(src.points.size()))
      throw std::out_of_range("literal index outside source condition");
    int pos = r.index_of(src.points[std::size_t(idx)]);
    if (pos < 0) throw std::invalid_argument("source point not in target condition");
    out.emplace_back(pos, neg);
  }
  return elementary_conjunction(out);
}

namespace {

// Shared precondition bundle for triple amalgamation.
struct TripleCtx {
  std::vector<GridPoint> heart;   // u*
  std::vector<int> heart_levels;  // w*
};

bool eval_conjunction_row(const std::vector<Literal>& lits,
                          const std::vector<uint8_t>& row) {
  for (auto [idx, neg] : lits)
    if ((row[std::size_t(idx)] != 0) == neg) return false;
  return true;
}

}  // namespace

TripleResult triple_amalgamate(const SParams& sp, const TripleInstance& in,
                               Flavor flavor) {
  TripleResult res;
  auto fail = [&](std::string r) {
    res.ok = false;
    res.reason = std::move(r);
    return res;
  };
  const Condition &q = in.q, &q0 = in.q0, &q1 = in.q1, &q2 = in.q2;
  for (auto [c, name] : std::initializer_list<std::pair<const Condition*, const char*>>{
           {&q, "q"}, {&q0, "q0"}, {&q1, "q1"}, {&q2, "q2"}}) {
    Verdict v = validate_condition(sp, *c, flavor);
    if (!v.ok) return fail(std::string(name) + " invalid: " + v.reason);
  }
  if (!condition_leq(sp, q0, q, flavor).holds) return fail("q does not extend q0");
  IsoResult i01 = condition_iso(sp, q0, q1, flavor);
  IsoResult i02 = condition_iso(sp, q0, q2, flavor);
  IsoResult i12 = condition_iso(sp, q1, q2, flavor);
  if (!i01.ok || !i02.ok || !i12.ok) return fail("q0,q1,q2 not pairwise isomorphic");
  std::size_t n0 = q0.points.size();
  auto img = [&](const Condition& to, GridPoint s, const Condition& from) {
    // positional isomorphism: same index
    return to.points[std::size_t(from.index_of(s))];
  };

  TripleCtx ctx;
  ctx.heart = point_intersection(q0.points, q1.points);
  if (point_intersection(q0.points, q2.points) != ctx.heart ||
      point_intersection(q1.points, q2.points) != ctx.heart ||
      point_intersection(q.points, q1.points) != ctx.heart ||
      point_intersection(q.points, q2.points) != ctx.heart) {
    if (flavor == Flavor::Q)
      return fail("pairwise u-overlaps do not all equal the heart");
    // P: q1 and q2 may share more than the heart, the rest must match
    if (point_intersection(q0.points, q2.points) != ctx.heart ||
        point_intersection(q.points, q1.points) != ctx.heart ||
        point_intersection(q.points, q2.points) != ctx.heart)
      return fail("u-overlaps with q/q0 do not equal the heart");
  }
  // isos identity on the heart (positional: heart point index must map to
  // the same point)
  for (GridPoint s : ctx.heart) {
    int a0 = q0.index_of(s);
    if (a0 < 0) return fail("heart not inside u^{q0}");
    if (!(q1.points[std::size_t(a0)] == s) || !(q2.points[std::size_t(a0)] == s))
      return fail("iso not identity on the heart");
  }
  if (flavor == Flavor::P) {
    std::vector<GridPoint> sh = point_intersection(q1.points, q2.points);
    for (GridPoint s : sh) {
      int a1 = q1.index_of(s);
      if (!(q2.points[std::size_t(a1)] == s))
        return fail("H12 not identity on u^{q1} ∩ u^{q2}");
    }
    if (q1.levels != q2.levels) return fail("w^{q1} != w^{q2}");
  }
  for (GridPoint s : ctx.heart)
    if (s.col == 0) ctx.heart_levels.push_back(s.level);
  const std::vector<int>& ws = ctx.heart_levels;
  auto in_ws = [&](int lv) { return std::binary_search(ws.begin(), ws.end(), lv); };
  // heart-level points of q0,q1,q2 must lie in the heart
  for (const Condition* c : {&q0, &q1, &q2})
    for (GridPoint s : c->points)
      if (in_ws(s.level) && std::find(ctx.heart.begin(), ctx.heart.end(), s) ==
                                ctx.heart.end())
        return fail("heart-level point outside the heart");
  int sup_ws = ws.empty() ? -1 : ws.back();
  int sup_wq = q.levels.empty() ? -1 : q.levels.back();
  for (const Condition* c : {&q0, &q1, &q2})
    for (int lv : c->levels)
      if (!in_ws(lv) && lv < sup_ws) return fail("non-heart level below sup(w*)");
  if (flavor == Flavor::Q) {
    for (int lv : q2.levels)
      if (!in_ws(lv) && lv <= sup_wq) return fail("sup(w^q) not below w^{q2}\\w*");
    // q1's non-heart levels must avoid w^q (automatic from overlap = heart)
  } else {
    for (int lv : q1.levels)
      if (!in_ws(lv) && lv <= sup_wq) return fail("sup(w^q) not below w^{q1}\\w*");
    // structural mapping constraints used by the construction
    for (GridPoint s : point_intersection(q1.points, q2.points)) {
      if (in_ws(s.level)) continue;
      GridPoint h = img(q0, s, q1);
      if (!(h < s) && !(h == s)) return fail("H10 not <=_S-decreasing");
    }
    for (GridPoint s : q1.points) {
      GridPoint h12 = img(q2, s, q1);
      if (h12.level != s.level) return fail("H12 not level-preserving");
    }
  }
  // tau must be an elementary conjunction over u^{q0}
  {
    std::set<int> seen;
    for (auto [idx, neg] : in.tau) {
      (void)neg;
      if (idx < 0 || idx >= int(n0)) return fail("tau literal outside u^{q0}");
      if (!seen.insert(idx).second) return fail("tau repeats a generator");
    }
  }

  Condition r;
  r.levels = level_union(level_union(q.levels, q1.levels), q2.levels);
  r.points = point_union(point_union(q.points, q1.points), q2.points);

  std::vector<Literal> tau1, tau2;
  for (auto [idx, neg] : in.tau) {
    tau1.emplace_back(idx, neg);
    tau2.emplace_back(idx, neg);
  }
  // tau_k over u^{qk} positions equals tau over u^{q0} positions (positional isos)

  auto zero_of = [](const Condition& c) {
    return std::vector<uint8_t>(c.points.size(), 0);
  };

  if (flavor == Flavor::Q) {
    for (GridPoint s : r.points) {
      std::vector<Piece> parts;
      int a1 = q1.index_of(s);
      if (a1 >= 0 && in_ws(s.level)) {
        // case 1: heart point (isos identity there)
        GridPoint h10 = img(q0, s, q1);
        GridPoint h12 = img(q2, s, q1);
        parts.push_back({&q, q.rows[std::size_t(q.index_of(h10))]});
        parts.push_back({&q1, q1.rows[std::size_t(a1)]});
        parts.push_back({&q2, q2.rows[std::size_t(q2.index_of(h12))]});
      } else if (a1 >= 0) {
        // case 2
        parts.push_back({&q, zero_of(q)});
        parts.push_back({&q1, q1.rows[std::size_t(a1)]});
        parts.push_back({&q2, zero_of(q2)});
      } else if (q.index_of(s) >= 0) {
        // case 3: s in u^q \ u*
        int qa = q.index_of(s);
        std::vector<uint8_t> restr = restrict_row(q, q.rows[std::size_t(qa)], q0);
        if (all_zero(restr)) {
          parts.push_back({&q, q.rows[std::size_t(qa)]});
          parts.push_back({&q1, zero_of(q1)});
          parts.push_back({&q2, zero_of(q2)});
        } else {
          bool in_wq0 = std::binary_search(q0.levels.begin(), q0.levels.end(), s.level);
          int bj = -1, bz = -1, be = -1;
          for (std::size_t b = 0; b < q0.points.size() && bj < 0; ++b) {
            GridPoint t = q0.points[b];
            if (in_wq0 && t.level != s.level) continue;
            for (int eps = t.col; eps <= sp.widths[std::size_t(t.level)]; ++eps) {
              if (shift_below(q0.points, q0.rows[b], t.level, eps) == restr) {
                bj = t.level;
                bz = t.col;
                be = eps;
                break;
              }
            }
          }
          if (bj < 0) return fail("case 3: no shift of a u^{q0} row matches");
          GridPoint t{bj, bz};
          GridPoint t1 = img(q1, t, q0), t2 = img(q2, t, q0);
          const std::vector<uint8_t>& f1 = q1.rows[std::size_t(q1.index_of(t1))];
          const std::vector<uint8_t>& f2 = q2.rows[std::size_t(q2.index_of(t2))];
          parts.push_back({&q, q.rows[std::size_t(qa)]});
          if (in_ws(bj) && bj < s.level && s.level <= sup_ws) {
            // 3(alpha)
            int chi_j = sp.widths[std::size_t(bj)];
            parts.push_back({&q1, shift_below(q1.points, f1, t1.level, chi_j)});
            parts.push_back({&q2, shift_below(q2.points, f2, t2.level, chi_j)});
          } else if (in_ws(bj) && bj == s.level) {
            // 3(beta)
            int es = std::max(be, s.col);
            parts.push_back({&q1, shift_below(q1.points, f1, t1.level, es)});
            parts.push_back({&q2, shift_below(q2.points, f2, t2.level, es)});
          } else if (in_ws(bj) && s.level < bj) {
            // 3(gamma)
            parts.push_back({&q1, shift_below(q1.points, f1, t1.level, be)});
            parts.push_back({&q2, shift_below(q2.points, f2, t2.level, be)});
          } else {
            // 3(delta): i > sup(w*) or j not in w*
            parts.push_back({&q1, zero_of(q1)});
            std::vector<uint8_t> best;
            bool have = false, best_tau = false;
            for (std::size_t b = 0; b < q2.points.size(); ++b) {
              GridPoint t2c = q2.points[b];
              if (in_ws(t2c.level)) continue;
              for (int eps = t2c.col; eps <= sp.widths[std::size_t(t2c.level)]; ++eps) {
                std::vector<uint8_t> cand =
                    shift_below(q2.points, q2.rows[b], t2c.level, eps);
                bool zero_on_ws = true;
                for (std::size_t bb = 0; bb < q2.points.size(); ++bb)
                  if (in_ws(q2.points[bb].level) && cand[bb]) zero_on_ws = false;
                if (!zero_on_ws) continue;
                bool hits = eval_conjunction_row(tau2, cand);
                if (!have || (hits && !best_tau)) {
                  best = cand;
                  have = true;
                  best_tau = hits;
                }
              }
            }
            if (!have) best = zero_of(q2);
            parts.push_back({&q2, best});
          }
        }
      } else {
        int a2 = q2.index_of(s);
        if (a2 < 0) throw std::logic_error("triple: uncovered point");
        if (in_ws(s.level)) {
          // case 4 (kept for completeness; heart-level points of q2 are in
          // the heart under the preconditions above)
          GridPoint h20 = img(q0, s, q2), h21 = img(q1, s, q2);
          parts.push_back(
              {&q, shift_below(q.points, q.rows[std::size_t(q.index_of(h20))],
                               s.level, s.col)});
          parts.push_back(
              {&q1, shift_below(q1.points, q1.rows[std::size_t(q1.index_of(h21))],
                                s.level, s.col)});
          parts.push_back({&q2, q2.rows[std::size_t(a2)]});
        } else {
          // case 5
          parts.push_back({&q, zero_of(q)});
          parts.push_back({&q1, zero_of(q1)});
          parts.push_back({&q2, q2.rows[std::size_t(a2)]});
        }
      }
      r.rows.push_back(assemble(r, parts));
    }
  } else {
    // P flavor (Claim on P-triples)
    auto pick_eps = [&](const Condition& from, GridPoint h, const std::vector<Literal>& tau0) {
      // shift (f^q_h)^{eps} chosen to satisfy tau0 on u^{q0} if possible
      int lv = h.level;
      const std::vector<uint8_t>& fq = q.rows[std::size_t(q.index_of(h))];
      (void)from;
      for (int eps = sp.widths[std::size_t(lv)]; eps >= 0; --eps) {
        std::vector<uint8_t> cand = shift_above(q.points, fq, lv, eps);
        if (eval_conjunction_row(tau0, restrict_row(q, cand, q0)))
          return std::make_pair(eps, cand);
      }
      return std::make_pair(sp.widths[std::size_t(lv)],
                            shift_above(q.points, fq, lv, sp.widths[std::size_t(lv)]));
    };
    for (GridPoint s : r.points) {
      std::vector<Piece> parts;
      int a1 = q1.index_of(s), a2 = q2.index_of(s);
      bool in_wq = std::binary_search(q.levels.begin(), q.levels.end(), s.level);
      if (a1 >= 0 && a2 >= 0 && in_wq) {
        // case 1 (heart)
        GridPoint h10 = img(q0, s, q1);
        parts.push_back({&q, q.rows[std::size_t(q.index_of(h10))]});
        parts.push_back({&q1, q1.rows[std::size_t(a1)]});
        parts.push_back({&q2, q2.rows[std::size_t(a2)]});
      } else if (a1 >= 0 && a2 >= 0) {
        // case 2
        parts.push_back({&q, pick_eps(q1, img(q0, s, q1), in.tau).second});
        parts.push_back({&q1, q1.rows[std::size_t(a1)]});
        parts.push_back({&q2, q2.rows[std::size_t(a2)]});
      } else if (a2 >= 0 && a1 < 0) {
        // case 3: u^{q2} \ u^{q1}
        GridPoint h20 = img(q0, s, q2), h21 = img(q1, s, q2);
        parts.push_back({&q, pick_eps(q2, h20, in.tau).second});
        parts.push_back({&q1, q1.rows[std::size_t(q1.index_of(h21))]});
        parts.push_back({&q2, q2.rows[std::size_t(a2)]});
      } else if (a1 >= 0 && a2 < 0) {
        // case 4: u^{q1} \ u^{q2}
        GridPoint h12 = img(q2, s, q1);
        parts.push_back({&q, pick_eps(q1, img(q0, s, q1), in.tau).second});
        parts.push_back({&q1, q1.rows[std::size_t(a1)]});
        parts.push_back({&q2, shift_above(q2.points,
                                          q2.rows[std::size_t(q2.index_of(h12))],
                                          s.level, s.col + 1)});
      } else {
        // case 5: u^q \ u^{q1}
        int qa = q.index_of(s);
        if (qa < 0) throw std::logic_error("triple P: uncovered point");
        std::vector<uint8_t> restr = restrict_row(q, q.rows[std::size_t(qa)], q0);
        parts.push_back({&q, q.rows[std::size_t(qa)]});
        if (all_zero(restr)) {
          parts.push_back({&q1, zero_of(q1)});
          parts.push_back({&q2, zero_of(q2)});
        } else {
          bool in_wq0 = std::binary_search(q0.levels.begin(), q0.levels.end(), s.level);
          bool in_wq1 = std::binary_search(q1.levels.begin(), q1.levels.end(), s.level);
          // try (f^{q0}_{i',z'})^{e'} matches, then level cuts
          GridPoint wt{-1, -1};
          int we = -1, wj = -1;
          for (std::size_t b = 0; b < q0.points.size() && wt.level < 0; ++b) {
            GridPoint t = q0.points[b];
            if (in_wq0 && t.level != s.level) continue;  // 5(alpha) needs i=i'
            for (int eps = 0; eps <= sp.widths[std::size_t(t.level)]; ++eps) {
              if (shift_above(q0.points, q0.rows[b], t.level, eps) == restr) {
                wt = t;
                we = eps;
                break;
              }
            }
          }
          if (wt.level < 0 && !in_wq0) {
            for (std::size_t b = 0; b < q0.points.size() && wt.level < 0; ++b) {
              GridPoint t = q0.points[b];
              for (int jc = 0; jc <= std::min(s.level, t.level); ++jc) {
                if (cut_levels(q0.points, q0.rows[b], jc) == restr) {
                  wt = t;
                  wj = jc;
                  break;
                }
              }
            }
          }
          if (wt.level < 0) return fail("case 5: no shift of a u^{q0} row matches");
          GridPoint t1 = img(q1, wt, q0), t2 = img(q2, wt, q0);
          const std::vector<uint8_t>& f1 = q1.rows[std::size_t(q1.index_of(t1))];
          const std::vector<uint8_t>& f2 = q2.rows[std::size_t(q2.index_of(t2))];
          if (wj >= 0) {
            // 5(gamma)
            parts.push_back({&q1, cut_levels(q1.points, f1, wj)});
            parts.push_back({&q2, cut_levels(q2.points, f2, wj)});
          } else if (in_wq0) {
            // 5(alpha)
            if (in_wq1) {
              parts.push_back({&q1, shift_above(q1.points, f1, t1.level, we)});
              parts.push_back({&q2, shift_above(q2.points, f2, t2.level, we)});
            } else {
              parts.push_back({&q1, cut_levels(q1.points, f1, s.level)});
              parts.push_back({&q2, cut_levels(q2.points, f2, s.level)});
            }
          } else {
            // 5(beta)
            bool wt_in_wq1 =
                std::binary_search(q1.levels.begin(), q1.levels.end(), wt.level);
            if (wt_in_wq1 && wt.level < s.level) {
              parts.push_back({&q1, shift_above(q1.points, f1, t1.level, we)});
              parts.push_back({&q2, shift_above(q2.points, f2, t2.level, we)});
            } else {
              parts.push_back({&q1, cut_levels(q1.points, f1, s.level)});
              parts.push_back({&q2, cut_levels(q2.points, f2, s.level)});
            }
          }
        }
      }
      r.rows.push_back(assemble(r, parts));
    }
  }

  Verdict vr = validate_condition(sp, r, flavor);
  if (!vr.ok) return fail("amalgam invalid: " + vr.reason);
  for (auto [c, name] : std::initializer_list<std::pair<const Condition*, const char*>>{
           {&q, "q"}, {&q1, "q1"}, {&q2, "q2"}}) {
    if (!condition_leq(sp, *c, r, flavor).holds)
      return fail(std::string("amalgam does not extend ") + name);
  }
  res.ok = true;
  PresentedAlgebra br = condition_algebra(sp, r, flavor);
  Term t0 = transport_conjunction(in.tau, q0, r);
  Term t1 = transport_conjunction(tau1, q1, r);
  Term t2 = transport_conjunction(tau2, q2, r);
  if (flavor == Flavor::Q) {
    res.conclusion = leq_holds(br, t0, {t1, t2});
  } else {
    res.conclusion = leq_holds(br, Term::conj({t1, Term::negate(t2)}), {t0});
  }
  res.r = std::move(r);
  return res;
}

std::vector<Condition> enumerate_conditions(const SParams& sp, Flavor flavor) {
  std::vector<GridPoint> grid;
  for (int i = 0; i < sp.levels(); ++i)
    for (int x = 0; x < sp.widths[std::size_t(i)]; ++x) grid.push_back({i, x});
  if (grid.size() > 16) throw std::invalid_argument("grid too large to enumerate");
  std::vector<Condition> out;
  for (std::uint32_t mask = 0; mask < (1u << grid.size()); ++mask) {
    std::vector<GridPoint> u;
    for (std::size_t b = 0; b < grid.size(); ++b)
      if ((mask >> b) & 1) u.push_back(grid[b]);
    if (sp.ucap > 0 && int(u.size()) > sp.ucap) continue;
    // closure: a level with any point must contain its column 0
    bool ok = true;
    std::set<int> lv;
    for (GridPoint s : u) lv.insert(s.level);
    for (int l : lv) {
      if (std::find(u.begin(), u.end(), GridPoint{l, 0}) == u.end()) ok = false;
    }
    if (!ok) continue;
    Condition base;
    base.levels.assign(lv.begin(), lv.end());
    base.points = u;
    // collect free entries: (a,b), a != b, not forced zero
    std::vector<std::pair<int, int>> free;
    std::size_t n = u.size();
    std::vector<std::vector<uint8_t>> rows(n, std::vector<uint8_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
      rows[a][a] = 1;
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        bool forced = flavor == Flavor::Q ? u[b] < u[a] : u[a] < u[b];
        if (!forced) free.emplace_back(int(a), int(b));
      }
    }
    if (free.size() > 20) throw std::invalid_argument("too many free bits");
    for (std::uint32_t fm = 0; fm < (1u << free.size()); ++fm) {
      Condition c = base;
      c.rows = rows;
      for (std::size_t k = 0; k < free.size(); ++k)
        c.rows[std::size_t(free[k].first)][std::size_t(free[k].second)] =
            (fm >> k) & 1;
      if (validate_condition(sp, c, flavor).ok) out.push_back(std::move(c));
    }
  }
  return out;
}

ChainResult chain_union_algebra(const SParams& sp,
                                const std::vector<Condition>& chain, Flavor flavor) {
  ChainResult res;
  if (chain.empty()) {
    res.reason = "empty chain";
    return res;
  }
  for (std::size_t k = 0; k < chain.size(); ++k) {
    Verdict v = validate_condition(sp, chain[k], flavor);
    if (!v.ok) {
      res.reason = "condition " + std::to_string(k) + " invalid: " + v.reason;
      return res;
    }
  }
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    if (!condition_leq(sp, chain[k], chain[k + 1], flavor).holds) {
      res.reason = "chain not increasing at step " + std::to_string(k);
      return res;
    }
    PresentedAlgebra small = condition_algebra(sp, chain[k], flavor);
    PresentedAlgebra big = condition_algebra(sp, chain[k + 1], flavor);
    std::vector<int> positions;
    for (GridPoint s : chain[k].points)
      positions.push_back(chain[k + 1].index_of(s));
    if (!subalgebra_check(small, big, positions)) {
      res.reason = "algebra embedding fails at step " + std::to_string(k);
      return res;
    }
  }
  res.ok = true;
  res.algebra = condition_algebra(sp, chain.back(), flavor);
  return res;
}

SParams triple_instance_params(Flavor flavor) {
  (void)flavor;
  return SParams{{2, 3, 3, 3, 3, 3}, 0};
}

TripleInstance random_triple_instance(const SParams& sp, Rng& rng, Flavor flavor) {
  // Heart at level 0; the remaining levels host the moving parts.
  TripleInstance in;
  int heart_cols = rng.range(1, std::min(2, sp.widths[0]));
  std::vector<GridPoint> heart;
  for (int x = 0; x < heart_cols; ++x) heart.push_back({0, x});

  auto finish_rows = [&](Condition& c, Rng& r2) {
    std::size_t n = c.points.size();
    c.rows.assign(n, std::vector<uint8_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
      c.rows[a][a] = 1;
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        bool forced = flavor == Flavor::Q ? c.points[b] < c.points[a]
                                          : c.points[a] < c.points[b];
        if (!forced) c.rows[a][b] = uint8_t(r2.bit());
      }
    }
  };
  auto transport = [&](const Condition& from, Condition& to) {
    to.rows = from.rows;  // positional isomorphism
  };

  if (flavor == Flavor::Q) {
    // levels: a1 < a0 <= sup(w^q) < a2
    int a1 = rng.range(1, 2), a0 = a1 + rng.range(1, 2);
    int extra = rng.range(0, 1);  // q may add a level strictly between a0 and a2
    int c_extra = a0 + 1;
    int a2 = (extra ? c_extra : a0) + rng.range(1, 2);
    if (a2 >= sp.levels()) a2 = sp.levels() - 1;
    if (extra && c_extra >= a2) extra = 0;
    int pts = rng.range(1, 2);  // points per moving level
    auto make = [&](int lv) {
      Condition c;
      c.levels = {0, lv};
      c.points = heart;
      for (int x = 0; x < pts; ++x) c.points.push_back({lv, x});
      return c;
    };
    Condition q0 = make(a0), q1 = make(a1), q2 = make(a2);
    std::uint64_t row_seed = rng.raw();
    {
      Rng r2(row_seed);
      finish_rows(q0, r2);
    }
    transport(q0, q1);
    transport(q0, q2);
    Condition q = q0;
    if (extra) {
      q.levels = {0, a0, c_extra};
      q.points.push_back({c_extra, 0});
      std::size_t n = q.points.size();
      q.rows.assign(n, std::vector<uint8_t>(n, 0));
      for (std::size_t a = 0; a + 1 < n; ++a)
        for (std::size_t b = 0; b + 1 < n; ++b) q.rows[a][b] = q0.rows[a][b];
      for (std::size_t a = 0; a < n; ++a) q.rows[a][a] = 1;
      // the old rows get free bits at the new point; the new row restricts
      // to zero on u^{q0}
      for (std::size_t a = 0; a + 1 < n; ++a) q.rows[a][n - 1] = uint8_t(rng.bit());
    }
    in.q = q;
    in.q0 = q0;
    in.q1 = q1;
    in.q2 = q2;
  } else {
    // P: q1,q2 share w = {0, b}; q0 at b0 < b; q inside levels < b
    int b0 = rng.range(1, 2);
    int b = b0 + rng.range(2, 3);
    if (b >= sp.levels()) b = sp.levels() - 1;
    int shared = rng.range(1, 2);  // shared (b, x) points of q1,q2
    Condition q0, q1, q2;
    q0.levels = {0, b0};
    q1.levels = q2.levels = {0, b};
    q0.points = q1.points = q2.points = heart;
    for (int x = 0; x < shared; ++x) {
      q0.points.push_back({b0, x});
      q1.points.push_back({b, x});
      q2.points.push_back({b, x});
    }
    // one differing point beyond the shared ones
    int w_b = sp.widths[std::size_t(b)];
    int w_b0 = sp.widths[std::size_t(b0)];
    bool differ = shared + 1 < w_b && shared < w_b0 && rng.bit();
    if (differ) {
      q0.points.push_back({b0, shared});
      q1.points.push_back({b, shared});
      q2.points.push_back({b, shared + 1});
    }
    std::uint64_t row_seed = rng.raw();
    {
      Rng r2(row_seed);
      finish_rows(q0, r2);
    }
    transport(q0, q1);
    transport(q0, q2);
    Condition q = q0;
    if (rng.bit() && b0 + 1 < b) {
      int c_extra = b0 + 1;
      q.levels = {0, b0, c_extra};
      std::vector<GridPoint> np = q.points;
      np.push_back({c_extra, 0});
      std::sort(np.begin(), np.end());
      Condition qq;
      qq.levels = q.levels;
      qq.points = np;
      std::size_t n = np.size();
      qq.rows.assign(n, std::vector<uint8_t>(n, 0));
      for (std::size_t a = 0; a < n; ++a) {
        int ia = q0.index_of(np[a]);
        for (std::size_t bb = 0; bb < n; ++bb) {
          int ib = q0.index_of(np[bb]);
          if (ia >= 0 && ib >= 0) {
            qq.rows[a][bb] = q0.rows[std::size_t(ia)][std::size_t(ib)];
          } else if (a == bb) {
            qq.rows[a][bb] = 1;
          } else if (ia >= 0 && ib < 0) {
            // old row at the new point: free unless forced zero (P: above)
            bool forced = np[a] < np[bb];
            qq.rows[a][bb] = forced ? 0 : uint8_t(rng.bit());
          } else {
            // new row: restriction to u^{q0} must be a legal shift; keep 0
            qq.rows[a][bb] = 0;
          }
        }
      }
      q = qq;
    }
    in.q = q;
    in.q0 = q0;
    in.q1 = q1;
    in.q2 = q2;
  }
  // tau: nonempty random literal set over u^{q0}
  std::size_t n0 = in.q0.points.size();
  std::uint32_t mask = 0;
  while (mask == 0) mask = std::uint32_t(rng.below(1u << n0));
  for (std::size_t k = 0; k < n0; ++k)
    if ((mask >> k) & 1) in.tau.emplace_back(int(k), rng.bit());
  return in;
}

}  // namespace balab
