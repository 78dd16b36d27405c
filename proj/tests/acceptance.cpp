// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion has a wall-clock budget that is part of the check.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "balab/algebra.hpp"
#include "balab/base.hpp"
#include "balab/combinatorics.hpp"
#include "balab/forcing.hpp"
#include "balab/io.hpp"
#include "balab/rng.hpp"
#include "balab/separation.hpp"
#include "balab/term.hpp"

using namespace balab;

namespace {

int g_failures = 0;

template <class F>
void criterion(int n, const char* desc, double limit_s, F body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = ok && secs < limit_s;
  if (!pass) ++g_failures;
  std::printf("%s criterion %d: %s (%.2fs / %.0fs limit%s%s)\n",
              pass ? "PASS" : "FAIL", n, desc, secs, limit_s,
              detail.empty() ? "" : "; ", detail.c_str());
  std::fflush(stdout);
}

Term random_term(Rng& rng, int width, int depth) {
  if (depth == 0 || rng.range(0, 4) == 0) {
    int k = rng.range(0, width);  // k == width means a constant
    if (k == width) return Term::constant(rng.bit());
    return Term::var(k);
  }
  switch (rng.range(0, 2)) {
    case 0: return Term::negate(random_term(rng, width, depth - 1));
    case 1: {
      std::vector<Term> kids;
      for (int i = rng.range(2, 3); i > 0; --i)
        kids.push_back(random_term(rng, width, depth - 1));
      return Term::conj(std::move(kids));
    }
    default: {
      std::vector<Term> kids;
      for (int i = rng.range(2, 3); i > 0; --i)
        kids.push_back(random_term(rng, width, depth - 1));
      return Term::disj(std::move(kids));
    }
  }
}

PresentedAlgebra random_algebra(Rng& rng, int max_w, int max_f) {
  int width = rng.range(1, max_w);
  int nrows = rng.range(1, max_f);
  std::vector<HomRow> rows;
  for (int i = 0; i < nrows; ++i) rows.emplace_back(rng.below(1ull << width), width);
  return make_algebra(width, std::move(rows));
}

PresentedAlgebra free_algebra(int n) {
  std::vector<HomRow> rs;
  for (std::uint64_t b = 0; b < (1ull << n); ++b) rs.emplace_back(b, n);
  return make_algebra(n, std::move(rs));
}

// shared between criteria 4 and 5
std::vector<Base> g_bases;

// shared between criteria 7, 8 and 10
const SParams kSmall{{1, 2}, 3};
std::vector<Condition> g_conds[2];
std::vector<std::vector<bool>> g_leq[2];

}  // namespace

int main() {
  criterion(1, "leq_holds matches the oracle on 10000 random triples", 10.0,
            [](std::string& detail) {
              Rng rng(101);
              int bad = 0;
              for (int t = 0; t < 10000; ++t) {
                PresentedAlgebra a = random_algebra(rng, 6, 16);
                Term lhs = random_term(rng, a.width, 3);
                std::vector<Term> rhs;
                for (int i = rng.range(0, 3); i > 0; --i)
                  rhs.push_back(random_term(rng, a.width, 3));
                if (leq_holds(a, lhs, rhs) != oracle_leq(a, lhs, rhs)) ++bad;
              }
              detail = std::to_string(bad) + " mismatches";
              return bad == 0;
            });

  criterion(2, "is_separated matches witness homomorphisms exhaustively", 60.0,
            [](std::string& detail) {
              Rng rng(202);
              long long checked = 0, bad = 0;
              const SeparationKind kinds[] = {SeparationKind::IdealIndependent,
                                              SeparationKind::LeftSeparated,
                                              SeparationKind::RightSeparated};
              for (int ai = 0; ai < 200; ++ai) {
                PresentedAlgebra a = random_algebra(rng, 4, 8);
                std::vector<Term> pool = elementary_candidates(a, a.width);
                int np = int(pool.size());
                auto check = [&](const std::vector<Term>& seq) {
                  for (SeparationKind k : kinds) {
                    ++checked;
                    if (is_separated(a, seq, k) !=
                        witness_homomorphisms(a, seq, k).ok)
                      ++bad;
                  }
                };
                for (int i = 0; i < np; ++i) {
                  std::vector<Term> s1 = {pool[std::size_t(i)]};
                  check(s1);
                  for (int j = 0; j < np; ++j) {
                    std::vector<Term> s2 = s1;
                    s2.push_back(pool[std::size_t(j)]);
                    check(s2);
                    for (int k = 0; k < np; ++k) {
                      std::vector<Term> s3 = s2;
                      s3.push_back(pool[std::size_t(k)]);
                      check(s3);
                    }
                  }
                }
              }
              detail = std::to_string(checked) + " sequence-kind checks, " +
                       std::to_string(bad) + " discrepancies";
              return bad == 0;
            });

  criterion(3, "free-algebra invariants are 2^n with exact searches", 5.0,
            [](std::string& detail) {
              for (int n = 2; n <= 3; ++n) {
                PresentedAlgebra a = free_algebra(n);
                InvariantReport rep = invariant_report(a, n, 1ull << 26);
                int want = 1 << n;
                bool ok = rep.atom_count == want && rep.ideal.length == want &&
                          rep.left.length == want && rep.right.length == want &&
                          rep.ideal.exact && rep.left.exact && rep.right.exact;
                if (!ok) {
                  detail = "n=" + std::to_string(n) + " failed";
                  return false;
                }
              }
              return true;
            });

  criterion(4, "random interleaved bases satisfy axiom (b), 100 inputs", 30.0,
            [](std::string& detail) {
              Rng rng(404);
              int bad = 0;
              for (int t = 0; t < 100; ++t) {
                int d = rng.bit() ? 4 : 6;
                int nblocks = rng.range(2, 3);
                std::vector<int> chi = {0};
                for (int j = 0; j < nblocks; ++j)
                  chi.push_back(chi.back() + rng.range(1, 4));
                BlockParams p{d, 2, chi};
                Base b = random_interleaved_base(rng, p);
                g_bases.push_back(b);
                if (!check_base(b, 2, false)[0].holds) ++bad;
              }
              detail = std::to_string(bad) + " axiom (b) failures";
              return bad == 0;
            });

  criterion(5, "clx1 holds on every criterion-4 base", 60.0,
            [](std::string& detail) {
              int bad = 0;
              for (const Base& b : g_bases)
                for (const BlockVerdict& v : check_clx1(b))
                  if (!v.holds) ++bad;
              detail = std::to_string(g_bases.size()) + " bases, " +
                       std::to_string(bad) + " block failures";
              return !g_bases.empty() && bad == 0;
            });

  criterion(6, "500 hypothesis-valid clx2 configs all satisfy the inequality",
            120.0, [](std::string& detail) {
              Rng rng(606);
              BlockParams p{6, 2, {0, 4, 8, 12}};
              int configs = 0, bad = 0, rejections = 0;
              while (configs < 500) {
                Base b = random_interleaved_base(rng, p);
                auto cfg = random_clx2_config(b, rng);
                if (!cfg) {
                  ++rejections;  // generator gave up on this base; resample
                  continue;
                }
                Clx2Outcome oc = check_clx2_config(b, *cfg);
                if (!oc.valid) {
                  ++rejections;  // never counted as pass
                  continue;
                }
                ++configs;
                if (!oc.holds) ++bad;
              }
              detail = std::to_string(configs) + " configs, " +
                       std::to_string(rejections) + " rejections logged, " +
                       std::to_string(bad) + " inequality failures";
              return bad == 0;
            });

  criterion(7, "exhaustive Q/P conditions: leq reflexive and transitive", 120.0,
            [](std::string& detail) {
              int bad = 0;
              long long triples = 0;
              for (int fi = 0; fi < 2; ++fi) {
                Flavor fl = fi == 0 ? Flavor::Q : Flavor::P;
                g_conds[fi] = enumerate_conditions(kSmall, fl);
                std::size_t n = g_conds[fi].size();
                g_leq[fi].assign(n, std::vector<bool>(n, false));
                for (std::size_t a = 0; a < n; ++a)
                  for (std::size_t b = 0; b < n; ++b)
                    g_leq[fi][a][b] =
                        condition_leq(kSmall, g_conds[fi][a], g_conds[fi][b], fl)
                            .holds;
                for (std::size_t a = 0; a < n; ++a)
                  if (!g_leq[fi][a][a]) ++bad;
                for (std::size_t a = 0; a < n; ++a)
                  for (std::size_t b = 0; b < n; ++b) {
                    if (!g_leq[fi][a][b]) continue;
                    for (std::size_t c = 0; c < n; ++c) {
                      if (!g_leq[fi][b][c]) continue;
                      ++triples;
                      if (!g_leq[fi][a][c]) ++bad;
                    }
                  }
              }
              detail = std::to_string(g_conds[0].size()) + " Q / " +
                       std::to_string(g_conds[1].size()) + " P conditions, " +
                       std::to_string(triples) + " related triples, " +
                       std::to_string(bad) + " failures";
              return !g_conds[0].empty() && !g_conds[1].empty() && bad == 0;
            });

  criterion(8, "pair amalgams dominate inputs; B_p embeds in B_q on <=-pairs",
            120.0, [](std::string& detail) {
              int bad = 0, amalgams = 0, embeddings = 0;
              for (int fi = 0; fi < 2; ++fi) {
                Flavor fl = fi == 0 ? Flavor::Q : Flavor::P;
                const std::vector<Condition>& all = g_conds[fi];
                for (const Condition& p : all)
                  for (const Condition& q : all) {
                    AmalgamResult res = pair_amalgamate(kSmall, p, q, fl);
                    if (res.ok) {
                      ++amalgams;
                      if (!validate_condition(kSmall, res.r, fl).ok ||
                          !condition_leq(kSmall, p, res.r, fl).holds ||
                          !condition_leq(kSmall, q, res.r, fl).holds)
                        ++bad;
                    } else if (res.reason.rfind("amalgam", 0) == 0) {
                      ++bad;  // preconditions held but the construction failed
                    }
                  }
                for (std::size_t a = 0; a < all.size(); ++a)
                  for (std::size_t b = 0; b < all.size(); ++b) {
                    if (!g_leq[fi][a][b]) continue;
                    ++embeddings;
                    PresentedAlgebra small = condition_algebra(kSmall, all[a], fl);
                    PresentedAlgebra big = condition_algebra(kSmall, all[b], fl);
                    std::vector<int> positions;
                    for (GridPoint s : all[a].points)
                      positions.push_back(all[b].index_of(s));
                    if (!subalgebra_check(small, big, positions)) ++bad;
                  }
              }
              detail = std::to_string(amalgams) + " amalgams, " +
                       std::to_string(embeddings) + " embeddings, " +
                       std::to_string(bad) + " failures";
              return amalgams > 0 && bad == 0;
            });

  criterion(9, "triple amalgamation conclusion on 200 instances per flavor",
            180.0, [](std::string& detail) {
              int bad = 0;
              std::string first;
              for (int fi = 0; fi < 2; ++fi) {
                Flavor fl = fi == 0 ? Flavor::Q : Flavor::P;
                SParams sp = triple_instance_params(fl);
                Rng rng(fi == 0 ? 909u : 910u);
                for (int t = 0; t < 200; ++t) {
                  TripleInstance in = random_triple_instance(sp, rng, fl);
                  TripleResult res = triple_amalgamate(sp, in, fl);
                  if (!res.ok || !res.conclusion) {
                    ++bad;
                    if (first.empty())
                      first = (fi == 0 ? "Q:" : "P:") +
                              (res.ok ? std::string("conclusion") : res.reason);
                  }
                }
              }
              detail = std::to_string(bad) + " failures";
              if (!first.empty()) detail += " (first: " + first + ")";
              return bad == 0;
            });

  criterion(10, "generators right-separated (Q) / left-separated (P) in B_p",
            120.0, [](std::string& detail) {
              int bad = 0;
              for (int fi = 0; fi < 2; ++fi) {
                Flavor fl = fi == 0 ? Flavor::Q : Flavor::P;
                for (const Condition& c : g_conds[fi]) {
                  PresentedAlgebra bp = condition_algebra(kSmall, c, fl);
                  std::vector<Term> gens;
                  for (std::size_t i = 0; i < c.points.size(); ++i)
                    gens.push_back(Term::var(int(i)));
                  SeparationKind k = fl == Flavor::Q
                                         ? SeparationKind::RightSeparated
                                         : SeparationKind::LeftSeparated;
                  if (!is_separated(bp, gens, k)) ++bad;
                }
              }
              detail = std::to_string(g_conds[0].size() + g_conds[1].size()) +
                       " conditions, " + std::to_string(bad) + " failures";
              return bad == 0;
            });

  criterion(11, "delta systems re-verify; sunflower bound; free sets exact",
            60.0, [](std::string& detail) {
              Rng rng(1111);
              int bad = 0;
              for (int t = 0; t < 1000; ++t) {
                int k = rng.range(1, 3), lambda = rng.range(2, 4);
                std::uint64_t bound = sunflower_bound(k, lambda);
                std::vector<FiniteSet> fam;
                int universe = 12;
                while (fam.size() <= bound) {
                  FiniteSet s;
                  while (int(s.size()) < k) {
                    int e = rng.range(0, universe - 1);
                    if (std::find(s.begin(), s.end(), e) == s.end()) s.push_back(e);
                  }
                  std::sort(s.begin(), s.end());
                  if (std::find(fam.begin(), fam.end(), s) == fam.end())
                    fam.push_back(std::move(s));
                }
                DeltaResult r = delta_system_extract(fam, lambda);
                if (!r.found || int(r.indices.size()) != lambda) {
                  ++bad;
                  continue;
                }
                for (std::size_t i = 0; i < r.indices.size(); ++i)
                  for (std::size_t j = i + 1; j < r.indices.size(); ++j) {
                    FiniteSet inter;
                    const FiniteSet &A = fam[std::size_t(r.indices[i])],
                                    &B = fam[std::size_t(r.indices[j])];
                    std::set_intersection(A.begin(), A.end(), B.begin(), B.end(),
                                          std::back_inserter(inter));
                    if (inter != r.heart) ++bad;
                  }
              }
              // free sets against full enumeration
              for (int t = 0; t < 200; ++t) {
                int n = rng.range(1, 10);
                std::vector<FiniteSet> image(static_cast<std::size_t>(n));
                for (int y = 0; y < n; ++y)
                  for (int z = 0; z < n; ++z)
                    if (rng.range(0, 3) == 0) image[std::size_t(y)].push_back(z);
                for (int target = 0; target <= n; ++target) {
                  bool exists = false;
                  for (std::uint32_t mask = 0; mask < (1u << n) && !exists; ++mask) {
                    std::vector<int> mem;
                    for (int i = 0; i < n; ++i)
                      if ((mask >> i) & 1) mem.push_back(i);
                    if (int(mem.size()) != target) continue;
                    bool ok = true;
                    for (int y : mem)
                      for (int z : mem)
                        if (y != z &&
                            std::binary_search(image[std::size_t(z)].begin(),
                                               image[std::size_t(z)].end(), y))
                          ok = false;
                    if (ok) exists = true;
                  }
                  if (free_set_search(image, target).found != exists) ++bad;
                }
              }
              detail = std::to_string(bad) + " failures";
              return bad == 0;
            });

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
