#include "balab/base.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace balab {

int BlockParams::block_of(int alpha) const {
  for (int j = 0; j + 1 < int(chi.size()); ++j)
    if (chi[j] <= alpha && alpha < chi[j + 1]) return j;
  throw std::out_of_range("index outside block boundaries");
}

std::string common_prefix(const std::string& s, const std::string& t) {
  std::size_t n = std::min(s.size(), t.size()), i = 0;
  while (i < n && s[i] == t[i]) ++i;
  return s.substr(0, i);
}

bool lex_less(const std::string& s, const std::string& t) {
  if (s.size() != t.size())
    throw std::invalid_argument("lex_less compares equal-length strings");
  return s < t;
}

void validate_base_shape(const Base& b) {
  const BlockParams& p = b.params;
  if (p.depth <= 0 || p.alphabet < 2 || p.alphabet > 10)
    throw std::invalid_argument("bad depth/alphabet");
  if (p.chi.size() < 2 || p.chi[0] != 0)
    throw std::invalid_argument("chi must start at 0 and name at least one block");
  for (std::size_t i = 1; i < p.chi.size(); ++i)
    if (p.chi[i] <= p.chi[i - 1]) throw std::invalid_argument("chi not increasing");
  if (int(b.eta.size()) != p.count())
    throw std::invalid_argument("eta count != chi.back()");
  auto check_chars = [&](const std::string& s) {
    for (char c : s)
      if (c < '0' || c >= char('0' + p.alphabet))
        throw std::invalid_argument("string character outside alphabet");
  };
  for (const std::string& e : b.eta) {
    if (int(e.size()) != p.depth) throw std::invalid_argument("eta length != depth");
    check_chars(e);
  }
  for (const std::string& s : b.split_set) {
    if (int(s.size()) >= p.depth)
      throw std::invalid_argument("A contains a string of length >= depth");
    check_chars(s);
  }
  if (p.count() > 64) throw std::invalid_argument("more than 64 indices");
}

Base interleaved_base(const std::vector<std::string>& nu,
                      const std::vector<std::string>& rho,
                      const BlockParams& params) {
  if (params.depth % 2 != 0) throw std::invalid_argument("depth must be even");
  int half = params.depth / 2;
  if (int(nu.size()) != params.blocks())
    throw std::invalid_argument("need one nu per block");
  if (int(rho.size()) != params.count())
    throw std::invalid_argument("need one rho per index");
  for (const std::string& s : nu)
    if (int(s.size()) != half) throw std::invalid_argument("nu length != depth/2");
  for (const std::string& s : rho)
    if (int(s.size()) != half) throw std::invalid_argument("rho length != depth/2");
  Base b;
  b.params = params;
  for (int a = 0; a < params.count(); ++a) {
    std::string e(std::size_t(params.depth), '0');
    int j = params.block_of(a);
    for (int k = 0; k < half; ++k) {
      e[std::size_t(2 * k)] = nu[j][std::size_t(k)];
      e[std::size_t(2 * k + 1)] = rho[a][std::size_t(k)];
    }
    b.eta.push_back(std::move(e));
  }
  // even-length splitting levels, empty string included
  std::vector<std::string> layer = {""};
  b.split_set.insert("");
  for (int len = 2; len < params.depth; len += 2) {
    std::vector<std::string> next;
    for (const std::string& s : layer)
      for (char c1 = '0'; c1 < char('0' + params.alphabet); ++c1)
        for (char c2 = '0'; c2 < char('0' + params.alphabet); ++c2)
          next.push_back(s + c1 + c2);
    for (const std::string& s : next) b.split_set.insert(s);
    layer = std::move(next);
  }
  validate_base_shape(b);
  return b;
}

HomRow f_b_row(const Base& b, int alpha) {
  int L = b.params.count();
  HomRow r(0, L);
  for (int beta = 0; beta < L; ++beta) {
    if (beta == alpha) {
      r.set(beta, true);
      continue;
    }
    const std::string meet = common_prefix(b.eta[alpha], b.eta[beta]);
    if (b.split_set.count(meet) && lex_less(b.eta[alpha], b.eta[beta]))
      r.set(beta, true);
  }
  return r;
}

PresentedAlgebra algebra_from_base(const Base& b) {
  validate_base_shape(b);
  std::vector<HomRow> rows;
  for (int a = 0; a < b.params.count(); ++a) rows.push_back(f_b_row(b, a));
  return make_algebra(b.params.count(), std::move(rows));
}

namespace {

// DFS for a y0-subset with no pair satisfying `good`; equivalent to
// enumerating all subsets, but prunes. Budget on node expansions.
struct AvoidSearch {
  int n, y0;
  const std::vector<std::vector<bool>>& good;
  std::vector<int> chosen;
  std::uint64_t nodes = 0, budget;

  bool dfs(int from) {
    if (int(chosen.size()) == y0) return true;
    if (int(chosen.size()) + (n - from) < y0) return false;
    for (int c = from; c < n; ++c) {
      if (++nodes > budget) throw std::runtime_error("axiom (c) enumeration budget exceeded");
      bool ok = true;
      for (int x : chosen)
        if (good[std::size_t(x)][std::size_t(c)]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(c);
      if (dfs(c + 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

std::vector<BaseVerdict> check_base(const Base& b, int y0, bool plus) {
  validate_base_shape(b);
  if (y0 < 2) throw std::invalid_argument("y0 must be >= 2");
  std::vector<BaseVerdict> out;
  int L = b.params.count();

  BaseVerdict vb{"b", true, {}};
  for (int j = 0; vb.holds && j < b.params.blocks(); ++j) {
    for (int a = b.params.chi[j]; vb.holds && a < b.params.chi[j + 1]; ++a) {
      for (int be = a + 1; be < b.params.chi[j + 1]; ++be) {
        if (b.eta[a] == b.eta[be] ||
            b.split_set.count(common_prefix(b.eta[a], b.eta[be]))) {
          vb.holds = false;
          vb.counterexample = {a, be};
          break;
        }
      }
    }
  }
  out.push_back(vb);

  auto run_avoid = [&](auto good_pair, const std::string& name) {
    std::vector<std::vector<bool>> good(std::size_t(L),
                                        std::vector<bool>(std::size_t(L), false));
    for (int a = 0; a < L; ++a)
      for (int be = a + 1; be < L; ++be)
        if (good_pair(a, be)) good[a][be] = good[be][a] = true;
    AvoidSearch s{L, y0, good, {}, 0, 5'000'000};
    BaseVerdict v{name, true, {}};
    if (s.dfs(0)) {
      v.holds = false;
      v.counterexample = s.chosen;
    }
    return v;
  };

  auto meet_in_A = [&](int a, int be) {
    return b.split_set.count(common_prefix(b.eta[a], b.eta[be])) > 0;
  };
  out.push_back(run_avoid(meet_in_A, "c"));
  if (plus) {
    // (c+): both lex directions realizable inside every y0-subset
    BaseVerdict vp{"c+", true, {}};
    for (int t = 0; t <= 1 && vp.holds; ++t) {
      auto dir_pair = [&, t](int a, int be) {
        if (!meet_in_A(a, be)) return false;
        // pair a<be is good for t=0 if eta_a <lex eta_be, for t=1 otherwise
        return lex_less(b.eta[std::size_t(a)], b.eta[std::size_t(be)]) == (t == 0);
      };
      BaseVerdict v = run_avoid(dir_pair, "c+");
      if (!v.holds) vp = v;
    }
    out.push_back(vp);
  }
  return out;
}

std::vector<BlockVerdict> check_clx1(const Base& b) {
  PresentedAlgebra alg = algebra_from_base(b);
  std::vector<BlockVerdict> out;
  for (int j = 0; j < b.params.blocks(); ++j) {
    BlockVerdict v{j, true, -1};
    for (int a = b.params.chi[j]; a < b.params.chi[j + 1]; ++a) {
      std::vector<Term> rhs;
      for (int be = b.params.chi[j]; be < b.params.chi[j + 1]; ++be)
        if (be != a) rhs.push_back(Term::var(be));
      if (leq_holds(alg, Term::var(a), rhs)) {
        v.holds = false;
        v.failed_alpha = a;
        break;
      }
    }
    out.push_back(v);
  }
  return out;
}

namespace {

bool is_prefix(const std::string& s, const std::string& t) {  // s ⊑ t
  return s.size() <= t.size() && t.compare(0, s.size(), s) == 0;
}

bool proper_prefix(const std::string& s, const std::string& t) {  // s ⊲ t
  return s.size() < t.size() && is_prefix(s, t);
}

}  // namespace

Clx2Outcome check_clx2_config(const Base& b, const Clx2Config& cfg) {
  validate_base_shape(b);
  Clx2Outcome out;
  std::size_t ks = cfg.sigma.size();
  if (ks == 0 || cfg.anchors.size() != ks || cfg.negated.size() != ks ||
      cfg.grid.empty()) {
    out.violated_clause = "shape";
    return out;
  }
  for (const auto& row : cfg.grid)
    if (row.size() != ks) {
      out.violated_clause = "shape";
      return out;
    }
  int L = b.params.count();
  auto in_range = [&](int a) { return a >= 0 && a < L; };
  for (int a : cfg.anchors)
    if (!in_range(a)) {
      out.violated_clause = "shape";
      return out;
    }
  for (const auto& row : cfg.grid)
    for (int a : row)
      if (!in_range(a)) {
        out.violated_clause = "shape";
        return out;
      }

  // (alpha): sigma pairwise incomparable
  for (std::size_t k1 = 0; k1 < ks; ++k1)
    for (std::size_t k2 = k1 + 1; k2 < ks; ++k2)
      if (is_prefix(cfg.sigma[k1], cfg.sigma[k2]) ||
          is_prefix(cfg.sigma[k2], cfg.sigma[k1])) {
        out.violated_clause = "alpha";
        return out;
      }
  // (beta): sigma_k ⊲ eta_{anchor_k} and ⊲ every column entry
  for (std::size_t k = 0; k < ks; ++k) {
    if (!proper_prefix(cfg.sigma[k], b.eta[std::size_t(cfg.anchors[k])])) {
      out.violated_clause = "beta";
      return out;
    }
    for (const auto& row : cfg.grid)
      if (!proper_prefix(cfg.sigma[k], b.eta[std::size_t(row[k])])) {
        out.violated_clause = "beta";
        return out;
      }
  }
  // (gamma) per column
  for (std::size_t k = 0; k < ks; ++k) {
    bool sat = false;
    for (const auto& row : cfg.grid)
      if (row[k] == cfg.anchors[k]) sat = true;  // (i)
    const std::string& ea = b.eta[std::size_t(cfg.anchors[k])];
    std::size_t rows = cfg.grid.size();
    for (std::size_t l1 = 0; !sat && l1 < rows; ++l1)
      for (std::size_t l2 = 0; !sat && l2 < rows; ++l2)
        for (std::size_t l3 = 0; !sat && l3 < rows; ++l3) {
          if (l1 == l2 || l1 == l3 || l2 == l3) continue;
          const std::string& e1 = b.eta[std::size_t(cfg.grid[l1][k])];
          const std::string& e2 = b.eta[std::size_t(cfg.grid[l2][k])];
          const std::string& e3 = b.eta[std::size_t(cfg.grid[l3][k])];
          std::string m1 = common_prefix(ea, e1), m2 = common_prefix(ea, e2),
                      m3 = common_prefix(ea, e3);
          if (!proper_prefix(m1, m2) || !proper_prefix(m2, m3)) continue;
          if (!b.split_set.count(m1) || !b.split_set.count(m2)) continue;
          if (!lex_less(e1, ea) || !lex_less(ea, e2)) continue;
          sat = true;  // (ii)
        }
    if (!sat) {
      out.violated_clause = "gamma";
      return out;
    }
  }
  out.valid = true;

  PresentedAlgebra alg = algebra_from_base(b);
  std::vector<Literal> lhs_lits;
  for (std::size_t k = 0; k < ks; ++k)
    lhs_lits.emplace_back(cfg.anchors[k], cfg.negated[k]);
  std::vector<Term> rhs;
  for (const auto& row : cfg.grid) {
    std::vector<Literal> lits;
    for (std::size_t k = 0; k < ks; ++k) lits.emplace_back(row[k], cfg.negated[k]);
    rhs.push_back(elementary_conjunction(lits));
  }
  out.holds = leq_holds(alg, elementary_conjunction(lhs_lits), rhs);
  return out;
}

namespace {

struct ColumnPick {
  int anchor;
  std::array<int, 3> triple;  // (gamma)(ii) witnesses, or all == anchor for (i)
  bool degenerate;
};

// Find an anchor with a (gamma)(ii) witness triple inside pool.
std::optional<ColumnPick> find_gamma2(const Base& b, const std::vector<int>& pool,
                                      Rng& rng) {
  std::vector<int> order = pool;
  rng.shuffle(order);
  for (int a : order) {
    const std::string& ea = b.eta[std::size_t(a)];
    std::vector<int> lo, hi;  // candidates by lex side, meets in A
    std::vector<int> any;     // third member: meet strictly longer
    for (int c : pool) {
      if (c == a) continue;
      std::string m = common_prefix(ea, b.eta[std::size_t(c)]);
      if (b.split_set.count(m)) {
        if (lex_less(b.eta[std::size_t(c)], ea)) lo.push_back(c);
        if (lex_less(ea, b.eta[std::size_t(c)])) hi.push_back(c);
      }
    }
    for (int c : pool)
      if (c != a) any.push_back(c);
    for (int b1 : lo)
      for (int b2 : hi)
        for (int b3 : any) {
          if (b3 == b1 || b3 == b2) continue;
          std::string m1 = common_prefix(ea, b.eta[std::size_t(b1)]);
          std::string m2 = common_prefix(ea, b.eta[std::size_t(b2)]);
          std::string m3 = common_prefix(ea, b.eta[std::size_t(b3)]);
          if (proper_prefix(m1, m2) && proper_prefix(m2, m3))
            return ColumnPick{a, {b1, b2, b3}, false};
        }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Clx2Config> random_clx2_config(const Base& b, Rng& rng,
                                             int max_tries) {
  int L = b.params.count();
  if (L < 2) return std::nullopt;
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    int ks = rng.range(1, std::min(2, b.params.alphabet));
    std::vector<std::string> sigmas;
    std::vector<std::vector<int>> pools;
    if (ks == 1) {
      sigmas = {""};
      std::vector<int> all;
      for (int i = 0; i < L; ++i) all.push_back(i);
      pools = {all};
    } else {
      // single-character sigmas are pairwise incomparable
      char c0 = char('0' + rng.range(0, b.params.alphabet - 1));
      char c1 = c0;
      while (c1 == c0) c1 = char('0' + rng.range(0, b.params.alphabet - 1));
      for (char c : {c0, c1}) {
        sigmas.push_back(std::string(1, c));
        std::vector<int> pool;
        for (int i = 0; i < L; ++i)
          if (b.eta[std::size_t(i)][0] == c) pool.push_back(i);
        pools.push_back(pool);
      }
    }
    Clx2Config cfg;
    cfg.sigma = sigmas;
    bool ok = true;
    std::vector<ColumnPick> picks;
    for (int k = 0; k < ks && ok; ++k) {
      if (pools[std::size_t(k)].empty()) {
        ok = false;
        break;
      }
      std::optional<ColumnPick> p;
      if (rng.range(0, 3) != 0)  // prefer (gamma)(ii) columns when available
        p = find_gamma2(b, pools[std::size_t(k)], rng);
      if (!p) {
        int a = rng.pick(pools[std::size_t(k)]);
        p = ColumnPick{a, {a, a, a}, true};
      }
      picks.push_back(*p);
    }
    if (!ok) continue;
    // distinct anchors needed across columns (elementary conjunction)
    if (ks == 2 && picks[0].anchor == picks[1].anchor) continue;
    for (const ColumnPick& p : picks) {
      cfg.anchors.push_back(p.anchor);
      cfg.negated.push_back(rng.bit());
    }
    cfg.grid.assign(3, std::vector<int>(std::size_t(ks), 0));
    bool distinct_ok = true;
    for (int l = 0; l < 3; ++l) {
      for (int k = 0; k < ks; ++k)
        cfg.grid[std::size_t(l)][std::size_t(k)] = picks[std::size_t(k)].triple[std::size_t(l)];
      if (ks == 2 && cfg.grid[std::size_t(l)][0] == cfg.grid[std::size_t(l)][1])
        distinct_ok = false;
    }
    if (!distinct_ok) continue;
    Clx2Outcome oc = check_clx2_config(b, cfg);
    if (oc.valid) return cfg;
  }
  return std::nullopt;
}

Base random_interleaved_base(Rng& rng, const BlockParams& params) {
  if (params.depth % 2 != 0) throw std::invalid_argument("depth must be even");
  int half = params.depth / 2;
  auto rand_string = [&]() {
    std::string s(std::size_t(half), '0');
    for (char& c : s) c = char('0' + rng.range(0, params.alphabet - 1));
    return s;
  };
  std::vector<std::string> nu;
  while (int(nu.size()) < params.blocks()) {
    std::string s = rand_string();
    if (std::find(nu.begin(), nu.end(), s) == nu.end()) nu.push_back(s);
  }
  // rho must be distinct within each block (same-block etas differ only
  // through rho); across blocks nu already separates them
  std::vector<std::string> rho;
  for (int j = 0; j < params.blocks(); ++j) {
    std::vector<std::string> block;
    int want = params.chi[std::size_t(j) + 1] - params.chi[std::size_t(j)];
    int guard = 0;
    while (int(block.size()) < want) {
      std::string s = rand_string();
      if (std::find(block.begin(), block.end(), s) == block.end()) block.push_back(s);
      if (++guard > 100000) throw std::runtime_error("alphabet too small for block");
    }
    rho.insert(rho.end(), block.begin(), block.end());
  }
  return interleaved_base(nu, rho, params);
}

}  // namespace balab
