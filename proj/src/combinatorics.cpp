#include "balab/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace balab {

namespace {

FiniteSet intersect(const FiniteSet& a, const FiniteSet& b) {
  FiniteSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

struct DeltaSearch {
  const std::vector<FiniteSet>& fam;
  int target;
  std::vector<int> chosen;
  FiniteSet heart;  // valid once chosen.size() >= 2

  bool dfs(int from) {
    if (int(chosen.size()) == target) return true;
    for (int c = from; c < int(fam.size()); ++c) {
      bool ok = true;
      FiniteSet h = heart;
      if (chosen.size() >= 1) {
        FiniteSet first = intersect(fam[chosen[0]], fam[c]);
        if (chosen.size() == 1) {
          h = first;
        } else if (first != heart) {
          ok = false;
        }
        for (std::size_t i = 1; ok && i < chosen.size(); ++i)
          if (intersect(fam[chosen[i]], fam[c]) != h) ok = false;
      }
      if (!ok) continue;
      chosen.push_back(c);
      std::swap(heart, h);
      if (dfs(c + 1)) return true;
      std::swap(heart, h);
      chosen.pop_back();
    }
    return false;
  }
};

// Classical extraction: members are core + reduced part. A maximal
// pairwise-disjoint set of reduced parts either reaches the target, or its
// union contains an element popular enough to recurse on. Always succeeds
// when the family beats the sunflower bound for the target.
bool lemma_extract(const std::vector<FiniteSet>& fam, std::vector<int> idx,
                   std::vector<FiniteSet> reduced, int target, FiniteSet& core,
                   std::vector<int>& out) {
  for (;;) {
    std::vector<int> disjoint;
    FiniteSet used;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (!intersect(reduced[i], used).empty()) continue;
      disjoint.push_back(int(i));
      FiniteSet merged;
      std::set_union(used.begin(), used.end(), reduced[i].begin(),
                     reduced[i].end(), std::back_inserter(merged));
      used = std::move(merged);
    }
    if (int(disjoint.size()) >= target) {
      for (int i = 0; i < target; ++i) out.push_back(idx[std::size_t(disjoint[std::size_t(i)])]);
      std::sort(out.begin(), out.end());
      return true;
    }
    if (used.empty()) return false;
    int best = -1, best_count = 0;
    for (int x : used) {
      int count = 0;
      for (const FiniteSet& r : reduced)
        if (std::binary_search(r.begin(), r.end(), x)) ++count;
      if (count > best_count) {
        best_count = count;
        best = x;
      }
    }
    std::vector<int> next_idx;
    std::vector<FiniteSet> next_reduced;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (!std::binary_search(reduced[i].begin(), reduced[i].end(), best)) continue;
      next_idx.push_back(idx[i]);
      FiniteSet r = reduced[i];
      r.erase(std::find(r.begin(), r.end(), best));
      next_reduced.push_back(std::move(r));
    }
    core.insert(std::lower_bound(core.begin(), core.end(), best), best);
    idx = std::move(next_idx);
    reduced = std::move(next_reduced);
  }
}

}  // namespace

DeltaResult delta_system_extract(const std::vector<FiniteSet>& family, int target) {
  if (target < 2) throw std::invalid_argument("delta target must be >= 2");
  for (const FiniteSet& s : family)
    if (!std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("family members must be sorted and duplicate-free");
  DeltaResult res;
  if (family.size() <= 20) {
    DeltaSearch ds{family, target};
    res.exact = true;
    if (ds.dfs(0)) {
      res.found = true;
      res.indices = ds.chosen;
      res.heart = ds.heart;
    }
    return res;
  }
  res.exact = false;
  {
    std::vector<int> idx(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) idx[i] = int(i);
    FiniteSet core;
    std::vector<int> picked;
    if (lemma_extract(family, std::move(idx), family, target, core, picked)) {
      res.found = true;
      res.indices = std::move(picked);
      res.heart = std::move(core);
      return res;
    }
  }
  // Greedy: try each pair's intersection as heart, extend greedily.
  for (std::size_t i = 0; i < family.size() && !res.found; ++i) {
    for (std::size_t j = i + 1; j < family.size() && !res.found; ++j) {
      FiniteSet h = intersect(family[i], family[j]);
      std::vector<int> picked = {int(i), int(j)};
      for (std::size_t c = 0; c < family.size(); ++c) {
        if (c == i || c == j) continue;
        bool ok = true;
        for (int p : picked)
          if (intersect(family[p], family[c]) != h) {
            ok = false;
            break;
          }
        if (ok) picked.push_back(int(c));
        if (int(picked.size()) == target) break;
      }
      if (int(picked.size()) >= target) {
        picked.resize(std::size_t(target));
        std::sort(picked.begin(), picked.end());
        res.found = true;
        res.indices = picked;
        res.heart = h;
      }
    }
  }
  return res;
}

std::uint64_t sunflower_bound(int k, int lambda) {
  if (k < 1 || lambda < 2) throw std::invalid_argument("sunflower_bound: k>=1, lambda>=2");
  std::uint64_t b = 1;
  for (int i = 2; i <= k; ++i) {
    if (b > ~std::uint64_t(0) / std::uint64_t(i)) return 0;
    b *= std::uint64_t(i);
  }
  for (int i = 0; i < k; ++i) {
    if (b > ~std::uint64_t(0) / std::uint64_t(lambda - 1)) return 0;
    b *= std::uint64_t(lambda - 1);
  }
  return b;
}

namespace {

struct DeltaSeqSearch {
  const std::vector<std::vector<int>>& seqs;
  int target;
  std::vector<int> chosen;

  // at every position: chosen values all equal, or pairwise distinct
  bool compatible(int c) const {
    std::size_t len = seqs[c].size();
    for (std::size_t p = 0; p < len; ++p) {
      bool all_eq = true, all_diff = true;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        if (seqs[chosen[i]][p] != seqs[c][p]) all_eq = false;
        if (seqs[chosen[i]][p] == seqs[c][p]) all_diff = false;
        for (std::size_t j = i + 1; j < chosen.size(); ++j) {
          if (seqs[chosen[i]][p] != seqs[chosen[j]][p]) all_eq = false;
          if (seqs[chosen[i]][p] == seqs[chosen[j]][p]) all_diff = false;
        }
      }
      if (!all_eq && !all_diff) return false;
    }
    return true;
  }

  bool dfs(int from) {
    if (int(chosen.size()) == target) return true;
    for (int c = from; c < int(seqs.size()); ++c) {
      if (!compatible(c)) continue;
      chosen.push_back(c);
      if (dfs(c + 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

DeltaSeqResult delta_system_sequences(const std::vector<std::vector<int>>& seqs,
                                      int target) {
  if (target < 2) throw std::invalid_argument("delta target must be >= 2");
  for (const auto& s : seqs)
    if (s.size() != seqs[0].size())
      throw std::invalid_argument("sequences must have equal length");
  DeltaSeqResult res;
  res.exact = seqs.size() <= 20;
  if (!res.exact) throw std::invalid_argument("delta_system_sequences: > 20 members");
  DeltaSeqSearch ds{seqs, target};
  if (ds.dfs(0)) {
    res.found = true;
    res.indices = ds.chosen;
    std::size_t len = seqs.empty() ? 0 : seqs[0].size();
    for (std::size_t p = 0; p < len; ++p) {
      bool all_eq = true;
      for (std::size_t i = 1; i < res.indices.size(); ++i)
        if (seqs[res.indices[i]][p] != seqs[res.indices[0]][p]) all_eq = false;
      if (all_eq) res.heart_positions.push_back(int(p));
    }
  }
  return res;
}

namespace {

struct FreeSearch {
  const std::vector<FiniteSet>& image;
  int target;
  std::vector<int> chosen;

  bool conflict(int y, int z) const {
    return std::binary_search(image[y].begin(), image[y].end(), z) ||
           std::binary_search(image[z].begin(), image[z].end(), y);
  }

  bool dfs(int from) {
    if (int(chosen.size()) == target) return true;
    int n = int(image.size());
    if (int(chosen.size()) + (n - from) < target) return false;
    for (int c = from; c < n; ++c) {
      bool ok = true;
      for (int y : chosen)
        if (conflict(y, c)) {
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

FreeSetResult free_set_search(const std::vector<FiniteSet>& image, int target) {
  if (image.size() > 24) throw std::invalid_argument("free_set_search: |Y| > 24");
  for (const FiniteSet& s : image)
    if (!std::is_sorted(s.begin(), s.end()))
      throw std::invalid_argument("image sets must be sorted");
  FreeSetResult res;
  if (target == 0) {
    res.found = true;
    return res;
  }
  FreeSearch fs{image, target};
  if (fs.dfs(0)) {
    res.found = true;
    res.members = fs.chosen;
  }
  return res;
}

}  // namespace balab
