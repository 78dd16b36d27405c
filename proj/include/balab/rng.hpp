#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace balab {

// mt19937_64 output is pinned by the standard; std distributions are not,
// so range reduction is done here to keep runs reproducible everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // uniform in [0, n); n > 0
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t v;
    do v = eng_(); while (v >= limit);
    return v % n;
  }

  int range(int lo, int hi) {  // inclusive
    return lo + int(below(std::uint64_t(hi - lo + 1)));
  }

  bool bit() { return eng_() & 1; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace balab
