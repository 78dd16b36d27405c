#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "balab/algebra.hpp"
#include "balab/base.hpp"
#include "balab/combinatorics.hpp"
#include "balab/forcing.hpp"

namespace balab {

// All parsers accept '#' comments and blank lines and throw io_error with a
// line number on malformed input. Writers emit the canonical form (sorted,
// deduplicated); load(save(x)) == x.
struct io_error : std::runtime_error {
  int line;
  io_error(const std::string& msg, int ln)
      : std::runtime_error(ln > 0 ? "line " + std::to_string(ln) + ": " + msg : msg),
        line(ln) {}
};

// algebra v1 / w N / f BITSTRING...
PresentedAlgebra load_algebra(std::istream& in);
void save_algebra(std::ostream& out, const PresentedAlgebra& a);

// base v1 / depth / alphabet / chi / A STR ("-" = empty string) / eta IDX STR
Base load_base(std::istream& in);
void save_base(std::ostream& out, const Base& b);

// qcond v1 | pcond v1 / chi c0 c1 ... / w i... / u (i,xi) ... / f (i,xi): BITS
struct CondFile {
  Flavor flavor = Flavor::Q;
  std::vector<int> widths;
  Condition cond;
};
CondFile load_condition(std::istream& in);
void save_condition(std::ostream& out, const CondFile& cf);

// one family member per line: sorted ints
std::vector<FiniteSet> load_family(std::istream& in);
void save_family(std::ostream& out, const std::vector<FiniteSet>& fam);

// y: e1 e2 ...   (labels mapped to dense 0..n-1 in first-seen order)
struct SetMapFile {
  std::vector<int> labels;             // dense index -> original label
  std::vector<FiniteSet> image;        // over dense indices
};
SetMapFile load_setmap(std::istream& in);
void save_setmap(std::ostream& out, const SetMapFile& sm);

// Convenience: load from path (throws io_error with the path in the message).
PresentedAlgebra load_algebra_file(const std::string& path);
Base load_base_file(const std::string& path);
CondFile load_condition_file(const std::string& path);
std::vector<FiniteSet> load_family_file(const std::string& path);
SetMapFile load_setmap_file(const std::string& path);

}  // namespace balab
