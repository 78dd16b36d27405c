#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace balab {

// A 0/1 row assigning a bit to each generator x0..x{width-1}.
struct HomRow {
  std::uint64_t bits = 0;
  int width = 0;

  HomRow() = default;
  HomRow(std::uint64_t b, int w) : bits(b), width(w) {
    if (w < 0 || w > 64) throw std::invalid_argument("HomRow width out of range");
    if (w < 64) bits &= (std::uint64_t(1) << w) - 1;
  }
  bool get(int i) const { return (bits >> i) & 1; }
  void set(int i, bool v) {
    if (v) bits |= std::uint64_t(1) << i;
    else bits &= ~(std::uint64_t(1) << i);
  }
  friend bool operator==(const HomRow& a, const HomRow& b) {
    return a.width == b.width && a.bits == b.bits;
  }
  friend bool operator<(const HomRow& a, const HomRow& b) {
    return a.width != b.width ? a.width < b.width : a.bits < b.bits;
  }
  std::string str() const {
    std::string s(width, '0');
    for (int i = 0; i < width; ++i) s[i] = get(i) ? '1' : '0';
    return s;
  }
};

struct Term {
  enum class Kind { Const0, Const1, Atom, Not, And, Or };
  Kind kind = Kind::Const0;
  int atom = -1;            // valid when kind == Atom
  std::vector<Term> kids;   // 1 for Not, >=1 for And/Or

  static Term constant(bool b) {
    Term t;
    t.kind = b ? Kind::Const1 : Kind::Const0;
    return t;
  }
  static Term var(int id) {
    Term t;
    t.kind = Kind::Atom;
    t.atom = id;
    return t;
  }
  static Term negate(Term inner) {
    Term t;
    t.kind = Kind::Not;
    t.kids.push_back(std::move(inner));
    return t;
  }
  static Term conj(std::vector<Term> kids);
  static Term disj(std::vector<Term> kids);
};

// Literal (generator index, negated flag); x^0 = x, x^1 = -x.
using Literal = std::pair<int, bool>;

// Conjunction of literals over pairwise distinct generators.
Term elementary_conjunction(const std::vector<Literal>& lits);

struct parse_error : std::runtime_error {
  std::size_t pos;
  parse_error(const std::string& msg, std::size_t p)
      : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

// Grammar: term := or; or := and ('|' and)*; and := lit ('&' lit)*;
// lit := '!' lit | '0' | '1' | 'x' digits | '(' or ')'.
Term parse_term(std::string_view text);

std::string to_string(const Term& t);

// Largest generator index mentioned, or -1 for constant terms.
int max_generator(const Term& t);

bool evaluate_hom(const HomRow& f, const Term& t);

// Semantic disjunctive normal form: one elementary conjunction (over the
// generators occurring in t, all of them) per satisfying assignment.
// Result is Const0 for unsatisfiable t; agrees with t on every row.
Term dnf(const Term& t);

}  // namespace balab
