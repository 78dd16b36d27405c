#include "balab/term.hpp"

#include <algorithm>
#include <set>

namespace balab {

Term Term::conj(std::vector<Term> kids) {
  if (kids.empty()) return constant(true);
  if (kids.size() == 1) return std::move(kids[0]);
  Term t;
  t.kind = Kind::And;
  t.kids = std::move(kids);
  return t;
}

Term Term::disj(std::vector<Term> kids) {
  if (kids.empty()) return constant(false);
  if (kids.size() == 1) return std::move(kids[0]);
  Term t;
  t.kind = Kind::Or;
  t.kids = std::move(kids);
  return t;
}

Term elementary_conjunction(const std::vector<Literal>& lits) {
  std::set<int> seen;
  std::vector<Term> kids;
  for (auto [g, neg] : lits) {
    if (g < 0) throw std::invalid_argument("negative generator index");
    if (!seen.insert(g).second)
      throw std::invalid_argument("repeated generator in elementary conjunction");
    kids.push_back(neg ? Term::negate(Term::var(g)) : Term::var(g));
  }
  return Term::conj(std::move(kids));
}

namespace {

struct Parser {
  std::string_view s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  Term parse_or() {
    std::vector<Term> kids;
    kids.push_back(parse_and());
    while (eat('|')) kids.push_back(parse_and());
    return Term::disj(std::move(kids));
  }

  Term parse_and() {
    std::vector<Term> kids;
    kids.push_back(parse_lit());
    while (eat('&')) kids.push_back(parse_lit());
    return Term::conj(std::move(kids));
  }

  Term parse_lit() {
    skip();
    if (i >= s.size()) throw parse_error("unexpected end of term", i);
    char c = s[i];
    if (c == '!') {
      ++i;
      return Term::negate(parse_lit());
    }
    if (c == '0') {
      ++i;
      return Term::constant(false);
    }
    if (c == '1') {
      ++i;
      return Term::constant(true);
    }
    if (c == 'x') {
      std::size_t start = ++i;
      while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
      if (i == start) throw parse_error("expected generator index after 'x'", i);
      if (i - start > 7) throw parse_error("generator index too large", start);
      int id = 0;
      for (std::size_t k = start; k < i; ++k) id = id * 10 + (s[k] - '0');
      return Term::var(id);
    }
    if (c == '(') {
      ++i;
      Term t = parse_or();
      if (!eat(')')) throw parse_error("expected ')'", i);
      return t;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", i);
  }
};

void print(const Term& t, std::string& out, int parent_prec) {
  // precedences: or=0, and=1, lit=2
  switch (t.kind) {
    case Term::Kind::Const0: out += '0'; return;
    case Term::Kind::Const1: out += '1'; return;
    case Term::Kind::Atom:
      out += 'x';
      out += std::to_string(t.atom);
      return;
    case Term::Kind::Not:
      out += '!';
      print(t.kids[0], out, 2);
      return;
    case Term::Kind::And: {
      bool paren = parent_prec > 1;
      if (paren) out += '(';
      for (std::size_t k = 0; k < t.kids.size(); ++k) {
        if (k) out += " & ";
        print(t.kids[k], out, 1);
      }
      if (paren) out += ')';
      return;
    }
    case Term::Kind::Or: {
      bool paren = parent_prec > 0;
      if (paren) out += '(';
      for (std::size_t k = 0; k < t.kids.size(); ++k) {
        if (k) out += " | ";
        print(t.kids[k], out, 0);
      }
      if (paren) out += ')';
      return;
    }
  }
}

void collect_atoms(const Term& t, std::set<int>& out) {
  if (t.kind == Term::Kind::Atom) out.insert(t.atom);
  for (const Term& k : t.kids) collect_atoms(k, out);
}

}  // namespace

Term parse_term(std::string_view text) {
  Parser p{text};
  Term t = p.parse_or();
  p.skip();
  if (p.i != text.size()) throw parse_error("trailing input", p.i);
  return t;
}

std::string to_string(const Term& t) {
  std::string out;
  print(t, out, 0);
  return out;
}

int max_generator(const Term& t) {
  int m = t.kind == Term::Kind::Atom ? t.atom : -1;
  for (const Term& k : t.kids) m = std::max(m, max_generator(k));
  return m;
}

bool evaluate_hom(const HomRow& f, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Const0: return false;
    case Term::Kind::Const1: return true;
    case Term::Kind::Atom:
      if (t.atom >= f.width) throw std::out_of_range("generator beyond row width");
      return f.get(t.atom);
    case Term::Kind::Not: return !evaluate_hom(f, t.kids[0]);
    case Term::Kind::And:
      for (const Term& k : t.kids)
        if (!evaluate_hom(f, k)) return false;
      return true;
    case Term::Kind::Or:
      for (const Term& k : t.kids)
        if (evaluate_hom(f, k)) return true;
      return false;
  }
  return false;
}

Term dnf(const Term& t) {
  std::set<int> vars;
  collect_atoms(t, vars);
  std::vector<int> gens(vars.begin(), vars.end());
  if (gens.size() > 20) throw std::invalid_argument("dnf: too many generators");
  int width = max_generator(t) + 1;
  HomRow row(0, std::max(width, 1));
  std::vector<Term> minterms;
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << gens.size()); ++m) {
    std::vector<Literal> lits;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      bool v = (m >> k) & 1;
      row.set(gens[k], v);
      lits.emplace_back(gens[k], !v);
    }
    if (evaluate_hom(row, t)) minterms.push_back(elementary_conjunction(lits));
  }
  return Term::disj(std::move(minterms));
}

}  // namespace balab
