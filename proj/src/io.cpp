#include "balab/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace balab {

namespace {

// Lines with '#' comments stripped; blank lines skipped; 1-based numbering.
struct Lines {
  std::vector<std::pair<int, std::string>> items;
  std::size_t pos = 0;

  explicit Lines(std::istream& in) {
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      ++n;
      std::size_t h = line.find('#');
      if (h != std::string::npos) line = line.substr(0, h);
      std::size_t a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      std::size_t b = line.find_last_not_of(" \t\r");
      items.emplace_back(n, line.substr(a, b - a + 1));
    }
  }
  bool done() const { return pos >= items.size(); }
  int line() const { return done() ? (items.empty() ? 0 : items.back().first) : items[pos].first; }
  const std::string& peek() const { return items[pos].second; }
  std::string next() { return items[pos++].second; }
};

std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

int to_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw io_error("expected integer, got '" + s + "'", line);
  }
}

void expect_header(Lines& ls, const std::string& want) {
  if (ls.done() || ls.peek() != want)
    throw io_error("expected '" + want + "' header", ls.line());
  ls.next();
}

GridPoint parse_point(const std::string& tok, int line) {
  // (i,xi)
  if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
    throw io_error("expected point '(i,xi)', got '" + tok + "'", line);
  std::size_t comma = tok.find(',');
  if (comma == std::string::npos) throw io_error("expected ',' in point", line);
  return {to_int(tok.substr(1, comma - 1), line),
          to_int(tok.substr(comma + 1, tok.size() - comma - 2), line)};
}

std::string point_str(GridPoint s) {
  return "(" + std::to_string(s.level) + "," + std::to_string(s.col) + ")";
}

}  // namespace

PresentedAlgebra load_algebra(std::istream& in) {
  Lines ls(in);
  expect_header(ls, "algebra v1");
  int width = -1;
  std::vector<HomRow> rows;
  while (!ls.done()) {
    int ln = ls.line();
    std::vector<std::string> toks = split(ls.next());
    if (toks[0] == "w") {
      if (toks.size() != 2) throw io_error("'w' takes one integer", ln);
      width = to_int(toks[1], ln);
      if (width < 0 || width > 64) throw io_error("width out of range", ln);
    } else if (toks[0] == "f") {
      if (width < 0) throw io_error("'f' before 'w'", ln);
      if (toks.size() != 2 || int(toks[1].size()) != width)
        throw io_error("'f' takes a bitstring of length w", ln);
      HomRow r(0, width);
      for (int i = 0; i < width; ++i) {
        char c = toks[1][std::size_t(i)];
        if (c != '0' && c != '1') throw io_error("bitstring must be 0/1", ln);
        r.set(i, c == '1');
      }
      rows.push_back(r);
    } else {
      throw io_error("unknown directive '" + toks[0] + "'", ln);
    }
  }
  if (width < 0) throw io_error("missing 'w'", ls.line());
  return make_algebra(width, std::move(rows));
}

void save_algebra(std::ostream& out, const PresentedAlgebra& a) {
  out << "algebra v1\n";
  out << "w " << a.width << "\n";
  for (const HomRow& r : a.rows) out << "f " << r.str() << "\n";
}

Base load_base(std::istream& in) {
  Lines ls(in);
  expect_header(ls, "base v1");
  Base b;
  b.params.depth = -1;
  b.params.alphabet = -1;
  std::map<int, std::string> etas;
  while (!ls.done()) {
    int ln = ls.line();
    std::vector<std::string> toks = split(ls.next());
    if (toks[0] == "depth" && toks.size() == 2) {
      b.params.depth = to_int(toks[1], ln);
    } else if (toks[0] == "alphabet" && toks.size() == 2) {
      b.params.alphabet = to_int(toks[1], ln);
    } else if (toks[0] == "chi" && toks.size() >= 3) {
      for (std::size_t i = 1; i < toks.size(); ++i)
        b.params.chi.push_back(to_int(toks[i], ln));
    } else if (toks[0] == "A" && toks.size() == 2) {
      b.split_set.insert(toks[1] == "-" ? "" : toks[1]);
    } else if (toks[0] == "eta" && toks.size() == 3) {
      int idx = to_int(toks[1], ln);
      if (etas.count(idx)) throw io_error("duplicate eta index", ln);
      etas[idx] = toks[2];
    } else {
      throw io_error("unknown or malformed directive '" + toks[0] + "'", ln);
    }
  }
  if (b.params.depth < 0) throw io_error("missing 'depth'", ls.line());
  if (b.params.alphabet < 0) throw io_error("missing 'alphabet'", ls.line());
  if (b.params.chi.empty()) throw io_error("missing 'chi'", ls.line());
  for (int i = 0; i < int(etas.size()); ++i)
    if (!etas.count(i)) throw io_error("eta indices must be dense from 0", ls.line());
  for (auto& [idx, s] : etas) b.eta.push_back(s);
  try {
    validate_base_shape(b);
  } catch (const std::exception& e) {
    throw io_error(e.what(), ls.line());
  }
  return b;
}

void save_base(std::ostream& out, const Base& b) {
  out << "base v1\n";
  out << "depth " << b.params.depth << "\n";
  out << "alphabet " << b.params.alphabet << "\n";
  out << "chi";
  for (int c : b.params.chi) out << " " << c;
  out << "\n";
  for (const std::string& s : b.split_set)
    out << "A " << (s.empty() ? "-" : s) << "\n";
  for (std::size_t i = 0; i < b.eta.size(); ++i)
    out << "eta " << i << " " << b.eta[i] << "\n";
}

CondFile load_condition(std::istream& in) {
  Lines ls(in);
  if (ls.done()) throw io_error("empty condition file", 0);
  CondFile cf;
  if (ls.peek() == "qcond v1") {
    cf.flavor = Flavor::Q;
  } else if (ls.peek() == "pcond v1") {
    cf.flavor = Flavor::P;
  } else {
    throw io_error("expected 'qcond v1' or 'pcond v1' header", ls.line());
  }
  ls.next();
  std::map<GridPoint, std::vector<uint8_t>> frows;
  std::vector<std::pair<GridPoint, std::string>> fraw;
  bool have_u = false;
  while (!ls.done()) {
    int ln = ls.line();
    std::vector<std::string> toks = split(ls.next());
    if (toks[0] == "chi" && toks.size() >= 2) {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        int w = to_int(toks[i], ln);
        if (w <= 0) throw io_error("chi entries must be positive", ln);
        cf.widths.push_back(w);
      }
    } else if (toks[0] == "w") {
      for (std::size_t i = 1; i < toks.size(); ++i)
        cf.cond.levels.push_back(to_int(toks[i], ln));
    } else if (toks[0] == "u") {
      have_u = true;
      for (std::size_t i = 1; i < toks.size(); ++i)
        cf.cond.points.push_back(parse_point(toks[i], ln));
      for (std::size_t i = 1; i < cf.cond.points.size(); ++i)
        if (!(cf.cond.points[i - 1] < cf.cond.points[i]))
          throw io_error("u not in <_S order", ln);
    } else if (toks[0] == "f" && toks.size() == 3) {
      if (toks[1].empty() || toks[1].back() != ':')
        throw io_error("expected 'f (i,xi): BITS'", ln);
      GridPoint s = parse_point(toks[1].substr(0, toks[1].size() - 1), ln);
      fraw.emplace_back(s, toks[2]);
      (void)frows;
    } else {
      throw io_error("unknown or malformed directive '" + toks[0] + "'", ln);
    }
  }
  if (cf.widths.empty()) throw io_error("missing 'chi'", ls.line());
  if (!have_u && !cf.cond.levels.empty())
    throw io_error("missing 'u'", ls.line());
  std::size_t n = cf.cond.points.size();
  cf.cond.rows.assign(n, std::vector<uint8_t>(n, 0));
  std::vector<bool> seen(n, false);
  for (auto& [s, bits] : fraw) {
    int a = cf.cond.index_of(s);
    if (a < 0) throw io_error("f row for point not in u: " + point_str(s), ls.line());
    if (seen[std::size_t(a)]) throw io_error("duplicate f row for " + point_str(s), ls.line());
    seen[std::size_t(a)] = true;
    if (bits.size() != n) throw io_error("f bitstring length != |u|", ls.line());
    for (std::size_t b = 0; b < n; ++b) {
      if (bits[b] != '0' && bits[b] != '1')
        throw io_error("f bitstring must be 0/1", ls.line());
      cf.cond.rows[std::size_t(a)][b] = bits[b] == '1';
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    if (!seen[a]) throw io_error("missing f row for " + point_str(cf.cond.points[a]),
                                 ls.line());
  return cf;
}

void save_condition(std::ostream& out, const CondFile& cf) {
  out << (cf.flavor == Flavor::Q ? "qcond v1" : "pcond v1") << "\n";
  out << "chi";
  for (int w : cf.widths) out << " " << w;
  out << "\n";
  out << "w";
  for (int lv : cf.cond.levels) out << " " << lv;
  out << "\n";
  out << "u";
  for (GridPoint s : cf.cond.points) out << " " << point_str(s);
  out << "\n";
  for (std::size_t a = 0; a < cf.cond.points.size(); ++a) {
    out << "f " << point_str(cf.cond.points[a]) << ":";
    std::string bits;
    for (uint8_t v : cf.cond.rows[a]) bits += v ? '1' : '0';
    out << " " << bits << "\n";
  }
}

std::vector<FiniteSet> load_family(std::istream& in) {
  Lines ls(in);
  std::vector<FiniteSet> fam;
  while (!ls.done()) {
    int ln = ls.line();
    std::vector<std::string> toks = split(ls.next());
    FiniteSet s;
    for (const std::string& t : toks) s.push_back(to_int(t, ln));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    fam.push_back(std::move(s));
  }
  return fam;
}

void save_family(std::ostream& out, const std::vector<FiniteSet>& fam) {
  for (const FiniteSet& s : fam) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << "\n";
  }
}

SetMapFile load_setmap(std::istream& in) {
  Lines ls(in);
  SetMapFile sm;
  std::map<int, int> dense;
  auto intern = [&](int label) {
    auto it = dense.find(label);
    if (it != dense.end()) return it->second;
    int idx = int(sm.labels.size());
    dense[label] = idx;
    sm.labels.push_back(label);
    sm.image.emplace_back();
    return idx;
  };
  std::vector<std::pair<int, std::vector<int>>> raw;
  while (!ls.done()) {
    int ln = ls.line();
    std::vector<std::string> toks = split(ls.next());
    if (toks[0].empty() || toks[0].back() != ':')
      throw io_error("expected 'y: e1 e2 ...'", ln);
    int y = to_int(toks[0].substr(0, toks[0].size() - 1), ln);
    std::vector<int> img;
    for (std::size_t i = 1; i < toks.size(); ++i) img.push_back(to_int(toks[i], ln));
    raw.emplace_back(y, std::move(img));
  }
  for (auto& [y, img] : raw) intern(y);
  for (auto& [y, img] : raw) {
    int yi = intern(y);
    FiniteSet s;
    for (int e : img) {
      if (!dense.count(e)) continue;  // images outside the domain never conflict
      s.push_back(dense[e]);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    sm.image[std::size_t(yi)] = std::move(s);
  }
  return sm;
}

void save_setmap(std::ostream& out, const SetMapFile& sm) {
  for (std::size_t i = 0; i < sm.labels.size(); ++i) {
    out << sm.labels[i] << ":";
    for (int e : sm.image[i]) out << " " << sm.labels[std::size_t(e)];
    out << "\n";
  }
}

namespace {

template <class T, class F>
T load_path(const std::string& path, F loader) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path, 0);
  try {
    return loader(in);
  } catch (io_error& e) {
    throw io_error(path + ": " + e.what(), 0);
  }
}

}  // namespace

PresentedAlgebra load_algebra_file(const std::string& path) {
  return load_path<PresentedAlgebra>(path, [](std::istream& in) { return load_algebra(in); });
}
Base load_base_file(const std::string& path) {
  return load_path<Base>(path, [](std::istream& in) { return load_base(in); });
}
CondFile load_condition_file(const std::string& path) {
  return load_path<CondFile>(path, [](std::istream& in) { return load_condition(in); });
}
std::vector<FiniteSet> load_family_file(const std::string& path) {
  return load_path<std::vector<FiniteSet>>(path,
                                           [](std::istream& in) { return load_family(in); });
}
SetMapFile load_setmap_file(const std::string& path) {
  return load_path<SetMapFile>(path, [](std::istream& in) { return load_setmap(in); });
}

}  // namespace balab
