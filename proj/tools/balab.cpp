// balab: command-line surface for the algebra/base/forcing library.
// Exit codes: 0 success or verdict-true, 1 verdict-false or refusal,
// 2 usage or format errors.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "balab/algebra.hpp"
#include "balab/base.hpp"
#include "balab/combinatorics.hpp"
#include "balab/forcing.hpp"
#include "balab/io.hpp"
#include "balab/rng.hpp"
#include "balab/separation.hpp"
#include "balab/term.hpp"

using nlohmann::json;
using namespace balab;

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  std::uint64_t budget = 1ull << 22;
  bool json_mode = false;
  long long max_enum = 1000000;
};

RunConfig cfg;
int rc = 0;

void emit(const json& j, const std::string& human) {
  if (cfg.json_mode) {
    json out = j;
    out["schema"] = "balab/1";
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << human;
  }
}

Flavor parse_flavor(const std::string& s) {
  if (s == "q" || s == "Q") return Flavor::Q;
  if (s == "p" || s == "P") return Flavor::P;
  throw CLI::ValidationError("--flavor must be q or p");
}

SeparationKind parse_kind(const std::string& s) {
  if (s == "ideal") return SeparationKind::IdealIndependent;
  if (s == "left") return SeparationKind::LeftSeparated;
  if (s == "right") return SeparationKind::RightSeparated;
  throw CLI::ValidationError("--kind must be ideal, left or right");
}

std::vector<std::string> read_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path, 0);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    std::istringstream is(line);
    std::string w;
    while (is >> w) out.push_back(w);
  }
  return out;
}

void write_out(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw io_error("cannot write " + out_path, 0);
  out << text;
}

CondFile load_cond_checked(const std::string& path, std::optional<Flavor> want) {
  CondFile cf = load_condition_file(path);
  if (want && *want != cf.flavor)
    throw io_error(path + ": flavor does not match --flavor", 0);
  return cf;
}

json literal_list(const std::vector<Term>& ts) {
  json arr = json::array();
  for (const Term& t : ts) arr.push_back(to_string(t));
  return arr;
}

// ---------- subcommand bodies ----------

int run_eval(const std::string& alg_path, const std::string& term_src) {
  PresentedAlgebra a = load_algebra_file(alg_path);
  Term t = parse_term(term_src);
  bool nz = is_nonzero(a, t);
  emit({{"command", "eval"}, {"term", to_string(t)}, {"nonzero", nz}},
       std::string(nz ? "nonzero" : "zero") + ": " + to_string(t) + "\n");
  return nz ? 0 : 1;
}

int run_leq(const std::string& alg_path, const std::string& lhs_src,
            const std::vector<std::string>& rhs_src) {
  PresentedAlgebra a = load_algebra_file(alg_path);
  Term lhs = parse_term(lhs_src);
  std::vector<Term> rhs;
  for (const std::string& s : rhs_src) rhs.push_back(parse_term(s));
  bool holds = leq_holds(a, lhs, rhs);
  emit({{"command", "leq"}, {"holds", holds}},
       std::string(holds ? "holds" : "fails") + "\n");
  return holds ? 0 : 1;
}

int run_search(const std::string& alg_path, const std::string& kind_s, int arity) {
  PresentedAlgebra a = load_algebra_file(alg_path);
  SeparationKind kind = parse_kind(kind_s);
  if (arity <= 0) arity = a.width;
  std::vector<Term> pool = elementary_candidates(a, arity);
  if (pool.empty()) {
    emit({{"command", "search"}, {"error", "empty candidate pool"}},
         "refused: empty candidate pool\n");
    return 1;
  }
  SearchResult r = max_separated_length(a, kind, pool, cfg.budget);
  std::vector<Term> witness;
  for (int i : r.chosen) witness.push_back(pool[std::size_t(i)]);
  json rows = json::array();
  for (const HomRow& f : r.witness_rows) rows.push_back(f.str());
  std::ostringstream hs;
  hs << "kind " << kind_s << " length " << r.length
     << (r.exact ? " (exact)" : " (lower bound)") << "\n";
  for (const Term& t : witness) hs << "  " << to_string(t) << "\n";
  emit({{"command", "search"},
        {"kind", kind_s},
        {"length", r.length},
        {"exact", r.exact},
        {"expansions", r.expansions},
        {"witness", literal_list(witness)},
        {"witness_rows", rows}},
       hs.str());
  return 0;
}

int run_report(const std::string& alg_path, int arity) {
  PresentedAlgebra a = load_algebra_file(alg_path);
  if (arity <= 0) arity = a.width;
  InvariantReport rep = invariant_report(a, arity, cfg.budget);
  auto part = [&](const char* name, const SearchResult& r, json& j,
                  std::ostringstream& hs) {
    j[name] = {{"length", r.length}, {"exact", r.exact}};
    hs << name << " = " << r.length << (r.exact ? "" : " (lower bound)") << "\n";
  };
  json j = {{"command", "report"}, {"atoms", rep.atom_count}};
  std::ostringstream hs;
  hs << "atoms = " << rep.atom_count << "\n";
  part("ideal", rep.ideal, j, hs);
  part("left", rep.left, j, hs);
  part("right", rep.right, j, hs);
  emit(j, hs.str());
  return 0;
}

int run_delta(const std::string& path, int target) {
  std::vector<FiniteSet> fam = load_family_file(path);
  if (static_cast<long long>(fam.size()) > cfg.max_enum)
    throw io_error("family larger than --max-enum", 0);
  DeltaResult r = delta_system_extract(fam, target);
  json j = {{"command", "delta"}, {"found", r.found}, {"exact", r.exact}};
  std::ostringstream hs;
  if (r.found) {
    j["indices"] = r.indices;
    j["heart"] = r.heart;
    hs << "found (" << (r.exact ? "exact" : "greedy") << "): members";
    for (int i : r.indices) hs << " " << i;
    hs << "; heart";
    for (int e : r.heart) hs << " " << e;
    hs << "\n";
  } else {
    hs << "refused: no delta system of size " << target
       << (r.exact ? "" : " found by the non-exact pass") << "\n";
  }
  emit(j, hs.str());
  return r.found ? 0 : 1;
}

int run_freeset(const std::string& path, int target) {
  SetMapFile sm = load_setmap_file(path);
  FreeSetResult r = free_set_search(sm.image, target);
  json j = {{"command", "freeset"}, {"found", r.found}};
  std::ostringstream hs;
  if (r.found) {
    std::vector<int> labels;
    for (int i : r.members) labels.push_back(sm.labels[std::size_t(i)]);
    j["members"] = labels;
    hs << "found:";
    for (int y : labels) hs << " " << y;
    hs << "\n";
  } else {
    hs << "refused: no free set of size " << target << "\n";
  }
  emit(j, hs.str());
  return r.found ? 0 : 1;
}

int run_base_gen(const std::vector<std::string>& files, std::vector<int> chi,
                 const std::string& out_path) {
  std::vector<std::string> nu = read_tokens(files[0]);
  std::vector<std::string> rho = read_tokens(files[1]);
  if (nu.empty() || rho.empty()) throw io_error("empty nu or rho file", 0);
  int alphabet = 2;
  for (const std::string& s : nu)
    for (char c : s) alphabet = std::max(alphabet, c - '0' + 1);
  for (const std::string& s : rho)
    for (char c : s) alphabet = std::max(alphabet, c - '0' + 1);
  BlockParams p{int(nu[0].size()) * 2, alphabet, std::move(chi)};
  Base b = interleaved_base(nu, rho, p);
  std::ostringstream os;
  save_base(os, b);
  write_out(out_path, os.str());
  return 0;
}

int run_base_check(const std::string& path, int y0, bool plus) {
  Base b = load_base_file(path);
  std::vector<BaseVerdict> vs = check_base(b, y0, plus);
  bool all = true;
  json arr = json::array();
  std::ostringstream hs;
  for (const BaseVerdict& v : vs) {
    all = all && v.holds;
    arr.push_back({{"axiom", v.axiom},
                   {"holds", v.holds},
                   {"counterexample", v.counterexample}});
    hs << "axiom (" << v.axiom << "): " << (v.holds ? "holds" : "fails");
    if (!v.holds) {
      hs << " at";
      for (int i : v.counterexample) hs << " " << i;
    }
    hs << "\n";
  }
  emit({{"command", "base check"}, {"verdicts", arr}, {"all", all}}, hs.str());
  return all ? 0 : 1;
}

int run_base_algebra(const std::string& path, const std::string& out_path) {
  Base b = load_base_file(path);
  std::ostringstream os;
  save_algebra(os, algebra_from_base(b));
  write_out(out_path, os.str());
  return 0;
}

int run_base_clx1(const std::string& path) {
  Base b = load_base_file(path);
  std::vector<BlockVerdict> vs = check_clx1(b);
  bool all = true;
  json arr = json::array();
  std::ostringstream hs;
  for (const BlockVerdict& v : vs) {
    all = all && v.holds;
    arr.push_back({{"block", v.block},
                   {"holds", v.holds},
                   {"failed_alpha", v.failed_alpha}});
    hs << "block " << v.block << ": "
       << (v.holds ? "ideal independent" : "FAILS") << "\n";
  }
  emit({{"command", "base clx1"}, {"blocks", arr}, {"all", all}}, hs.str());
  return all ? 0 : 1;
}

int run_base_clx2(const std::string& path, int trials) {
  Base b = load_base_file(path);
  Rng rng(cfg.seed);
  int pass = 0, fail = 0, rejected = 0;
  json arr = json::array();
  std::ostringstream hs;
  for (int t = 0; t < trials; ++t) {
    auto c = random_clx2_config(b, rng);
    if (!c) {
      ++rejected;
      hs << "REJECT trial " << t << ": no hypothesis-valid config found\n";
      arr.push_back({{"trial", t}, {"status", "reject"}});
      continue;
    }
    Clx2Outcome oc = check_clx2_config(b, *c);
    bool ok = oc.valid && oc.holds;
    (ok ? pass : fail)++;
    hs << (ok ? "PASS" : "FAIL") << " trial " << t << ": anchors";
    for (int a : c->anchors) hs << " " << a;
    hs << "\n";
    arr.push_back({{"trial", t},
                   {"status", ok ? "pass" : "fail"},
                   {"anchors", c->anchors},
                   {"sigma", c->sigma}});
  }
  hs << pass << " pass, " << fail << " fail, " << rejected << " rejected\n";
  emit({{"command", "base clx2"},
        {"trials", arr},
        {"pass", pass},
        {"fail", fail},
        {"rejected", rejected}},
       hs.str());
  return fail == 0 ? 0 : 1;
}

int run_forcing_validate(const std::string& path, std::optional<Flavor> fl) {
  CondFile cf = load_cond_checked(path, fl);
  SParams sp{cf.widths, 0};
  Verdict v = validate_condition(sp, cf.cond, cf.flavor);
  emit({{"command", "forcing validate"}, {"ok", v.ok}, {"reason", v.reason}},
       v.ok ? "valid\n" : "invalid: " + v.reason + "\n");
  return v.ok ? 0 : 1;
}

int run_forcing_leq(const std::string& ppath, const std::string& qpath,
                    std::optional<Flavor> fl) {
  CondFile p = load_cond_checked(ppath, fl);
  CondFile q = load_cond_checked(qpath, fl);
  if (p.flavor != q.flavor || p.widths != q.widths)
    throw io_error("conditions disagree on flavor or chi", 0);
  SParams sp{p.widths, 0};
  LeqCert cert = condition_leq(sp, p.cond, q.cond, p.flavor);
  json cases = json::array();
  std::ostringstream hs;
  hs << (cert.holds ? "p <= q" : "not <=: " + cert.reason) << "\n";
  for (const LeqWitness& w : cert.cases) {
    cases.push_back({{"point", {w.point.level, w.point.col}},
                     {"branch", w.branch},
                     {"via", {w.via.level, w.via.col}},
                     {"eps", w.eps},
                     {"jcut", w.jcut}});
    hs << "  (" << w.point.level << "," << w.point.col << "): " << w.branch;
    if (w.branch != "zero") {
      hs << " via (" << w.via.level << "," << w.via.col << ")";
      if (w.eps >= 0) hs << " eps " << w.eps;
      if (w.jcut >= 0) hs << " cut " << w.jcut;
    }
    hs << "\n";
  }
  emit({{"command", "forcing leq"},
        {"holds", cert.holds},
        {"reason", cert.reason},
        {"cases", cases}},
       hs.str());
  return cert.holds ? 0 : 1;
}

int run_forcing_iso(const std::string& ppath, const std::string& qpath,
                    std::optional<Flavor> fl) {
  CondFile p = load_cond_checked(ppath, fl);
  CondFile q = load_cond_checked(qpath, fl);
  if (p.flavor != q.flavor || p.widths != q.widths)
    throw io_error("conditions disagree on flavor or chi", 0);
  SParams sp{p.widths, 0};
  IsoResult r = condition_iso(sp, p.cond, q.cond, p.flavor);
  emit({{"command", "forcing iso"}, {"ok", r.ok}, {"reason", r.reason},
        {"map", r.map}},
       r.ok ? "isomorphic\n" : "refused: " + r.reason + "\n");
  return r.ok ? 0 : 1;
}

int run_forcing_amalgamate(const std::string& ppath, const std::string& qpath,
                           std::optional<Flavor> fl, const std::string& out_path) {
  CondFile p = load_cond_checked(ppath, fl);
  CondFile q = load_cond_checked(qpath, fl);
  if (p.flavor != q.flavor || p.widths != q.widths)
    throw io_error("conditions disagree on flavor or chi", 0);
  SParams sp{p.widths, 0};
  AmalgamResult r = pair_amalgamate(sp, p.cond, q.cond, p.flavor);
  if (!r.ok) {
    emit({{"command", "forcing amalgamate"}, {"ok", false}, {"reason", r.reason}},
         "refused: " + r.reason + "\n");
    return 1;
  }
  CondFile out{p.flavor, p.widths, r.r};
  std::ostringstream os;
  save_condition(os, out);
  write_out(out_path, os.str());
  return 0;
}

int run_forcing_triple(const std::string& flavor_s, int trials) {
  Flavor fl = parse_flavor(flavor_s);
  SParams sp = triple_instance_params(fl);
  Rng rng(cfg.seed);
  int pass = 0, fail = 0;
  json arr = json::array();
  std::ostringstream hs;
  for (int t = 0; t < trials; ++t) {
    TripleInstance in = random_triple_instance(sp, rng, fl);
    TripleResult r = triple_amalgamate(sp, in, fl);
    bool ok = r.ok && r.conclusion;
    (ok ? pass : fail)++;
    hs << (ok ? "PASS" : "FAIL") << " trial " << t;
    if (!r.ok) hs << ": " << r.reason;
    hs << "\n";
    arr.push_back({{"trial", t},
                   {"ok", r.ok},
                   {"conclusion", r.conclusion},
                   {"reason", r.reason}});
  }
  hs << pass << " pass, " << fail << " fail\n";
  emit({{"command", "forcing triple"}, {"flavor", flavor_s}, {"trials", arr},
        {"pass", pass}, {"fail", fail}},
       hs.str());
  return fail == 0 ? 0 : 1;
}

int run_forcing_algebra(const std::string& path, std::optional<Flavor> fl,
                        const std::string& out_path) {
  CondFile cf = load_cond_checked(path, fl);
  SParams sp{cf.widths, 0};
  std::ostringstream os;
  save_algebra(os, condition_algebra(sp, cf.cond, cf.flavor));
  write_out(out_path, os.str());
  return 0;
}

int run_forcing_chain(const std::vector<std::string>& paths,
                      std::optional<Flavor> fl, const std::string& out_path) {
  std::vector<Condition> chain;
  std::vector<int> widths;
  Flavor flavor = Flavor::Q;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    CondFile cf = load_cond_checked(paths[i], fl);
    if (i == 0) {
      widths = cf.widths;
      flavor = cf.flavor;
    } else if (cf.widths != widths || cf.flavor != flavor) {
      throw io_error(paths[i] + ": flavor or chi differs from the first file", 0);
    }
    chain.push_back(cf.cond);
  }
  SParams sp{widths, 0};
  ChainResult r = chain_union_algebra(sp, chain, flavor);
  if (!r.ok) {
    emit({{"command", "forcing chain"}, {"ok", false}, {"reason", r.reason}},
         "refused: " + r.reason + "\n");
    return 1;
  }
  std::ostringstream os;
  save_algebra(os, r.algebra);
  write_out(out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite kernels: presented Boolean algebras, separated sequences, "
               "bases, forcing conditions"};
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "random seed (default 0)");
  app.add_option("--budget", cfg.budget, "search node budget");
  app.add_flag("--json", cfg.json_mode, "JSON output");
  app.add_option("--max-enum", cfg.max_enum, "enumeration size cap");

  // eval
  std::string alg_path, term_src, lhs_src, kind_s = "ideal";
  std::vector<std::string> rhs_src;
  int arity = 0, target = 2, y0 = 2, trials = 10;
  bool plus = false;
  std::string file_path, out_path, flavor_s;
  std::vector<std::string> interleave_files, chain_files;
  std::vector<int> chi;

  auto* eval = app.add_subcommand("eval", "evaluate a term for nonzero-ness");
  eval->add_option("--algebra", alg_path)->required();
  eval->add_option("--term", term_src)->required();
  eval->callback([&] { rc = run_eval(alg_path, term_src); });

  auto* leq = app.add_subcommand("leq", "decide lhs <= join(rhs)");
  leq->add_option("--algebra", alg_path)->required();
  leq->add_option("--lhs", lhs_src)->required();
  leq->add_option("--rhs", rhs_src);
  leq->callback([&] { rc = run_leq(alg_path, lhs_src, rhs_src); });

  auto* search = app.add_subcommand("search", "max separated sequence length");
  search->add_option("--algebra", alg_path)->required();
  search->add_option("--kind", kind_s, "ideal|left|right");
  search->add_option("--arity", arity, "candidate arity cap (0 = width)");
  search->callback([&] { rc = run_search(alg_path, kind_s, arity); });

  auto* report = app.add_subcommand("report", "invariant report for an algebra");
  report->add_option("--algebra", alg_path)->required();
  report->add_option("--arity", arity);
  report->callback([&] { rc = run_report(alg_path, arity); });

  auto* delta = app.add_subcommand("delta", "extract a delta system");
  delta->add_option("--file", file_path)->required();
  delta->add_option("--target", target)->required();
  delta->callback([&] { rc = run_delta(file_path, target); });

  auto* freeset = app.add_subcommand("freeset", "find a free set for a set-map");
  freeset->add_option("--file", file_path)->required();
  freeset->add_option("--target", target)->required();
  freeset->callback([&] { rc = run_freeset(file_path, target); });

  auto* base = app.add_subcommand("base", "base (eta, A) operations");
  base->require_subcommand(1);
  auto* bgen = base->add_subcommand("gen", "interleave nu/rho into a base");
  bgen->add_option("--interleave", interleave_files, "NU_FILE RHO_FILE")
      ->expected(2)
      ->required();
  bgen->add_option("--chi", chi, "block boundaries 0 c1 ... cJ")->required();
  bgen->add_option("--out", out_path);
  bgen->callback([&] { rc = run_base_gen(interleave_files, chi, out_path); });
  auto* bcheck = base->add_subcommand("check", "check base axioms");
  bcheck->add_option("base", file_path)->required();
  bcheck->add_option("--y0", y0)->required();
  bcheck->add_flag("--plus", plus, "also check (c+)");
  bcheck->callback([&] { rc = run_base_check(file_path, y0, plus); });
  auto* balg = base->add_subcommand("algebra", "emit the derived algebra B^b");
  balg->add_option("base", file_path)->required();
  balg->add_option("--out", out_path);
  balg->callback([&] { rc = run_base_algebra(file_path, out_path); });
  auto* bclx1 = base->add_subcommand("clx1", "per-block ideal independence");
  bclx1->add_option("base", file_path)->required();
  bclx1->callback([&] { rc = run_base_clx1(file_path); });
  auto* bclx2 = base->add_subcommand("clx2", "random valid configs, inequality");
  bclx2->add_option("base", file_path)->required();
  bclx2->add_option("--trials", trials);
  bclx2->callback([&] { rc = run_base_clx2(file_path, trials); });

  auto* forcing = app.add_subcommand("forcing", "condition poset operations");
  forcing->require_subcommand(1);
  auto add_flavor = [&](CLI::App* sub) {
    sub->add_option("--flavor", flavor_s, "q or p (checked against files)");
  };
  auto flavor_opt = [&]() -> std::optional<Flavor> {
    if (flavor_s.empty()) return std::nullopt;
    return parse_flavor(flavor_s);
  };
  std::string second_path;
  auto* fval = forcing->add_subcommand("validate", "check condition axioms");
  add_flavor(fval);
  fval->add_option("file", file_path)->required();
  fval->callback([&] { rc = run_forcing_validate(file_path, flavor_opt()); });
  auto* fleq = forcing->add_subcommand("leq", "order with per-point certificate");
  add_flavor(fleq);
  fleq->add_option("p", file_path)->required();
  fleq->add_option("q", second_path)->required();
  fleq->callback([&] { rc = run_forcing_leq(file_path, second_path, flavor_opt()); });
  auto* fiso = forcing->add_subcommand("iso", "condition isomorphism");
  add_flavor(fiso);
  fiso->add_option("p", file_path)->required();
  fiso->add_option("q", second_path)->required();
  fiso->callback([&] { rc = run_forcing_iso(file_path, second_path, flavor_opt()); });
  auto* famal = forcing->add_subcommand("amalgamate", "pair amalgam");
  add_flavor(famal);
  famal->add_option("p", file_path)->required();
  famal->add_option("q", second_path)->required();
  famal->add_option("--out", out_path);
  famal->callback(
      [&] { rc = run_forcing_amalgamate(file_path, second_path, flavor_opt(), out_path); });
  auto* ftriple = forcing->add_subcommand("triple", "generated triple instances");
  ftriple->add_option("--flavor", flavor_s)->required();
  ftriple->add_option("--trials", trials);
  ftriple->callback([&] { rc = run_forcing_triple(flavor_s, trials); });
  auto* falg = forcing->add_subcommand("algebra", "emit B_p");
  add_flavor(falg);
  falg->add_option("file", file_path)->required();
  falg->add_option("--out", out_path);
  falg->callback([&] { rc = run_forcing_algebra(file_path, flavor_opt(), out_path); });
  auto* fchain = forcing->add_subcommand("chain", "union algebra of a <=-chain");
  add_flavor(fchain);
  fchain->add_option("files", chain_files)->required();
  fchain->callback([&] { rc = run_forcing_chain(chain_files, flavor_opt(), out_path); });

  // let global flags (--seed etc.) appear after a subcommand name
  auto set_fallthrough = [](CLI::App* a, auto&& self) -> void {
    a->fallthrough();
    for (CLI::App* s : a->get_subcommands([](const CLI::App*) { return true; }))
      self(s, self);
  };
  set_fallthrough(&app, set_fallthrough);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
