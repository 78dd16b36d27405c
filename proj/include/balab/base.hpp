#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "balab/algebra.hpp"
#include "balab/rng.hpp"

namespace balab {

// Strings are over digits '0'..'0'+alphabet-1, all of length depth.
struct BlockParams {
  int depth = 0;
  int alphabet = 2;
  std::vector<int> chi;  // block boundaries, chi[0]=0 < chi[1] < ... ; L = chi.back()

  int blocks() const { return int(chi.size()) - 1; }
  int count() const { return chi.back(); }
  int block_of(int alpha) const;  // j with chi[j] <= alpha < chi[j+1]
};

struct Base {
  BlockParams params;
  std::vector<std::string> eta;      // count() strings of length depth
  std::set<std::string> split_set;   // A: strings of length < depth ("" allowed)
};

std::string common_prefix(const std::string& s, const std::string& t);
bool lex_less(const std::string& s, const std::string& t);  // equal lengths

// Structural validity: sizes, alphabet, chi monotone, A lengths.
// Throws std::invalid_argument on violation.
void validate_base_shape(const Base& b);

// eta_a(2k) = nu_{block(a)}(k), eta_a(2k+1) = rho_a(k);
// A = every string of even length < depth (including the empty string).
// depth even; nu has blocks() strings, rho has count() strings, each depth/2.
Base interleaved_base(const std::vector<std::string>& nu,
                      const std::vector<std::string>& rho,
                      const BlockParams& params);

// Row of the derived algebra B^b: f(beta)=1 iff beta==alpha, or
// (eta_alpha meet eta_beta in A and eta_alpha <lex eta_beta).
HomRow f_b_row(const Base& b, int alpha);

PresentedAlgebra algebra_from_base(const Base& b);

struct BaseVerdict {
  std::string axiom;  // "b", "c", "c+"
  bool holds = true;
  std::vector<int> counterexample;  // pair for (b), subset for (c)/(c+)
};

// Axiom (b): same-block alpha<beta => meet not in A (equal strings rejected).
// Axiom (c): every size-y0 subset of indices has a pair with meet in A.
// plus => (c+): ... a pair in each lex direction. Enumeration guarded by
// a node budget; throws std::runtime_error on blow-up.
std::vector<BaseVerdict> check_base(const Base& b, int y0, bool plus);

struct BlockVerdict {
  int block = 0;
  bool holds = true;
  int failed_alpha = -1;
};

// clx1: within each block, the generators are ideal independent in B^b.
std::vector<BlockVerdict> check_clx1(const Base& b);

struct Clx2Config {
  std::vector<std::string> sigma;       // k* strings, pairwise <|-incomparable
  std::vector<int> anchors;             // alpha_k
  std::vector<std::vector<int>> grid;   // grid[l][k] = alpha_{l,k}
  std::vector<bool> negated;            // t(k): true = complemented literal
};

struct Clx2Outcome {
  bool valid = false;           // hypotheses (alpha),(beta),(gamma)
  std::string violated_clause;  // first violated hypothesis when !valid
  bool holds = false;           // the claimed inequality, when valid
};

Clx2Outcome check_clx2_config(const Base& b, const Clx2Config& cfg);

// Rejection-samples a hypothesis-valid config on b (l*=3 rows; columns use
// clause (gamma)(ii) when the base admits a witness triple, else (gamma)(i)).
std::optional<Clx2Config> random_clx2_config(const Base& b, Rng& rng,
                                             int max_tries = 10000);

// Random interleaved base: distinct nu blocks, rho distinct within each block.
Base random_interleaved_base(Rng& rng, const BlockParams& params);

}  // namespace balab
