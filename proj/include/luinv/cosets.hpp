#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "luinv/combinatorics.hpp"
#include "luinv/graphs.hpp"
#include "luinv/particle_spec.hpp"
#include "luinv/symfunc.hpp"

namespace luinv {

/// An element of H_m = (S_{l_1} x ... x S_{l_k}) wr S_m.
///
/// Its embedding in G_m = S_{m l_1} x ... x S_{m l_k} sends point t of
/// block i (colour j) to point inner[j][outer(i)](t) of block outer(i), so
/// inner permutations are indexed by the destination block. With this
/// convention the wreath product rule
///   (p, v) * (p', v') = (p_a p'_{v^-1(a)}, v v')
/// corresponds to composition of the embedded permutations.
struct WreathElement {
  std::vector<std::vector<Permutation>> inner;  // inner[j][i] in S_{l_j}
  Permutation outer;                            // in S_m

  static WreathElement identity(const std::vector<int>& line_sums, int m);
  int m() const { return outer.size(); }
  std::vector<int> line_sums() const;

  friend WreathElement operator*(const WreathElement& a, const WreathElement& b);
  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

/// A representative (sigma_1, ..., sigma_k) of a double coset H_m s H_m.
struct CosetRep {
  ParticleSpec spec;
  int m = 0;
  std::vector<Permutation> sigmas;

  /// Throws ArgumentError if sigma_j does not act on m * l_j points.
  void validate() const;
};

std::vector<Permutation> embed(const WreathElement& w);

/// Recovers the wreath element, or nullopt if some tau_j does not map blocks
/// to blocks or the colours induce different block permutations.
std::optional<WreathElement> decompose(const std::vector<Permutation>& taus,
                                       const std::vector<int>& line_sums, int m);

/// Number of elements of H_m, (prod_j l_j!)^m m!.
mpz_class wreath_order(const std::vector<int>& line_sums, int m);

/// Calls fn on every element of H_m (outer permutations in lexicographic
/// order, inner tuples in mixed-radix order).
void for_each_wreath_element(const std::vector<int>& line_sums, int m,
                             const std::function<void(const WreathElement&)>& fn);

/// Value of the one-dimensional character (chi_lambda_1 x ... x chi_lambda_k) wr 1:
/// the product of the inner signs over fermionic colours.
int sign_char(const WreathElement& w, const ParticleSpec& spec);

/// For tuples s, t in G_m finds a, b in H_m with t = a s b and returns
/// sign_char(a) * sign_char(b), so that f_t = sign * f_s. Returns nullopt if
/// s and t lie in different double cosets. For a mixed coset the sign
/// depends on the choice of (a, b), and both invariants vanish.
std::optional<int> relative_sign(const ParticleSpec& spec, int m, const std::vector<Permutation>& s,
                                 const std::vector<Permutation>& t);

enum class StabilizerSigns { all_positive, mixed };

struct CosetOptions {
  /// Hard cap on |H_m| for brute-force stabilizer scans.
  double budget = 1e7;
  /// 0 = hardware concurrency.
  unsigned workers = 0;
};

/// Scans a in H_m, sets b = s_j^-1 a_j s_j colour-wise (so a s b^-1 = s),
/// and keeps pairs with b in H_m. Returns mixed iff some kept pair has
/// sign_char(a) * sign_char(b) = -1, i.e. the Mackey term of the double
/// coset vanishes. Exits early on the first such pair.
StabilizerSigns stabilizer_signs(const CosetRep& s, const CosetOptions& opts = {});

struct MackeyEntry {
  GraphClass graph;
  StabilizerSigns signs;
};

/// Stabilizer signs of every double coset, in enumerate_graphs order.
std::vector<MackeyEntry> mackey_table(const ParticleSpec& spec, int m, const CosetOptions& opts = {},
                                      const EnumerateOptions& enum_opts = {});

/// Number of double cosets whose stabilizer signs are all positive.
mpz_class mackey_dim(const ParticleSpec& spec, int m, const CosetOptions& opts = {},
                     const EnumerateOptions& enum_opts = {});

/// Value of (gamma_1 x ... x gamma_k) wr chi_theta at w, where gamma_j are
/// irreducible characters of S_{l_j}: the product over cycles of outer of
/// gamma evaluated at the cycle product, times chi_theta(cycle type of outer).
mpq_class wreath_char_value(const std::vector<Partition>& gammas, const Partition& theta,
                            const WreathElement& w);

/// Induces a class function from a subgroup of S_N given by an element list
/// with character values: ind(g) = |H|^-1 sum_{x in S_N} chi(x g x^-1).
/// Throws ArgumentError for N > 8.
ClassFunction brute_force_induce(const std::vector<std::pair<Permutation, mpq_class>>& subgroup, int N);

}  // namespace luinv
