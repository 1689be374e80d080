#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "luinv/contraction.hpp"
#include "luinv/graphs.hpp"
#include "luinv/particle_spec.hpp"

namespace luinv {

/// A pure state of the composite system: a dense complex array over the
/// index positions (colour 1 indices, ..., colour k indices), row-major, with
/// each colour's indices symmetric (bosons) or antisymmetric (fermions).
/// Indices are 0-based.
struct StateTensor {
  ParticleSpec spec;
  std::vector<int> dims;  // n_1..n_k
  std::vector<Complex> coeffs;

  /// All-zero state. Throws UnsupportedSpecError for general partitions and
  /// ArgumentError for a dims list of the wrong length or nonpositive entries.
  static StateTensor zeros(const ParticleSpec& spec, const std::vector<int>& dims);

  /// Local dimension of every index position.
  std::vector<int> shape() const;
  std::size_t flat_index(std::span<const int> index) const;
  Complex& at(std::span<const int> index) { return coeffs[flat_index(index)]; }
  Complex at(std::span<const int> index) const { return coeffs[flat_index(index)]; }
  double norm() const;
};

/// Number of coefficients of a state with these dims, prod_j n_j^{l_j}.
std::size_t state_size(const ParticleSpec& spec, const std::vector<int>& dims);

/// Projects a raw array onto the bose/fermi symmetry type of every colour:
/// (1/l!) sum_pi chi(pi) applied to each colour's index group.
StateTensor symmetrize(std::vector<Complex> raw, const ParticleSpec& spec, const std::vector<int>& dims);

/// Zero-padding into larger local dimensions. Throws ArgumentError if some
/// new dimension is smaller.
StateTensor embed_state(const StateTensor& psi, const std::vector<int>& dims);

/// The normalized product state with colour j in e_1 ... e_1 (bosons) or
/// e_1 ^ ... ^ e_{l_j} (fermions). Throws ArgumentError if a fermionic colour
/// has n_j < l_j.
StateTensor reference_separable(const ParticleSpec& spec, const std::vector<int>& dims);

/// Normalized symmetrization of a complex Gaussian array drawn from a
/// mt19937_64 generator seeded with seed.
StateTensor random_state(const ParticleSpec& spec, const std::vector<int>& dims, std::uint64_t seed);

/// Haar-random unitary (QR of a complex Gaussian matrix with phase fix).
Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed);

/// Applies us[j] to every index of colour j.
StateTensor apply_local_unitaries(const StateTensor& psi, const std::vector<Eigen::MatrixXcd>& us);

struct EvalOptions {
  /// Hard cap on multiply-adds per contraction.
  double budget = 1e8;
};

/// The network of m copies of psi and m copies of conj(psi): slot t of colour
/// j on psi copy b carries label b*l_j + t, and the same slot on the b-th
/// conjugate copy carries label sigma_j(b*l_j + t), with sigma a
/// representative of g. The network points into psi.
TensorNetwork build_network(const GraphClass& g, const StateTensor& psi);

/// The unnormalized contraction. Throws ArgumentError on a spec mismatch and
/// BudgetError if the contraction is too expensive.
Complex evaluate_raw(const GraphClass& g, const StateTensor& psi, const EvalOptions& opts = {});

/// The same value by direct summation (test oracle for small sizes).
Complex evaluate_naive(const GraphClass& g, const StateTensor& psi, double max_terms = 1e7);

/// Constant by which evaluate() divides the raw value of a connected graph:
/// the (real) raw value on reference_separable at the smallest admissible
/// dims; if that is below 1e-9, the modulus of the raw value on a fixed-seed
/// random state of dims m*l_j; if that is below 1e-9 as well, 1. Cached.
double normalization_constant(const GraphClass& connected, const ParticleSpec& spec,
                              const EvalOptions& opts = {});

/// prod over connected components C of evaluate_raw(C, psi) / N_C.
Complex evaluate(const GraphClass& g, const StateTensor& psi, const EvalOptions& opts = {});

/// The same normalized value computed from one contraction of the whole
/// network, using relative_sign to relate g's representative to the direct
/// sum of its components' representatives.
Complex evaluate_direct(const GraphClass& g, const StateTensor& psi, const EvalOptions& opts = {});

/// True if the raw value is below tol on `samples` random normalized states
/// of dims m*l_j (the numeric fallback of the vanishing test).
bool numerically_vanishing(const GraphClass& g, const ParticleSpec& spec, int samples = 3,
                           std::uint64_t seed = 1, double tol = 1e-8, const EvalOptions& opts = {});

/// Numerical rank of the (samples x classes) matrix of raw degree-m values on
/// random states; singular values below 1e-8 times the largest are dropped.
int rank_probe(const ParticleSpec& spec, int m, const std::vector<int>& dims, int samples,
               std::uint64_t seed, const EvalOptions& opts = {});

/// |evaluate(g) evaluate(h) - evaluate_direct(g + h)|.
double product_check(const GraphClass& g, const GraphClass& h, const StateTensor& psi,
                     const EvalOptions& opts = {});

/// A density operator on the symmetric (antisymmetric) subspace, stored as a
/// full matrix over the index space of StateTensor.
struct DensityTensor {
  ParticleSpec spec;
  std::vector<int> dims;
  Eigen::MatrixXcd matrix;

  /// Projects both sides onto the symmetry type, makes the result exactly
  /// Hermitian and rescales to unit trace. Throws ArgumentError if the input
  /// is not Hermitian within 1e-9, has zero trace after projection, or has an
  /// eigenvalue below -1e-9.
  static DensityTensor from_matrix(const ParticleSpec& spec, const std::vector<int>& dims,
                                   Eigen::MatrixXcd m);
  static DensityTensor pure(const StateTensor& psi);

  /// Number of eigenvalues above 1e-12.
  int rank() const;
};

/// psi = sum_a sqrt(p_a) v_a (x) e_a over spec + [(1)], environment last.
/// Throws ArgumentError if n_env < rank.
StateTensor purify(const DensityTensor& rho, int n_env);

/// Partial trace of a state over its last colour.
DensityTensor trace_out_last(const StateTensor& psi);

/// evaluate(g, purify(rho, rank(rho))). Throws ArgumentError unless g has the
/// line sums of the purified spec.
Complex evaluate_mixed(const GraphClass& g, const DensityTensor& rho, const EvalOptions& opts = {});

}  // namespace luinv
