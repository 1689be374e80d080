#pragma once

#include <span>
#include <vector>

#include <gmpxx.h>

#include "luinv/combinatorics.hpp"
#include "luinv/particle_spec.hpp"

namespace luinv {

/// Multiplicity of the trivial character in chi_{mu_1} * ... * chi_{mu_k}.
mpz_class kronecker(std::span<const Partition> mus);

/// <chi_outer, chi_{mu_1} ... chi_{mu_k}>_{S_m}.
mpz_class kronecker(const Partition& outer, std::span<const Partition> mus);

/// Coefficient of s_nu in s_mu[s_lambda].
mpz_class plethysm_coeff(const Partition& lambda, const Partition& mu, const Partition& nu);

/// Multiplicity of S_{nu_1} C^{n_1} (x) ... (x) S_{nu_k} C^{n_k} in
/// S^m(S_{lambda_1} C^{n_1} (x) ... (x) S_{lambda_k} C^{n_k}) for large n.
mpz_class multiplicity(const ParticleSpec& spec, int m, std::span<const Partition> nus);

/// Stable dimension of the degree-m invariants, via
/// d_m = sum_{rho,rho' |- m} z_rho^-1 z_rho'^-1
///       prod_j < p_rho[s_lambda_j], p_rho'[s_lambda_j] >.
/// workers == 0 picks the hardware concurrency. The result does not depend
/// on the worker count.
mpz_class stable_dim(const ParticleSpec& spec, int m, unsigned workers = 0);

/// d_1, ..., d_M.
std::vector<mpz_class> stable_dims(const ParticleSpec& spec, int max_degree, unsigned workers = 0);

/// True iff some type has a single particle, or the total number of
/// fermions is even. Throws UnsupportedSpecError for general partitions.
bool is_saturated(const ParticleSpec& spec);

/// Numbers of free generators in degrees 1..M (inverse Euler transform of
/// the stable dimensions). Throws UnsupportedSpecError for general partitions.
std::vector<mpz_class> free_gen_counts(const ParticleSpec& spec, int max_degree, unsigned workers = 0);

/// Appends the purifying single-particle type (1).
ParticleSpec mixed_spec(const ParticleSpec& spec);

}  // namespace luinv
