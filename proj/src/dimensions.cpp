#include "luinv/dimensions.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "luinv/errors.hpp"
#include "luinv/symfunc.hpp"

namespace luinv {

namespace {

int common_weight(std::span<const Partition> mus) {
  if (mus.empty()) throw ArgumentError("kronecker: need at least one partition");
  const int m = mus.front().weight();
  for (const auto& mu : mus)
    if (mu.weight() != m) throw ArgumentError("kronecker: partitions of different weights");
  return m;
}

mpz_class class_sum(int m, const Partition* outer, std::span<const Partition> mus) {
  mpq_class acc = 0;
  for (const auto& rho : partitions_of(m)) {
    mpz_class prod = outer ? character_value(*outer, rho) : mpz_class(1);
    for (const auto& mu : mus) {
      if (prod == 0) break;
      prod *= character_value(mu, rho);
    }
    if (prod != 0) acc += mpq_class(prod) / mpq_class(z_of(rho));
  }
  if (acc.get_den() != 1) throw std::logic_error("kronecker: non-integral class sum");
  return acc.get_num();
}

struct PlethysmCache {
  std::mutex mutex;
  std::map<std::pair<Partition, Partition>, SymFunc> values;
};

// s_mu[s_lambda], cached.
SymFunc schur_plethysm(const Partition& lambda, const Partition& mu) {
  static PlethysmCache cache;
  auto key = std::make_pair(lambda, mu);
  {
    std::lock_guard lock(cache.mutex);
    auto it = cache.values.find(key);
    if (it != cache.values.end()) return it->second;
  }
  SymFunc f = plethysm(schur(mu), schur(lambda));
  std::lock_guard lock(cache.mutex);
  cache.values.emplace(std::move(key), f);
  return f;
}

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

mpz_class kronecker(std::span<const Partition> mus) {
  return class_sum(common_weight(mus), nullptr, mus);
}

mpz_class kronecker(const Partition& outer, std::span<const Partition> mus) {
  const int m = common_weight(mus);
  if (outer.weight() != m) throw ArgumentError("kronecker: outer partition has wrong weight");
  return class_sum(m, &outer, mus);
}

mpz_class plethysm_coeff(const Partition& lambda, const Partition& mu, const Partition& nu) {
  if (nu.weight() != lambda.weight() * mu.weight())
    throw ArgumentError("plethysm_coeff: |nu| must equal |lambda|*|mu|");
  mpq_class c = hall_inner(schur_plethysm(lambda, mu), schur(nu));
  if (c.get_den() != 1 || c < 0) throw std::logic_error("plethysm_coeff: not a nonnegative integer");
  return c.get_num();
}

mpz_class multiplicity(const ParticleSpec& spec, int m, std::span<const Partition> nus) {
  if (m < 0) throw ArgumentError("multiplicity: negative degree");
  if (static_cast<int>(nus.size()) != spec.k())
    throw ArgumentError("multiplicity: need one nu per particle type");
  for (int j = 0; j < spec.k(); ++j)
    if (nus[static_cast<std::size_t>(j)].weight() != m * spec.l(j))
      throw ArgumentError("multiplicity: nu_j must be a partition of m*l_j");
  if (m == 0) return 1;

  const auto parts = partitions_of(m);
  const auto k = static_cast<std::size_t>(spec.k());
  std::vector<std::size_t> idx(k, 0);
  std::vector<Partition> mus(k);
  mpz_class total = 0;
  while (true) {
    for (std::size_t j = 0; j < k; ++j) mus[j] = parts[idx[j]];
    mpz_class c = kronecker(mus);
    for (std::size_t j = 0; j < k && c != 0; ++j)
      c *= plethysm_coeff(spec.type(static_cast<int>(j)), mus[j], nus[j]);
    total += c;
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == parts.size()) idx[pos++] = 0;
    if (pos == k) break;
  }
  return total;
}

mpz_class stable_dim(const ParticleSpec& spec, int m, unsigned workers) {
  if (m < 0) throw ArgumentError("stable_dim: negative degree");
  if (m == 0) return 1;

  const auto rhos = partitions_of(m);
  const std::size_t R = rhos.size();

  // p_rho[s_lambda] = prod_i adams(rho_i, s_lambda), one table per distinct type.
  std::map<Partition, std::vector<SymFunc>> table;
  for (const auto& lambda : spec.types()) {
    if (table.count(lambda)) continue;
    const SymFunc s = schur(lambda);
    std::map<int, SymFunc> ad;
    std::vector<SymFunc> row;
    row.reserve(R);
    for (const auto& rho : rhos) {
      SymFunc prod = SymFunc::constant(1);
      for (int part : rho.parts()) {
        auto it = ad.find(part);
        if (it == ad.end()) it = ad.emplace(part, adams(part, s)).first;
        prod = prod * it->second;
      }
      row.push_back(std::move(prod));
    }
    table.emplace(lambda, std::move(row));
  }

  std::vector<mpq_class> zinv(R);
  for (std::size_t i = 0; i < R; ++i) zinv[i] = mpq_class(1) / mpq_class(z_of(rhos[i]));

  std::vector<const std::vector<SymFunc>*> per_type;
  for (const auto& lambda : spec.types()) per_type.push_back(&table.at(lambda));

  // Row sums over the upper triangle; off-diagonal terms counted twice.
  std::vector<mpq_class> row_sum(R);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t a; (a = next.fetch_add(1)) < R;) {
      mpq_class acc = 0;
      for (std::size_t b = a; b < R; ++b) {
        mpq_class term = zinv[a] * zinv[b];
        for (const auto* t : per_type) {
          term *= hall_inner((*t)[a], (*t)[b]);
          if (term == 0) break;
        }
        if (b != a) term *= 2;
        acc += term;
      }
      row_sum[a] = acc;
    }
  };
  const unsigned n = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(R));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  }

  mpq_class total = 0;
  for (const auto& r : row_sum) total += r;
  if (total.get_den() != 1) throw std::logic_error("stable_dim: non-integral result");
  return total.get_num();
}

std::vector<mpz_class> stable_dims(const ParticleSpec& spec, int max_degree, unsigned workers) {
  std::vector<mpz_class> out;
  for (int m = 1; m <= max_degree; ++m) out.push_back(stable_dim(spec, m, workers));
  return out;
}

bool is_saturated(const ParticleSpec& spec) {
  spec.require_bose_fermi("the saturation predicate");
  int fermions = 0;
  for (int j = 0; j < spec.k(); ++j) {
    if (spec.l(j) == 1) return true;
    if (spec.statistics(j) == Statistics::fermion) fermions += spec.l(j);
  }
  return fermions % 2 == 0;
}

std::vector<mpz_class> free_gen_counts(const ParticleSpec& spec, int max_degree, unsigned workers) {
  spec.require_bose_fermi("free generator counting");
  const auto d = stable_dims(spec, max_degree, workers);
  return inverse_euler(d);
}

ParticleSpec mixed_spec(const ParticleSpec& spec) {
  auto types = spec.types();
  types.push_back(Partition{1});
  return ParticleSpec(std::move(types));
}

}  // namespace luinv
