#include "luinv/cosets.hpp"

#include <atomic>
#include <thread>
#include <unordered_map>

#include "luinv/errors.hpp"

namespace luinv {

namespace {

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Sign of the permutation t -> v[t] of a short list.
int small_sign(const int* v, int n) {
  int inv = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (v[a] > v[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

std::vector<bool> fermionic_colours(const ParticleSpec& spec) {
  std::vector<bool> f(static_cast<std::size_t>(spec.k()));
  for (int j = 0; j < spec.k(); ++j) f[static_cast<std::size_t>(j)] = spec.statistics(j) == Statistics::fermion;
  return f;
}

}  // namespace

WreathElement WreathElement::identity(const std::vector<int>& line_sums, int m) {
  WreathElement w;
  w.outer = Permutation(m);
  for (int l : line_sums) w.inner.emplace_back(static_cast<std::size_t>(m), Permutation(l));
  return w;
}

std::vector<int> WreathElement::line_sums() const {
  std::vector<int> out;
  for (const auto& col : inner) out.push_back(col.empty() ? 0 : col.front().size());
  return out;
}

WreathElement operator*(const WreathElement& a, const WreathElement& b) {
  if (a.inner.size() != b.inner.size() || a.m() != b.m())
    throw ArgumentError("wreath product: elements of different groups");
  WreathElement c;
  c.outer = a.outer * b.outer;
  const Permutation vinv = a.outer.inverse();
  c.inner.resize(a.inner.size());
  for (std::size_t j = 0; j < a.inner.size(); ++j) {
    for (int d = 0; d < a.m(); ++d) {
      const auto dd = static_cast<std::size_t>(d);
      c.inner[j].push_back(a.inner[j][dd] * b.inner[j][static_cast<std::size_t>(vinv(d))]);
    }
  }
  return c;
}

void CosetRep::validate() const {
  if (static_cast<int>(sigmas.size()) != spec.k())
    throw ArgumentError("coset representative: need one permutation per particle type");
  for (int j = 0; j < spec.k(); ++j)
    if (sigmas[static_cast<std::size_t>(j)].size() != m * spec.l(j))
      throw ArgumentError("coset representative: sigma_" + std::to_string(j + 1) + " must act on m*l_j points");
}

std::vector<Permutation> embed(const WreathElement& w) {
  const int m = w.m();
  std::vector<Permutation> out;
  for (const auto& col : w.inner) {
    if (static_cast<int>(col.size()) != m) throw ArgumentError("embed: inner tuple has wrong length");
    const int l = col.front().size();
    std::vector<int> img(static_cast<std::size_t>(m * l));
    for (int i = 0; i < m; ++i) {
      const int d = w.outer(i);
      const auto& p = col[static_cast<std::size_t>(d)];
      for (int t = 0; t < l; ++t) img[static_cast<std::size_t>(i * l + t)] = d * l + p(t);
    }
    out.emplace_back(std::move(img));
  }
  return out;
}

std::optional<WreathElement> decompose(const std::vector<Permutation>& taus,
                                       const std::vector<int>& line_sums, int m) {
  if (taus.size() != line_sums.size()) throw ArgumentError("decompose: colour count mismatch");
  WreathElement w;
  std::vector<int> outer(static_cast<std::size_t>(m), -1);
  for (std::size_t j = 0; j < taus.size(); ++j) {
    const int l = line_sums[j];
    const auto& tau = taus[j];
    if (tau.size() != m * l) throw ArgumentError("decompose: permutation of wrong degree");
    std::vector<Permutation> col(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const int d = tau(i * l) / l;
      auto& o = outer[static_cast<std::size_t>(i)];
      if (o == -1 && j == 0) o = d;
      if (o != d) return std::nullopt;
      std::vector<int> img(static_cast<std::size_t>(l));
      for (int t = 0; t < l; ++t) {
        const int x = tau(i * l + t);
        if (x / l != d) return std::nullopt;
        img[static_cast<std::size_t>(t)] = x - d * l;
      }
      col[static_cast<std::size_t>(d)] = Permutation(std::move(img));
    }
    w.inner.push_back(std::move(col));
  }
  if (taus.empty()) {
    w.outer = Permutation(m);
  } else {
    w.outer = Permutation(std::move(outer));
  }
  return w;
}

mpz_class wreath_order(const std::vector<int>& line_sums, int m) {
  mpz_class base = 1;
  for (int l : line_sums) base *= factorial(l);
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(m));
  return out * factorial(m);
}

void for_each_wreath_element(const std::vector<int>& line_sums, int m,
                             const std::function<void(const WreathElement&)>& fn) {
  const std::size_t k = line_sums.size();
  std::vector<std::vector<Permutation>> sym;
  for (int l : line_sums) sym.push_back(all_permutations(l));
  const std::size_t digits = k * static_cast<std::size_t>(m);
  WreathElement w = WreathElement::identity(line_sums, m);
  for (const auto& pi : all_permutations(m)) {
    w.outer = pi;
    std::vector<std::size_t> idx(digits, 0);
    while (true) {
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i)
          w.inner[j][i] = sym[j][idx[j * static_cast<std::size_t>(m) + i]];
      fn(w);
      std::size_t pos = 0;
      while (pos < digits && ++idx[pos] == sym[pos / static_cast<std::size_t>(m)].size()) idx[pos++] = 0;
      if (pos == digits) break;
    }
  }
}

int sign_char(const WreathElement& w, const ParticleSpec& spec) {
  spec.require_bose_fermi("the sign character");
  if (static_cast<int>(w.inner.size()) != spec.k()) throw ArgumentError("sign_char: colour count mismatch");
  int s = 1;
  for (int j = 0; j < spec.k(); ++j) {
    if (spec.statistics(j) != Statistics::fermion) continue;
    for (const auto& p : w.inner[static_cast<std::size_t>(j)]) s *= p.sign();
  }
  return s;
}

std::optional<int> relative_sign(const ParticleSpec& spec, int m, const std::vector<Permutation>& s,
                                 const std::vector<Permutation>& t) {
  spec.require_bose_fermi("the relative sign");
  CosetRep{spec, m, s}.validate();
  CosetRep{spec, m, t}.validate();
  const auto ls = spec.line_sums();
  const std::size_t k = ls.size();
  const auto ms = perm_tuple_to_matrices(s, ls, m);
  const auto mt = perm_tuple_to_matrices(t, ls, m);

  // Block permutations rho (domain) and gamma (codomain) with
  // M_s(rho(r), gamma(c)) = M_t(r, c) for every colour.
  std::vector<int> rho, gamma;
  bool found = false;
  for (const auto& r : all_permutations(m)) {
    std::vector<int> g(static_cast<std::size_t>(m), -1);
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    bool ok = true;
    for (int c = 0; c < m && ok; ++c) {
      ok = false;
      for (int c2 = 0; c2 < m; ++c2) {
        if (used[static_cast<std::size_t>(c2)]) continue;
        bool eq = true;
        for (std::size_t j = 0; j < k && eq; ++j)
          for (int row = 0; row < m && eq; ++row)
            if (ms[j](r(row), c2) != mt[j](row, c)) eq = false;
        if (eq) {
          used[static_cast<std::size_t>(c2)] = true;
          g[static_cast<std::size_t>(c)] = c2;
          ok = true;
          break;
        }
      }
    }
    if (ok) {
      rho.assign(r.images().begin(), r.images().end());
      gamma = std::move(g);
      found = true;
      break;
    }
  }
  if (!found) return std::nullopt;

  int sign = 1;
  for (std::size_t j = 0; j < k; ++j) {
    const int l = ls[j];
    const int n = m * l;
    // u = P_a s P_b: block r -> rho(r) on the domain, block gamma(c) -> c on the codomain.
    std::vector<int> ginv(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) ginv[static_cast<std::size_t>(gamma[static_cast<std::size_t>(c)])] = c;
    std::vector<int> u(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      const int y = s[j](rho[static_cast<std::size_t>(x / l)] * l + x % l);
      u[static_cast<std::size_t>(x)] = ginv[static_cast<std::size_t>(y / l)] * l + y % l;
    }
    // beta maps {y in block r : t(y) in block c} onto {x in block r : u(x) in block c}
    // in increasing order; then alpha(u(beta(y))) = t(y).
    std::vector<int> beta(static_cast<std::size_t>(n)), alpha(static_cast<std::size_t>(n));
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) {
        std::vector<int> xs, ys;
        for (int p = r * l; p < (r + 1) * l; ++p) {
          if (u[static_cast<std::size_t>(p)] / l == c) xs.push_back(p);
          if (t[j](p) / l == c) ys.push_back(p);
        }
        if (xs.size() != ys.size()) throw std::logic_error("relative_sign: block counts differ");
        for (std::size_t q = 0; q < xs.size(); ++q) beta[static_cast<std::size_t>(ys[q])] = xs[q];
      }
    }
    for (int y = 0; y < n; ++y)
      alpha[static_cast<std::size_t>(u[static_cast<std::size_t>(beta[static_cast<std::size_t>(y)])])] = t[j](y);
    if (spec.statistics(static_cast<int>(j)) == Statistics::fermion)
      sign *= Permutation(std::move(alpha)).sign() * Permutation(std::move(beta)).sign();
  }
  return sign;
}

StabilizerSigns stabilizer_signs(const CosetRep& s, const CosetOptions& opts) {
  s.validate();
  s.spec.require_bose_fermi("the stabilizer sign check");
  const auto fermionic = fermionic_colours(s.spec);
  bool any_fermion = false;
  for (int j = 0; j < s.spec.k(); ++j)
    if (fermionic[static_cast<std::size_t>(j)] && s.spec.l(j) > 1) any_fermion = true;
  if (!any_fermion || s.m == 0) return StabilizerSigns::all_positive;

  const auto ls = s.spec.line_sums();
  const mpz_class order = wreath_order(ls, s.m);
  if (order.get_d() > opts.budget)
    throw BudgetError("stabilizer scan needs " + order.get_str() + " group elements, budget is " +
                      std::to_string(static_cast<long long>(opts.budget)));

  const int m = s.m;
  const std::size_t k = ls.size();
  std::vector<std::vector<Permutation>> sym;
  std::vector<std::vector<int>> sym_sign;
  for (int l : ls) {
    sym.push_back(all_permutations(l));
    std::vector<int> sg;
    for (const auto& p : sym.back()) sg.push_back(p.sign());
    sym_sign.push_back(std::move(sg));
  }
  std::vector<std::vector<int>> sig, siginv;
  for (const auto& p : s.sigmas) {
    sig.emplace_back(p.images().begin(), p.images().end());
    const auto inv = p.inverse();
    siginv.emplace_back(inv.images().begin(), inv.images().end());
  }

  const auto outers = all_permutations(m);
  const std::size_t digits = k * static_cast<std::size_t>(m);
  std::atomic<bool> mixed{false};
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    std::vector<std::vector<int>> a(k), b(k);
    for (std::size_t j = 0; j < k; ++j) {
      a[j].resize(static_cast<std::size_t>(m * ls[j]));
      b[j].resize(static_cast<std::size_t>(m * ls[j]));
    }
    std::vector<int> outer_b(static_cast<std::size_t>(m));
    std::vector<int> block(16);
    for (std::size_t oi; (oi = next.fetch_add(1)) < outers.size();) {
      const auto& pi = outers[oi];
      std::vector<std::size_t> idx(digits, 0);
      while (!mixed.load(std::memory_order_relaxed)) {
        int sign_a = 1;
        for (std::size_t j = 0; j < k; ++j) {
          const int l = ls[j];
          for (int i = 0; i < m; ++i) {
            const int d = pi(i);
            const std::size_t pidx = idx[j * static_cast<std::size_t>(m) + static_cast<std::size_t>(d)];
            const auto& p = sym[j][pidx];
            if (fermionic[j]) sign_a *= sym_sign[j][pidx];
            for (int t = 0; t < l; ++t) a[j][static_cast<std::size_t>(i * l + t)] = d * l + p(t);
          }
        }
        // b = s^-1 a s, colour-wise; test membership in H_m.
        bool in_h = true;
        int sign_b = 1;
        std::fill(outer_b.begin(), outer_b.end(), -1);
        for (std::size_t j = 0; j < k && in_h; ++j) {
          const int l = ls[j];
          if (static_cast<int>(block.size()) < l) block.resize(static_cast<std::size_t>(l));
          for (int i = 0; i < m && in_h; ++i) {
            int d = -1;
            for (int t = 0; t < l; ++t) {
              const int x = i * l + t;
              const int y = siginv[j][static_cast<std::size_t>(a[j][static_cast<std::size_t>(sig[j][static_cast<std::size_t>(x)])])];
              if (d == -1) d = y / l;
              if (y / l != d) {
                in_h = false;
                break;
              }
              block[static_cast<std::size_t>(t)] = y - d * l;
            }
            if (!in_h) break;
            auto& o = outer_b[static_cast<std::size_t>(i)];
            if (o == -1) o = d;
            if (o != d) {
              in_h = false;
              break;
            }
            if (fermionic[j]) sign_b *= small_sign(block.data(), l);
          }
        }
        if (in_h && sign_a * sign_b == -1) {
          mixed.store(true);
          break;
        }
        std::size_t pos = 0;
        while (pos < digits && ++idx[pos] == sym[pos / static_cast<std::size_t>(m)].size()) idx[pos++] = 0;
        if (pos == digits) break;
      }
      if (mixed.load()) break;
    }
  };

  const unsigned n = std::min<unsigned>(resolve_workers(opts.workers), static_cast<unsigned>(outers.size()));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  }
  return mixed.load() ? StabilizerSigns::mixed : StabilizerSigns::all_positive;
}

std::vector<MackeyEntry> mackey_table(const ParticleSpec& spec, int m, const CosetOptions& opts,
                                      const EnumerateOptions& enum_opts) {
  spec.require_bose_fermi("the double coset count");
  std::vector<MackeyEntry> out;
  for (auto& g : enumerate_graphs(spec.line_sums(), m, enum_opts)) {
    CosetRep rep{spec, m, graph_to_perm_tuple(g)};
    const auto signs = stabilizer_signs(rep, opts);
    out.push_back({std::move(g), signs});
  }
  return out;
}

mpz_class mackey_dim(const ParticleSpec& spec, int m, const CosetOptions& opts,
                     const EnumerateOptions& enum_opts) {
  mpz_class n = 0;
  for (const auto& e : mackey_table(spec, m, opts, enum_opts))
    if (e.signs == StabilizerSigns::all_positive) ++n;
  return n;
}

mpq_class wreath_char_value(const std::vector<Partition>& gammas, const Partition& theta,
                            const WreathElement& w) {
  const int m = w.m();
  if (gammas.size() != w.inner.size()) throw ArgumentError("wreath_char_value: colour count mismatch");
  if (theta.weight() != m) throw ArgumentError("wreath_char_value: theta must be a partition of m");
  mpz_class value = character_value(theta, w.outer.cycle_type());
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int i = 0; i < m && value != 0; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> cyc;  // i, pi(i), pi^2(i), ...
    for (int x = i; !seen[static_cast<std::size_t>(x)]; x = w.outer(x)) {
      seen[static_cast<std::size_t>(x)] = true;
      cyc.push_back(x);
    }
    for (std::size_t j = 0; j < gammas.size(); ++j) {
      // g = p_i p_{pi^{c-1}(i)} ... p_{pi(i)}: the return map on block i.
      Permutation g(gammas[j].weight());
      for (std::size_t c = 1; c <= cyc.size(); ++c)
        g = w.inner[j][static_cast<std::size_t>(cyc[c % cyc.size()])] * g;
      value *= character_value(gammas[j], g.cycle_type());
    }
  }
  return mpq_class(value);
}

ClassFunction brute_force_induce(const std::vector<std::pair<Permutation, mpq_class>>& subgroup, int N) {
  if (N > 8) throw ArgumentError("brute_force_induce: N must be at most 8");
  if (subgroup.empty()) throw ArgumentError("brute_force_induce: empty subgroup");
  auto encode = [](std::span<const int> v) {
    std::uint32_t c = 0;
    for (int x : v) c = c * 8u + static_cast<std::uint32_t>(x);
    return c;
  };
  std::unordered_map<std::uint32_t, mpq_class> chi;
  for (const auto& [p, v] : subgroup) {
    if (p.size() != N) throw ArgumentError("brute_force_induce: element of wrong degree");
    chi.emplace(encode(p.images()), v);
  }
  const auto perms = all_permutations(N);
  ClassFunction out;
  for (const auto& mu : partitions_of(N)) {
    std::vector<std::vector<int>> cycles;
    int next = 1;
    for (int part : mu.parts()) {
      std::vector<int> c;
      for (int t = 0; t < part; ++t) c.push_back(next++);
      cycles.push_back(std::move(c));
    }
    const Permutation g = Permutation::from_cycles(N, cycles);
    mpq_class acc = 0;
    for (const auto& x : perms) {
      const Permutation h = x * g * x.inverse();
      auto it = chi.find(encode(h.images()));
      if (it != chi.end()) acc += it->second;
    }
    acc /= mpq_class(static_cast<long>(subgroup.size()));
    out.emplace(mu, acc);
  }
  return out;
}

}  // namespace luinv
