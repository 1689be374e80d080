#include "luinv/verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "luinv/cosets.hpp"
#include "luinv/dimensions.hpp"
#include "luinv/errors.hpp"
#include "luinv/graphs.hpp"
#include "luinv/invariants.hpp"
#include "luinv/symfunc.hpp"

namespace luinv {

namespace {

// Reference tables, row = degree m (1..7), column = particle number l.
constexpr long kBoson[7][5] = {{1, 1, 1, 1, 1},        {1, 2, 2, 3, 3},          {1, 3, 5, 9, 13},
                               {1, 5, 12, 43, 106},    {1, 7, 31, 264, 1856},    {1, 11, 103, 2804, 65481},
                               {1, 15, 383, 44524, 3925518}};
constexpr long kFermion[7][5] = {{1, 1, 1, 1, 1},       {1, 2, 2, 3, 3},          {1, 3, 4, 9, 12},
                                 {1, 5, 10, 43, 94},    {1, 7, 23, 264, 1613},    {1, 11, 71, 2804, 58793},
                                 {1, 15, 251, 44524, 3624974}};
constexpr long kBosonFree[7][5] = {{1, 1, 1, 1, 1},     {0, 1, 1, 2, 2},          {0, 1, 3, 6, 10},
                                   {0, 1, 6, 31, 90},   {0, 1, 16, 209, 1730},    {0, 1, 59, 2453, 63386},
                                   {0, 1, 243, 41098, 3855647}};
constexpr long kFermionFree[7][5] = {{1, 1, 1, 1, 1},   {0, 1, 1, 2, 2},          {0, 1, 2, 6, 9},
                                     {0, 1, 5, 31, 79}, {0, 1, 11, 209, 1501},    {0, 1, 39, 2453, 56973},
                                     {0, 1, 157, 41098, 3562441}};
constexpr long kMixed[7][4] = {{1, 1, 1, 1},      {2, 3, 4, 5},           {3, 8, 16, 31},
                               {5, 25, 118, 501}, {7, 85, 1411, 19158},   {11, 397, 30335, 1468699},
                               {15, 2183, 939789, 186406186}};
constexpr long kMixedFree[7][4] = {{1, 1, 1, 1},     {1, 2, 3, 4},          {1, 5, 12, 26},
                                   {1, 14, 96, 460}, {1, 50, 1257, 18553},  {1, 265, 28568, 1447330},
                                   {1, 1601, 904439, 184851055}};
constexpr long kHook[7] = {1, 4, 18, 151, 1628, 24164, 431401};
constexpr long kHookMixed[7] = {1, 8, 97, 3267, 190139, 17122837, 2159496487L};

using Outcome = std::pair<bool, std::string>;

class Runner {
 public:
  explicit Runner(std::vector<CheckResult>& out) : out_(out) {}

  void run(const std::string& name, int criterion, bool gating, const std::function<Outcome()>& fn) {
    CheckResult r;
    r.name = name;
    r.criterion = criterion;
    r.gating = gating;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto [ok, detail] = fn();
      r.passed = ok;
      r.detail = std::move(detail);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out_.push_back(std::move(r));
  }

 private:
  std::vector<CheckResult>& out_;
};

// Collects mismatches as "label: got X, want Y".
struct Tally {
  int cells = 0;
  std::vector<std::string> bad;
  void expect(const std::string& label, const mpz_class& got, const mpz_class& want) {
    ++cells;
    if (got != want) bad.push_back(label + ": got " + got.get_str() + ", want " + want.get_str());
  }
  void expect(const std::string& label, bool ok, const std::string& what = "") {
    ++cells;
    if (!ok) bad.push_back(label + (what.empty() ? "" : ": " + what));
  }
  Outcome outcome() const {
    if (bad.empty()) return {true, std::to_string(cells) + " cells match"};
    std::string d = std::to_string(bad.size()) + " of " + std::to_string(cells) + " cells differ";
    for (std::size_t i = 0; i < bad.size() && i < 5; ++i) d += "; " + bad[i];
    return {false, d};
  }
};

std::string cell(const std::string& spec, int m) { return spec + " m=" + std::to_string(m); }

ParticleSpec bose(int l) { return ParticleSpec({Partition::row(l)}); }
ParticleSpec fermi(int l) { return ParticleSpec({Partition::column(l)}); }

// Table cells (m, l) with lo <= ... selected by the predicate.
template <std::size_t L>
Outcome dims_table(const long (&table)[7][L], const std::function<ParticleSpec(int)>& make,
                   const std::function<bool(int, int)>& want_cell, unsigned workers) {
  Tally t;
  for (int l = 1; l <= static_cast<int>(L); ++l) {
    int top = 0;
    for (int m = 1; m <= 7; ++m)
      if (want_cell(l, m)) top = m;
    if (top == 0) continue;
    const auto spec = make(l);
    const auto d = stable_dims(spec, top, workers);
    for (int m = 1; m <= top; ++m)
      if (want_cell(l, m))
        t.expect(cell(spec.str(), m), d[static_cast<std::size_t>(m - 1)], mpz_class(table[m - 1][l - 1]));
  }
  return t.outcome();
}

template <std::size_t L>
Outcome free_table(const long (&table)[7][L], const std::function<ParticleSpec(int)>& make,
                   const std::function<bool(int, int)>& want_cell, unsigned workers) {
  Tally t;
  for (int l = 1; l <= static_cast<int>(L); ++l) {
    int top = 0;
    for (int m = 1; m <= 7; ++m)
      if (want_cell(l, m)) top = m;
    if (top == 0) continue;
    const auto spec = make(l);
    const auto a = free_gen_counts(spec, top, workers);
    for (int m = 1; m <= top; ++m)
      if (want_cell(l, m))
        t.expect(cell(spec.str(), m), a[static_cast<std::size_t>(m - 1)], mpz_class(table[m - 1][l - 1]));
  }
  return t.outcome();
}

bool gating_cell(int l, int m) { return (l <= 4 && m <= 5) || (l == 5 && m <= 4); }
bool stretch_cell(int l, int m) { return !gating_cell(l, m); }
bool quick_cell(int l, int m) { return l <= 3 && m <= 4; }
bool mixed_gating_cell(int l, int m) { return l <= 3 && m <= 4; }
bool mixed_stretch_cell(int l, int m) { return !mixed_gating_cell(l, m); }

// Frobenius formula: chi_lambda(mu) is the coefficient of x^(lambda + delta)
// in p_mu(x) * a_delta(x) with n = |lambda| variables.
mpz_class frobenius_character(const Partition& lambda, const Partition& mu) {
  const int n = lambda.weight();
  using Poly = std::map<std::vector<int>, long>;
  Poly poly;
  std::vector<int> delta(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) delta[static_cast<std::size_t>(i)] = n - 1 - i;
  for (const auto& p : all_permutations(n)) {
    std::vector<int> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(p(i))] = delta[static_cast<std::size_t>(i)];
    poly[e] += p.sign();
  }
  for (int r : mu.parts()) {
    Poly next;
    for (const auto& [e, c] : poly)
      for (int i = 0; i < n; ++i) {
        auto f = e;
        f[static_cast<std::size_t>(i)] += r;
        next[f] += c;
      }
    poly = std::move(next);
  }
  std::vector<int> target(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    target[static_cast<std::size_t>(i)] =
        delta[static_cast<std::size_t>(i)] + (i < lambda.length() ? lambda[static_cast<std::size_t>(i)] : 0);
  auto it = poly.find(target);
  return it == poly.end() ? mpz_class(0) : mpz_class(it->second);
}

// Sum of squared multiplicities over all tuples nu_j |- m l_j.
mpz_class squared_multiplicities(const ParticleSpec& spec, int m) {
  std::vector<std::vector<Partition>> choices;
  for (int j = 0; j < spec.k(); ++j) choices.push_back(partitions_of(m * spec.l(j)));
  std::vector<std::size_t> idx(choices.size(), 0);
  std::vector<Partition> nus(choices.size());
  mpz_class total = 0;
  while (true) {
    for (std::size_t j = 0; j < choices.size(); ++j) nus[j] = choices[j][idx[j]];
    const mpz_class c = multiplicity(spec, m, nus);
    total += c * c;
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return total;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

std::vector<GraphClass> graphs_up_to(const ParticleSpec& spec, int top) {
  std::vector<GraphClass> out;
  for (int m = 1; m <= top; ++m)
    for (auto& g : enumerate_graphs(spec.line_sums(), m)) out.push_back(std::move(g));
  return out;
}

void numeric_checks(Runner& r, unsigned workers) {
  r.run("numeric-multiplicativity", 9, true, [&] {
    double worst = 0;
    int pairs = 0;
    const std::vector<std::pair<ParticleSpec, std::vector<int>>> cases = {
        {bose(2), {4}}, {fermi(2), {4}}, {fermi(3), {4}}, {mixed_spec(bose(2)), {3, 3}}};
    std::uint64_t seed = 11;
    for (const auto& [spec, dims] : cases) {
      const auto gs = graphs_up_to(spec, 2);
      const auto psi = random_state(spec, dims, seed++);
      for (std::size_t a = 0; a < gs.size(); ++a)
        for (std::size_t b = a; b < gs.size(); ++b) {
          worst = std::max(worst, product_check(gs[a], gs[b], psi));
          ++pairs;
        }
    }
    return Outcome{worst < 1e-8, std::to_string(pairs) + " pairs, max residual below 1e-8: " +
                                     (worst < 1e-8 ? "yes" : "no, " + fmt(worst))};
  });

  r.run("numeric-vanishing", 9, true, [&] {
    Tally t;
    CosetOptions co;
    co.workers = workers;
    const auto spec = fermi(3);
    for (int m = 3; m <= 4; ++m) {
      for (const auto& e : mackey_table(spec, m, co)) {
        if (e.signs == StabilizerSigns::mixed) {
          double worst = 0;
          for (std::uint64_t s = 0; s < 20; ++s)
            worst = std::max(worst, std::abs(evaluate(e.graph, random_state(spec, {5}, 100 + s))));
          t.expect(cell(spec.str(), m) + " " + e.graph.id() + " mixed", worst < 1e-8, "max " + fmt(worst));
        } else {
          double best = 0;
          for (std::uint64_t s = 0; s < 3; ++s)
            best = std::max(best, std::abs(evaluate_raw(e.graph, random_state(spec, {3 * m}, 200 + s))));
          t.expect(cell(spec.str(), m) + " " + e.graph.id() + " nonvanishing", best > 1e-6, "max " + fmt(best));
        }
      }
    }
    return t.outcome();
  });

  r.run("numeric-lu-invariance", 9, true, [&] {
    double worst = 0;
    int values = 0;
    const std::vector<std::tuple<ParticleSpec, std::vector<int>, int>> cases = {
        {bose(2), {3}, 3}, {fermi(3), {4}, 3}, {ParticleSpec({Partition::row(2), Partition::column(2)}), {2, 3}, 2}};
    std::uint64_t seed = 31;
    for (const auto& [spec, dims, top] : cases) {
      const auto psi = random_state(spec, dims, seed++);
      std::vector<Eigen::MatrixXcd> us;
      for (int n : dims) us.push_back(random_unitary(n, seed++));
      const auto moved = apply_local_unitaries(psi, us);
      for (const auto& g : graphs_up_to(spec, top)) {
        const Complex a = evaluate(g, psi);
        const Complex b = evaluate(g, moved);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
        ++values;
      }
    }
    return Outcome{worst < 1e-9, std::to_string(values) + " values, max relative drift below 1e-9: " +
                                     (worst < 1e-9 ? "yes" : "no, " + fmt(worst))};
  });

  r.run("numeric-rank-probe", 9, true, [&] {
    Tally t;
    const std::vector<std::pair<ParticleSpec, int>> cases = {{bose(2), 3}, {fermi(2), 3}, {bose(3), 2}, {fermi(3), 2}};
    for (const auto& [spec, top] : cases)
      for (int m = 1; m <= top; ++m) {
        const int l = spec.l(0);
        const int samples = static_cast<int>(enumerate_graphs({l}, m).size()) + 5;
        t.expect(cell(spec.str(), m) + " n=" + std::to_string(m * l),
                 mpz_class(rank_probe(spec, m, {m * l}, samples, 7)), stable_dim(spec, m, workers));
      }
    return t.outcome();
  });

  r.run("numeric-embedding", 9, true, [&] {
    double worst = 0;
    int values = 0;
    const std::vector<std::tuple<ParticleSpec, std::vector<int>, std::vector<int>, int>> cases = {
        {bose(2), {3}, {5}, 3},
        {fermi(3), {4}, {6}, 3},
        {ParticleSpec({Partition::row(2), Partition::column(2)}), {2, 2}, {3, 4}, 2}};
    std::uint64_t seed = 51;
    for (const auto& [spec, small, large, top] : cases) {
      const auto psi = random_state(spec, small, seed++);
      const auto big = embed_state(psi, large);
      for (const auto& g : graphs_up_to(spec, top)) {
        worst = std::max(worst, std::abs(evaluate(g, psi) - evaluate(g, big)));
        ++values;
      }
    }
    return Outcome{worst < 1e-12, std::to_string(values) + " values, max difference below 1e-12: " +
                                      (worst < 1e-12 ? "yes" : "no, " + fmt(worst))};
  });
}

void quick_checks(Runner& r, unsigned workers) {
  r.run("boson-dims-quick", 1, true, [&] { return dims_table(kBoson, bose, quick_cell, workers); });
  r.run("fermion-dims-quick", 2, true, [&] { return dims_table(kFermion, fermi, quick_cell, workers); });
}

void full_checks(Runner& r, unsigned workers) {
  r.run("boson-dims", 1, true, [&] { return dims_table(kBoson, bose, gating_cell, workers); });
  r.run("boson-dims-stretch", 1, false, [&] { return dims_table(kBoson, bose, stretch_cell, workers); });
  r.run("fermion-dims", 2, true, [&] { return dims_table(kFermion, fermi, gating_cell, workers); });
  r.run("fermion-dims-stretch", 2, false, [&] { return dims_table(kFermion, fermi, stretch_cell, workers); });

  r.run("boson-free-gens", 3, true, [&] { return free_table(kBosonFree, bose, gating_cell, workers); });
  r.run("fermion-free-gens", 3, true, [&] { return free_table(kFermionFree, fermi, gating_cell, workers); });
  r.run("free-gens-stretch", 3, false, [&] {
    auto a = free_table(kBosonFree, bose, stretch_cell, workers);
    auto b = free_table(kFermionFree, fermi, stretch_cell, workers);
    return Outcome{a.first && b.first, "bosons: " + a.second + "; fermions: " + b.second};
  });

  auto mixed_bose = [](int l) { return mixed_spec(bose(l)); };
  auto mixed_fermi = [](int l) { return mixed_spec(fermi(l)); };
  r.run("mixed-dims", 4, true, [&] {
    auto a = dims_table(kMixed, mixed_bose, mixed_gating_cell, workers);
    auto b = dims_table(kMixed, mixed_fermi, mixed_gating_cell, workers);
    return Outcome{a.first && b.first, "bosons: " + a.second + "; fermions: " + b.second};
  });
  r.run("mixed-free-gens", 4, true, [&] {
    auto a = free_table(kMixedFree, mixed_bose, mixed_gating_cell, workers);
    auto b = free_table(kMixedFree, mixed_fermi, mixed_gating_cell, workers);
    return Outcome{a.first && b.first, "bosons: " + a.second + "; fermions: " + b.second};
  });
  r.run("mixed-stretch", 4, false, [&] {
    auto a = dims_table(kMixed, mixed_bose, mixed_stretch_cell, workers);
    auto b = free_table(kMixedFree, mixed_bose, mixed_stretch_cell, workers);
    return Outcome{a.first && b.first, "dims: " + a.second + "; free: " + b.second};
  });

  auto hook = ParticleSpec({Partition{2, 1}});
  auto hook_seq = [&](const ParticleSpec& spec, const long* want, int lo, int hi) {
    Tally t;
    const auto d = stable_dims(spec, hi, workers);
    for (int m = lo; m <= hi; ++m)
      t.expect(cell(spec.str(), m), d[static_cast<std::size_t>(m - 1)], mpz_class(want[m - 1]));
    return t.outcome();
  };
  r.run("hook-sequence", 5, true, [&] {
    auto a = hook_seq(hook, kHook, 1, 4);
    auto b = hook_seq(mixed_spec(hook), kHookMixed, 1, 3);
    return Outcome{a.first && b.first, "pure: " + a.second + "; mixed: " + b.second};
  });
  r.run("hook-sequence-stretch", 5, false, [&] {
    auto a = hook_seq(hook, kHook, 5, 7);
    auto b = hook_seq(mixed_spec(hook), kHookMixed, 4, 5);
    return Outcome{a.first && b.first, "pure: " + a.second + "; mixed: " + b.second};
  });

  r.run("graph-enumeration", 6, true, [&] {
    Tally t;
    const std::vector<std::pair<int, int>> ranges = {{1, 6}, {2, 5}, {3, 4}, {4, 3}};
    for (auto [l, top] : ranges)
      for (int m = 1; m <= top; ++m)
        t.expect(cell(bose(l).str(), m), mpz_class(static_cast<long>(enumerate_graphs({l}, m).size())),
                 stable_dim(bose(l), m, workers));
    const auto g33 = enumerate_graphs({3}, 3);
    long connected = 0;
    for (const auto& g : g33) connected += is_connected(g) ? 1 : 0;
    t.expect("l=3 m=3 classes", mpz_class(static_cast<long>(g33.size())), 5);
    t.expect("l=3 m=3 connected", mpz_class(connected), 3);
    return t.outcome();
  });

  r.run("mackey-fermion-3-3", 7, true, [&] {
    const auto spec = fermi(3);
    CosetOptions co;
    co.workers = workers;
    const auto table = mackey_table(spec, 3, co);
    long mixed = 0;
    for (const auto& e : table) mixed += e.signs == StabilizerSigns::mixed ? 1 : 0;
    Tally t;
    t.expect("cosets", mpz_class(static_cast<long>(table.size())), 5);
    t.expect("mixed cosets", mpz_class(mixed), 1);
    t.expect("mackey_dim", mackey_dim(spec, 3, co), 4);
    t.expect("stable_dim", stable_dim(spec, 3, workers), 4);
    return t.outcome();
  });
  r.run("saturated-specs-unmixed", 7, true, [&] {
    Tally t;
    CosetOptions co;
    co.workers = workers;
    const std::vector<ParticleSpec> specs = {bose(2),
                                             bose(3),
                                             fermi(2),
                                             fermi(4),
                                             mixed_spec(fermi(3)),
                                             ParticleSpec({Partition::column(2), Partition::column(2)}),
                                             ParticleSpec({Partition::column(3), Partition::column(3)}),
                                             ParticleSpec({Partition::row(2), Partition::column(2)})};
    for (const auto& spec : specs) {
      if (!is_saturated(spec)) {
        t.expect(spec.str(), false, "expected a saturated spec");
        continue;
      }
      for (int m = 1; m <= 4; ++m) {
        // Skip cells whose total scan cost (classes x |H_m|) is too large.
        const auto graphs = enumerate_graphs(spec.line_sums(), m);
        if (wreath_order(spec.line_sums(), m).get_d() * static_cast<double>(graphs.size()) > 2e7) break;
        long mixed = 0;
        for (const auto& g : graphs)
          mixed += stabilizer_signs(CosetRep{spec, m, graph_to_perm_tuple(g)}, co) == StabilizerSigns::mixed;
        t.expect(cell(spec.str(), m) + " mixed", mpz_class(mixed), 0);
        t.expect(cell(spec.str(), m) + " count", mpz_class(static_cast<long>(graphs.size())),
                 stable_dim(spec, m, workers));
      }
    }
    return t.outcome();
  });

  r.run("oracle-squared-multiplicities", 8, true, [&] {
    Tally t;
    const std::vector<ParticleSpec> specs = {bose(1),  bose(2),  bose(3),
                                             bose(4),  fermi(2), fermi(3),
                                             fermi(4), ParticleSpec({Partition{2, 1}}),
                                             ParticleSpec({Partition{1}, Partition{1}}),
                                             ParticleSpec({Partition::column(2), Partition{1}})};
    for (const auto& spec : specs) {
      int max_l = 0;
      for (int j = 0; j < spec.k(); ++j) max_l = std::max(max_l, spec.l(j));
      const int top = spec.k() == 1 ? 8 / max_l : std::min(4, 8 / max_l);
      for (int m = 1; m <= top; ++m)
        t.expect(cell(spec.str(), m), stable_dim(spec, m, workers), squared_multiplicities(spec, m));
    }
    return t.outcome();
  });
  r.run("oracle-wreath-induction", 8, true, [&] {
    Tally t;
    std::vector<WreathElement> elems;
    for_each_wreath_element({2}, 2, [&](const WreathElement& w) { elems.push_back(w); });
    for (const auto& lambda : partitions_of(2))
      for (const auto& mu : partitions_of(2)) {
        std::vector<std::pair<Permutation, mpq_class>> sub;
        for (const auto& w : elems) sub.emplace_back(embed(w).front(), wreath_char_value({lambda}, mu, w));
        const auto induced = ch_map(4, brute_force_induce(sub, 4));
        t.expect("ch ind(" + lambda.str() + " wr " + mu.str() + ")", induced == plethysm(schur(mu), schur(lambda)));
      }
    return t.outcome();
  });
  r.run("oracle-schur-orthonormality", 8, true, [&] {
    Tally t;
    for (int n = 1; n <= 6; ++n)
      for (const auto& a : partitions_of(n))
        for (const auto& b : partitions_of(n))
          t.expect("<s" + a.str() + ",s" + b.str() + ">", hall_inner(schur(a), schur(b)) == (a == b ? 1 : 0));
    return t.outcome();
  });
  r.run("oracle-characters", 8, true, [&] {
    Tally t;
    for (int n = 1; n <= 5; ++n)
      for (const auto& lambda : partitions_of(n))
        for (const auto& mu : partitions_of(n))
          t.expect("chi" + lambda.str() + mu.str(), character_value(lambda, mu), frobenius_character(lambda, mu));
    return t.outcome();
  });

  numeric_checks(r, workers);

  r.run("determinism", 10, true, [&] {
    const auto a = run_verify({VerifyLevel::quick, 1}).to_json(false).dump();
    const auto b = run_verify({VerifyLevel::quick, 4}).to_json(false).dump();
    const auto c = run_verify({VerifyLevel::quick, 0}).to_json(false).dump();
    return Outcome{a == b && b == c, a == b && b == c ? "identical quick reports at 1, 4 and default workers"
                                                      : "quick reports differ between worker counts"};
  });
}

}  // namespace

bool VerifyReport::passed() const {
  for (const auto& c : checks)
    if (c.gating && !c.passed) return false;
  return true;
}

nlohmann::json VerifyReport::to_json(bool with_timing) const {
  nlohmann::json j;
  j["level"] = level;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e = {{"name", c.name},     {"criterion", c.criterion}, {"gating", c.gating},
                        {"passed", c.passed}, {"detail", c.detail}};
    if (with_timing) e["runtime_ms"] = c.runtime_ms;
    j["checks"].push_back(std::move(e));
  }
  return j;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  VerifyReport report;
  report.level = opts.level == VerifyLevel::quick ? "quick" : "full";
  Runner r(report.checks);
  if (opts.level == VerifyLevel::quick) {
    quick_checks(r, opts.workers);
  } else {
    full_checks(r, opts.workers);
  }
  return report;
}

}  // namespace luinv
