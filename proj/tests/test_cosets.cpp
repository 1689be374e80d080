#include <doctest.h>

#include <random>
#include <set>

#include "luinv/cosets.hpp"
#include "luinv/dimensions.hpp"
#include "luinv/errors.hpp"
#include "oracles.hpp"

using luinv::Partition;
using luinv::ParticleSpec;
using luinv::Permutation;
using luinv::WreathElement;

namespace {

WreathElement random_wreath(const std::vector<int>& ls, int m, std::mt19937_64& gen) {
  WreathElement w;
  for (int l : ls) {
    std::vector<Permutation> col;
    for (int i = 0; i < m; ++i) col.push_back(oracle::random_permutation(l, gen));
    w.inner.push_back(col);
  }
  w.outer = oracle::random_permutation(m, gen);
  return w;
}

std::vector<Permutation> compose(const std::vector<Permutation>& a, const std::vector<Permutation>& b) {
  std::vector<Permutation> out;
  for (std::size_t j = 0; j < a.size(); ++j) out.push_back(a[j] * b[j]);
  return out;
}

ParticleSpec fermion(int l) { return ParticleSpec({Partition::column(l)}); }
ParticleSpec boson(int l) { return ParticleSpec({Partition::row(l)}); }

}  // namespace

TEST_CASE("embedding of a block swap") {
  WreathElement w = WreathElement::identity({2}, 2);
  w.outer = Permutation(std::vector<int>{1, 0});
  const auto e = luinv::embed(w);
  REQUIRE(e.size() == 1);
  CHECK(e[0] == Permutation::from_cycles(4, {{1, 3}, {2, 4}}));
  CHECK(e[0].cycle_str() == "(1 3)(2 4)");

  // an inner transposition lands on the destination block
  w.inner[0][0] = Permutation(std::vector<int>{1, 0});
  CHECK(luinv::embed(w)[0] == Permutation::from_cycles(4, {{1, 3, 2, 4}}));
}

TEST_CASE("embedding is a homomorphism") {
  std::mt19937_64 gen(5);
  const std::vector<int> ls{2, 3};
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_wreath(ls, 3, gen);
    const auto b = random_wreath(ls, 3, gen);
    CHECK(luinv::embed(a * b) == compose(luinv::embed(a), luinv::embed(b)));
    CHECK(a * WreathElement::identity(ls, 3) == a);
  }
  CHECK_THROWS_AS(WreathElement::identity({2}, 2) * WreathElement::identity({2}, 3), luinv::ArgumentError);
}

TEST_CASE("decompose inverts embed") {
  std::mt19937_64 gen(17);
  const std::vector<int> ls{1, 3, 2};
  for (int trial = 0; trial < 1000; ++trial) {
    const auto w = random_wreath(ls, 4, gen);
    const auto back = luinv::decompose(luinv::embed(w), ls, 4);
    REQUIRE(back.has_value());
    CHECK(*back == w);
  }
  // a transposition across blocks does not preserve blocks
  CHECK_FALSE(luinv::decompose({Permutation::from_cycles(4, {{2, 3}})}, {2}, 2).has_value());
  // two colours moving blocks differently
  const auto swap = Permutation::from_cycles(2, {{1, 2}});
  CHECK_FALSE(luinv::decompose({swap, Permutation(2)}, {1, 1}, 2).has_value());
}

TEST_CASE("wreath order and element enumeration") {
  CHECK(luinv::wreath_order({3}, 3) == 1296);
  CHECK(luinv::wreath_order({2, 3}, 2) == 288);
  std::set<std::vector<Permutation>> seen;
  luinv::for_each_wreath_element({2, 3}, 2, [&](const WreathElement& w) { seen.insert(luinv::embed(w)); });
  CHECK(seen.size() == 288);
}

TEST_CASE("sign character") {
  const ParticleSpec s({Partition::column(2), Partition::row(2)});
  auto w = WreathElement::identity({2, 2}, 2);
  CHECK(luinv::sign_char(w, s) == 1);
  w.inner[1][0] = Permutation(std::vector<int>{1, 0});
  CHECK(luinv::sign_char(w, s) == 1);
  w.inner[0][1] = Permutation(std::vector<int>{1, 0});
  CHECK(luinv::sign_char(w, s) == -1);
  w.outer = Permutation(std::vector<int>{1, 0});
  CHECK(luinv::sign_char(w, s) == -1);

  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_wreath({2, 2}, 3, gen);
    const auto b = random_wreath({2, 2}, 3, gen);
    CHECK(luinv::sign_char(a * b, s) == luinv::sign_char(a, s) * luinv::sign_char(b, s));
  }
}

TEST_CASE("coset representatives are validated") {
  luinv::CosetRep bad{fermion(2), 2, {Permutation(3)}};
  CHECK_THROWS_AS(bad.validate(), luinv::ArgumentError);
  luinv::CosetRep also_bad{fermion(2), 2, {}};
  CHECK_THROWS_AS(also_bad.validate(), luinv::ArgumentError);
}

TEST_CASE("three fermions at degree three") {
  const auto table = luinv::mackey_table(fermion(3), 3);
  REQUIRE(table.size() == 5);
  int mixed = 0;
  for (const auto& e : table)
    if (e.signs == luinv::StabilizerSigns::mixed) {
      ++mixed;
      CHECK(e.graph.id() == "1,1,1;1,1,1;1,1,1");
    }
  CHECK(mixed == 1);
  CHECK(luinv::mackey_dim(fermion(3), 3) == 4);
  CHECK(luinv::stable_dim(fermion(3), 3) == 4);
  CHECK(luinv::stabilizer_signs({fermion(3), 3, {Permutation(9)}}) == luinv::StabilizerSigns::all_positive);
}

TEST_CASE("mackey counts equal stable dimensions") {
  for (int m = 1; m <= 5; ++m) CHECK(luinv::mackey_dim(fermion(2), m) == oracle::partition_count(m));
  for (int m = 1; m <= 4; ++m) {
    CHECK(luinv::mackey_dim(fermion(3), m) == luinv::stable_dim(fermion(3), m));
    CHECK(luinv::mackey_dim(boson(3), m) == luinv::stable_dim(boson(3), m));
  }
  const ParticleSpec two({Partition::column(2), Partition::column(2)});
  for (int m = 1; m <= 3; ++m) CHECK(luinv::mackey_dim(two, m) == luinv::stable_dim(two, m));
}

TEST_CASE("saturated specs have no mixed cosets") {
  for (const auto& spec : {fermion(2), ParticleSpec({Partition::column(3), Partition{1}}),
                           ParticleSpec({Partition::column(3), Partition::column(3)}), boson(3)}) {
    REQUIRE(luinv::is_saturated(spec));
    for (int m = 1; m <= 2; ++m)
      for (const auto& e : luinv::mackey_table(spec, m)) CHECK(e.signs == luinv::StabilizerSigns::all_positive);
  }
}

TEST_CASE("stabilizer signs are constant on double cosets") {
  std::mt19937_64 gen(23);
  const auto spec = fermion(3);
  for (const auto& e : luinv::mackey_table(spec, 3)) {
    const auto s = luinv::graph_to_perm_tuple(e.graph);
    for (int trial = 0; trial < 3; ++trial) {
      const auto a = luinv::embed(random_wreath({3}, 3, gen));
      const auto b = luinv::embed(random_wreath({3}, 3, gen));
      const auto t = compose(compose(a, s), b);
      CHECK(luinv::stabilizer_signs({spec, 3, t}) == e.signs);
      CHECK(luinv::perm_tuple_to_graph(t, {3}, 3) == e.graph);
    }
  }
}

TEST_CASE("stabilizer budget") {
  CHECK_THROWS_AS(luinv::stabilizer_signs({fermion(5), 3, {Permutation(15)}}), luinv::BudgetError);
  luinv::CosetOptions tiny;
  tiny.budget = 10;
  CHECK_THROWS_AS(luinv::stabilizer_signs({fermion(3), 2, {Permutation(6)}}, tiny), luinv::BudgetError);
  // bosons never need the scan
  CHECK(luinv::stabilizer_signs({boson(5), 3, {Permutation(15)}}) == luinv::StabilizerSigns::all_positive);
}

TEST_CASE("relative signs") {
  std::mt19937_64 gen(31);
  const ParticleSpec spec({Partition::column(2), Partition::column(3)});
  const std::vector<int> ls{2, 3};
  for (const auto& g : luinv::enumerate_graphs(ls, 2)) {
    const auto s = luinv::graph_to_perm_tuple(g);
    const bool positive = luinv::stabilizer_signs({spec, 2, s}) == luinv::StabilizerSigns::all_positive;
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_wreath(ls, 2, gen);
      const auto b = random_wreath(ls, 2, gen);
      const auto t = compose(compose(luinv::embed(a), s), luinv::embed(b));
      const auto r = luinv::relative_sign(spec, 2, s, t);
      REQUIRE(r.has_value());
      if (positive) CHECK(*r == luinv::sign_char(a, spec) * luinv::sign_char(b, spec));
    }
  }
  const auto gs = luinv::enumerate_graphs(ls, 2);
  REQUIRE(gs.size() >= 2);
  CHECK_FALSE(luinv::relative_sign(spec, 2, luinv::graph_to_perm_tuple(gs[0]), luinv::graph_to_perm_tuple(gs[1])));
}

TEST_CASE("wreath characters: one-dimensional case") {
  // sgn wr sgn on S_2 wr S_2 is the product of all inner signs times sgn(outer)
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = random_wreath({2}, 2, gen);
    const int want = w.inner[0][0].sign() * w.inner[0][1].sign() * w.outer.sign();
    CHECK(luinv::wreath_char_value({Partition{1, 1}}, Partition{1, 1}, w) == want);
  }
}

TEST_CASE("wreath characters are irreducible class functions") {
  // <chi, chi>_H = 1 and chi(x w x^-1) = chi(w)
  const std::vector<int> ls{3};
  for (const auto& gamma : luinv::partitions_of(3))
    for (const auto& theta : luinv::partitions_of(2)) {
      mpq_class norm = 0;
      luinv::for_each_wreath_element(ls, 2, [&](const WreathElement& w) {
        const auto v = luinv::wreath_char_value({gamma}, theta, w);
        norm += v * v;
      });
      norm /= mpq_class(luinv::wreath_order(ls, 2));
      CHECK(norm == 1);
    }
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = random_wreath(ls, 3, gen);
    const auto x = random_wreath(ls, 3, gen);
    const auto ex = luinv::embed(x);
    const auto inv = luinv::decompose({ex[0].inverse()}, ls, 3);
    REQUIRE(inv.has_value());
    CHECK(luinv::wreath_char_value({Partition{2, 1}}, Partition{2, 1}, x * w * *inv) ==
          luinv::wreath_char_value({Partition{2, 1}}, Partition{2, 1}, w));
  }
}

TEST_CASE("induced wreath characters give plethysms") {
  for (const auto& lambda : luinv::partitions_of(2))
    for (const auto& mu : luinv::partitions_of(2)) {
      std::vector<std::pair<Permutation, mpq_class>> sub;
      luinv::for_each_wreath_element({2}, 2, [&](const WreathElement& w) {
        sub.emplace_back(luinv::embed(w)[0], luinv::wreath_char_value({lambda}, mu, w));
      });
      const auto induced = luinv::brute_force_induce(sub, 4);
      const auto pleth = luinv::plethysm(luinv::schur(mu), luinv::schur(lambda));
      CHECK(luinv::ch_map(4, induced) == pleth);
      // Frobenius reciprocity, computed directly on the subgroup
      for (const auto& nu : luinv::partitions_of(4)) {
        mpq_class r = 0;
        for (const auto& [p, v] : sub) r += v * mpq_class(luinv::character_value(nu, p.cycle_type()));
        r /= mpq_class(static_cast<long>(sub.size()));
        CHECK(r == luinv::hall_inner(pleth, luinv::schur(nu)));
      }
    }
  CHECK_THROWS_AS(luinv::brute_force_induce({{Permutation(9), 1}}, 9), luinv::ArgumentError);
  CHECK_THROWS_AS(luinv::brute_force_induce({}, 3), luinv::ArgumentError);
  CHECK_THROWS_AS(luinv::wreath_char_value({Partition{2}}, Partition{3}, WreathElement::identity({2}, 2)),
                  luinv::ArgumentError);
}
