#include <doctest.h>

#include <cmath>
#include <random>

#include "luinv/cosets.hpp"
#include "luinv/dimensions.hpp"
#include "luinv/errors.hpp"
#include "luinv/invariants.hpp"

using luinv::Complex;
using luinv::GraphClass;
using luinv::Partition;
using luinv::ParticleSpec;
using luinv::StateTensor;

namespace {

ParticleSpec boson(int l) { return ParticleSpec({Partition::row(l)}); }
ParticleSpec fermion(int l) { return ParticleSpec({Partition::column(l)}); }

StateTensor scaled(StateTensor psi, double c) {
  for (auto& x : psi.coeffs) x *= c;
  return psi;
}

// The state of a single boson pair as an n x n symmetric matrix.
Eigen::MatrixXcd as_matrix(const StateTensor& psi) {
  const int n = psi.dims[0];
  Eigen::MatrixXcd m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m(a, b) = psi.coeffs[static_cast<std::size_t>(a * n + b)];
  return m;
}

Eigen::MatrixXcd random_density(int n, int rank, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd a(n, rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = {normal(gen), normal(gen)};
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace

TEST_CASE("symmetrization") {
  std::vector<Complex> raw(4, 0);
  raw[0] = 1;  // e1 (x) e1
  CHECK(luinv::symmetrize(raw, fermion(2), {2}).norm() == 0);
  CHECK(std::abs(luinv::symmetrize(raw, boson(2), {2}).coeffs[0] - Complex(1)) < 1e-15);

  std::fill(raw.begin(), raw.end(), 0);
  raw[1] = 1;  // e1 (x) e2
  const auto f = luinv::symmetrize(raw, fermion(2), {2});
  CHECK(std::abs(f.coeffs[1] - 0.5) < 1e-15);
  CHECK(std::abs(f.coeffs[2] + 0.5) < 1e-15);
  const auto b = luinv::symmetrize(raw, boson(2), {2});
  CHECK(std::abs(b.coeffs[1] - 0.5) < 1e-15);
  CHECK(std::abs(b.coeffs[2] - 0.5) < 1e-15);

  // a projection: applying it twice changes nothing
  const auto psi = luinv::random_state(fermion(3), {4}, 5);
  const auto again = luinv::symmetrize(psi.coeffs, fermion(3), {4});
  for (std::size_t i = 0; i < psi.coeffs.size(); ++i) CHECK(std::abs(again.coeffs[i] - psi.coeffs[i]) < 1e-14);
  CHECK_THROWS_AS(luinv::symmetrize(raw, fermion(2), {3}), luinv::ArgumentError);
}

TEST_CASE("state construction errors") {
  CHECK_THROWS_AS(StateTensor::zeros(ParticleSpec({Partition{2, 1}}), {3}), luinv::UnsupportedSpecError);
  CHECK_THROWS_AS(StateTensor::zeros(boson(2), {3, 3}), luinv::ArgumentError);
  CHECK_THROWS_AS(StateTensor::zeros(boson(2), {0}), luinv::ArgumentError);
  CHECK_THROWS_AS(luinv::reference_separable(fermion(3), {2}), luinv::ArgumentError);
  CHECK(luinv::state_size(ParticleSpec({Partition{2}, Partition{1, 1, 1}}), {3, 4}) == 9 * 64);
}

TEST_CASE("reference and random states") {
  const ParticleSpec s({Partition{2}, Partition{1, 1}});
  const auto ref = luinv::reference_separable(s, {3, 2});
  CHECK(std::abs(ref.norm() - 1) < 1e-14);
  const std::vector<int> i00{0, 0, 0, 1}, i01{0, 0, 1, 0};
  CHECK(std::abs(ref.at(i00) - 1 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(ref.at(i01) + 1 / std::sqrt(2.0)) < 1e-14);

  const auto a = luinv::random_state(s, {3, 3}, 42);
  const auto b = luinv::random_state(s, {3, 3}, 42);
  const auto c = luinv::random_state(s, {3, 3}, 43);
  CHECK(a.coeffs == b.coeffs);
  CHECK(a.coeffs != c.coeffs);
  CHECK(std::abs(a.norm() - 1) < 1e-12);

  const auto u = luinv::random_unitary(4, 9);
  CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-12);
  CHECK(luinv::random_unitary(4, 9) == u);
}

TEST_CASE("embedding pads with zeros") {
  const auto psi = luinv::random_state(boson(2), {2}, 1);
  const auto big = luinv::embed_state(psi, {3});
  CHECK(big.dims == std::vector<int>{3});
  const std::vector<int> i01{0, 1}, i12{1, 2}, i22{2, 2};
  CHECK(big.at(i01) == psi.at(i01));
  CHECK(big.at(i12) == Complex(0));
  CHECK(big.at(i22) == Complex(0));
  CHECK(std::abs(big.norm() - psi.norm()) < 1e-15);
  CHECK_THROWS_AS(luinv::embed_state(big, {2}), luinv::ArgumentError);
}

TEST_CASE("degree one is the squared norm") {
  const ParticleSpec s({Partition{2}, Partition{1}});
  const auto psi = luinv::random_state(s, {3, 2}, 7);
  CHECK(std::abs(luinv::evaluate(luinv::graph_from_id("2|1"), psi) - Complex(1)) < 1e-12);
  CHECK(std::abs(luinv::evaluate(luinv::graph_from_id("2|1"), scaled(psi, 2)) - Complex(4)) < 1e-12);
}

TEST_CASE("the connected boson pair invariant is the purity") {
  const auto g = luinv::graph_from_id("1,1;1,1");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto psi = luinv::random_state(boson(2), {4}, seed);
    const auto m = as_matrix(psi);
    const Eigen::MatrixXcd r = m * m.adjoint();
    const Complex want = (r * r).trace();
    CHECK(std::abs(luinv::evaluate(g, psi) - want) < 1e-12);
    CHECK(std::abs(luinv::evaluate_raw(g, psi) - luinv::evaluate_naive(g, psi)) < 1e-12);
  }
}

TEST_CASE("reference product states evaluate to one") {
  for (const auto& spec : {boson(2), fermion(2), fermion(3), ParticleSpec({Partition{2}, Partition{1, 1}})}) {
    std::vector<int> dims;
    for (int l : spec.line_sums()) dims.push_back(l + 1);
    const auto ref = luinv::reference_separable(spec, dims);
    for (int m = 1; m <= 3; ++m)
      for (const auto& g : luinv::enumerate_graphs(spec.line_sums(), m)) {
        bool nonzero = true;
        for (const auto& c : luinv::components(g)) {
          std::vector<int> small;
          for (int j = 0; j < spec.k(); ++j) small.push_back(spec.statistics(j) == luinv::Statistics::fermion ? spec.l(j) : 1);
          nonzero = nonzero && std::abs(luinv::evaluate_raw(c, luinv::reference_separable(spec, small))) > 1e-9;
        }
        if (nonzero) CHECK(std::abs(luinv::evaluate(g, ref) - Complex(1)) < 1e-10);
      }
  }
}

TEST_CASE("evaluation paths agree") {
  const ParticleSpec s({Partition{2}, Partition{1, 1}});
  const auto psi = luinv::random_state(s, {3, 3}, 11);
  for (int m = 1; m <= 2; ++m)
    for (const auto& g : luinv::enumerate_graphs(s.line_sums(), m)) {
      CAPTURE(g.id());
      CHECK(std::abs(luinv::evaluate_raw(g, psi) - luinv::evaluate_naive(g, psi)) < 1e-12);
      CHECK(std::abs(luinv::evaluate(g, psi) - luinv::evaluate_direct(g, psi)) < 1e-10);
    }
  const auto f = luinv::random_state(fermion(2), {4}, 3);
  for (const auto& g : luinv::enumerate_graphs({2}, 4))
    CHECK(std::abs(luinv::evaluate(g, f) - luinv::evaluate_direct(g, f)) < 1e-10);
}

TEST_CASE("multiplicativity") {
  const auto psi = luinv::random_state(fermion(2), {4}, 21);
  const auto gs = luinv::enumerate_graphs({2}, 2);
  for (const auto& g : gs)
    for (const auto& h : gs) CHECK(luinv::product_check(g, h, psi) < 1e-10);
}

TEST_CASE("transposed graphs give complex conjugates") {
  const ParticleSpec s({Partition{2}, Partition{1}});
  const auto psi = luinv::random_state(s, {3, 3}, 5);
  for (const auto& g : luinv::enumerate_graphs(s.line_sums(), 3))
    CHECK(std::abs(luinv::evaluate(luinv::transpose(g), psi) - std::conj(luinv::evaluate(g, psi))) < 1e-10);
}

TEST_CASE("local unitary invariance") {
  const ParticleSpec s({Partition{2}, Partition{1, 1}});
  const auto psi = luinv::random_state(s, {3, 3}, 13);
  const auto moved = luinv::apply_local_unitaries(psi, {luinv::random_unitary(3, 1), luinv::random_unitary(3, 2)});
  CHECK(std::abs(moved.norm() - 1) < 1e-12);
  for (int m = 1; m <= 3; ++m)
    for (const auto& g : luinv::enumerate_graphs(s.line_sums(), m))
      CHECK(std::abs(luinv::evaluate(g, moved) - luinv::evaluate(g, psi)) < 1e-9);
  CHECK_THROWS_AS(luinv::apply_local_unitaries(psi, {luinv::random_unitary(3, 1)}), luinv::ArgumentError);
}

TEST_CASE("embedding does not change values") {
  const auto psi = luinv::random_state(boson(3), {2}, 8);
  const auto big = luinv::embed_state(psi, {4});
  for (const auto& g : luinv::enumerate_graphs({3}, 2))
    CHECK(std::abs(luinv::evaluate(g, big) - luinv::evaluate(g, psi)) < 1e-12);
}

TEST_CASE("the mixed three-fermion coset vanishes") {
  const auto g = luinv::graph_from_id("1,1,1;1,1,1;1,1,1");
  CHECK(luinv::numerically_vanishing(g, fermion(3)));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto psi = luinv::random_state(fermion(3), {5}, seed);
    CHECK(std::abs(luinv::evaluate_raw(g, psi)) < 1e-8);
  }
  for (const auto& h : luinv::enumerate_graphs({3}, 3))
    if (h != g) CHECK_FALSE(luinv::numerically_vanishing(h, fermion(3)));
}

TEST_CASE("rank probes") {
  CHECK(luinv::rank_probe(boson(2), 2, {4}, 6, 1) == 2);
  CHECK(luinv::rank_probe(boson(2), 2, {1}, 6, 1) == 1);
  CHECK(luinv::rank_probe(boson(2), 3, {6}, 8, 1) == 3);
  CHECK(luinv::rank_probe(fermion(3), 2, {6}, 6, 1) == 2);
}

TEST_CASE("spec and budget mismatches") {
  const auto psi = luinv::random_state(boson(2), {3}, 1);
  CHECK_THROWS_AS(luinv::evaluate(luinv::graph_from_id("3"), psi), luinv::ArgumentError);
  luinv::EvalOptions tiny;
  tiny.budget = 1;
  CHECK_THROWS_AS(luinv::evaluate_raw(luinv::graph_from_id("1,1;1,1"), psi, tiny), luinv::BudgetError);
}

TEST_CASE("density operators") {
  const auto rho = luinv::DensityTensor::from_matrix(boson(1), {3}, 2.0 * random_density(3, 2, 1));
  CHECK(std::abs(rho.matrix.trace() - Complex(1)) < 1e-12);
  CHECK(rho.rank() == 2);

  Eigen::MatrixXcd not_hermitian = Eigen::MatrixXcd::Zero(2, 2);
  not_hermitian(0, 1) = 1;
  CHECK_THROWS_AS(luinv::DensityTensor::from_matrix(boson(1), {2}, not_hermitian), luinv::ArgumentError);
  Eigen::MatrixXcd negative = Eigen::MatrixXcd::Identity(2, 2);
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(luinv::DensityTensor::from_matrix(boson(1), {2}, negative), luinv::ArgumentError);
  // e1 (x) e1 has no antisymmetric part
  Eigen::MatrixXcd e11 = Eigen::MatrixXcd::Zero(4, 4);
  e11(0, 0) = 1;
  CHECK_THROWS_AS(luinv::DensityTensor::from_matrix(fermion(2), {2}, e11), luinv::ArgumentError);
}

TEST_CASE("purification") {
  const auto psi = luinv::random_state(fermion(2), {3}, 4);
  const auto pure = luinv::DensityTensor::pure(psi);
  CHECK(pure.rank() == 1);
  const auto p = luinv::purify(pure, 1);
  CHECK(p.spec == luinv::mixed_spec(fermion(2)));
  // psi (x) e1 up to a global phase
  Complex overlap = 0;
  for (std::size_t i = 0; i < psi.coeffs.size(); ++i) overlap += std::conj(psi.coeffs[i]) * p.coeffs[i];
  CHECK(std::abs(std::abs(overlap) - 1) < 1e-12);

  const auto rho = luinv::DensityTensor::from_matrix(fermion(2), {3},
                                                     luinv::DensityTensor::pure(luinv::random_state(fermion(2), {3}, 1)).matrix +
                                                         luinv::DensityTensor::pure(luinv::random_state(fermion(2), {3}, 2)).matrix);
  CHECK(rho.rank() == 2);
  for (int n_env : {2, 4}) {
    const auto back = luinv::trace_out_last(luinv::purify(rho, n_env));
    CHECK((back.matrix - rho.matrix).norm() < 1e-12);
  }
  CHECK_THROWS_AS(luinv::purify(rho, 1), luinv::ArgumentError);
}

TEST_CASE("mixed-state invariants") {
  const auto rho = luinv::DensityTensor::from_matrix(boson(1), {4}, random_density(4, 3, 6));
  // colour 1 the system, colour 2 the environment; a single 2-colour cycle gives tr(rho^m)
  CHECK(std::abs(luinv::evaluate_mixed(luinv::graph_from_id("1|1"), rho) - Complex(1)) < 1e-12);
  Eigen::MatrixXcd power = rho.matrix;
  for (int m = 2; m <= 4; ++m) {
    power = power * rho.matrix;
    luinv::IntMatrix id(m), shift(m);
    for (int i = 0; i < m; ++i) {
      id(i, i) = 1;
      shift(i, (i + 1) % m) = 1;
    }
    const auto g = luinv::canonicalize({id, shift});
    CHECK(std::abs(luinv::evaluate_mixed(g, rho) - power.trace()) < 1e-12);
  }

  // a degree-3 graph on two fermions plus environment, checked against
  // direct summation on two different dilations
  const auto r2 = luinv::DensityTensor::from_matrix(fermion(2), {3},
                                                    luinv::DensityTensor::pure(luinv::random_state(fermion(2), {3}, 5)).matrix +
                                                        0.5 * luinv::DensityTensor::pure(luinv::random_state(fermion(2), {3}, 6)).matrix);
  const auto g = luinv::canonicalize({luinv::IntMatrix{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}},
                                      luinv::IntMatrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}});
  REQUIRE(luinv::is_connected(g));
  const auto value = luinv::evaluate_mixed(g, r2);
  const auto wide = luinv::purify(r2, 4);
  const double n = luinv::normalization_constant(g, wide.spec);
  CHECK(std::abs(value - luinv::evaluate_naive(g, wide) / n) < 1e-12);
  CHECK(std::abs(value - luinv::evaluate(g, wide)) < 1e-12);
  CHECK_THROWS_AS(luinv::evaluate_mixed(luinv::graph_from_id("2"), r2), luinv::ArgumentError);
}
