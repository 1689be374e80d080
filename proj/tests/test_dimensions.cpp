#include <doctest.h>

#include "luinv/dimensions.hpp"
#include "luinv/errors.hpp"
#include "oracles.hpp"

using luinv::Partition;
using luinv::ParticleSpec;

namespace {

ParticleSpec boson(int l) { return ParticleSpec({Partition::row(l)}); }
ParticleSpec fermion(int l) { return ParticleSpec({Partition::column(l)}); }

std::vector<long> as_long(const std::vector<mpz_class>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

}  // namespace

TEST_CASE("particle spec basics") {
  CHECK_THROWS_AS(ParticleSpec(std::vector<Partition>{}), luinv::ArgumentError);
  CHECK_THROWS_AS(ParticleSpec({Partition{}}), luinv::ArgumentError);
  const ParticleSpec s({Partition{3}, Partition{1, 1}, Partition{2, 1}, Partition{1}});
  CHECK(s.k() == 4);
  CHECK(s.line_sums() == std::vector<int>{3, 2, 3, 1});
  CHECK(s.statistics(0) == luinv::Statistics::boson);
  CHECK(s.statistics(1) == luinv::Statistics::fermion);
  CHECK(s.statistics(2) == luinv::Statistics::general);
  CHECK(s.statistics(3) == luinv::Statistics::boson);
  CHECK_FALSE(s.bose_fermi_only());
  CHECK_THROWS_AS(s.require_bose_fermi("test"), luinv::UnsupportedSpecError);
  CHECK(s.str() == "[(3),(1,1),(2,1),(1)]");
}

TEST_CASE("small boson and fermion dimensions") {
  // single-row and single-column columns for l <= 3, m <= 5
  const std::vector<std::vector<long>> b{{1, 1, 1, 1, 1}, {1, 2, 3, 5, 7}, {1, 2, 5, 12, 31}};
  const std::vector<std::vector<long>> f{{1, 1, 1, 1, 1}, {1, 2, 3, 5, 7}, {1, 2, 4, 10, 23}};
  for (int l = 1; l <= 3; ++l) {
    CHECK(as_long(luinv::stable_dims(boson(l), 5)) == b[static_cast<std::size_t>(l - 1)]);
    CHECK(as_long(luinv::stable_dims(fermion(l), 5)) == f[static_cast<std::size_t>(l - 1)]);
  }
}

TEST_CASE("stable dimension equals the sum of squared multiplicities") {
  // c_nu = <s_nu, h_m[s_lambda]> from the monomial oracle; d_m = sum c_nu^2
  for (int l = 1; l <= 3; ++l)
    for (int m = 1; m * l <= 6; ++m)
      for (bool column : {false, true}) {
        const int n = m * l;
        const auto poly = oracle::schur_plethysm({m}, l, column, n);
        long total = 0;
        for (const auto& nu : luinv::partitions_of(m * l)) {
          const long long c = oracle::schur_coefficient(poly, nu.parts(), n);
          total += static_cast<long>(c * c);
        }
        CAPTURE(l);
        CAPTURE(m);
        CAPTURE(column);
        CHECK(luinv::stable_dim(column ? fermion(l) : boson(l), m) == total);
      }
}

TEST_CASE("two-colour dimensions against multiplicities") {
  // d_m = sum over (nu_1, nu_2) of multiplicity^2
  const ParticleSpec s({Partition{2}, Partition{1, 1}});
  for (int m = 1; m <= 3; ++m) {
    mpz_class total = 0;
    for (const auto& a : luinv::partitions_of(2 * m))
      for (const auto& b : luinv::partitions_of(2 * m)) {
        const std::vector<Partition> nus{a, b};
        const auto c = luinv::multiplicity(s, m, nus);
        total += c * c;
      }
    CHECK(luinv::stable_dim(s, m) == total);
  }
}

TEST_CASE("kronecker and plethysm coefficients") {
  const std::vector<Partition> three{{2, 1}, {2, 1}, {2, 1}};
  CHECK(luinv::kronecker(three) == 1);
  const std::vector<Partition> two{{2, 1}, {2, 1}};
  CHECK(luinv::kronecker(Partition{2, 1}, two) == 1);
  CHECK(luinv::kronecker(Partition{3}, two) == 1);
  CHECK(luinv::kronecker(Partition{1, 1, 1}, two) == 1);
  const std::vector<Partition> mixed{{3}, {1, 1, 1}};
  CHECK(luinv::kronecker(mixed) == 0);
  CHECK(luinv::plethysm_coeff(Partition{2}, Partition{2}, Partition{4}) == 1);
  CHECK(luinv::plethysm_coeff(Partition{2}, Partition{2}, Partition{2, 2}) == 1);
  CHECK(luinv::plethysm_coeff(Partition{2}, Partition{2}, Partition{3, 1}) == 0);
  CHECK(luinv::plethysm_coeff(Partition{2}, Partition{1, 1}, Partition{3, 1}) == 1);
  CHECK(luinv::plethysm_coeff(Partition{2}, Partition{3}, Partition{4, 2}) == 1);
  CHECK(luinv::plethysm_coeff(Partition{2}, Partition{3}, Partition{5, 1}) == 0);
}

TEST_CASE("result does not depend on the worker count") {
  const ParticleSpec s({Partition{2}, Partition{1, 1}});
  for (int m = 1; m <= 4; ++m) {
    const auto one = luinv::stable_dim(s, m, 1);
    CHECK(luinv::stable_dim(s, m, 3) == one);
    CHECK(luinv::stable_dim(s, m, 0) == one);
  }
}

TEST_CASE("saturation") {
  CHECK(luinv::is_saturated(boson(3)));
  CHECK(luinv::is_saturated(fermion(2)));
  CHECK_FALSE(luinv::is_saturated(fermion(3)));
  CHECK(luinv::is_saturated(ParticleSpec({Partition::column(3), Partition{1}})));
  CHECK(luinv::is_saturated(ParticleSpec({Partition::column(3), Partition::column(3)})));
  CHECK_FALSE(luinv::is_saturated(ParticleSpec({Partition::column(3), Partition::row(2)})));
  CHECK_THROWS_AS(luinv::is_saturated(ParticleSpec({Partition{2, 1}})), luinv::UnsupportedSpecError);
}

TEST_CASE("free generator counts") {
  CHECK(as_long(luinv::free_gen_counts(boson(3), 5)) == std::vector<long>{1, 1, 3, 6, 16});
  CHECK(as_long(luinv::free_gen_counts(fermion(3), 5)) == std::vector<long>{1, 1, 2, 5, 11});
  CHECK(as_long(luinv::free_gen_counts(boson(1), 4)) == std::vector<long>{1, 0, 0, 0});
  CHECK_THROWS_AS(luinv::free_gen_counts(ParticleSpec({Partition{2, 1}}), 3), luinv::UnsupportedSpecError);
}

TEST_CASE("general partitions and mixed specs") {
  // hook shape (2,1)
  CHECK(as_long(luinv::stable_dims(ParticleSpec({Partition{2, 1}}), 3)) == std::vector<long>{1, 4, 18});
  const auto mixed = luinv::mixed_spec(fermion(2));
  CHECK(mixed == ParticleSpec({Partition::column(2), Partition{1}}));
  CHECK(as_long(luinv::stable_dims(mixed, 4)) == std::vector<long>{1, 3, 8, 25});
}
