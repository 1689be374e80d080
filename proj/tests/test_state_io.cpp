#include <doctest.h>

#include "luinv/errors.hpp"
#include "luinv/state_io.hpp"

using luinv::Partition;
using luinv::ParticleSpec;

TEST_CASE("spec strings") {
  CHECK(luinv::parse_spec("b3") == ParticleSpec({Partition{3}}));
  CHECK(luinv::parse_spec("f4") == ParticleSpec({Partition{1, 1, 1, 1}}));
  CHECK(luinv::parse_spec("p2,1") == ParticleSpec({Partition{2, 1}}));
  CHECK(luinv::parse_spec("b2,f2") == ParticleSpec({Partition{2}, Partition{1, 1}}));
  CHECK(luinv::parse_spec("p3,2,2,f2") == ParticleSpec({Partition{3, 2, 2}, Partition{1, 1}}));
  CHECK(luinv::parse_spec("f1+mixed") == ParticleSpec({Partition{1}, Partition{1}}));
  for (const auto* text : {"b3", "f4", "p2,1", "b2,f2", "b1,b1", "p3,2,2,f2,b5"})
    CHECK(luinv::format_spec(luinv::parse_spec(text)) == text);
  CHECK(luinv::format_spec(luinv::parse_spec("f1")) == "b1");
  CHECK(luinv::format_spec(luinv::parse_spec("b2+mixed")) == "b2,b1");

  for (const auto* bad : {"", "b", "x3", "b0", "b-1", "p1,2", "3", "b2,,f2", "b2+mix", "b2x"})
    CHECK_THROWS_AS(luinv::parse_spec(bad), luinv::ParseError);
}

TEST_CASE("state json round trip") {
  const auto psi = luinv::random_state(luinv::parse_spec("b2,f2"), {3, 3}, 4);
  const auto j = luinv::state_to_json(psi);
  CHECK(j["spec"] == "b2,f2");
  CHECK(j["dims"] == nlohmann::json::array({3, 3}));
  const auto back = luinv::state_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.spec == psi.spec);
  CHECK(back.dims == psi.dims);
  REQUIRE(back.coeffs.size() == psi.coeffs.size());
  for (std::size_t i = 0; i < psi.coeffs.size(); ++i) CHECK(std::abs(back.coeffs[i] - psi.coeffs[i]) < 1e-15);
}

TEST_CASE("state files are symmetrized on load") {
  const auto j = nlohmann::json::parse(R"({"spec": "f2", "dims": [2],
      "entries": [{"index": [0, 1], "re": 1, "im": 0}]})");
  const auto psi = luinv::state_from_json(j);
  const std::vector<int> i01{0, 1}, i10{1, 0};
  CHECK(std::abs(psi.at(i01) - 0.5) < 1e-15);
  CHECK(std::abs(psi.at(i10) + 0.5) < 1e-15);
}

TEST_CASE("malformed state files") {
  for (const auto* text : {
           R"([])",
           R"({"dims": [2], "entries": []})",
           R"({"spec": "b2", "entries": []})",
           R"({"spec": "b2", "dims": [2]})",
           R"({"spec": "b2", "dims": [2, 2], "entries": []})",
           R"({"spec": "b2", "dims": [2], "entries": [{"index": [0], "re": 1}]})",
           R"({"spec": "b2", "dims": [2], "entries": [{"index": [0, 2], "re": 1}]})",
           R"({"spec": "b2", "dims": [2], "entries": [{"re": 1}]})",
           R"({"spec": "b2", "dims": ["a"], "entries": []})",
           R"({"spec": "q2", "dims": [2], "entries": []})"}) {
    CAPTURE(text);
    CHECK_THROWS_AS(luinv::state_from_json(nlohmann::json::parse(text)), std::invalid_argument);
  }
}

TEST_CASE("density json round trip") {
  const auto spec = luinv::parse_spec("f2");
  const auto a = luinv::DensityTensor::pure(luinv::random_state(spec, {3}, 1));
  const auto b = luinv::DensityTensor::pure(luinv::random_state(spec, {3}, 2));
  const auto rho = luinv::DensityTensor::from_matrix(spec, {3}, a.matrix + b.matrix);
  const auto back = luinv::density_from_json(nlohmann::json::parse(luinv::density_to_json(rho).dump()));
  CHECK(back.spec == rho.spec);
  CHECK(back.dims == rho.dims);
  CHECK((back.matrix - rho.matrix).norm() < 1e-14);
  CHECK_THROWS_AS(luinv::density_from_json(nlohmann::json::parse(R"({"spec": "b1", "dims": [2],
      "entries": [{"row": [0], "re": 1}]})")),
                  std::invalid_argument);
}

TEST_CASE("evaluation records") {
  const auto g = luinv::graph_from_id("1,1;1,1");
  const auto r = luinv::evaluation_record(g, {0.25, -1.5});
  CHECK(r["graph_id"] == g.id());
  CHECK(r["value_re"] == 0.25);
  CHECK(r["value_im"] == -1.5);
}
