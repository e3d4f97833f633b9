#include <doctest.h>

#include "shockstem/json_io.hpp"

#include "fixtures.hpp"

using namespace shockstem;
using namespace shockstem::testing;

TEST_CASE("EOS JSON round trip is bitwise") {
  for (const EosSpec& eos : {ideal_air(), gruneisen_stiff()}) {
    const Json j = eos_to_json(eos);
    const EosSpec back = eos_from_json(j);
    CHECK(eos_to_json(back) == j);
    CHECK(eos_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("EOS JSON rejects malformed documents") {
  CHECK_THROWS_AS(eos_from_json(Json::parse(R"({"gamma": 1.4})")), DomainError);
  CHECK_THROWS_AS(eos_from_json(Json::parse(R"({"type": "tabulated"})")), DomainError);
  CHECK_THROWS_AS(eos_from_json(Json::parse(R"({"type": "ideal", "gamma": 1.4, "extra": 1})")),
                  DomainError);
  CHECK_THROWS_AS(eos_from_json(Json::parse(R"({"type": "ideal", "gamma": "wide"})")),
                  DomainError);
  CHECK_THROWS_AS(eos_from_json(Json::parse(R"({"type": "ideal", "gamma": 0.9})")), DomainError);
  CHECK_THROWS_AS(eos_from_json(Json::parse(R"({"type": "mie_gruneisen", "gamma0": 2.0})")),
                  DomainError);  // missing thermal_amplitude
}

TEST_CASE("shock JSON round trip preserves every field bitwise") {
  const PlanarShock shock = weak_shock_critical();
  const Json j = shock_to_json(shock);
  const PlanarShock back = shock_from_json(j);
  CHECK(back.upstream.tau == shock.upstream.tau);
  CHECK(back.upstream.v == shock.upstream.v);
  CHECK(back.downstream.s == shock.downstream.s);
  CHECK(back.mass_flux == shock.mass_flux);
  CHECK(back.tangential_velocity == shock.tangential_velocity);
  CHECK(back.mach_downstream == shock.mach_downstream);
  CHECK(back.compression_ratio == shock.compression_ratio);
  CHECK_NOTHROW(validate_shock(back));
  CHECK(shock_to_json(back).dump() == j.dump());
}

TEST_CASE("pattern and family round trips") {
  const PlanarShock shock = weak_shock_critical();
  const MachStemProblem problem(shock.eos, shock);
  const std::vector<double> grid = {2e-3, 4e-3};
  const FamilyResult family = problem.continue_family(grid);
  REQUIRE_FALSE(family.failed_index.has_value());

  const Json j = family_to_json(shock, family);
  CHECK(j.at("patterns").size() == 2);
  const MachStemPattern back = pattern_from_json(j.at("patterns")[0]);
  CHECK(back.eps == family.patterns[0].eps);
  CHECK(back.psi == family.patterns[0].psi);
  CHECK(back.u3.s == family.patterns[0].u3.s);
  CHECK(back.diag.lax_s3_upstream == family.patterns[0].diag.lax_s3_upstream);

  // serialization is deterministic byte for byte
  CHECK(family_to_json(shock, family).dump(2) == j.dump(2));
}
