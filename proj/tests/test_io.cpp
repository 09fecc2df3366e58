#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pendsim/config.hpp"
#include "pendsim/csv.hpp"
#include "pendsim/errors.hpp"
#include "pendsim/sim.hpp"

using namespace pendsim;

TEST_CASE("empty config yields the nominal case-A scenario") {
  std::istringstream in("");
  const auto config = io::parse_scenario(in);
  CHECK(config.kind == sim::ModelKind::Full);
  CHECK(config.duration == doctest::Approx(30.0));
  CHECK(config.dt == doctest::Approx(0.001));
  CHECK(config.q0(0) == doctest::Approx(0.1));
  CHECK(config.q0(2) == doctest::Approx(0.4));
  CHECK(config.q0(4) == doctest::Approx(-0.2));
  CHECK(config.controller.mode == control::Mode::Coupled);
  CHECK(config.plant.m_l == doctest::Approx(1.4));
  CHECK(config.controller.K_py(0, 0) == doctest::Approx(4230.0));
  CHECK(config.controller.K_py(2, 2) == doctest::Approx(30.0));
  CHECK(config.controller.K_dy(0, 0) == doctest::Approx(3950.0));
  CHECK(config.controller.K_pc(0, 0) == doctest::Approx(2200.0));
  CHECK(config.controller.K_dc(1, 1) == doctest::Approx(50.0));
  CHECK_FALSE(config.wind.has_value());
  CHECK_FALSE(config.noise.has_value());
}

TEST_CASE("mismatch and noise scenario") {
  std::istringstream in(
      "plant.m_l = 20.4\n"
      "plant.m_p = 10.06\n"
      "noise.accel_std = 1.0\n"
      "noise.relative_strength = 0.1\n");
  const auto config = io::parse_scenario(in);
  CHECK(config.plant.m_l == doctest::Approx(20.4));
  CHECK(config.controller.nominal.m_l == doctest::Approx(1.4));  // stays nominal
  REQUIRE(config.noise.has_value());
  CHECK(config.noise->accel_std == doctest::Approx(1.0));
  CHECK(config.noise->velocity_estimation);  // default
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("unknown key") {
    std::istringstream in("duration = 10\nbogus.key = 3\n");
    try {
      io::parse_scenario(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("bad number") {
    std::istringstream in("dt = fast\n");
    CHECK_THROWS_AS(io::parse_scenario(in), ParseError);
  }
  SUBCASE("missing equals") {
    std::istringstream in("duration 10\n");
    CHECK_THROWS_AS(io::parse_scenario(in), ParseError);
  }
}

TEST_CASE("semantic violations raise ValidationError") {
  SUBCASE("zero dt") {
    std::istringstream in("dt = 0\n");
    CHECK_THROWS_AS(io::parse_scenario(in), ValidationError);
  }
  SUBCASE("non-positive mass") {
    std::istringstream in("plant.m_l = -2\n");
    CHECK_THROWS_AS(io::parse_scenario(in), NonPositiveParameter);
  }
  SUBCASE("wind window outside duration") {
    std::istringstream in("wind.t_on = 10\nwind.t_off = 40\n");
    CHECK_THROWS_AS(io::parse_scenario(in), ValidationError);
  }
}

TEST_CASE("planar config defaults to the 0.2 rad release") {
  std::istringstream in("model = planar\ncontroller.mode = standard\n");
  const auto config = io::parse_scenario(in);
  CHECK(config.kind == sim::ModelKind::Planar);
  CHECK(config.q0.size() == 2);
  CHECK(config.q0(0) == doctest::Approx(0.2));
  CHECK(config.controller.mode == control::Mode::Standard);
}

TEST_CASE("comments and spacing are tolerated") {
  std::istringstream in(
      "# leading comment\n"
      "\n"
      "  duration = 2.5   # trailing comment\n"
      "\t q0 = 0.05 0.1 0 0 0 \n");
  const auto config = io::parse_scenario(in);
  CHECK(config.duration == doctest::Approx(2.5));
  CHECK(config.q0(1) == doctest::Approx(0.1));
}

TEST_CASE("CSV round trip is exact") {
  sim::ScenarioConfig config;
  config.duration = 0.2;
  config.noise.emplace();
  config.wind.emplace();
  config.wind->t_on = 0.05;
  config.wind->t_off = 0.15;
  const sim::SimLog log = sim::run(config);

  std::stringstream buffer;
  io::write_csv(buffer, log);

  SUBCASE("header layout") {
    std::string header;
    std::getline(buffer, header);
    CHECK(header ==
          "t,q1,q2,q3,q4,q5,dq1,dq2,dq3,dq4,dq5,Fx,Fy,tau_z,"
          "qm1,qm2,qm3,qm4,qm5,dqm1,dqm2,dqm3,dqm4,dqm5,Fwx,Fwy");
  }

  SUBCASE("bit-exact round trip") {
    const sim::SimLog read = io::read_csv(buffer);
    REQUIRE(read.size() == log.size());
    CHECK(read.kind == sim::ModelKind::Full);
    CHECK((read.q - log.q).cwiseAbs().maxCoeff() == 0.0);
    CHECK((read.dq - log.dq).cwiseAbs().maxCoeff() == 0.0);
    CHECK((read.u - log.u).cwiseAbs().maxCoeff() == 0.0);
    CHECK((read.q_meas - log.q_meas).cwiseAbs().maxCoeff() == 0.0);
    CHECK((read.dq_meas - log.dq_meas).cwiseAbs().maxCoeff() == 0.0);
    CHECK((read.wind - log.wind).cwiseAbs().maxCoeff() == 0.0);
    for (std::size_t i = 0; i < read.size(); ++i) {
      CHECK(read.t[i] == log.t[i]);
    }
  }
}

TEST_CASE("planar CSV round trip") {
  sim::ScenarioConfig config;
  config.kind = sim::ModelKind::Planar;
  config.q0 = Vector2d(0.2, 0.0);
  config.dq0 = Vector2d::Zero();
  config.duration = 0.2;
  const sim::SimLog log = sim::run(config);

  std::stringstream buffer;
  io::write_csv(buffer, log);
  std::string header;
  std::getline(buffer, header);
  CHECK(header == "t,q1,q2,dq1,dq2,u");

  buffer.seekg(0);
  const sim::SimLog read = io::read_csv(buffer);
  CHECK(read.kind == sim::ModelKind::Planar);
  CHECK((read.q - log.q).cwiseAbs().maxCoeff() == 0.0);
  CHECK((read.u - log.u).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("malformed CSV is rejected with a line number") {
  std::istringstream in("t,q1\n0.0,1.0\n");
  CHECK_THROWS_AS(io::read_csv(in), ParseError);

  std::istringstream in2(
      "t,q1,q2,dq1,dq2,u\n"
      "0.0,0.1,0,0,0,0\n"
      "0.001,0.1,0,not_a_number,0,0\n");
  try {
    io::read_csv(in2);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}
