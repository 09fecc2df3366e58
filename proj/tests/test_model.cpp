#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pendsim/errors.hpp"
#include "pendsim/model.hpp"
#include "pendsim/oracle.hpp"

using namespace pendsim;

TEST_CASE("default parameters match the nominal setup") {
  const auto p = model::default_params();
  CHECK(p.m_p == doctest::Approx(4.06));
  CHECK(p.m_l == doctest::Approx(1.4));
  CHECK(p.I_xx == doctest::Approx(0.0646));
  CHECK(p.I_yy == doctest::Approx(0.0646));
  CHECK(p.I_zz == doctest::Approx(0.0682));
  CHECK(p.l1 == doctest::Approx(1.5));
  CHECK(p.l2 == doctest::Approx(0.75));
  CHECK(p.m_c1 == doctest::Approx(0.15));
  CHECK(p.m_c2 == doctest::Approx(0.10));
  CHECK(p.g0 == doctest::Approx(9.81));
  CHECK_NOTHROW(model::validate(p));
}

TEST_CASE("uncertain plant variant") {
  const auto p = model::uncertain_params();
  CHECK(p.m_p == doctest::Approx(10.06));
  CHECK(p.m_l == doctest::Approx(20.4));
  CHECK(p.I_xx == doctest::Approx(0.75));
  CHECK(p.I_yy == doctest::Approx(0.75));
  CHECK(p.I_zz == doctest::Approx(0.5));
  // cables unchanged from nominal
  CHECK(p.l1 == doctest::Approx(1.5));
  CHECK(p.m_c1 == doctest::Approx(0.15));
  CHECK_NOTHROW(model::validate(p));
}

TEST_CASE("validate flags the offending field") {
  auto p = model::default_params();
  p.m_l = 0.0;
  CHECK_THROWS_WITH_AS(model::validate(p), "non-positive parameter: m_l",
                       NonPositiveParameter);

  p = model::default_params();
  p.l1 = -1.5;
  try {
    model::validate(p);
    FAIL("expected NonPositiveParameter");
  } catch (const NonPositiveParameter& e) {
    CHECK(e.field() == "l1");
  }
}

TEST_CASE("planar reduction maps cables to rods and bodies to tips") {
  const auto p = model::default_params();
  const auto planar = model::planar_reduction(p);
  CHECK(planar.link1.length == doctest::Approx(1.5));
  CHECK(planar.link1.rod_mass == doctest::Approx(0.15));
  CHECK(planar.link1.tip_mass == doctest::Approx(4.06));
  CHECK(planar.link2.length == doctest::Approx(0.75));
  CHECK(planar.link2.rod_mass == doctest::Approx(0.10));
  CHECK(planar.link2.tip_mass == doctest::Approx(1.4));
  CHECK(planar.g0 == doctest::Approx(9.81));

  SUBCASE("changing m_l only changes the link-2 tip mass") {
    auto modified = p;
    modified.m_l = 3.0;
    const auto planar2 = model::planar_reduction(modified);
    CHECK(planar2.link2.tip_mass == doctest::Approx(3.0));
    CHECK(planar2.link1.tip_mass == doctest::Approx(planar.link1.tip_mass));
    CHECK(planar2.link1.rod_mass == doctest::Approx(planar.link1.rod_mass));
    CHECK(planar2.link2.rod_mass == doctest::Approx(planar.link2.rod_mass));
  }

  SUBCASE("total suspended mass per link is preserved") {
    CHECK(planar.link1.rod_mass + planar.link1.tip_mass ==
          doctest::Approx(p.m_c1 + p.m_p));
    CHECK(planar.link2.rod_mass + planar.link2.tip_mass ==
          doctest::Approx(p.m_c2 + p.m_l));
  }

  SUBCASE("propagates validation errors") {
    auto bad = p;
    bad.m_c2 = -1.0;
    CHECK_THROWS_AS(model::planar_reduction(bad), NonPositiveParameter);
  }
}

TEST_CASE("hanging rest is the global minimum of the planar potential") {
  const auto planar = model::planar_reduction(model::default_params());
  const double v0 =
      dynamics::planar_lagrangian_oracle(planar, Vector2d::Zero(), Vector2d::Zero())
          .potential;
  double min_seen = v0;
  for (double q1 = -3.0; q1 <= 3.0; q1 += 0.25) {
    for (double q2 = -3.0; q2 <= 3.0; q2 += 0.25) {
      const auto e = dynamics::planar_lagrangian_oracle(
          planar, Vector2d(q1, q2), Vector2d::Zero());
      min_seen = std::min(min_seen, e.potential);
    }
  }
  CHECK(v0 == doctest::Approx(min_seen));
  CHECK(dynamics::planar_lagrangian_oracle(planar, Vector2d::Zero(),
                                           Vector2d::Zero())
            .kinetic == doctest::Approx(0.0));
}

TEST_CASE("workspace guard") {
  Vector5d q = Vector5d::Zero();
  CHECK(model::in_workspace(q));
  q(1) = M_PI / 2.0 - 0.01;  // closer than the default margin
  CHECK_FALSE(model::in_workspace(q));
  q(1) = 0.0;
  q(4) = -M_PI / 2.0 + 0.01;
  CHECK_FALSE(model::in_workspace(q));
  q(4) = 0.0;
  q(0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(model::in_workspace(q));
}
