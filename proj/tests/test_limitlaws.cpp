#include <gtest/gtest.h>

#include <cmath>

#include "zeroprof/limitlaws.hpp"
#include "zeroprof/specialfn.hpp"

using namespace zeroprof::limitlaws;

namespace {

const double kPi = std::acos(-1.0);

}  // namespace

TEST(LimitLaws, TouchardMoments) {
  auto m = moments(*law_touchard(), 3);
  EXPECT_NEAR(m[0], 1.0, 1e-12);
  EXPECT_NEAR(m[1], -0.5, 1e-10);
  EXPECT_NEAR(m[2], 2.0 / 3, 1e-10);
  EXPECT_NEAR(m[3], -9.0 / 8, 1e-10);
}

TEST(LimitLaws, FubiniMoments) {
  auto m = moments(*law_fubini(), 2);
  EXPECT_NEAR(m[1], -0.5, 1e-10);
  EXPECT_NEAR(m[2], 5.0 / 12, 1e-10);
}

TEST(LimitLaws, DensityPointValues) {
  EXPECT_NEAR(law_eulerian()->density(-1.0), 1 / (kPi * kPi), 1e-14);
  EXPECT_NEAR(law_narayana(2)->density(-1.0), 1 / (2 * kPi), 1e-14);
}

TEST(LimitLaws, MarchenkoPasturSupport) {
  auto mp = law_mp(1, 1);
  EXPECT_NEAR(mp->support().lo, 0.0, 1e-15);
  EXPECT_NEAR(mp->support().hi, 4.0, 1e-15);
  EXPECT_EQ(mp->atom_at_zero(), 0.0);
  EXPECT_NEAR(moments(*mp, 1)[1], 1.0, 1e-10);
  EXPECT_NEAR(law_mp(1, 2)->atom_at_zero(), 0.5, 1e-15);
}

TEST(LimitLaws, LaguerreMatchesMarchenkoPastur) {
  for (double g : {0.0, 1.0, 5.0}) {
    auto s = law_laguerre(g)->support();
    EXPECT_NEAR(s.lo, g + 2 - 2 * std::sqrt(g + 1), 1e-12);
    EXPECT_NEAR(s.hi, g + 2 + 2 * std::sqrt(g + 1), 1e-12);
  }
}

TEST(LimitLaws, QLaguerreEndpoints) {
  for (double lam : {0.25, std::log(2.0)}) {
    auto s = law_q_laguerre(1, lam)->support();
    EXPECT_NEAR(s.lo, 0.0, 1e-14);
    EXPECT_NEAR(s.hi, 4 * std::exp(-lam) * (1 - std::exp(-lam)), 1e-14);
  }
}

TEST(CauchyTransform, ClosedValues) {
  EXPECT_NEAR(cauchy_transform(*law_semicircle(), 3.0).real(), (3 - std::sqrt(5.0)) / 2, 1e-14);
  EXPECT_NEAR(cauchy_transform(*law_uniform_stirling(), 1.0).real(), std::log(2.0), 1e-14);
}

TEST(CauchyTransform, TouchardAgainstQuadrature) {
  auto T = law_touchard();
  EXPECT_NEAR(cauchy_transform(*T, 10.0).real(), cauchy_transform_quadrature(*T, 10.0).real(), 1e-8);
  double t = 10.0;
  EXPECT_NEAR(cauchy_transform(*T, t).real(), 1 / (t * zeroprof::specialfn::lambert_w0(1 / t)) - 1, 1e-12);
}

TEST(CauchyTransform, FubiniClosedForm) {
  for (double t : {0.5, 2.0, 10.0})
    EXPECT_NEAR(cauchy_transform(*law_fubini(), t).real(), 1 / (t * (t + 1) * std::log(1 + 1 / t)), 1e-12);
}

TEST(CauchyTransform, LargeArgumentMass) {
  for (const auto& name : {"touchard", "fubini", "semicircle", "arcsine", "mp"}) {
    auto law = make_law(name, {});
    EXPECT_NEAR(1e6 * cauchy_transform(*law, 1e6).real(), 1.0, 1e-3) << name;
  }
  // mass at -infinity lowers the limit of t G(t)
  auto stirling = law_uniform_stirling();
  EXPECT_NEAR(1e6 * cauchy_transform(*stirling, 1e6).real(), 1.0 - stirling->atom_at_infinity(), 1e-3);
}

TEST(LogPotential, Values) {
  EXPECT_NEAR(log_potential(*law_fubini(), 1.0).value, -std::log(std::log(2.0)), 1e-12);
  for (const auto& name : {"touchard", "fubini", "eulerian", "semicircle"})
    EXPECT_NEAR(normalized_log_potential(*make_law(name, {}), 1.0), 0.0, 1e-12) << name;
  EXPECT_NEAR(log_potential(*law_semicircle(), 1e4).value - std::log(1e4), 0.0, 1e-3);
}

TEST(LogPotential, QuadratureCrossCheck) {
  for (const auto& name : {"touchard", "fubini", "arcsine"}) {
    auto law = make_law(name, {});
    EXPECT_NEAR(log_potential(*law, 2.5).value, log_potential_quadrature(*law, 2.5), 1e-8) << name;
  }
}

TEST(LimitLaws, MassesSumToOne) {
  for (const auto& name : {"touchard", "fubini", "eulerian", "narayana", "mp", "semicircle", "arcsine"}) {
    auto law = make_law(name, {});
    EXPECT_NEAR(density_mass(*law) + law->atom_at_zero() + law->atom_at_infinity(), 1.0, 1e-6) << name;
  }
}

TEST(LimitLaws, PerronInversion) {
  for (const auto& name : {"semicircle", "arcsine", "mp", "fubini"}) {
    auto law = make_law(name, {});
    auto s = law->support();
    for (int i = 1; i < 10; ++i) {
      double x = s.lo + (s.hi - s.lo) * i / 10.0;
      double p = -cauchy_transform(*law, {x, 1e-6}).imag() / kPi;
      EXPECT_NEAR(p, law->density(x), 1e-3) << name << " x=" << x;
    }
  }
}

TEST(LimitLaws, CdfEndpoints) {
  auto law = law_arcsine();
  EXPECT_NEAR(cdf(*law, 0.0), 0.5, 1e-10);
  EXPECT_NEAR(cdf(*law, 2.0), 1.0, 1e-12);
}

TEST(LimitLaws, RejectsUnknownNames) {
  EXPECT_THROW(make_law("nope", {}), std::invalid_argument);
  EXPECT_THROW(law_narayana(1.5), std::invalid_argument);
}
