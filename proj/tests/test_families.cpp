#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "test_util.hpp"
#include "zeroprof/families.hpp"

using namespace zeroprof;
using namespace zeroprof::families;
using zeroprof::test::coeffs;

namespace {

ExactPolynomial rising_product(int n) {
  ExactPolynomial p(std::vector<Rational>{1});
  for (int i = 0; i < n; ++i) p = multiply(p, ExactPolynomial(std::vector<Rational>{i, 1}));
  return p;
}

std::vector<Integer> stirling2_recurrence(int n) {
  std::vector<std::vector<Integer>> S(n + 1, std::vector<Integer>(n + 1, 0));
  S[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= i; ++k) S[i][k] = k * S[i - 1][k] + S[i - 1][k - 1];
  return S[n];
}

std::vector<long> descent_counts(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<long> out(n, 0);
  do {
    int d = 0;
    for (int i = 0; i + 1 < n; ++i) d += p[i] > p[i + 1];
    ++out[d];
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Integer binom(int n, int k) { return binomial(n, k); }

}  // namespace

TEST(Stirling, SmallRows) {
  EXPECT_EQ(coeffs(stirling1_poly(3)), (std::vector<std::string>{"0", "2", "3", "1"}));
  EXPECT_EQ(coeffs(stirling1_poly(1)), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(stirling1_poly(5)[2], 50);
}

TEST(Stirling, MatchesRisingProduct) {
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(stirling1_poly(n), rising_product(n)) << n;
}

TEST(Touchard, SmallRows) {
  EXPECT_EQ(coeffs(touchard_poly(3)), (std::vector<std::string>{"0", "1", "3", "1"}));
  EXPECT_EQ(coeffs(touchard_poly(1)), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(touchard_poly(4)[2], 7);
}

TEST(Touchard, MatchesRecurrence) {
  for (int n = 1; n <= 15; ++n) {
    auto S = stirling2_recurrence(n);
    auto T = touchard_poly(n);
    for (int k = 0; k <= n; ++k) EXPECT_EQ(T[k], Rational(S[k])) << n << "," << k;
  }
}

TEST(Fubini, SmallRows) {
  EXPECT_EQ(coeffs(fubini_poly(3)), (std::vector<std::string>{"0", "1", "6", "6"}));
  EXPECT_EQ(coeffs(fubini_poly(1)), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(coeffs(fubini_poly(2)), (std::vector<std::string>{"0", "1", "2"}));
}

TEST(Eulerian, SmallRows) {
  EXPECT_EQ(coeffs(eulerian_poly(3)), (std::vector<std::string>{"1", "4", "1", "0"}));
  EXPECT_EQ(coeffs(eulerian_poly(1)), (std::vector<std::string>{"1", "0"}));
  EXPECT_EQ(coeffs(eulerian_poly(4)), (std::vector<std::string>{"1", "11", "11", "1", "0"}));
}

TEST(Eulerian, MatchesDescentCount) {
  for (int n = 1; n <= 7; ++n) {
    auto d = descent_counts(n);
    auto E = eulerian_poly(n);
    ASSERT_EQ(E.degree(), n - 1);
    for (int k = 0; k < n; ++k) EXPECT_EQ(E[k], d[k]) << n << "," << k;
  }
}

TEST(Narayana, SmallRows) {
  EXPECT_EQ(coeffs(narayana_poly(3)), (std::vector<std::string>{"0", "1", "3", "1"}));
  EXPECT_EQ(coeffs(narayana_poly(1)), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(coeffs(binomial_power_poly(2, 2)), (std::vector<std::string>{"1", "4", "1"}));
}

TEST(Narayana, FormulaAndBinomialPowers) {
  for (int n = 1; n <= 10; ++n) {
    auto N = narayana_poly(n);
    for (int k = 1; k <= n; ++k) EXPECT_EQ(N[k], Rational(binom(n, k) * binom(n, k - 1)) / n);
    auto B3 = binomial_power_poly(n, 3);
    for (int k = 0; k <= n; ++k) EXPECT_EQ(B3[k], Rational(binom(n, k) * binom(n, k) * binom(n, k)));
  }
  EXPECT_THROW(binomial_power_poly(4, 1), std::invalid_argument);
}

TEST(Hypergeometric, EmptyParametersGiveBinomial) {
  EXPECT_EQ(coeffs(hypergeometric_poly(3, {}, {})), (std::vector<std::string>{"1", "3", "3", "1"}));
}

TEST(Hypergeometric, SingleLowerParameter) {
  auto H = hypergeometric_poly(3, {}, {2});
  EXPECT_EQ(H[3], 1);
  EXPECT_EQ(H[0], Rational(40, 9));
}

TEST(Hypergeometric, LaguerreIdentity) {
  for (int n = 1; n <= 8; ++n)
    for (Rational g : {Rational(0), Rational(1), Rational(1, 2)}) {
      Rational pre = 1;
      for (int i = 1; i <= n; ++i) pre *= Rational(n) / i;
      auto lhs = scale_argument(laguerre_nonneg(n, g * n), Rational(n));
      auto rhs = scale_values(hypergeometric_poly(n, {}, {1 + g}), pre);
      EXPECT_EQ(lhs, rhs) << n;
    }
}

TEST(Hypergeometric, RejectsForbiddenParameters) {
  EXPECT_THROW(hypergeometric_poly(3, {Rational(1, 2)}, {}), std::invalid_argument);
  EXPECT_THROW(hypergeometric_poly(3, {}, {0}), std::invalid_argument);
}

TEST(Laguerre, SmallRows) {
  EXPECT_EQ(coeffs(laguerre_poly(2, 0)), (std::vector<std::string>{"1", "-2", "1/2"}));
  EXPECT_EQ(coeffs(laguerre_poly(1, 0)), (std::vector<std::string>{"1", "-1"}));
  EXPECT_EQ(coeffs(laguerre_poly(2, 1)), (std::vector<std::string>{"3", "-3", "1/2"}));
}

TEST(Hermite, SmallRows) {
  EXPECT_EQ(coeffs(hermite_poly(3)), (std::vector<std::string>{"0", "-3", "0", "1"}));
  EXPECT_EQ(coeffs(hermite_poly(1)), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(coeffs(hermite_poly(4)), (std::vector<std::string>{"3", "0", "-6", "0", "1"}));
}

TEST(Hermite, ThreeTermRecurrence) {
  ExactPolynomial x(std::vector<Rational>{0, 1});
  for (int n = 3; n <= 20; ++n) {
    auto rhs = add(multiply(x, hermite_poly(n - 1)), scale_values(hermite_poly(n - 2), Rational(-(n - 1))));
    EXPECT_EQ(hermite_poly(n), rhs) << n;
  }
}

TEST(Jacobi, SmallRows) {
  EXPECT_EQ(coeffs(jacobi_poly(1, 0, 0)), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(coeffs(jacobi_poly(2, 0, 0)), (std::vector<std::string>{"-1/2", "0", "3/2"}));
  EXPECT_EQ(coeffs(jacobi_poly(1, 1, 0)), (std::vector<std::string>{"1/2", "3/2"}));
}

TEST(Jacobi, LegendreRecurrence) {
  ExactPolynomial x(std::vector<Rational>{0, 1});
  for (int n = 2; n <= 15; ++n) {
    auto rhs = add(scale_values(multiply(x, jacobi_poly(n - 1, 0, 0)), Rational(2 * n - 1)),
                   scale_values(jacobi_poly(n - 2, 0, 0), Rational(-(n - 1))));
    EXPECT_EQ(scale_values(jacobi_poly(n, 0, 0), Rational(n)), rhs) << n;
  }
}

TEST(LittleQLaguerre, Examples) {
  const mpfr_prec_t prec = 256;
  BigFloat lam = log(BigFloat(2.0, prec));
  auto P = little_q_laguerre_poly(2, 0, lam, prec);
  const double q = std::exp(-std::log(2.0) / 2);
  EXPECT_DOUBLE_EQ(P.coeffs[0].to_double(), 1.0);
  EXPECT_NEAR(P.coeffs[1].to_double(), (1 + q) / q, 1e-14);

  for (Rational a : {Rational(0), Rational(1, 3), Rational(1)}) {
    auto P1 = little_q_laguerre_poly(1, a, Rational(1, 2), prec);
    const double q1 = std::exp(-0.5), ad = a.get_d();
    EXPECT_DOUBLE_EQ(P1.coeffs[0].to_double(), 1.0);
    EXPECT_NEAR(P1.coeffs[1].to_double(), (1 - q1) / ((1 - ad * q1) * (1 - q1)), 1e-14);
  }
  EXPECT_THROW(little_q_laguerre_poly(3, Rational(3, 2), Rational(1), prec), std::invalid_argument);
}

TEST(FreeMultHermite, Examples) {
  auto G1 = free_mult_hermite_poly(1, 1);
  EXPECT_EQ(G1.coeffs[0].to_double(), -1.0);
  EXPECT_EQ(G1.coeffs[1].to_double(), 1.0);
  auto G0 = free_mult_hermite_poly(2, 0);
  EXPECT_EQ(G0.coeffs[1].to_double(), -2.0);
  auto G2 = free_mult_hermite_poly(2, 2);
  EXPECT_DOUBLE_EQ(G2.coeffs[0].to_double(), 1.0);
  EXPECT_NEAR(G2.coeffs[1].to_double(), -2 * std::exp(1.0), 1e-14);
  EXPECT_DOUBLE_EQ(G2.coeffs[2].to_double(), 1.0);
}

TEST(FreeMultPoisson, Examples) {
  EXPECT_EQ(coeffs(free_mult_poisson_poly(2, 2, 1)), (std::vector<std::string>{"2", "-6", "4"}));
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(free_mult_poisson_poly(n, 3, 0), power_of_linear(1, n));
  EXPECT_EQ(coeffs(free_mult_poisson_poly(3, 0, 3)), (std::vector<std::string>{"0", "3", "-24", "27"}));
  EXPECT_THROW(free_mult_poisson_poly(3, -1, 1), std::invalid_argument);
}

TEST(FamilyInvariants, LogConcaveNonnegative) {
  auto check = [](const ExactPolynomial& p, const char* name) {
    ASSERT_TRUE(p.all_nonnegative()) << name;
    for (int k = 1; k < p.n; ++k) EXPECT_GE(p[k] * p[k], p[k - 1] * p[k + 1]) << name << " k=" << k;
  };
  const int n = 30;
  check(stirling1_poly(n), "stirling");
  check(touchard_poly(n), "touchard");
  check(fubini_poly(n), "fubini");
  check(eulerian_poly(n), "eulerian");
  check(narayana_poly(n), "narayana");
  check(binomial_power_poly(n, 2), "binomial2");
  check(laguerre_nonneg(n, 3), "laguerre");
  check(hypergeometric_poly(n, {2}, {1}), "hypergeometric");
}

TEST(FamilyInvariants, LengthIsDegreeBoundPlusOne) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(static_cast<int>(eulerian_poly(n).coeffs.size()), n + 1);
    EXPECT_EQ(static_cast<int>(touchard_poly(n).coeffs.size()), n + 1);
  }
}
