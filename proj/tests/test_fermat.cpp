#include <gtest/gtest.h>

#include <random>

#include "bpsw/arith.hpp"
#include "bpsw/errors.hpp"
#include "bpsw/fermat.hpp"
#include "oracles.hpp"

using namespace bpsw;

namespace {

bool prp(std::uint64_t n, std::uint64_t a) { return is_prp(n, a).probable_prime(); }
bool epsp(std::uint64_t n, std::uint64_t a) { return is_epsp_condition(n, a).probable_prime(); }
bool sprp(std::uint64_t n, std::uint64_t a) { return is_sprp(n, a).probable_prime(); }

}  // namespace

TEST(Decompose, BothDirections) {
  EXPECT_EQ(decompose(341, Direction::MinusOne), (StrongDecomposition{85, 2, Direction::MinusOne}));
  EXPECT_EQ(decompose(323, Direction::PlusOne), (StrongDecomposition{81, 2, Direction::PlusOne}));
  EXPECT_THROW(decompose(8, Direction::MinusOne), DomainError);
}

TEST(Prp, Examples) {
  EXPECT_TRUE(prp(341, 2));
  const auto nine = is_prp(9, 2);
  ASSERT_TRUE(nine.composite());
  EXPECT_EQ(nine.certificate->kind, CertificateKind::FailedPrp);
  EXPECT_EQ(nine.certificate->residues, std::vector<Natural>{Natural(4)});
  for (std::uint64_t n = 3; n < 2000; n += 2) EXPECT_TRUE(prp(n, 1)) << n;
  EXPECT_THROW(is_prp(10, 3), DomainError);
  EXPECT_THROW(is_prp(1, 3), DomainError);
}

TEST(Prp, ProperGcdGivesFactor) {
  const auto c = is_prp(341, 11);
  ASSERT_TRUE(c.composite());
  EXPECT_EQ(c.certificate->kind, CertificateKind::GcdFactor);
  EXPECT_EQ(c.certificate->factor, Natural(11));
}

TEST(Euler, Examples) {
  EXPECT_TRUE(epsp(561, 2));
  const auto c = is_epsp_condition(341, 2);
  ASSERT_TRUE(c.composite());
  // 2^170 = 1 but (2/341) = -1.
  EXPECT_EQ(c.certificate->residues, (std::vector<Natural>{Natural(1), Natural(340)}));
  EXPECT_EQ(jacobi(Integer(2), Natural(341)), -1);
}

TEST(Euler, RandomPrimesPass) {
  std::mt19937_64 rng(17);
  int seen = 0;
  while (seen < 100) {
    const std::uint64_t p = (rng() % 1000000) | 1;
    if (p < 3 || !oracle::is_prime(p)) continue;
    ++seen;
    EXPECT_TRUE(epsp(p, 2)) << p;
  }
}

TEST(Sprp, Examples) {
  const auto c = is_sprp(341, 2);
  ASSERT_TRUE(c.composite());
  EXPECT_EQ(c.certificate->kind, CertificateKind::FailedSprp);
  // 2^85 = 32, 2^170 = 1: stops at (n-1)/2.
  EXPECT_EQ(c.certificate->residues, (std::vector<Natural>{Natural(32), Natural(1)}));
  EXPECT_TRUE(sprp(2047, 2));
  EXPECT_TRUE(sprp(3215031751ULL, 2));
  EXPECT_THROW(is_sprp(1, 2), DomainError);
}

TEST(Sprp, ChainNeverPassesHalfway) {
  // The recorded chain covers at most exponents d .. d 2^(s-1) = (n-1)/2.
  for (std::uint64_t n = 9; n < 20000; n += 2) {
    const auto c = is_sprp(n, 2);
    if (c.probable_prime()) continue;
    if (c.certificate->kind != CertificateKind::FailedSprp) continue;
    const auto dec = decompose(n, Direction::MinusOne);
    ASSERT_LE(c.certificate->residues.size(), dec.s) << n;
  }
}

TEST(FermatFamily, PrimesPassAllThreeForSmallBases) {
  for (std::uint64_t p : oracle::primes_below(1000000)) {
    for (std::uint64_t a : {2, 3, 5, 7}) {
      if (p == a) continue;
      ASSERT_TRUE(sprp(p, a)) << p << " base " << a;
      if (p % 1000 < 50) {
        ASSERT_TRUE(epsp(p, a)) << p;
        ASSERT_TRUE(prp(p, a)) << p;
      }
    }
  }
}

TEST(FermatFamily, SubsetChainAndPowerClosure) {
  for (std::uint64_t n = 5; n < 30000; n += 2) {
    for (std::uint64_t a : {2, 3, 6}) {
      if (oracle::gcd(a, n) != 1 || a >= n - 1) continue;
      const bool s = sprp(n, a), e = epsp(n, a), f = prp(n, a);
      ASSERT_TRUE(!s || e) << n;
      ASSERT_TRUE(!e || f) << n;
      if (!s) continue;
      for (std::uint64_t k = 1; k <= 3; ++k) {
        const std::uint64_t ak = oracle::powmod(a, k, n);
        ASSERT_TRUE(sprp(n, ak)) << n << " a^" << k;
        ASSERT_TRUE(sprp(n, n - ak)) << n << " -a^" << k;
      }
    }
  }
}

TEST(FermatFamily, CountsBelowTenThousand) {
  int psp = 0, spsp = 0;
  for (std::uint64_t n = 3; n < 10000; n += 2) {
    if (oracle::is_prime(n)) continue;
    psp += prp(n, 2);
    spsp += sprp(n, 2);
  }
  EXPECT_EQ(psp, 22);
  EXPECT_EQ(spsp, 5);
}

TEST(FermatFamily, FirstTenLists) {
  std::vector<std::uint64_t> psp, epsp_list, spsp;
  for (std::uint64_t n = 3; spsp.size() < 10; n += 2) {
    if (oracle::is_prime(n)) continue;
    if (psp.size() < 10 && prp(n, 2)) psp.push_back(n);
    if (epsp_list.size() < 10 && epsp(n, 2)) epsp_list.push_back(n);
    if (sprp(n, 2)) spsp.push_back(n);
  }
  EXPECT_EQ(psp, (std::vector<std::uint64_t>{341, 561, 645, 1105, 1387, 1729, 1905, 2047, 2465, 2701}));
  EXPECT_EQ(epsp_list,
            (std::vector<std::uint64_t>{561, 1105, 1729, 1905, 2047, 2465, 3277, 4033, 4681, 6601}));
  EXPECT_EQ(spsp, (std::vector<std::uint64_t>{2047, 3277, 4033, 4681, 8321, 15841, 29341, 42799,
                                              49141, 52633}));
}

TEST(FermatFamily, BigModulusAgreesWithGmp) {
  // Mersenne-like numbers above the word path.
  const Natural m89 = (Natural(1) << 89) - Natural(1);  // prime
  EXPECT_TRUE(is_sprp(m89, 3).probable_prime());
  const Natural m91 = (Natural(1) << 91) - Natural(1);  // composite
  EXPECT_TRUE(is_prp(m91, 3).composite());
  EXPECT_EQ(is_prp(m91, 2).certificate->residues.at(0), Natural(std::uint64_t{1} << 35));
  EXPECT_TRUE(is_sprp(m91, 2).composite());
}
