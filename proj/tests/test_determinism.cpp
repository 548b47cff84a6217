#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

#include "semsteg/determinism.hpp"

using namespace semsteg;

namespace {

struct Moments {
  double mean = 0, var = 0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  for (double x : v) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(v.size());
  return m;
}

}  // namespace

// Expected digests computed with Python's hashlib.
TEST(HashToken, PublishedAndReferenceVectors) {
  EXPECT_EQ(hash_token("", "").value, 0xE3B0C44298FC1C14ULL);
  EXPECT_EQ(hash_token("abc", "").value, 0xBA7816BF8F01CFEAULL);
  EXPECT_EQ(hash_token("9000", "init").value, 0x3BB45056207666BCULL);
  EXPECT_EQ(hash_token("9000", "mask").value, 0xA977A8B9C32CEB45ULL);
  EXPECT_EQ(hash_token("9000", "ref").value, 0x351B4927D950B59CULL);
}

TEST(HashToken, DeterministicAndDomainSeparated) {
  EXPECT_EQ(hash_token("9000", "init"), hash_token("9000", "init"));
  EXPECT_NE(hash_token("9000", "init"), hash_token("9000", "mask"));
}

TEST(HashToken, HexRoundTrip) {
  const Seed64 s = hash_token("9000", "init");
  EXPECT_EQ(to_hex(s), "3bb45056207666bc");
  EXPECT_EQ(seed_from_hex(to_hex(s)), s);
  EXPECT_EQ(to_hex(Seed64{1}), "0000000000000001");
  EXPECT_THROW(seed_from_hex("xyz"), std::invalid_argument);
}

TEST(RandomStream, SplitMix64ReferenceOutputs) {
  RandomStream rs(Seed64{0});
  EXPECT_EQ(rs.next_u64(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rs.next_u64(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rs.next_u64(), 0x06C45D188009454FULL);
  EXPECT_EQ(rs.draws_emitted(), 3u);
}

TEST(RandomStream, AdvanceIsAdditive) {
  for (std::uint64_t n : {0u, 1u, 7u}) {
    for (std::uint64_t m : {0u, 3u, 10u}) {
      RandomStream a(Seed64{42}), b(Seed64{42});
      a.discard(n);
      a.discard(m);
      b.discard(n + m);
      EXPECT_EQ(a.next_u64(), b.next_u64());
      RandomStream c(Seed64{42});
      for (std::uint64_t i = 0; i < n + m; ++i) c.next_u64();
      EXPECT_EQ(c.state(), b.state() - 0x9E3779B97F4A7C15ULL);
    }
  }
}

TEST(UniformStream, EmptyDeterministicAndCentred) {
  EXPECT_TRUE(uniform_stream(Seed64{5}, 0).empty());
  EXPECT_EQ(uniform_stream(Seed64{5}, 10), uniform_stream(Seed64{5}, 10));
  const auto v = uniform_stream(hash_token("uniform", ""), 1'000'000);
  for (double x : v) ASSERT_TRUE(x >= 0.0 && x < 1.0);
  EXPECT_NEAR(moments(v).mean, 0.5, 0.002);
}

// Values from a Python transcription of SplitMix64 + Box-Muller.
TEST(GaussianStream, ReferenceValues) {
  const auto u = uniform_stream(hash_token("9000", "init"), 2);
  EXPECT_EQ(u[0], 0.22700416709608107);
  EXPECT_EQ(u[1], 0.6736069001511965);
  const auto g = gaussian_stream(hash_token("9000", "init"), 6);
  const double expected[6] = {-0.7952103815609777, -1.5274862545676737, -0.5673822625551176,
                              -0.6464650296993366, -0.2831046464769236, -0.5549494813203656};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(g[static_cast<std::size_t>(i)], expected[i], 1e-15) << i;
}

TEST(GaussianStream, EmptyAndDeterministic) {
  EXPECT_TRUE(gaussian_stream(Seed64{9}, 0).empty());
  EXPECT_EQ(gaussian_stream(Seed64{9}, 101), gaussian_stream(Seed64{9}, 101));
}

TEST(GaussianStream, SplittingConsistency) {
  const Seed64 s = hash_token("split", "init");
  const auto whole = gaussian_stream(s, 64);
  for (std::size_t n : {0u, 1u, 2u, 7u, 32u, 63u}) {
    GaussianSampler g(s);
    std::vector<double> head(n), tail(64 - n);
    g.fill(head);
    g.fill(tail);
    head.insert(head.end(), tail.begin(), tail.end());
    EXPECT_EQ(head, whole) << n;
  }
}

TEST(GaussianStream, Moments) {
  const auto m = moments(gaussian_stream(hash_token("moments", domain::kInit), 1'000'000));
  EXPECT_LT(std::abs(m.mean), 0.005);
  EXPECT_LT(std::abs(m.var - 1.0), 0.01);
}

TEST(DomainSeparation, StreamsDifferOnTokenCorpus) {
  for (int i = 0; i < 100; ++i) {
    const std::string tok = std::to_string(1000 + 37 * i);
    const auto a = gaussian_stream(hash_token(tok, domain::kInit), 16);
    const auto b = gaussian_stream(hash_token(tok, domain::kMask), 16);
    const auto c = gaussian_stream(hash_token(tok, domain::kRef), 16);
    EXPECT_NE(a, b) << tok;
    EXPECT_NE(a, c) << tok;
    EXPECT_NE(b, c) << tok;
  }
}
