#include <gtest/gtest.h>

#include "support.hpp"

using namespace rankcrypt;

namespace {

TEST(Artifact, TypedPayloadsRoundTrip) {
  const auto f = BinaryField::with_default_modulus(13);
  const auto tw = TowerField::with_default_modulus(f, 3);
  Rng rng(1);
  ArtifactFile a;
  put_scheme_header(a, "secret-key", "custom", LigaParams{2, 13, 13, 5, 5, 3, 2});
  put_moduli(a, f, &tw);
  const auto mv = rctest::random_message(f, 7, rng);
  TopVector tv(4);
  for (auto& x : tv) x = tw.random(rng);
  const auto poly = random_qpoly(f, 9, rng);
  const auto bits = BitMatrix::random(5, 11, rng);
  a.put_mid("mv", f, mv);
  a.put_top("tv", tw, tv);
  a.put_poly("poly", f, poly);
  a.put_bits("bits", bits);
  a.put_mid("empty", f, MidVector{});

  const auto text = a.emit();
  const auto b = ArtifactFile::parse(text);
  EXPECT_EQ(a, b);
  EXPECT_EQ(b.emit(), text);
  EXPECT_EQ(b.get_mid("mv", f), mv);
  EXPECT_EQ(b.get_top("tv", tw), tv);
  EXPECT_EQ(b.get_poly("poly", f), poly);
  EXPECT_EQ(b.get_bits("bits"), bits);
  EXPECT_TRUE(b.get_mid("empty", f).empty());
  EXPECT_EQ(get_mid_field(b), f);
  EXPECT_EQ(get_tower(b), tw);
  EXPECT_EQ(std::get<LigaParams>(get_scheme_params(b)), (LigaParams{2, 13, 13, 5, 5, 3, 2}));
}

TEST(Artifact, DigitOrderIsLittleEndian) {
  const auto f = BinaryField::with_default_modulus(8);
  ArtifactFile a;
  // Element with digits 1, 0, 0, 0, 0, 0, 0, 1 (1 + z^7) packs to 0x81.
  std::vector<std::uint8_t> d{1, 0, 0, 0, 0, 0, 0, 1};
  a.put_mid("x", f, MidVector{f.from_digits(d)});
  EXPECT_NE(a.emit().find("data.x: mid 1 81\n"), std::string::npos);
  put_moduli(a, f);
  EXPECT_NE(a.emit().find("modulus.mid: 8 1b01\n"), std::string::npos);  // x^8 + x^4 + x^3 + x + 1
}

TEST(Artifact, MalformedInputRejected) {
  EXPECT_THROW(ArtifactFile::parse(""), FormatError);
  EXPECT_THROW(ArtifactFile::parse("format: other/9\n"), FormatError);
  EXPECT_THROW(ArtifactFile::parse("format: rankcrypt/1\nno separator\n"), FormatError);
  EXPECT_THROW(ArtifactFile::parse("format: rankcrypt/1\ndata.x: mid 1 zz\n"), FormatError);
  EXPECT_THROW(ArtifactFile::parse("format: rankcrypt/1\ndata.x: mid 1 abc\n"), FormatError);
  EXPECT_THROW(ArtifactFile::parse("format: rankcrypt/1\nkind: a\nkind: b\n"), FormatError);
  const auto f = BinaryField::with_default_modulus(8);
  const auto a = ArtifactFile::parse("format: rankcrypt/1\ndata.x: mid 2 ff\n");
  EXPECT_THROW(a.get_mid("x", f), FormatError);  // two elements need two bytes
  EXPECT_THROW(a.get_top("x", TowerField::with_default_modulus(f, 2)), FormatError);
  EXPECT_THROW(a.get_mid("missing", f), FormatError);
  EXPECT_THROW(a.get("kind"), FormatError);
  const auto bad_mod = ArtifactFile::parse("format: rankcrypt/1\nmodulus.mid: 2 05\n");  // x^2 + 1
  EXPECT_THROW(get_mid_field(bad_mod), FormatError);
}

TEST(Csv, AttackRoundTrip) {
  std::vector<TrialOutcome> rows{{0, 0, true, 2, 12.5, ""}, {1, 0, false, 16, 3.25, "step1"}};
  const auto text = attack_csv(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), kAttackCsvHeader);
  const auto back = parse_attack_csv(text);
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(attack_csv(back), text);
  EXPECT_EQ(back[1].failed_step, "step1");
  EXPECT_FALSE(back[1].success);
}

TEST(Csv, BenchRoundTripWithMean) {
  std::vector<BenchRecord> rows{{"liga-ci", {0, 7, 0, 0, 10.0, ""}}, {"liga-ci", {1, 8, true, 0, 20.0, ""}}};
  rows[0].outcome.success = true;
  const auto text = bench_csv(rows);
  EXPECT_NE(text.find("liga-ci,mean,,15.000,1.000"), std::string::npos);
  const auto back = parse_bench_csv(text);
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(bench_csv(back), text);
  EXPECT_EQ(back[1].outcome.seed, 8U);
  EXPECT_THROW(parse_bench_csv("wrong,header\n"), FormatError);
}

}  // namespace
