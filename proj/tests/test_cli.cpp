#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rankcrypt/artifact.hpp"
#include "rankcrypt/csv.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rankcrypt_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args, const std::string& out_name = "stdout.txt") const {
    const std::string cmd = std::string(RANKCRYPT_CLI) + " " + args + " > " + path(out_name) + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Artifact text with the kind line removed, for comparing plaintexts.
  std::string body(const std::string& name) const {
    auto a = rankcrypt::ArtifactFile::read(path(name));
    a.set("kind", "x");
    return a.emit();
  }

  fs::path dir_;
};

TEST_F(Cli, ParamsCheckAndList) {
  EXPECT_EQ(run("params check liga-128"), 0);
  EXPECT_EQ(read("stdout.txt"), "lhs=79 n=92 broken=true\n");
  EXPECT_EQ(run("params check ramesses-64"), 0);
  EXPECT_EQ(read("stdout.txt"), "lhs=54 n=64 broken=true\n");
  EXPECT_EQ(run("params list"), 0);
  const auto list = read("stdout.txt");
  for (const char* name : {"ramesses-64", "ramesses-80", "ramesses-96", "ramesses-164-pke", "liga-128", "liga-192",
                           "liga-256", "ramesses-ci", "liga-ci"})
    EXPECT_NE(list.find(name), std::string::npos) << name;
  EXPECT_EQ(run("params check nope"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("keygen --params liga-ci"), 2);
}

TEST_F(Cli, FileRoundTripsAndAttacks) {
  for (const std::string set : {"liga-ci", "ramesses-ci"}) {
    SCOPED_TRACE(set);
    ASSERT_EQ(run("keygen --params " + set + " --seed 3 --public " + path("pk") + " --secret " + path("sk")), 0);
    ASSERT_EQ(run("plaintext --params " + set + " --seed 4 --out " + path("pt")), 0);
    ASSERT_EQ(run("encrypt --public " + path("pk") + " --in " + path("pt") + " --out " + path("ct") + " --seed 5"), 0);
    ASSERT_EQ(run("encrypt --public " + path("pk") + " --in " + path("pt") + " --out " + path("ct2") + " --seed 5"), 0);
    EXPECT_EQ(read("ct"), read("ct2"));
    const int dec = run("decrypt --secret " + path("sk") + " --in " + path("ct") + " --out " + path("pt2"));
    if (set == "liga-ci" || dec == 0) {
      ASSERT_EQ(dec, 0);
      EXPECT_EQ(read("pt"), read("pt2"));
    } else {
      EXPECT_EQ(dec, 1);  // rank drop
    }
    ASSERT_EQ(run("attack --public " + path("pk") + " --ciphertext " + path("ct") + " --out " + path("rec") +
                  " --seed 6 --csv " + path("report.csv")),
              0);
    EXPECT_EQ(body("rec"), body("pt"));
    const auto rows = rankcrypt::parse_attack_csv(read("report.csv"));
    ASSERT_EQ(rows.size(), 1U);
    EXPECT_TRUE(rows[0].success);
  }
}

TEST_F(Cli, MismatchedFilesRefused) {
  ASSERT_EQ(run("keygen --params liga-ci --seed 1 --public " + path("pk") + " --secret " + path("sk")), 0);
  ASSERT_EQ(run("plaintext --params ramesses-ci --seed 1 --out " + path("pt")), 0);
  EXPECT_EQ(run("encrypt --public " + path("pk") + " --in " + path("pt") + " --out " + path("ct")), 2);
  EXPECT_EQ(run("decrypt --secret " + path("pk") + " --in " + path("pt") + " --out " + path("x")), 2);
  std::ofstream(path("junk")) << "not an artifact\n";
  EXPECT_EQ(run("encrypt --public " + path("junk") + " --in " + path("pt") + " --out " + path("ct")), 1);
}

TEST_F(Cli, DeterministicKeygen) {
  ASSERT_EQ(run("keygen --params liga-ci --seed 9 --public " + path("a") + " --secret " + path("as")), 0);
  ASSERT_EQ(run("keygen --params liga-ci --seed 9 --public " + path("b") + " --secret " + path("bs")), 0);
  EXPECT_EQ(read("a"), read("b"));
  EXPECT_EQ(read("as"), read("bs"));
}

TEST_F(Cli, GeneratedAttackAndBench) {
  EXPECT_EQ(run("attack --scheme liga --params liga-ci --trials 3 --jobs 2 --seed 1"), 0);
  const auto rows = rankcrypt::parse_attack_csv(read("stdout.txt"));
  ASSERT_EQ(rows.size(), 3U);
  for (const auto& r : rows) EXPECT_TRUE(r.success);
  EXPECT_EQ(run("attack --scheme ramesses --params liga-ci"), 2);
  EXPECT_EQ(run("bench --params ci-small --trials 2 --seed 4 --out " + path("bench.csv")), 0);
  const auto bench = rankcrypt::parse_bench_csv(read("bench.csv"));
  EXPECT_EQ(bench.size(), 4U);
  EXPECT_EQ(bench[1].outcome.seed, 5U);
  EXPECT_EQ(read("bench.csv").find("ramesses-ci,mean") != std::string::npos, true);
}

TEST_F(Cli, Selftest) {
  EXPECT_EQ(run("selftest"), 0);
  const auto out = read("stdout.txt");
  EXPECT_NE(out.find("PASS qpoly-laws"), std::string::npos);
  EXPECT_NE(out.find("PASS decoder-roundtrips"), std::string::npos);
  EXPECT_NE(out.find("PASS attack-plant-recover"), std::string::npos);
}

}  // namespace
