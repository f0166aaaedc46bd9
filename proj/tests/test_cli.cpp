#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "md5fol/cli.hpp"

using namespace md5fol;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("classify emits one json line") {
  const CliResult r = run({"classify", "--family", "G5_4_8", "--params",
                           "lambda=2", "--point", "0,1,0,0,0"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "{\"stratum\":\"generic\",\"orbit_dim\":2,\"top_type\":\"F1\","
        "\"canonical_target\":\"G5_4_5\"}\n");

  const CliResult fixed = run({"classify", "--family", "G5_4_14", "--params",
                               "lambda=0.5,mu=2,phi=1.2", "--point",
                               "3,0,0,0,0"});
  CHECK(fixed.code == 0);
  CHECK(fixed.out ==
        "{\"stratum\":\"fixed\",\"orbit_dim\":0,\"top_type\":\"F3\","
        "\"canonical_target\":\"G5_4_14(lambda=0,mu=1,"
        "phi=1.5707963267948966)\"}\n");
}

TEST_CASE("invalid inputs exit with code 2") {
  CHECK(run({"classify", "--family", "G5_9", "--point", "0,1,0,0,0"}).code == 2);
  CHECK(run({"classify", "--family", "G5_4_3", "--params", "lambda=1",
             "--point", "0,1,0,0,0"})
            .code == 2);
  CHECK(run({"classify", "--family", "G5_4_3", "--params", "lambda=2",
             "--point", "0,1,0"})
            .code == 2);
  CHECK(run({"classify", "--family", "G5_4_3", "--params", "lambda=2",
             "--point", "0,1,0,0,zz"})
            .code == 2);
  CHECK(run({"classify", "--family", "G5_4_3", "--params", "bogus=2",
             "--point", "0,1,0,0,0"})
            .code == 2);
  CHECK(run({"classify", "--family", "G5_4_3", "--params",
             "lambda=2,lambda=3", "--point", "0,1,0,0,0"})
            .code == 2);
  // missing required option
  CHECK(run({"classify", "--family", "G5_4_3"}).code == 2);
  // bad tolerance
  CHECK(run({"classify", "--family", "G5_4_3", "--params", "lambda=2",
             "--point", "0,1,0,0,0", "--tol-rank", "-1"})
            .code == 2);
  CHECK(run({"verify", "--scope", "G5_9_9", "--n-samples", "5"}).code == 2);
  CHECK(run({"verify", "--scope", "G5_4_4", "--format", "yaml"}).code == 2);
  CHECK(run({"orbit-sample", "--family", "G5_4_5", "--point", "0,1,0,0,0",
             "--format", "yaml"})
            .code == 2);
  CHECK(run({"orbit-sample", "--family", "G5_4_5", "--point", "0,1,0,0,0",
             "--x-count", "0"})
            .code == 2);
  CHECK(run({}).code == 2);
  const CliResult bad = run({"classify", "--family", "G5_9", "--point",
                             "0,1,0,0,0"});
  CHECK(bad.err.find("unknown family") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  const CliResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("md5fol") != std::string::npos);
  CHECK(run({"classify", "--help"}).code == 0);
}

TEST_CASE("orbit-sample tabulates the grid in row-major order") {
  const CliResult csv = run({"orbit-sample", "--family", "G5_4_5", "--point",
                             "0,1,0,0,0", "--x-min", "0", "--x-max", "1",
                             "--x-count", "2", "--a-min", "0", "--a-max", "0",
                             "--a-count", "1", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out ==
        "x,a,f1,f2,f3,f4,f5\n"
        "0,0,0,1,0,0,0\n"
        "1,0,1,1,0,0,0\n");

  const CliResult js = run({"orbit-sample", "--family", "G5_4_5", "--point",
                            "0,1,0,0,0", "--x-count", "1", "--a-min", "0",
                            "--a-max", "0", "--a-count", "1"});
  CHECK(js.code == 0);
  CHECK(js.out == "{\"x\":0,\"a\":0,\"f1\":0,\"f2\":1,\"f3\":0,\"f4\":0,"
                  "\"f5\":0}\n");

  // default grid: 5 x 5 rows
  const CliResult grid = run({"orbit-sample", "--family", "G5_4_5", "--point",
                              "0,1,0,0,0", "--format", "csv"});
  int lines = 0;
  for (char ch : grid.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 26);
}

TEST_CASE("orbit-sample warns and emits one row at a fixed point") {
  const CliResult r = run({"orbit-sample", "--family", "G5_4_5", "--point",
                           "3,0,0,0,0", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.err.find("fixed point") != std::string::npos);
  CHECK(r.out ==
        "x,a,f1,f2,f3,f4,f5\n"
        "3,0,3,0,0,0,0\n");
}

TEST_CASE("orbit-sample writes to a file and fails cleanly on bad paths") {
  const std::string path = "/tmp/md5fol_cli_test_sample.csv";
  std::remove(path.c_str());
  const CliResult r = run({"orbit-sample", "--family", "G5_4_5", "--point",
                           "0,1,0,0,0", "--x-count", "1", "--a-count", "1",
                           "--a-min", "0", "--a-max", "0", "--format", "csv",
                           "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path) ==
        "x,a,f1,f2,f3,f4,f5\n"
        "0,0,0,1,0,0,0\n");
  std::remove(path.c_str());

  const CliResult bad = run({"orbit-sample", "--family", "G5_4_5", "--point",
                             "0,1,0,0,0", "--out",
                             "/nonexistent-md5fol-dir/out.csv"});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("cannot open output file") != std::string::npos);
}

TEST_CASE("equiv-map applies the map and its inverse") {
  // integer powers land on exactly representable values
  const CliResult inv = run({"equiv-map", "--family", "G5_4_1", "--params",
                             "lambda1=2,lambda2=4,lambda3=-1", "--point",
                             "0,2,2,2,5", "--inverse"});
  CHECK(inv.code == 0);
  CHECK(inv.out == "0,4,16,0.5,5\n");

  const CliResult fwd = run({"equiv-map", "--family", "G5_4_1", "--params",
                             "lambda1=2,lambda2=4,lambda3=-1", "--point",
                             "0,4,16,0.5,5"});
  CHECK(fwd.code == 0);
  CHECK(fwd.out == "0,2,2,2,5\n");

  // identity on the canonical descriptor
  const CliResult id = run({"equiv-map", "--family", "G5_4_12", "--params",
                            "lambda=1,phi=1.5707963267948966", "--point",
                            "1,2,3,4,5"});
  CHECK(id.code == 0);
  CHECK(id.out == "1,2,3,4,5\n");
}

TEST_CASE("verify runs scoped, deterministically, and honors --out") {
  const std::vector<std::string> args = {"verify",      "--scope",
                                         "G5_4_4",      "--n-samples",
                                         "40",          "--seed",
                                         "11"};
  const CliResult one = run(args);
  CHECK(one.code == 0);
  CHECK(one.out.find("RESULT: PASS") != std::string::npos);
  CHECK(one.out.find("SUITE md-rank") != std::string::npos);
  const CliResult two = run(args);
  CHECK(two.out == one.out);

  const std::string path = "/tmp/md5fol_cli_test_verify.txt";
  std::remove(path.c_str());
  std::vector<std::string> with_out = args;
  with_out.push_back("--out");
  with_out.push_back(path);
  const CliResult three = run(with_out);
  CHECK(three.code == 0);
  CHECK(three.out.empty());
  CHECK(slurp(path) == one.out);
  std::remove(path.c_str());

  const CliResult js = run({"verify", "--scope", "G5_4_2", "--n-samples", "30",
                            "--seed", "11", "--format", "json"});
  CHECK(js.code == 0);
  CHECK(js.out.find("\"pass\": true") != std::string::npos);
  CHECK(js.out.find("RESULT: PASS") != std::string::npos);
}

TEST_CASE("verify exits 1 when a suite fails") {
  const CliResult r = run({"verify", "--scope", "G5_4_4", "--n-samples", "30",
                           "--seed", "11", "--tol-membership", "1e-18"});
  CHECK(r.code == 1);
  CHECK(r.out.find("RESULT: FAIL") != std::string::npos);
}
