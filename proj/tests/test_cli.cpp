#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const char* bin = std::getenv("UQR_CLI");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("verify --suite bogus").code == 2);
  CHECK(run("verify --window 0 --suite lstat").code == 2);
  CHECK(run("compute r --sign ++ --n 1").code == 2);
  CHECK(run("compute x").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("compute i --n 0").code == 2);
}

TEST_CASE("verify reports") {
  Run r = run("verify --suite lstat --n 4 --q-degree 30 --format json --no-timing");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "uqr-report/1");
  CHECK(j["status"] == "pass");
  CHECK(j["failures"] == 0);
  REQUIRE(j["records"].size() > 0);
  for (auto& rec : j["records"]) {
    CHECK(rec["suite"] == "lstat");
    CHECK(rec["status"] == "pass");
    CHECK(rec.contains("identity"));
    CHECK(rec.contains("component"));
    CHECK_FALSE(rec.contains("seconds"));
  }
  CHECK(run("verify --suite factorization --max-n 2 --window 3").code == 0);
}

TEST_CASE("reports are deterministic without timing") {
  auto dir = std::filesystem::temp_directory_path();
  std::string a = (dir / "uqr_report_a.json").string(), b = (dir / "uqr_report_b.json").string();
  CHECK(run("verify --suite pairing,recurrence --window 2 --max-n 2 --no-timing --jobs 1 --report " + a).code == 0);
  CHECK(run("verify --suite pairing,recurrence --window 2 --max-n 2 --no-timing --jobs 2 --report " + b).code == 0);
  std::ifstream fa(a), fb(b);
  std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
  CHECK_FALSE(sa.empty());
  CHECK(sa == sb);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("compute") {
  Run r0 = run("compute rbar --n 0 --format text");
  CHECK(r0.code == 0);
  CHECK(r0.out == "1⊗1\n");
  Run r1 = run("compute r --sign +- --n 1 --window 2");
  CHECK(r1.code == 0);
  auto j = nlohmann::json::parse(r1.out);
  CHECK(j["n"] == 1);
  CHECK(j["sign"] == "+-");
  Run again = run("compute r --sign +- --n 1 --window 2 --method closed");
  CHECK(nlohmann::json::parse(again.out)["element"] == j["element"]);
  Run i2 = run("compute i --sign -+ --n 2 --window 3");
  CHECK(i2.code == 0);
  CHECK(i2.out == run("compute i --sign -+ --n 2 --window 3").out);
  CHECK(nlohmann::json::parse(i2.out).size() > 0);
}
