#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const char* exe = std::getenv("PLUMBO_CLI");
  REQUIRE_MESSAGE(exe != nullptr, "PLUMBO_CLI is not set");
  const std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

json run_json(const std::string& args, int expect = 0) {
  const auto r = cli(args);
  CHECK_MESSAGE(r.code == expect, args << "\n" << r.out);
  return json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = std::string(P_tmpdir) + "/plumbo_test_" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("rational on the (-1) vertex") {
  const auto j = run_json("rational --fixture one-1");
  CHECK(j["ok"] == true);
  CHECK(j["result"]["rational"] == true);
  CHECK(j["result"]["trace"].size() == 1);
  CHECK(j["config"]["command"] == "rational");
}

TEST_CASE("knot on the trefoil") {
  const auto j = run_json("knot --fixture trefoil");
  CHECK(j["result"]["classes"][0]["jumps"] == json::array({"1", "0", "-1"}));
}

TEST_CASE("graph files") {
  const auto path = temp_file("a2.json", R"({"vertices":[{"id":"x","framing":-2},{"id":"y","framing":-2}],
    "edges":[["x","y"]]})");
  const auto j = run_json("homology --input " + path);
  CHECK(j["ok"] == true);
  CHECK(run_json("lspace --input " + path)["result"]["lspace"] == true);
  std::remove(path.c_str());
}

TEST_CASE("verification commands") {
  const auto v = run_json("verify --fixture unknot --k 2..3");
  REQUIRE(v["result"].size() == 2);
  CHECK(v["ok"] == true);
  CHECK(run_json("hfminus --fixture chain-12 --vertex c1")["ok"] == true);
  CHECK(run_json("model --fixture trefoil")["ok"] == true);
}

TEST_CASE("errors and exit codes") {
  const auto bad = temp_file("bad.json", R"({"vertices":[)");
  const auto j = run_json("rational --input " + bad, 1);
  CHECK(j["error"]["kind"] == "input");
  std::remove(bad.c_str());
  CHECK(run_json("rational --input /nonexistent/graph.json", 1)["error"]["kind"] == "input");
  CHECK(run_json("knot --fixture E8", 1)["error"]["kind"] == "input");
  CHECK(run_json("rational --fixture no-such-thing", 1)["ok"] == false);
  CHECK(cli("frobnicate").code == 1);
  CHECK(cli("rational --fixture one-1 --nmax 1").code == 1);
  CHECK(cli("cone --fixture trefoil --k x..y").code == 1);
}

TEST_CASE("table output and determinism") {
  const auto t = cli("rational --fixture E8 --format table");
  CHECK(t.code == 0);
  CHECK(t.out.find("rational: true") != std::string::npos);
  const auto a = cli("knot --fixture trefoil --seed 3"), b = cli("knot --fixture trefoil --seed 3");
  CHECK(a.out == b.out);
}
