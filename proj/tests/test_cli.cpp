#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "cli.hpp"
#include "doctest.h"
#include "wiresafe/serialize.hpp"

using namespace wiresafe;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wiresafe_cli_" + name)).string();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream s(text);
  for (std::string l; std::getline(s, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("construct") {
  const Run r = run({"construct"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("H") == Json::parse(R"([["1", "2", "4"]])"));
  CHECK(j.at("k") == 1);
  CHECK(j.at("mu") == 2);
  CHECK(scheme_from_json(j).parity_check() == build_gabidulin(FieldSpec::standard(3), 3, 1).parity_check());

  CHECK(run({"construct", "--n", "4"}).code == 1);
  CHECK(run({"construct", "--k", "2", "--mu", "2"}).code == 1);
  CHECK(run({"construct", "--scheme", "reed-muller"}).code == 1);
  CHECK(run({"construct", "--generators", "1,1,2"}).code == 1);
  CHECK(run({"construct", "--modulus", "9"}).code == 1);

  const std::string path = temp_path("code.json");
  const Run custom = run({"construct", "--generators", "1,3,7", "--k", "2", "--out", path});
  CHECK(custom.code == 0);
  CHECK(lines(custom.out) == std::vector<std::string>{"1 3 7", "1 5 3"});
  std::ifstream f(path);
  const Json saved = Json::parse(f);
  CHECK(saved.at("generators") == Json::parse(R"(["1", "3", "7"])"));
  CHECK(code_from_json(saved).parity_check()(1, 2) == 0x3);  // 7^2 = a^2 + a + 1 squared
}

TEST_CASE("encode and decode stream JSON lines") {
  CHECK(run({"encode"}).out.empty());
  CHECK(run({"encode"}).code == 0);

  const std::string path = temp_path("code_k2.json");
  REQUIRE(run({"construct", "--k", "2", "--out", path}).code == 0);
  std::string messages;
  for (int s = 0; s < 8; ++s) messages += "[\"" + std::to_string(s) + "\", \"" + std::to_string(7 - s) + "\"]\n";
  const Run enc = run({"encode", "--code", path, "--seed", "9"}, messages);
  REQUIRE(enc.code == 0);
  CHECK(lines(enc.out).size() == 8);
  const Run dec = run({"decode", "--code", path}, enc.out);
  REQUIRE(dec.code == 0);
  const auto decoded = lines(dec.out);
  REQUIRE(decoded.size() == 8);
  for (int s = 0; s < 8; ++s)
    CHECK(Json::parse(decoded[static_cast<std::size_t>(s)]) == Json::array({std::to_string(s), std::to_string(7 - s)}));

  // Object form, bad lines reported by number, good lines still processed.
  const Run mixed = run({"encode"}, "{\"message\": [\"5\"]}\n[\"1\", \"2\"]\n\nnot json\n[\"9\"]\n[\"3\"]\n");
  CHECK(mixed.code == 1);
  CHECK(lines(mixed.out).size() == 2);
  CHECK(mixed.err.find("line 2:") != std::string::npos);
  CHECK(mixed.err.find("line 4:") != std::string::npos);
  CHECK(mixed.err.find("line 5:") != std::string::npos);
  CHECK(mixed.err.find("line 3:") == std::string::npos);

  const Run x = run({"decode"}, "[\"3\", \"1\", \"0\"]\n");
  CHECK(x.out == "[\"1\"]\n");
}

TEST_CASE("simulate") {
  // Seed 14 gives a feasible random code on the butterfly at n = 2.
  const Run ok = run({"simulate", "--m", "2", "--seed", "14"});
  CHECK(ok.code == 0);
  const Json j = Json::parse(ok.out);
  CHECK(j.at("feasible") == true);
  CHECK(j.at("n") == 2);
  CHECK(j.at("mincut") == 2);
  for (const auto& s : j.at("sinks")) {
    CHECK(s.at("success") == true);
    CHECK(s.at("decoded") == j.at("message"));
  }
  CHECK(network_from_json(j.at("network")).edge_count() == 7);

  const Run bad = run({"simulate", "--m", "2", "--seed", "1"});
  CHECK(bad.code == 2);
  CHECK(Json::parse(bad.out).at("feasible") == false);

  const Run tap = run({"simulate", "--m", "2", "--seed", "14", "--wiretap", "4,0"});
  const Json t = Json::parse(tap.out);
  const auto code = assign_random_code(butterfly_network(), 2, 14);
  const std::vector<int> ids{0, 4};
  CHECK(base_matrix_from_json(t.at("wiretap").at("B")) == wiretap_matrix(code, ids));
  const FieldSpec f = FieldSpec::standard(2);
  CHECK(vector_from_json(t.at("wiretap").at("W"), f) ==
        multiply(wiretap_matrix(code, ids), vector_from_json(t.at("codeword"), f)));

  CHECK(run({"simulate", "--graph", "nowhere"}).code == 1);
  const std::string graph = temp_path("graph.json");
  std::ofstream(graph) << R"({"nodes": ["s", "a", "b", "t"], "edges": [{"id": 0, "from": "s", "to": "a"},
      {"id": 1, "from": "a", "to": "b"}, {"id": 2, "from": "b", "to": "a"}, {"id": 3, "from": "b", "to": "t"}],
      "source": "s", "sinks": ["t"]})";
  const Run cyclic = run({"simulate", "--graph", graph});
  CHECK(cyclic.code == 1);
  CHECK(cyclic.err.find("cycle") != std::string::npos);

  const std::string unreachable = temp_path("unreachable.json");
  std::ofstream(unreachable) << R"({"nodes": ["s", "a", "t"], "edges": [{"id": 0, "from": "s", "to": "a"}],
      "source": "s", "sinks": ["t"]})";
  const Run lost = run({"simulate", "--graph", unreachable, "--n", "1", "--m", "1"});
  CHECK(lost.code == 2);
  CHECK(Json::parse(lost.out).at("sinks").at(0).at("max_flow") == 0);
}

TEST_CASE("audit") {
  const Run secure = run({"audit"});
  CHECK(secure.code == 0);
  const Json j = Json::parse(secure.out);
  CHECK(j.at("summary").at("verdict") == "SECURE");
  CHECK(j.at("summary").at("sets_audited") == 42);
  CHECK(j.at("entries").size() == 42);

  const Run clear = run({"audit", "--scheme", "cleartext"});
  CHECK(clear.code == 2);
  CHECK(Json::parse(clear.out).at("summary").at("verdict") == "INSECURE");

  const Run net = run({"audit", "--graph", "butterfly", "--m", "2", "--seed", "14"});
  CHECK(net.code == 0);
  CHECK(Json::parse(net.out).at("summary").at("sets_audited") == 7);

  const Run one = run({"audit", "--graph", "butterfly", "--m", "2", "--seed", "14", "--wiretap", "4"});
  CHECK(one.code == 0);
  CHECK(Json::parse(one.out).at("entries").at(0).at("edges") == Json::array({4}));

  const Run small = run({"audit", "--budget", "100"});
  CHECK(small.code == 1);
  CHECK(small.err.find("required") != std::string::npos);

  ::setenv("WIRESAFE_BUDGET", "100", 1);
  CHECK(run({"audit"}).code == 1);
  CHECK(run({"audit", "--budget", "1048576"}).code == 0);
  ::setenv("WIRESAFE_BUDGET", "lots", 1);
  CHECK(run({"audit"}).code == 1);
  ::unsetenv("WIRESAFE_BUDGET");
}

TEST_CASE("bench") {
  const Run r = run({"bench", "--lengths", "8", "--iters", "20", "--batches", "3"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("field").at("m") == 8);
  CHECK(j.at("points").size() == 5);
  CHECK(j.at("encode_fit").contains("r2"));
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == 1);
  CHECK(run({"transmit"}).code == 1);
  CHECK(run({"construct", "--n", "many"}).code == 1);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("identical seeds give identical output") {
  const std::vector<std::vector<std::string>> commands{
      {"construct"}, {"simulate", "--m", "2", "--seed", "14", "--wiretap", "1,5"}, {"audit", "--k", "2"},
      {"audit", "--graph", "diamond", "--seed", "3"}};
  for (const auto& c : commands) CHECK(run(c).out == run(c).out);
  const std::string msgs = "[\"1\"]\n[\"2\"]\n";
  CHECK(run({"encode", "--seed", "5"}, msgs).out == run({"encode", "--seed", "5"}, msgs).out);
  CHECK(run({"encode", "--seed", "5"}, msgs).out != run({"encode", "--seed", "6"}, msgs).out);
}

TEST_CASE("the installed executable") {
  const std::string out = temp_path("exe_out.json");
  const std::string cmd = std::string("\"") + WIRESAFE_EXE + "\" audit --scheme cleartext --out \"" + out + "\"";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 2);
  std::ifstream f(out);
  CHECK(Json::parse(f).at("summary").at("secure") == false);
}
