#include "cubedance/service.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <thread>

#include "cubedance/cli.hpp"

namespace cubedance {
namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& tag) {
  static std::mt19937_64 rng{std::random_device{}()};
  auto dir = fs::temp_directory_path() / ("cubedance-test-" + tag + "-" + std::to_string(rng()));
  fs::remove_all(dir);
  return dir;
}

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = fresh_dir("svc"); }
  void TearDown() override { fs::remove_all(dir_); }

  Service make() { return Service(standard_group(), dir_); }
  static Json parse(const HttpResponse& r) { return Json::parse(r.body); }

  fs::path dir_;
};

TEST_F(ServiceTest, Graph) {
  auto svc = make();
  const auto r = svc.graph();
  ASSERT_EQ(r.status, 200);
  const auto j = parse(r);
  EXPECT_EQ(j["nodes"].size(), 28u);
  EXPECT_EQ(j["edges"].size(), 48u);
  ASSERT_EQ(j["quadrants"].size(), 4u);
  EXPECT_EQ(j["quadrants"][0]["chords"].size(), 7u);
}

TEST_F(ServiceTest, Options) {
  auto svc = make();
  const auto j = parse(svc.options());
  EXPECT_EQ(j["n"].size(), 12u);
  EXPECT_EQ(j["sigma"].size(), 8u);
  EXPECT_EQ(j["n"][0]["code"], "N=U;PL=P,L");
  EXPECT_EQ(j["g"]["step_semitones"], 4);
  std::size_t rotations = 0;
  for (const auto& s : j["sigma"]) rotations += s["kind"] == "rotation" ? 1 : 0;
  EXPECT_EQ(rotations, 4u);
}

TEST_F(ServiceTest, ResolveIdentity) {
  auto svc = make();
  const auto r = svc.resolve(R"js({"n": 0, "sigma": "()", "g": [0, 0, 0, 0]})js");
  ASSERT_EQ(r.status, 200) << r.body;
  const auto j = parse(r);
  EXPECT_EQ(j["encoding"], "N=U;PL=P,L;sigma=();g=0,0,0,0");
  EXPECT_EQ(j["mapping"]["Caug"], "Caug");
  EXPECT_EQ(j["nu"].size(), 28u);
  EXPECT_EQ(j["params"]["n"]["U"], "U");
}

TEST_F(ServiceTest, ResolveAlternativeInputs) {
  auto svc = make();
  const auto a = parse(svc.resolve(R"js({"n": {"U": "U", "P": "P", "L": "L"}, "sigma": ["Gaug", "Daug", "Faug", "Caug"], "g": [0, 0, 0, 0]})js"));
  const auto b = parse(svc.resolve(R"js({"n": "N=U;PL=P,L", "sigma": "(CGDF)", "g": [0, 0, 0, 0]})js"));
  EXPECT_EQ(a["encoding"], b["encoding"]);
  EXPECT_EQ(a["mapping"]["Caug"], "Gaug");
}

TEST_F(ServiceTest, ResolveRejectsNonDihedralSigma) {
  auto svc = make();
  const auto r = svc.resolve(R"js({"n": 0, "sigma": "(CG)", "g": [0, 0, 0, 0]})js");
  EXPECT_EQ(r.status, 400);
  const auto j = parse(r);
  EXPECT_EQ(j["error"]["code"], "rejected");
  EXPECT_EQ(j["error"]["kind"], "inadmissible_sigma");
  EXPECT_EQ(j["error"]["message"], "augmented permutation not a 4-cycle symmetry");
}

TEST_F(ServiceTest, ResolveValidatesInput) {
  auto svc = make();
  EXPECT_EQ(parse(svc.resolve("{not json")).at("error").at("code"), "invalid_json");
  EXPECT_EQ(parse(svc.resolve("[1]")).at("error").at("code"), "invalid_json");
  EXPECT_EQ(parse(svc.resolve(R"js({"n": 12, "sigma": "()", "g": [0,0,0,0]})js"))["error"]["code"], "invalid_n");
  EXPECT_EQ(parse(svc.resolve(R"js({"n": 0, "sigma": "(CQ)", "g": [0,0,0,0]})js"))["error"]["code"], "invalid_sigma");
  EXPECT_EQ(parse(svc.resolve(R"js({"n": 0, "sigma": "()", "g": [0,0,3,0]})js"))["error"]["code"], "invalid_g");
  EXPECT_EQ(parse(svc.resolve(R"js({"n": 0, "sigma": "()", "g": [0,0]})js"))["error"]["code"], "invalid_g");
}

TEST_F(ServiceTest, Transform) {
  auto svc = make();
  const auto r = svc.transform(
      R"js({"progression": ["C", "Am", "F", "G"], "automorphisms": ["N=U;PL=P,L;sigma=();g=1,1,1,1"]})js");
  ASSERT_EQ(r.status, 200) << r.body;
  const auto j = parse(r);
  EXPECT_EQ(j["chain"][0]["chords"], Json::parse(R"js(["E", "Dbm", "A", "B"])js"));
  EXPECT_EQ(j["progression"]["annotations"].size(), 3u);

  const auto bad = parse(svc.transform(R"js({"progression": "C,, G"})js"));
  EXPECT_EQ(bad["error"]["code"], "invalid_progression");
  EXPECT_EQ(bad["error"]["token"], 2);
  const auto bad_aut = parse(svc.transform(R"js({"progression": "C", "automorphisms": ["N=U;PL=P,L;sigma=();g=0,0,0,0", "x"]})js"));
  EXPECT_EQ(bad_aut["error"]["code"], "invalid_automorphism");
  EXPECT_EQ(bad_aut["error"]["index"], 1);
}

TEST_F(ServiceTest, SessionLifecycleSurvivesRestart) {
  std::string id;
  {
    auto svc = make();
    const auto r = svc.create_session(R"js({"progression": "C Am", "automorphisms": ["N=LUL;PL=P,L;sigma=();g=0,0,0,0"]})js");
    ASSERT_EQ(r.status, 200) << r.body;
    const auto j = parse(r);
    id = j["id"];
    EXPECT_TRUE(SessionStore::valid_id(id));
    EXPECT_EQ(j["progression"], Json::parse(R"js(["C", "Am"])js"));
    EXPECT_EQ(j["automorphisms"][0], "N=PUP;PL=P,L;sigma=();g=0,0,0,0");
    std::vector<std::string> keys;
    for (auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"id", "progression", "automorphisms", "created", "modified"}));
  }
  {
    auto svc = make();
    const auto r = svc.get_session(id);
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(parse(r)["progression"], Json::parse(R"js(["C", "Am"])js"));
    const auto put = svc.put_session(id, R"js({"progression": ["G"]})js");
    ASSERT_EQ(put.status, 200);
    EXPECT_EQ(parse(put)["progression"], Json::parse(R"js(["G"])js"));
    EXPECT_EQ(parse(put)["automorphisms"].size(), 1u);
  }
  auto svc = make();
  EXPECT_EQ(parse(svc.get_session(id))["progression"], Json::parse(R"js(["G"])js"));
}

TEST_F(ServiceTest, SessionErrors) {
  auto svc = make();
  EXPECT_EQ(svc.get_session("0123456789abcdef0123456789abcdef").status, 404);
  EXPECT_EQ(svc.get_session("../etc/passwd").status, 404);
  EXPECT_EQ(svc.put_session("0123456789abcdef0123456789abcdef", "{}").status, 404);
  EXPECT_EQ(svc.create_session(R"js({"progression": "C,,G"})js").status, 400);
  EXPECT_EQ(svc.create_session(R"js({"automorphisms": ["nope"]})js").status, 400);
  const auto empty = svc.create_session("");
  ASSERT_EQ(empty.status, 200);
  EXPECT_EQ(parse(empty)["progression"], Json::array());
}

TEST_F(ServiceTest, ConcurrentUpdatesLeaveValidSession) {
  auto svc = make();
  const std::string id = parse(svc.create_session("{}"))["id"];
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int k = 0; k < 20; ++k) {
        const std::string chord = format_chord(Chord::major(PitchClass(t + k)));
        EXPECT_EQ(svc.put_session(id, "{\"progression\": [\"" + chord + "\"]}").status, 200);
      }
    });
  }
  for (auto& th : threads) th.join();
  const auto j = parse(svc.get_session(id));
  EXPECT_EQ(j["progression"].size(), 1u);
  std::size_t files = 0;
  for (auto& e : fs::directory_iterator(dir_)) files += e.path().extension() == ".json" ? 1 : 0;
  EXPECT_EQ(files, 1u);
}

TEST_F(ServiceTest, HttpRoundTrip) {
  auto svc = make();
  httplib::Server server;
  svc.mount(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);

  auto graph = client.Get("/api/graph");
  ASSERT_TRUE(graph);
  EXPECT_EQ(graph->status, 200);
  EXPECT_EQ(graph->body, svc.graph().body);

  auto options = client.Get("/api/automorphisms/options");
  ASSERT_TRUE(options);
  EXPECT_EQ(options->status, 200);

  auto resolve = client.Post("/api/automorphisms/resolve", R"js({"n": 0, "sigma": "(CG)", "g": [0,0,0,0]})js",
                             "application/json");
  ASSERT_TRUE(resolve);
  EXPECT_EQ(resolve->status, 400);

  auto created = client.Post("/api/sessions", R"js({"progression": "C G"})js", "application/json");
  ASSERT_TRUE(created);
  ASSERT_EQ(created->status, 200);
  const std::string id = Json::parse(created->body)["id"];
  auto updated = client.Put("/api/sessions/" + id, R"js({"progression": "F"})js", "application/json");
  ASSERT_TRUE(updated);
  EXPECT_EQ(updated->status, 200);
  auto fetched = client.Get("/api/sessions/" + id);
  ASSERT_TRUE(fetched);
  EXPECT_EQ(Json::parse(fetched->body)["progression"], Json::parse(R"js(["F"])js"));
  auto missing = client.Get("/api/sessions/ffffffffffffffffffffffffffffffff");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  server.stop();
  worker.join();
}

TEST_F(ServiceTest, CliAndServiceAgree) {
  const auto c = detail::check_cli_service_consistency(standard_group());
  EXPECT_TRUE(c.passed) << c.detail;
}

}  // namespace
}  // namespace cubedance
