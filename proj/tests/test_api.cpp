#include <gtest/gtest.h>

#include <thread>

#include "support/fixtures.hpp"
#include "support/json_schema.hpp"
#include "wos/api.hpp"
#include "wos/error.hpp"
#include "wos/nodelink.hpp"
#include "wos/synth.hpp"

#include <httplib.h>

using namespace wos;
using nlohmann::json;
using wos::testing::f1_mined;
using wos::testing::join_errors;
using wos::testing::load_schema;
using wos::testing::validate;

namespace {

ApiResponse get(const ApiService& api, const std::string& path, std::map<std::string, std::string> query = {}) {
  ApiRequest r;
  r.path = path;
  r.query = std::move(query);
  return api.handle(r);
}

ApiResponse post(const ApiService& api, const std::string& path, const std::string& body) {
  ApiRequest r;
  r.method = "POST";
  r.path = path;
  r.body = body;
  return api.handle(r);
}

void expect_valid(const std::string& schema, const json& doc) {
  auto errors = validate(load_schema(schema), doc);
  EXPECT_TRUE(errors.empty()) << schema << ":\n" << join_errors(errors) << doc.dump(2);
}

void expect_error(const ApiResponse& r, int status, const std::string& kind) {
  EXPECT_EQ(r.status, status) << r.text();
  EXPECT_EQ(r.body.value("error", ""), kind);
  expect_valid("error", r.body);
}

}  // namespace

TEST(Api, Healthz) {
  ApiService api(f1_mined());
  auto r = get(api, "/healthz");
  ASSERT_EQ(r.status, 200);
  expect_valid("healthz", r.body);
  EXPECT_EQ(r.body["scholars"], 3);
  EXPECT_EQ(r.body["publications"], 4);
  EXPECT_EQ(r.body["edges"], 9);
}

TEST(Api, SearchFuzzyName) {
  ApiService api(f1_mined());
  auto r = get(api, "/scholars", {{"q", "alic"}});
  ASSERT_EQ(r.status, 200);
  expect_valid("search", r.body);
  ASSERT_EQ(r.body["hits"].size(), 1u);
  EXPECT_EQ(r.body["hits"][0]["id"], "s1");
  EXPECT_EQ(r.body["hits"][0]["match"], "prefix");
  EXPECT_EQ(r.body["query"]["kind"], "name_search");
}

TEST(Api, SearchRelationQuery) {
  ApiService api(f1_mined());
  auto r = get(api, "/scholars", {{"q", "Alice's advisor"}});
  ASSERT_EQ(r.status, 200);
  expect_valid("search", r.body);
  EXPECT_EQ(r.body["status"], "ok");
  EXPECT_EQ(r.body["query"]["relation"], "advisor");
  EXPECT_EQ(r.body["related"][0][0]["id"], "s2");

  auto none = get(api, "/scholars", {{"q", "Bob's advisor"}});
  expect_valid("search", none.body);
  EXPECT_EQ(none.body["status"], "no_relation");

  auto miss = get(api, "/scholars", {{"q", "xyz"}});
  expect_valid("search", miss.body);
  EXPECT_EQ(miss.body["status"], "no_match");
  EXPECT_TRUE(miss.body["hits"].empty());
}

TEST(Api, SearchErrors) {
  ApiService api(f1_mined());
  expect_error(get(api, "/scholars"), 400, "empty_query");
  expect_error(get(api, "/scholars", {{"q", "   "}}), 400, "empty_query");
  expect_error(get(api, "/scholars", {{"q", "bob"}, {"limit", "-1"}}), 400, "bad_request");
  expect_error(get(api, "/scholars", {{"q", "bob"}, {"limit", "ten"}}), 400, "bad_request");
}

TEST(Api, Profile) {
  ApiService api(f1_mined());
  auto r = get(api, "/scholars/s1");
  ASSERT_EQ(r.status, 200);
  expect_valid("profile", r.body);
  EXPECT_EQ(r.body["name"], "Alice");
  EXPECT_EQ(r.body["first_pub_year"], 2010);
  EXPECT_EQ(r.body["measures"]["collaborators"], 2.0);
  EXPECT_EQ(r.body["advisors"][0]["id"], "s2");
  EXPECT_EQ(r.body["advisees"][0]["id"], "s3");
  EXPECT_EQ(r.body["geo"]["lat"], 48.1);
  expect_error(get(api, "/scholars/nobody"), 404, "not_found");
}

TEST(Api, ProfileWithoutGeo) {
  GraphStore g = f1_mined();
  g.set_geo_table({});
  ApiService api(std::move(g));
  auto r = get(api, "/scholars/s2");
  expect_valid("profile", r.body);
  EXPECT_TRUE(r.body["geo"].is_null());
}

TEST(Api, EgoEveryKind) {
  ApiService api(f1_mined());
  for (const char* kind : {"coauthor", "advisor", "cites", "cocited", "team"})
    for (const char* id : {"s1", "s2", "s3"}) {
      auto r = get(api, std::string("/scholars/") + id + "/ego", {{"kind", kind}, {"geo", "true"}, {"series", "1"}});
      ASSERT_EQ(r.status, 200) << r.text();
      expect_valid("ego", r.body);
      EXPECT_EQ(r.body["kind"], kind);
      EXPECT_EQ(r.body["nodes"][0]["identity"], "center");
    }
}

TEST(Api, EgoCoauthorsOfAlice) {
  ApiService api(f1_mined());
  auto r = get(api, "/scholars/s1/ego");
  ASSERT_EQ(r.status, 200);
  const auto& nodes = r.body["nodes"];
  ASSERT_EQ(nodes.size(), 3u);
  EXPECT_EQ(nodes[1]["id"], "s2");
  EXPECT_EQ(nodes[1]["identity"], "advisor");
  EXPECT_EQ(nodes[1]["size"], 1.0);
  EXPECT_EQ(nodes[2]["id"], "s3");
  EXPECT_EQ(nodes[2]["identity"], "advisee");
  EXPECT_EQ(nodes[2]["size"], 0.5);
  EXPECT_EQ(r.body["links"].size(), 2u);
  EXPECT_FALSE(r.body.contains("geo"));
  EXPECT_FALSE(r.body.contains("series"));
}

TEST(Api, EgoSeries) {
  ApiService api(f1_mined());
  auto r = get(api, "/scholars/s1/ego", {{"series", "true"}});
  std::map<int, int> counts;
  for (const auto& p : r.body["series"]) counts[p["year"].get<int>()] = p["count"].get<int>();
  EXPECT_EQ(counts[2010], 1);
  EXPECT_EQ(counts[2011], 1);
  EXPECT_EQ(counts[2012], 1);
  EXPECT_EQ(counts[2009], 0);
}

TEST(Api, EgoErrors) {
  ApiService api(f1_mined());
  expect_error(get(api, "/scholars/s1/ego", {{"kind", "friend"}}), 400, "bad_request");
  expect_error(get(api, "/scholars/s1/ego", {{"kind", "ADVISOR_OF"}}), 400, "bad_request");
  expect_error(get(api, "/scholars/s1/ego", {{"geo", "maybe"}}), 400, "bad_request");
  expect_error(get(api, "/scholars/ghost/ego"), 404, "not_found");
}

TEST(Api, RankingsCollaborators) {
  ApiService api(f1_mined());
  auto r = get(api, "/rankings/collaborators");
  ASSERT_EQ(r.status, 200);
  expect_valid("ranking", r.body);
  std::vector<std::string> ids;
  for (const auto& e : r.body["entries"]) ids.push_back(e["id"]);
  EXPECT_EQ(ids, (std::vector<std::string>{"s1", "s2", "s3"}));
  EXPECT_EQ(r.body["entries"][0]["rank"], 1);
  EXPECT_EQ(r.body["total"], 3);
}

TEST(Api, RankingsEveryMeasureValidates) {
  ApiService api(f1_mined());
  for (Measure m : kAllMeasures) {
    auto r = get(api, "/rankings/" + std::string(to_string(m)));
    ASSERT_EQ(r.status, 200);
    expect_valid("ranking", r.body);
  }
  expect_error(get(api, "/rankings/h_index"), 400, "bad_request");
  expect_error(get(api, "/rankings/citations", {{"offset", "x"}}), 400, "bad_request");
}

TEST(Api, RankingPagesConcatenate) {
  SynthConfig cfg;
  cfg.scholars = 40;
  cfg.pubs = 150;
  GraphStore g;
  g.ingest(synthesize(cfg).records);
  mine_all(g, MineOptions{});
  ApiService api(std::move(g));
  for (Measure m : kAllMeasures) {
    const std::string path = "/rankings/" + std::string(to_string(m));
    const json full = get(api, path).body["entries"];
    for (int size : {1, 3, 7}) {
      json joined = json::array();
      for (std::size_t off = 0;; off += static_cast<std::size_t>(size)) {
        auto r = get(api, path, {{"offset", std::to_string(off)}, {"limit", std::to_string(size)}});
        expect_valid("ranking", r.body);
        if (r.body["entries"].empty()) break;
        for (const auto& e : r.body["entries"]) joined.push_back(e);
      }
      EXPECT_EQ(joined, full) << path << " page size " << size;
    }
  }
}

TEST(Api, RecommendAdvisor) {
  ApiService api(f1_mined());
  const std::string form = R"({"min_advisees":1})";
  expect_valid("recommend-request", json::parse(form));
  auto r = post(api, "/recommend/advisor", form);
  ASSERT_EQ(r.status, 200) << r.text();
  expect_valid("recommend", r.body);
  EXPECT_EQ(r.body["status"], "ok");
  ASSERT_EQ(r.body["recommendations"].size(), 2u);
  EXPECT_EQ(r.body["recommendations"][0]["id"], "s1");
  EXPECT_EQ(r.body["recommendations"][0]["reasons"][0], "has 1 advisee(s) ≥ 1");
  EXPECT_EQ(r.body["recommendations"][0]["criteria"][0], "advisees");

  auto none = post(api, "/recommend/advisor", R"({"min_citations":1000000})");
  ASSERT_EQ(none.status, 200);
  expect_valid("recommend", none.body);
  EXPECT_EQ(none.body["status"], "no_candidates");

  auto weighted = post(api, "/recommend/advisor",
                       R"({"field_tags":["CS"],"institution":"I2","weights":{"institution":3},"limit":1})");
  ASSERT_EQ(weighted.status, 200);
  ASSERT_EQ(weighted.body["recommendations"].size(), 1u);
  EXPECT_EQ(weighted.body["recommendations"][0]["id"], "s2");
}

TEST(Api, RecommendErrors) {
  ApiService api(f1_mined());
  expect_error(post(api, "/recommend/advisor", "{}"), 400, "bad_request");
  expect_error(post(api, "/recommend/advisor", "not json"), 400, "bad_request");
  expect_error(post(api, "/recommend/advisor", "[1]"), 400, "bad_request");
  expect_error(post(api, "/recommend/advisor", R"({"min_advisees":-2})"), 400, "bad_request");
  expect_error(post(api, "/recommend/advisor", R"({"min_advisees":"two"})"), 400, "bad_request");
  expect_error(post(api, "/recommend/advisor", R"({"colour":"red"})"), 400, "bad_request");
  expect_error(post(api, "/recommend/advisor", R"({"min_advisees":1,"weights":{"advisees":0}})"), 400,
               "bad_request");
  expect_error(get(api, "/recommend/advisor"), 405, "method_not_allowed");
}

TEST(Api, RoutingErrors) {
  ApiService api(f1_mined());
  expect_error(get(api, "/nothing/here"), 404, "not_found");
  expect_error(post(api, "/healthz", ""), 405, "method_not_allowed");
  ApiRequest del;
  del.method = "DELETE";
  del.path = "/healthz";
  expect_error(api.handle(del), 405, "method_not_allowed");
}

TEST(Api, ExportMatchesNodelink) {
  GraphStore g = f1_mined();
  const std::string expected = export_nodelink(g);
  ApiService api(std::move(g));
  auto r = get(api, "/export", {{"format", "nodelink"}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.text(), expected);
  EXPECT_EQ(r.content_type, "application/x-ndjson");
  expect_error(get(api, "/export", {{"format", "graphml"}}), 400, "bad_request");
}

TEST(Api, ReadsDoNotChangeTheGraph) {
  ApiService api(f1_mined());
  const std::string before = api.engine()->graph->canonical_payload();
  get(api, "/scholars", {{"q", "Alice's advisees"}});
  get(api, "/scholars/s1/ego", {{"kind", "team"}, {"series", "true"}});
  get(api, "/rankings/potential_index");
  post(api, "/recommend/advisor", R"({"min_advisees":1})");
  get(api, "/export");
  EXPECT_EQ(api.engine()->graph->canonical_payload(), before);
}

TEST(Api, SwapSnapshot) {
  ApiService api(wos::testing::f1_graph());
  EXPECT_TRUE(get(api, "/rankings/advisees").body["entries"].empty());
  const auto old_version = get(api, "/healthz").body["version"];
  api.swap_snapshot(f1_mined());
  EXPECT_NE(get(api, "/healthz").body["version"], old_version);
  EXPECT_EQ(get(api, "/rankings/advisees").body["entries"].size(), 2u);
}

TEST(Api, ConcurrentRequestsDuringSwap) {
  ApiService api(f1_mined());
  std::atomic<bool> done{false};
  std::atomic<int> failures{0};
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t)
    readers.emplace_back([&] {
      while (!done) {
        auto r = get(api, "/rankings/collaborators");
        if (r.status != 200 || r.body["entries"].size() != 3u) ++failures;
      }
    });
  for (int i = 0; i < 20; ++i) api.swap_snapshot(f1_mined());
  done = true;
  for (auto& t : readers) t.join();
  EXPECT_EQ(failures.load(), 0);
}

TEST(HttpServer, ServesOverLoopback) {
  ApiService api(f1_mined());
  HttpServer server(api);
  const int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread loop([&] { server.listen(); });
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  auto res = client.Get("/scholars?q=alic");
  for (int tries = 0; !res && tries < 50; ++tries) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    res = client.Get("/scholars?q=alic");
  }
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["hits"][0]["id"], "s1");
  auto rec = client.Post("/recommend/advisor", R"({"min_advisees":1})", "application/json");
  ASSERT_TRUE(rec);
  EXPECT_EQ(json::parse(rec->body)["recommendations"].size(), 2u);
  auto missing = client.Get("/scholars/ghost");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  server.stop();
  loop.join();
}

TEST(HttpServer, MissingUiDirRejected) {
  ApiService api(f1_mined());
  EXPECT_THROW(HttpServer(api, std::filesystem::path("/no/such/dir")), Error);
}
