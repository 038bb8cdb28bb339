#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <json.hpp>

#include "wos/graph.hpp"
#include "wos/query.hpp"
#include "wos/ranking.hpp"

namespace httplib {
class Server;
}

namespace wos {

/// Read-only state derived from one snapshot.
struct Engine {
  explicit Engine(GraphStore g);

  std::shared_ptr<const GraphStore> graph;
  std::map<Measure, MeasureMap> measures;
  NameIndex names;
};

struct ApiRequest {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;             // used unless `raw` is set
  std::optional<std::string> raw;  // pre-encoded body (export)
  std::string content_type = "application/json";

  std::string text() const { return raw ? *raw : body.dump(); }
};

/// Builds the error body {status, error, message}.
ApiResponse api_error(int status, std::string_view kind, std::string_view message);

/// The open JSON API over an immutable snapshot.
///
///   GET  /healthz
///   GET  /scholars?q=<text>&limit=
///   GET  /scholars/{id}
///   GET  /scholars/{id}/ego?kind=coauthor|advisor|cites|cocited|team&geo=bool&series=bool
///   GET  /rankings/{measure}?offset=&limit=
///   POST /recommend/advisor
///   GET  /export?format=nodelink
///
/// handle() is safe to call from many threads. swap_snapshot() replaces the
/// snapshot atomically; requests already running finish on the old one.
class ApiService {
 public:
  explicit ApiService(GraphStore graph);

  ApiResponse handle(const ApiRequest& request) const;

  void swap_snapshot(GraphStore graph);
  std::shared_ptr<const Engine> engine() const;
  RankingCache& ranking_cache() const { return cache_; }

 private:
  ApiResponse healthz(const Engine& e) const;
  ApiResponse search(const Engine& e, const ApiRequest& r) const;
  ApiResponse profile(const Engine& e, const std::string& id) const;
  ApiResponse ego(const Engine& e, const std::string& id, const ApiRequest& r) const;
  ApiResponse ranking(const Engine& e, const std::string& measure, const ApiRequest& r) const;
  ApiResponse recommend(const Engine& e, const ApiRequest& r) const;
  ApiResponse export_graph(const Engine& e, const ApiRequest& r) const;

  mutable std::mutex mu_;
  std::shared_ptr<const Engine> engine_;
  mutable RankingCache cache_;
};

struct EgoOptions {
  EdgeKind kind = EdgeKind::Coauthor;
  bool geo = false;
  bool series = false;
  YearRange series_range{1980, 2017};
};

/// Ego network of `center` under one relationship kind. Throws NotFoundError.
nlohmann::json ego_network_doc(const GraphStore& graph, const std::string& center,
                               const EgoOptions& options);

/// HTTP front end for ApiService (cpp-httplib). Optionally serves static
/// files from `ui_dir` under /ui/.
class HttpServer {
 public:
  HttpServer(const ApiService& service, std::optional<std::filesystem::path> ui_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds without serving; port 0 picks a free port. Returns the bound port.
  /// Throws wos::Error when binding fails.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  void listen();
  void stop();

 private:
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace wos
