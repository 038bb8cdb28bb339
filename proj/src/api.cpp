#include "wos/api.hpp"

#include <charconv>
#include <cstdio>
#include <set>

#include "wos/error.hpp"
#include "wos/miner.hpp"
#include "wos/nodelink.hpp"
#include "wos/recommender.hpp"

// After Eigen: <resolv.h> defines a `_res` macro that clashes with Eigen internals.
#include <httplib.h>

namespace wos {

using nlohmann::json;

namespace {

constexpr std::size_t kDefaultSearchLimit = 10;
constexpr std::size_t kMaxSearchLimit = 1000;
constexpr std::size_t kDefaultRecommendLimit = 10;

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t j = i;
    while (j < path.size() && path[j] != '/') ++j;
    if (j > i) parts.push_back(path.substr(i, j - i));
    i = j;
  }
  return parts;
}

// Query parameter helpers raise InvalidArgumentError, mapped to 400 by handle().
std::optional<std::size_t> size_param(const ApiRequest& r, const std::string& key) {
  auto it = r.query.find(key);
  if (it == r.query.end()) return std::nullopt;
  std::size_t v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgumentError("parameter '" + key + "' must be a non-negative integer");
  return v;
}

bool bool_param(const ApiRequest& r, const std::string& key) {
  auto it = r.query.find(key);
  if (it == r.query.end()) return false;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw InvalidArgumentError("parameter '" + key + "' must be true|false");
}

json hit_json(const NameHit& h) {
  static constexpr const char* kQuality[] = {"exact", "prefix", "edit1"};
  return {{"id", h.scholar_id}, {"name", h.name}, {"match", kQuality[static_cast<int>(h.quality)]}};
}

json neighbors_json(const std::vector<Neighbor>& ns) {
  json out = json::array();
  for (const auto& n : ns) out.push_back({{"id", n.scholar_id}, {"weight", n.weight}});
  return out;
}

PreferenceForm parse_form(const json& body, std::size_t& limit) {
  static const std::set<std::string> kKeys = {"field_tags", "min_advisees", "min_citations",
                                              "institution", "weights", "limit"};
  if (!body.is_object()) throw InvalidArgumentError("request body must be a JSON object");
  for (const auto& [key, v] : body.items())
    if (!kKeys.contains(key)) throw InvalidArgumentError("unknown form key '" + key + "'");

  PreferenceForm form;
  try {
    if (body.contains("field_tags")) form.field_tags = body["field_tags"].get<std::vector<std::string>>();
    if (body.contains("min_advisees") && !body["min_advisees"].is_null())
      form.min_advisees = body["min_advisees"].get<int>();
    if (body.contains("min_citations") && !body["min_citations"].is_null())
      form.min_citations = body["min_citations"].get<int>();
    if (body.contains("institution") && !body["institution"].is_null())
      form.institution = body["institution"].get<std::string>();
    if (body.contains("weights")) {
      const json& w = body["weights"];
      if (!w.is_object()) throw InvalidArgumentError("'weights' must be an object");
      for (const auto& [key, v] : w.items()) {
        const double value = v.get<double>();
        if (key == "fields") form.fields_weight = value;
        else if (key == "advisees") form.advisees_weight = value;
        else if (key == "citations") form.citations_weight = value;
        else if (key == "institution") form.institution_weight = value;
        else throw InvalidArgumentError("unknown weight '" + key + "'");
      }
    }
    if (body.contains("limit")) limit = body["limit"].get<std::size_t>();
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("bad form value: ") + e.what());
  }
  form.validate();
  return form;
}

}  // namespace

Engine::Engine(GraphStore g) : graph(std::make_shared<const GraphStore>(std::move(g))) {
  graph->revision();  // warm the fingerprint before sharing
  for (Measure m : kAllMeasures) measures[m] = compute_measure(m, *graph);
  names = NameIndex(*graph, measures.at(Measure::Collaborators));
}

ApiResponse api_error(int status, std::string_view kind, std::string_view message) {
  ApiResponse r;
  r.status = status;
  r.body = {{"status", status}, {"error", kind}, {"message", message}};
  return r;
}

ApiService::ApiService(GraphStore graph) : engine_(std::make_shared<const Engine>(std::move(graph))) {}

void ApiService::swap_snapshot(GraphStore graph) {
  auto next = std::make_shared<const Engine>(std::move(graph));
  std::lock_guard lock(mu_);
  engine_ = std::move(next);
}

std::shared_ptr<const Engine> ApiService::engine() const {
  std::lock_guard lock(mu_);
  return engine_;
}

ApiResponse ApiService::handle(const ApiRequest& request) const {
  const auto e = engine();
  const auto parts = split_path(request.path);
  try {
    if (request.method == "POST") {
      if (parts == std::vector<std::string>{"recommend", "advisor"}) return recommend(*e, request);
      return api_error(parts.empty() ? 404 : 405, parts.empty() ? "not_found" : "method_not_allowed",
                       "no POST route for " + request.path);
    }
    if (request.method != "GET") return api_error(405, "method_not_allowed", "only GET and POST are supported");

    if (parts.size() == 1 && parts[0] == "healthz") return healthz(*e);
    if (parts.size() == 1 && parts[0] == "scholars") return search(*e, request);
    if (parts.size() == 2 && parts[0] == "scholars") return profile(*e, parts[1]);
    if (parts.size() == 3 && parts[0] == "scholars" && parts[2] == "ego") return ego(*e, parts[1], request);
    if (parts.size() == 2 && parts[0] == "rankings") return ranking(*e, parts[1], request);
    if (parts.size() == 1 && parts[0] == "export") return export_graph(*e, request);
    if (parts == std::vector<std::string>{"recommend", "advisor"})
      return api_error(405, "method_not_allowed", "use POST for /recommend/advisor");
    return api_error(404, "not_found", "no route for " + request.path);
  } catch (const NotFoundError& ex) {
    return api_error(404, "not_found", ex.what());
  } catch (const InvalidArgumentError& ex) {
    return api_error(400, "bad_request", ex.what());
  } catch (const std::exception& ex) {
    return api_error(500, "internal", ex.what());
  }
}

ApiResponse ApiService::healthz(const Engine& e) const {
  ApiResponse r;
  r.body = {{"status", "ok"},
            {"version", hex(e.graph->revision())},
            {"format_version", GraphStore::kFormatVersion},
            {"scholars", e.graph->scholars().size()},
            {"publications", e.graph->publications().size()},
            {"edges", e.graph->edge_count()}};
  return r;
}

ApiResponse ApiService::search(const Engine& e, const ApiRequest& req) const {
  auto q = req.query.find("q");
  const QueryAst ast = parse_query(q == req.query.end() ? "" : q->second);
  if (ast.name.empty()) return api_error(400, "empty_query", "query text is empty");
  const std::size_t limit = std::min(size_param(req, "limit").value_or(kDefaultSearchLimit), kMaxSearchLimit);

  const QueryAnswer ans = answer(ast, *e.graph, e.names, limit);
  json hits = json::array();
  for (const auto& h : ans.subjects) hits.push_back(hit_json(h));
  json related = json::array();
  for (const auto& group : ans.related) {
    json g = json::array();
    for (const auto& s : group) g.push_back({{"id", s.scholar_id}, {"name", s.name}, {"weight", s.weight}});
    related.push_back(std::move(g));
  }
  const bool rel = ast.kind == QueryAst::Kind::RelationQuery;
  ApiResponse r;
  r.body = {{"query",
             {{"kind", rel ? "relation_query" : "name_search"},
              {"name", ast.name},
              {"relation", rel ? json(to_string(*ast.relation)) : json(nullptr)},
              {"text", to_string(ast)}}},
            {"status", to_string(ans.status)},
            {"hits", std::move(hits)},
            {"related", std::move(related)}};
  return r;
}

ApiResponse ApiService::profile(const Engine& e, const std::string& id) const {
  const Scholar* s = e.graph->find_scholar(id);
  if (!s) throw NotFoundError("unknown scholar '" + id + "'");

  std::set<std::string> fields;
  for (const auto& pid : s->pub_ids)
    for (const auto& f : e.graph->publications().at(pid).fields) fields.insert(f);
  json measures = json::object();
  for (const auto& [m, values] : e.measures) measures[std::string(to_string(m))] = values.at(id);
  json geo = nullptr;
  if (auto it = e.graph->geo_table().find(s->institution); it != e.graph->geo_table().end())
    geo = {{"lat", it->second.lat}, {"lng", it->second.lng}};

  ApiResponse r;
  r.body = {{"id", s->scholar_id},
            {"name", s->name},
            {"inst", s->institution},
            {"first_pub_year", s->first_pub_year},
            {"pub_ids", s->pub_ids},
            {"fields", fields},
            {"measures", std::move(measures)},
            {"advisors", neighbors_json(e.graph->neighbors(id, EdgeKind::AdvisorOf, Direction::In))},
            {"advisees", neighbors_json(e.graph->neighbors(id, EdgeKind::AdvisorOf, Direction::Out))},
            {"geo", std::move(geo)}};
  return r;
}

ApiResponse ApiService::ego(const Engine& e, const std::string& id, const ApiRequest& req) const {
  EgoOptions opt;
  if (auto it = req.query.find("kind"); it != req.query.end()) {
    auto kind = parse_edge_kind(it->second);
    if (!kind || it->second != api_name(*kind))
      throw InvalidArgumentError("kind must be one of coauthor|advisor|cites|cocited|team");
    opt.kind = *kind;
  }
  opt.geo = bool_param(req, "geo");
  opt.series = bool_param(req, "series");
  ApiResponse r;
  r.body = ego_network_doc(*e.graph, id, opt);
  return r;
}

ApiResponse ApiService::ranking(const Engine& e, const std::string& name, const ApiRequest& req) const {
  auto m = parse_measure(name);
  if (!m) throw InvalidArgumentError("unknown measure '" + name + "'");
  const auto list = cache_.get(*m, *e.graph);
  const std::size_t offset = size_param(req, "offset").value_or(0);
  const std::size_t limit = size_param(req, "limit").value_or(list->entries.size());

  json entries = json::array();
  std::size_t rank = offset;
  for (const auto& entry : page(*list, offset, limit))
    entries.push_back({{"rank", ++rank},
                       {"id", entry.scholar_id},
                       {"name", e.graph->scholars().at(entry.scholar_id).name},
                       {"value", entry.value}});
  ApiResponse r;
  r.body = {{"measure", to_string(*m)},
            {"computed_at", hex(list->computed_at)},
            {"total", list->entries.size()},
            {"offset", offset},
            {"limit", limit},
            {"entries", std::move(entries)}};
  return r;
}

ApiResponse ApiService::recommend(const Engine& e, const ApiRequest& req) const {
  json body;
  try {
    body = json::parse(req.body);
  } catch (const json::parse_error& ex) {
    throw InvalidArgumentError(std::string("request body is not JSON: ") + ex.what());
  }
  std::size_t limit = kDefaultRecommendLimit;
  const PreferenceForm form = parse_form(body, limit);
  const MeasureSet measures{e.measures.at(Measure::Advisees), e.measures.at(Measure::Citations),
                            e.measures.at(Measure::AdvisorInfluence)};
  const auto recs = recommend_advisors(form, *e.graph, measures, limit);

  json items = json::array();
  for (const auto& rec : recs) {
    json reasons = json::array(), criteria = json::array();
    for (const auto& reason : rec.reasons) {
      reasons.push_back(reason.text);
      criteria.push_back(to_string(reason.criterion));
    }
    items.push_back({{"id", rec.scholar_id},
                     {"name", rec.name},
                     {"match_score", rec.match_score},
                     {"advisor_influence", rec.advisor_influence},
                     {"reasons", std::move(reasons)},
                     {"criteria", std::move(criteria)},
                     {"ego_preview",
                      {{"advisors", neighbors_json(rec.ego_preview.advisors)},
                       {"advisees", neighbors_json(rec.ego_preview.advisees)},
                       {"coauthors", neighbors_json(rec.ego_preview.coauthors)}}}});
  }
  ApiResponse r;
  r.body = {{"status", recs.empty() ? "no_candidates" : "ok"}, {"recommendations", std::move(items)}};
  return r;
}

ApiResponse ApiService::export_graph(const Engine& e, const ApiRequest& req) const {
  auto it = req.query.find("format");
  if (it != req.query.end() && it->second != "nodelink")
    throw InvalidArgumentError("unsupported export format '" + it->second + "'");
  ApiResponse r;
  r.raw = export_nodelink(*e.graph);
  r.content_type = "application/x-ndjson";
  return r;
}

json ego_network_doc(const GraphStore& graph, const std::string& center, const EgoOptions& options) {
  const Scholar* c = graph.find_scholar(center);
  if (!c) throw NotFoundError("unknown scholar '" + center + "'");
  const auto ns = graph.neighbors(center, options.kind, Direction::Both);
  double max_w = 0.0;
  for (const auto& n : ns) max_w = std::max(max_w, n.weight);

  json nodes = json::array();
  nodes.push_back({{"id", center}, {"name", c->name}, {"identity", "center"}, {"size", 1.0}});
  for (const auto& n : ns)
    nodes.push_back({{"id", n.scholar_id},
                     {"name", graph.scholars().at(n.scholar_id).name},
                     {"identity", to_string(referee_identity(graph, center, n.scholar_id))},
                     {"size", n.weight / max_w}});

  std::vector<RelEdge> links;
  for (const auto& n : ns) {
    for (const RelEdge* e : {graph.find_edge(center, n.scholar_id, options.kind),
                             graph.find_edge(n.scholar_id, center, options.kind)}) {
      if (e && std::find(links.begin(), links.end(), *e) == links.end()) links.push_back(*e);
    }
  }
  std::sort(links.begin(), links.end(), [](const RelEdge& a, const RelEdge& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });
  json jlinks = json::array();
  for (const auto& e : links) {
    json l = {{"src", e.src}, {"dst", e.dst}, {"kind", api_name(e.kind)}, {"weight", e.weight}};
    l["years"] = e.years ? json::array({e.years->start, e.years->end}) : json(nullptr);
    jlinks.push_back(std::move(l));
  }

  json doc = {{"center", center}, {"kind", api_name(options.kind)}, {"nodes", std::move(nodes)},
              {"links", std::move(jlinks)}};
  if (options.geo) {
    json geo = json::array();
    for (const auto& node : doc["nodes"]) {
      const auto& inst = graph.scholars().at(node["id"].get<std::string>()).institution;
      if (auto it = graph.geo_table().find(inst); it != graph.geo_table().end())
        geo.push_back({{"id", node["id"]}, {"inst", inst}, {"lat", it->second.lat}, {"lng", it->second.lng}});
    }
    doc["geo"] = std::move(geo);
  }
  if (options.series) {
    json series = json::array();
    for (const auto& [year, count] : collab_profile(graph, center, options.series_range).yearly_counts)
      series.push_back({{"year", year}, {"count", count}});
    doc["series"] = std::move(series);
  }
  return doc;
}

HttpServer::HttpServer(const ApiService& service, std::optional<std::filesystem::path> ui_dir)
    : server_(std::make_unique<httplib::Server>()) {
  auto route = [&service](const httplib::Request& req, httplib::Response& res) {
    ApiRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);  // first value wins
    r.body = req.body;
    const ApiResponse out = service.handle(r);
    res.status = out.status;
    res.set_content(out.text(), out.content_type);
  };
  server_->Get(".*", route);
  server_->Post(".*", route);
  if (ui_dir && !server_->set_mount_point("/ui", ui_dir->string()))
    throw Error("UI directory '" + ui_dir->string() + "' does not exist");
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

}  // namespace wos
