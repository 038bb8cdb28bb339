#include "wos/nodelink.hpp"

#include <sstream>

#include "wos/error.hpp"
#include "wos/json_codec.hpp"

namespace wos {

using nlohmann::json;

void export_nodelink(const GraphStore& graph, std::ostream& out) {
  const auto edges = graph.edges();
  out << json{{"format", kNodeLinkFormat},
              {"version", kNodeLinkVersion},
              {"nodes", graph.scholars().size()},
              {"publications", graph.publications().size()},
              {"links", edges.size()},
              {"geo", graph.geo_table().size()}}
             .dump()
      << '\n';
  for (const auto& [id, s] : graph.scholars()) {
    json node = {{"type", "node"},
                 {"id", id},
                 {"name", s.name},
                 {"inst", s.institution},
                 {"first_pub_year", s.first_pub_year}};
    out << node.dump() << '\n';
  }
  for (const auto& [id, p] : graph.publications()) {
    json rec = record_to_json(p);
    rec["type"] = "publication";
    out << rec.dump() << '\n';
  }
  for (const auto& e : edges) {
    json link = edge_to_json(e);
    link["type"] = "link";
    out << link.dump() << '\n';
  }
  for (const auto& [inst, pt] : graph.geo_table())
    out << json{{"type", "geo"}, {"inst", inst}, {"lat", pt.lat}, {"lng", pt.lng}}.dump() << '\n';
}

std::string export_nodelink(const GraphStore& graph) {
  std::ostringstream os;
  export_nodelink(graph, os);
  return os.str();
}

GraphStore import_nodelink(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("node-link document is empty");

  GraphStore graph;
  try {
    const json header = json::parse(line);
    if (header.value("format", "") != kNodeLinkFormat) throw FormatError("not a node-link document");
    if (header.value("version", 0) != kNodeLinkVersion)
      throw FormatError("unsupported node-link version " + header.at("version").dump());

    std::vector<json> nodes;
    std::vector<PublicationRecord> pubs;
    std::vector<RelEdge> links;
    GeoTable geo;
    std::size_t geo_rows = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json obj = json::parse(line);
      const std::string type = obj.at("type").get<std::string>();
      if (type == "node") {
        nodes.push_back(std::move(obj));
      } else if (type == "publication") {
        pubs.push_back(record_from_json(obj));
      } else if (type == "link") {
        links.push_back(edge_from_json(obj));
      } else if (type == "geo") {
        geo[obj.at("inst").get<std::string>()] = {obj.at("lat").get<double>(), obj.at("lng").get<double>()};
        ++geo_rows;
      } else {
        throw FormatError("unknown node-link line type '" + type + "'");
      }
    }
    if (nodes.size() != header.at("nodes").get<std::size_t>() ||
        pubs.size() != header.at("publications").get<std::size_t>() ||
        links.size() != header.at("links").get<std::size_t>() ||
        geo_rows != header.at("geo").get<std::size_t>())
      throw FormatError("node-link document is incomplete (line counts disagree with header)");

    graph.ingest(pubs);
    for (const auto& n : nodes) {
      const Scholar* s = graph.find_scholar(n.at("id").get<std::string>());
      if (!s || s->name != n.at("name").get<std::string>() ||
          s->institution != n.at("inst").get<std::string>() ||
          s->first_pub_year != n.at("first_pub_year").get<int>())
        throw FormatError("node " + n.at("id").dump() + " disagrees with the publications");
    }
    if (nodes.size() != graph.scholars().size()) throw FormatError("node list is incomplete");
    graph.upsert_edges(links);
    graph.set_geo_table(std::move(geo));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed node-link document: ") + e.what());
  } catch (const InvalidArgumentError& e) {
    throw FormatError(std::string("malformed node-link document: ") + e.what());
  } catch (const NotFoundError& e) {
    throw FormatError(std::string("malformed node-link document: ") + e.what());
  }
  return graph;
}

}  // namespace wos
