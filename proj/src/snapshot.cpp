#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wos/error.hpp"
#include "wos/graph.hpp"
#include "wos/json_codec.hpp"

namespace wos {

using nlohmann::json;

namespace {

constexpr std::string_view kMagic = "WOSSNAP";

double parse_double(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw InvalidArgumentError("not a number: '" + std::string(text) + "'");
  return v;
}

}  // namespace

json scholar_to_json(const Scholar& s) {
  return {{"id", s.scholar_id},
          {"name", s.name},
          {"inst", s.institution},
          {"first_pub_year", s.first_pub_year},
          {"pub_ids", s.pub_ids}};
}

Scholar scholar_from_json(const json& obj) {
  Scholar s;
  s.scholar_id = obj.at("id").get<std::string>();
  s.name = obj.at("name").get<std::string>();
  s.institution = obj.at("inst").get<std::string>();
  s.first_pub_year = obj.at("first_pub_year").get<int>();
  s.pub_ids = obj.at("pub_ids").get<std::vector<std::string>>();
  return s;
}

json edge_to_json(const RelEdge& e) {
  json j = {{"src", e.src}, {"dst", e.dst}, {"kind", to_string(e.kind)}, {"weight", e.weight}};
  j["years"] = e.years ? json::array({e.years->start, e.years->end}) : json(nullptr);
  return j;
}

RelEdge edge_from_json(const json& obj) {
  RelEdge e;
  e.src = obj.at("src").get<std::string>();
  e.dst = obj.at("dst").get<std::string>();
  auto kind = parse_edge_kind(obj.at("kind").get<std::string>());
  if (!kind) throw InvalidArgumentError("unknown edge kind " + obj.at("kind").dump());
  e.kind = *kind;
  e.weight = obj.at("weight").get<double>();
  if (const json& y = obj.at("years"); !y.is_null()) e.years = YearRange{y.at(0), y.at(1)};
  return e;
}

std::string GraphStore::canonical_payload() const {
  json scholars = json::array();
  for (const auto& [id, s] : scholars_) scholars.push_back(scholar_to_json(s));
  json pubs = json::array();
  for (const auto& [id, p] : publications_) pubs.push_back(record_to_json(p));
  json edges = json::array();
  for (const auto& [key, e] : edges_) edges.push_back(edge_to_json(e));
  json geo = json::array();
  for (const auto& [inst, pt] : geo_) geo.push_back({{"inst", inst}, {"lat", pt.lat}, {"lng", pt.lng}});
  json dangling = json::array();
  for (const auto& d : dangling_) dangling.push_back({d.from_pub, d.missing_pub});

  json doc = {{"format_version", kFormatVersion},
              {"scholars", std::move(scholars)},
              {"publications", std::move(pubs)},
              {"edges", std::move(edges)},
              {"geo", std::move(geo)},
              {"dangling_refs", std::move(dangling)}};
  return doc.dump();
}

GraphStore GraphStore::from_canonical_payload(const std::string& payload) {
  GraphStore g;
  try {
    json doc = json::parse(payload);
    if (doc.at("format_version").get<int>() != kFormatVersion)
      throw FormatError("unsupported payload format version " + doc.at("format_version").dump());

    std::vector<PublicationRecord> records;
    for (const auto& p : doc.at("publications")) records.push_back(record_from_json(p));
    g.ingest(records);

    ScholarTable stored;
    for (const auto& s : doc.at("scholars")) {
      Scholar sch = scholar_from_json(s);
      stored.emplace(sch.scholar_id, std::move(sch));
    }
    if (stored != g.scholars_) throw FormatError("scholar table disagrees with publications");

    std::vector<DanglingRef> dangling;
    for (const auto& d : doc.at("dangling_refs"))
      dangling.push_back({d.at(0).get<std::string>(), d.at(1).get<std::string>()});
    if (dangling != g.dangling_) throw FormatError("dangling reference list disagrees with publications");

    std::vector<RelEdge> edges;
    for (const auto& e : doc.at("edges")) edges.push_back(edge_from_json(e));
    if (g.upsert_edges(edges) != edges.size()) throw FormatError("duplicate edges in payload");

    GeoTable geo;
    for (const auto& row : doc.at("geo"))
      geo[row.at("inst").get<std::string>()] = {row.at("lat").get<double>(), row.at("lng").get<double>()};
    g.set_geo_table(std::move(geo));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed snapshot payload: ") + e.what());
  } catch (const InvalidArgumentError& e) {
    throw FormatError(std::string("malformed snapshot payload: ") + e.what());
  } catch (const NotFoundError& e) {
    throw FormatError(std::string("malformed snapshot payload: ") + e.what());
  }
  return g;
}

std::string encode_snapshot(const GraphStore& graph) {
  const std::string payload = graph.canonical_payload();
  char header[96];
  std::snprintf(header, sizeof header, "%s %d %016llx %zu\n", kMagic.data(),
                GraphStore::kFormatVersion, static_cast<unsigned long long>(fnv1a64(payload)),
                payload.size());
  return header + payload;
}

GraphStore decode_snapshot(const std::string& bytes) {
  const auto eol = bytes.find('\n');
  if (eol == std::string::npos) throw FormatError("snapshot header missing");
  std::istringstream header(bytes.substr(0, eol));
  std::string magic, checksum_hex;
  int version = 0;
  std::size_t size = 0;
  if (!(header >> magic >> version >> checksum_hex >> size) || magic != kMagic)
    throw FormatError("not a snapshot file (bad magic)");
  if (version != GraphStore::kFormatVersion)
    throw FormatError("unsupported snapshot version " + std::to_string(version) + " (expected " +
                      std::to_string(GraphStore::kFormatVersion) + ")");

  std::string payload = bytes.substr(eol + 1);
  if (payload.size() != size)
    throw FormatError("snapshot truncated or padded: payload has " + std::to_string(payload.size()) +
                      " bytes, header says " + std::to_string(size));
  std::uint64_t expected = 0;
  auto [ptr, ec] = std::from_chars(checksum_hex.data(), checksum_hex.data() + checksum_hex.size(),
                                   expected, 16);
  if (ec != std::errc() || ptr != checksum_hex.data() + checksum_hex.size())
    throw FormatError("bad checksum field");
  if (fnv1a64(payload) != expected) throw FormatError("snapshot checksum mismatch");
  return GraphStore::from_canonical_payload(payload);
}

void save_snapshot(const GraphStore& graph, const std::filesystem::path& path) {
  const std::string bytes = encode_snapshot(graph);
  // Write-then-rename so readers never see a half-written file.
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

GraphStore load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open snapshot '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_snapshot(buf.str());
}

GeoTable parse_geo_table(std::istream& in, std::vector<Diagnostic>* diagnostics) {
  GeoTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    try {
      if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos)
        throw InvalidArgumentError("expected institution<TAB>lat<TAB>lng");
      const double lat = parse_double(std::string_view(line).substr(t1 + 1, t2 - t1 - 1));
      const double lng = parse_double(std::string_view(line).substr(t2 + 1));
      if (lat < -90 || lat > 90 || lng < -180 || lng > 180)
        throw InvalidArgumentError("coordinates out of range");
      table[line.substr(0, t1)] = {lat, lng};
    } catch (const InvalidArgumentError& e) {
      if (diagnostics) diagnostics->push_back({line_no, e.what()});
    }
  }
  return table;
}

}  // namespace wos
