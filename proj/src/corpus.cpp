#include "wos/corpus.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "wos/error.hpp"
#include "wos/json_codec.hpp"

namespace wos {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidArgumentError(std::string("missing key '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) throw InvalidArgumentError(std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_array(const json& obj, const char* key) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) throw InvalidArgumentError(std::string("key '") + key + "' must be an array");
  for (const auto& v : *it) {
    if (!v.is_string()) throw InvalidArgumentError(std::string("key '") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

// Picks the most frequent value; ties go to the smallest string.
std::string majority(const std::map<std::string, int>& counts) {
  std::string best;
  int best_count = -1;
  for (const auto& [value, count] : counts) {
    if (count > best_count) {
      best = value;
      best_count = count;
    }
  }
  return best;
}

}  // namespace

PublicationRecord record_from_json(const json& obj) {
  if (!obj.is_object()) throw InvalidArgumentError("record must be a JSON object");

  PublicationRecord rec;
  rec.pub_id = require_string(obj, "id");
  if (rec.pub_id.empty()) throw InvalidArgumentError("empty publication id");
  if (auto it = obj.find("title"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw InvalidArgumentError("key 'title' must be a string");
    rec.title = it->get<std::string>();
  }
  const json& year = require(obj, "year");
  if (!year.is_number_integer()) throw InvalidArgumentError("key 'year' must be an integer");
  rec.year = year.get<int>();
  if (rec.year < kMinYear || rec.year > kMaxYear)
    throw InvalidArgumentError("year " + std::to_string(rec.year) + " outside [1900, 2100]");
  if (auto it = obj.find("venue"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw InvalidArgumentError("key 'venue' must be a string");
    rec.venue = it->get<std::string>();
  }

  const json& authors = require(obj, "authors");
  if (!authors.is_array() || authors.empty())
    throw InvalidArgumentError("key 'authors' must be a non-empty array");
  std::unordered_set<std::string> seen_authors;
  for (const auto& a : authors) {
    if (!a.is_object()) throw InvalidArgumentError("author entries must be objects");
    AuthorRef ref{require_string(a, "id"), require_string(a, "name"), ""};
    if (auto it = a.find("inst"); it != a.end() && !it->is_null()) {
      if (!it->is_string()) throw InvalidArgumentError("author 'inst' must be a string");
      ref.institution = it->get<std::string>();
    }
    if (ref.scholar_id.empty()) throw InvalidArgumentError("empty author id");
    if (!seen_authors.insert(ref.scholar_id).second)
      throw InvalidArgumentError("author '" + ref.scholar_id + "' listed twice");
    rec.authors.push_back(std::move(ref));
  }

  std::unordered_set<std::string> seen_refs;
  for (auto& r : string_array(obj, "refs")) {
    if (r == rec.pub_id) throw InvalidArgumentError("publication references itself");
    if (seen_refs.insert(r).second) rec.refs.push_back(std::move(r));
  }
  rec.fields = string_array(obj, "fields");
  return rec;
}

json record_to_json(const PublicationRecord& record) {
  json authors = json::array();
  for (const auto& a : record.authors)
    authors.push_back({{"id", a.scholar_id}, {"name", a.name}, {"inst", a.institution}});
  return {{"id", record.pub_id},
          {"title", record.title},
          {"year", record.year},
          {"venue", record.venue ? json(*record.venue) : json(nullptr)},
          {"authors", std::move(authors)},
          {"refs", record.refs},
          {"fields", record.fields}};
}

PublicationRecord parse_record(const std::string& line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw InvalidArgumentError(std::string("invalid JSON: ") + e.what());
  }
  return record_from_json(obj);
}

std::string format_record(const PublicationRecord& record) { return record_to_json(record).dump(); }

ParseResult parse_corpus(std::istream& in) {
  ParseResult result;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      PublicationRecord rec = parse_record(line);
      if (!ids.insert(rec.pub_id).second)
        throw InvalidArgumentError("duplicate publication id '" + rec.pub_id + "'");
      result.records.push_back(std::move(rec));
    } catch (const InvalidArgumentError& e) {
      result.diagnostics.push_back({line_no, e.what()});
    }
  }
  if (in.bad()) throw Error("I/O failure while reading corpus");
  return result;
}

std::vector<PublicationRecord> filter_by_field(const std::vector<PublicationRecord>& records,
                                               const std::string& field_tag) {
  std::vector<PublicationRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out), [&](const auto& r) {
    return std::find(r.fields.begin(), r.fields.end(), field_tag) != r.fields.end();
  });
  return out;
}

ScholarBuild build_scholars(const std::vector<PublicationRecord>& records) {
  struct Accum {
    std::map<std::string, int> names;
    std::map<std::string, int> institutions;
    std::vector<std::pair<int, std::string>> pubs;
  };
  std::map<std::string, Accum> acc;
  for (const auto& rec : records) {
    for (const auto& a : rec.authors) {
      Accum& s = acc[a.scholar_id];
      ++s.names[a.name];
      ++s.institutions[a.institution];
      s.pubs.emplace_back(rec.year, rec.pub_id);
    }
  }

  ScholarBuild out;
  out.scholars.reserve(acc.size());
  for (auto& [id, s] : acc) {
    std::sort(s.pubs.begin(), s.pubs.end());
    Scholar sch;
    sch.scholar_id = id;
    sch.name = majority(s.names);
    sch.institution = majority(s.institutions);
    sch.first_pub_year = s.pubs.front().first;
    for (auto& p : s.pubs) sch.pub_ids.push_back(std::move(p.second));
    if (s.names.size() > 1)
      out.warnings.push_back({0, "scholar '" + id + "' has " + std::to_string(s.names.size()) +
                                     " distinct names; using '" + sch.name + "'"});
    if (s.institutions.size() > 1)
      out.warnings.push_back({0, "scholar '" + id + "' has " + std::to_string(s.institutions.size()) +
                                     " distinct institutions; using '" + sch.institution + "'"});
    out.scholars.push_back(std::move(sch));
  }
  return out;
}

}  // namespace wos
