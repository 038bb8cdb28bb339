#include "wos/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wos/error.hpp"

namespace wos {

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Coauthor: return "COAUTHOR";
    case EdgeKind::AdvisorOf: return "ADVISOR_OF";
    case EdgeKind::Cites: return "CITES";
    case EdgeKind::Cocited: return "COCITED";
    case EdgeKind::Team: return "TEAM";
  }
  return "UNKNOWN";
}

std::string_view api_name(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Coauthor: return "coauthor";
    case EdgeKind::AdvisorOf: return "advisor";
    case EdgeKind::Cites: return "cites";
    case EdgeKind::Cocited: return "cocited";
    case EdgeKind::Team: return "team";
  }
  return "unknown";
}

std::optional<EdgeKind> parse_edge_kind(std::string_view text) {
  if (text == "COAUTHOR" || text == "coauthor") return EdgeKind::Coauthor;
  if (text == "ADVISOR_OF" || text == "advisor") return EdgeKind::AdvisorOf;
  if (text == "CITES" || text == "cites") return EdgeKind::Cites;
  if (text == "COCITED" || text == "cocited") return EdgeKind::Cocited;
  if (text == "TEAM" || text == "team") return EdgeKind::Team;
  return std::nullopt;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<Diagnostic> GraphStore::ingest(const std::vector<PublicationRecord>& records) {
  std::vector<Diagnostic> diags;
  bool changed = false;
  for (const auto& rec : records) {
    auto it = publications_.find(rec.pub_id);
    if (it == publications_.end()) {
      publications_.emplace(rec.pub_id, rec);
      changed = true;
    } else if (!(it->second == rec)) {
      diags.push_back({0, "publication '" + rec.pub_id + "' replaced by a newer record"});
      it->second = rec;
      changed = true;
    }
  }
  if (!changed) return diags;

  // Derived edges no longer describe the corpus.
  edges_.clear();
  out_.clear();
  in_.clear();
  rebuild_scholars();
  rebuild_dangling();
  invalidate_revision();
  return diags;
}

void GraphStore::rebuild_scholars() {
  std::vector<PublicationRecord> all;
  all.reserve(publications_.size());
  for (const auto& [id, rec] : publications_) all.push_back(rec);
  scholars_.clear();
  for (auto& s : build_scholars(all).scholars) scholars_.emplace(s.scholar_id, std::move(s));
}

void GraphStore::rebuild_dangling() {
  dangling_.clear();
  for (const auto& [id, rec] : publications_)
    for (const auto& r : rec.refs)
      if (!publications_.contains(r)) dangling_.push_back({id, r});
}

const Scholar* GraphStore::find_scholar(const std::string& id) const {
  auto it = scholars_.find(id);
  return it == scholars_.end() ? nullptr : &it->second;
}

void GraphStore::index_edge(const EdgeKey& key) {
  out_[{key.kind, key.src}].push_back(key);
  in_[{key.kind, key.dst}].push_back(key);
}

std::size_t GraphStore::upsert_edges(const std::vector<RelEdge>& edges) {
  for (const auto& e : edges) {
    if (!scholars_.contains(e.src)) throw NotFoundError("unknown edge endpoint '" + e.src + "'");
    if (!scholars_.contains(e.dst)) throw NotFoundError("unknown edge endpoint '" + e.dst + "'");
    if (e.src == e.dst) throw InvalidArgumentError("self edge on '" + e.src + "'");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw InvalidArgumentError("edge weight must be positive and finite");
  }

  std::set<EdgeKey> touched;
  for (const auto& e : edges) {
    RelEdge edge = e;
    if (is_undirected(edge.kind) && edge.dst < edge.src) std::swap(edge.src, edge.dst);
    EdgeKey key{edge.src, edge.dst, edge.kind};
    touched.insert(key);
    auto [it, inserted] = edges_.try_emplace(key, edge);
    if (inserted) {
      index_edge(key);
      continue;
    }
    RelEdge& cur = it->second;
    cur.weight += edge.weight;
    if (edge.years) {
      if (!cur.years) {
        cur.years = edge.years;
      } else {
        cur.years->start = std::min(cur.years->start, edge.years->start);
        cur.years->end = std::max(cur.years->end, edge.years->end);
      }
    }
  }
  if (!touched.empty()) invalidate_revision();
  return touched.size();
}

void GraphStore::clear_edges(EdgeKind kind) {
  bool removed = false;
  for (auto it = edges_.begin(); it != edges_.end();) {
    if (it->first.kind == kind) {
      it = edges_.erase(it);
      removed = true;
    } else {
      ++it;
    }
  }
  std::erase_if(out_, [&](const auto& kv) { return kv.first.first == kind; });
  std::erase_if(in_, [&](const auto& kv) { return kv.first.first == kind; });
  if (removed) invalidate_revision();
}

std::vector<Neighbor> GraphStore::neighbors(const std::string& id, EdgeKind kind,
                                            Direction dir) const {
  if (!scholars_.contains(id)) throw NotFoundError("unknown scholar '" + id + "'");

  // Undirected edges are stored once, so either side counts as adjacency.
  const bool want_out = dir != Direction::In || is_undirected(kind);
  const bool want_in = dir != Direction::Out || is_undirected(kind);

  std::map<std::string, double> acc;
  if (want_out) {
    if (auto it = out_.find({kind, id}); it != out_.end())
      for (const auto& key : it->second) acc[key.dst] += edges_.at(key).weight;
  }
  if (want_in) {
    if (auto it = in_.find({kind, id}); it != in_.end())
      for (const auto& key : it->second) acc[key.src] += edges_.at(key).weight;
  }

  std::vector<Neighbor> out;
  out.reserve(acc.size());
  for (auto& [other, w] : acc) out.push_back({other, w});
  std::stable_sort(out.begin(), out.end(),
                   [](const Neighbor& a, const Neighbor& b) { return a.weight > b.weight; });
  return out;
}

const RelEdge* GraphStore::find_edge(const std::string& src, const std::string& dst,
                                     EdgeKind kind) const {
  EdgeKey key{src, dst, kind};
  if (is_undirected(kind) && key.dst < key.src) std::swap(key.src, key.dst);
  auto it = edges_.find(key);
  return it == edges_.end() ? nullptr : &it->second;
}

std::vector<RelEdge> GraphStore::edges() const {
  std::vector<RelEdge> out;
  out.reserve(edges_.size());
  for (const auto& [key, e] : edges_) out.push_back(e);
  return out;
}

std::vector<RelEdge> GraphStore::edges(EdgeKind kind) const {
  std::vector<RelEdge> out;
  for (const auto& [key, e] : edges_)
    if (key.kind == kind) out.push_back(e);
  return out;
}

std::uint64_t GraphStore::revision() const {
  std::uint64_t r = revision_.value.load(std::memory_order_relaxed);
  if (r == 0) {
    r = fnv1a64(canonical_payload());
    if (r == 0) r = 1;
    revision_.value.store(r, std::memory_order_relaxed);
  }
  return r;
}

bool GraphStore::operator==(const GraphStore& other) const {
  return scholars_ == other.scholars_ && publications_ == other.publications_ &&
         edges_ == other.edges_ && geo_ == other.geo_ && dangling_ == other.dangling_;
}

}  // namespace wos
