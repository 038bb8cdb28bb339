#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wos/corpus.hpp"

namespace wos {

enum class EdgeKind : std::uint8_t { Coauthor, AdvisorOf, Cites, Cocited, Team };

inline constexpr std::array<EdgeKind, 5> kAllEdgeKinds = {
    EdgeKind::Coauthor, EdgeKind::AdvisorOf, EdgeKind::Cites, EdgeKind::Cocited, EdgeKind::Team};

/// "COAUTHOR", "ADVISOR_OF", ...
std::string_view to_string(EdgeKind kind);
/// API spelling: coauthor|advisor|cites|cocited|team.
std::string_view api_name(EdgeKind kind);
/// Accepts the upper-case names and the lower-case API spellings
/// (coauthor|advisor|cites|cocited|team).
std::optional<EdgeKind> parse_edge_kind(std::string_view text);
/// COAUTHOR and COCITED are stored with src < dst.
constexpr bool is_undirected(EdgeKind kind) {
  return kind == EdgeKind::Coauthor || kind == EdgeKind::Cocited;
}

struct YearRange {
  int start = 0;
  int end = 0;

  bool operator==(const YearRange&) const = default;
};

struct RelEdge {
  std::string src;
  std::string dst;
  EdgeKind kind = EdgeKind::Coauthor;
  double weight = 1.0;
  std::optional<YearRange> years;

  bool operator==(const RelEdge&) const = default;
};

enum class Direction { Out, In, Both };

struct Neighbor {
  std::string scholar_id;
  double weight = 0.0;

  bool operator==(const Neighbor&) const = default;
};

struct GeoPoint {
  double lat = 0.0;
  double lng = 0.0;

  bool operator==(const GeoPoint&) const = default;
};

using GeoTable = std::map<std::string, GeoPoint>;

struct DanglingRef {
  std::string from_pub;
  std::string missing_pub;

  bool operator==(const DanglingRef&) const = default;
};

/// Typed property graph of scholars, publications and relationship edges.
///
/// The store is mutated during ingest and mining only; afterwards it is
/// shared read-only (typically as std::shared_ptr<const GraphStore>).
class GraphStore {
 public:
  static constexpr int kFormatVersion = 1;

  /// Adds (or replaces, by pub_id) publications and rebuilds the scholar
  /// table. Ingesting the same records twice leaves the store unchanged.
  /// Unresolved refs are recorded in dangling_refs().
  std::vector<Diagnostic> ingest(const std::vector<PublicationRecord>& records);

  /// Merges edges keyed by (src, dst, kind): weights add, year ranges widen.
  /// Undirected kinds are canonicalized to src < dst. All edges are checked
  /// before any is applied; an unknown endpoint throws NotFoundError naming
  /// the id. Returns the number of distinct keys touched.
  std::size_t upsert_edges(const std::vector<RelEdge>& edges);

  /// Drops all edges of one kind (used before re-mining).
  void clear_edges(EdgeKind kind);

  /// Adjacency ordered by weight desc, then id asc. Throws NotFoundError for
  /// an unknown id.
  std::vector<Neighbor> neighbors(const std::string& id, EdgeKind kind, Direction dir) const;

  const RelEdge* find_edge(const std::string& src, const std::string& dst, EdgeKind kind) const;

  const ScholarTable& scholars() const { return scholars_; }
  const PublicationTable& publications() const { return publications_; }
  const GeoTable& geo_table() const { return geo_; }
  const std::vector<DanglingRef>& dangling_refs() const { return dangling_; }
  const Scholar* find_scholar(const std::string& id) const;

  void set_geo_table(GeoTable geo) {
    geo_ = std::move(geo);
    invalidate_revision();
  }

  /// All edges ordered by (src, dst, kind).
  std::vector<RelEdge> edges() const;
  std::vector<RelEdge> edges(EdgeKind kind) const;
  std::size_t edge_count() const { return edges_.size(); }

  /// Content fingerprint (64-bit FNV-1a over the canonical payload). Equal
  /// content gives equal revisions; used as the cache coherence key.
  std::uint64_t revision() const;

  /// Canonical JSON payload used by snapshots and the revision.
  std::string canonical_payload() const;
  static GraphStore from_canonical_payload(const std::string& payload);

  bool operator==(const GraphStore& other) const;

 private:
  struct EdgeKey {
    std::string src;
    std::string dst;
    EdgeKind kind;
    auto operator<=>(const EdgeKey&) const = default;
  };

  void rebuild_scholars();
  void rebuild_dangling();
  void index_edge(const EdgeKey& key);
  void invalidate_revision() { revision_.value.store(0, std::memory_order_relaxed); }

  // 0 means "not computed". Racing readers compute and store the same value.
  struct CachedRevision {
    std::atomic<std::uint64_t> value{0};
    CachedRevision() = default;
    CachedRevision(const CachedRevision& o) : value(o.value.load(std::memory_order_relaxed)) {}
    CachedRevision& operator=(const CachedRevision& o) {
      value.store(o.value.load(std::memory_order_relaxed), std::memory_order_relaxed);
      return *this;
    }
  };

  ScholarTable scholars_;
  PublicationTable publications_;
  std::map<EdgeKey, RelEdge> edges_;
  // (kind, scholar) -> keys of edges leaving / entering that scholar.
  std::map<std::pair<EdgeKind, std::string>, std::vector<EdgeKey>> out_;
  std::map<std::pair<EdgeKind, std::string>, std::vector<EdgeKey>> in_;
  GeoTable geo_;
  std::vector<DanglingRef> dangling_;
  mutable CachedRevision revision_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// Snapshot container: a header line `WOSSNAP <version> <fnv64-hex> <bytes>`
/// followed by the canonical payload. save -> load -> save is byte-identical.
void save_snapshot(const GraphStore& graph, const std::filesystem::path& path);
/// Throws FormatError on bad magic, unknown version, size or checksum mismatch.
GraphStore load_snapshot(const std::filesystem::path& path);

std::string encode_snapshot(const GraphStore& graph);
GraphStore decode_snapshot(const std::string& bytes);

/// Reads `institution<TAB>lat<TAB>lng` lines. Malformed lines are reported.
GeoTable parse_geo_table(std::istream& in, std::vector<Diagnostic>* diagnostics = nullptr);

}  // namespace wos
