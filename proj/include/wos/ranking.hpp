#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wos/graph.hpp"

namespace wos {

enum class Measure {
  Collaborators,
  Advisees,
  TeamMembers,
  AdvisorInfluence,
  Citations,
  PotentialIndex,
};

inline constexpr std::array<Measure, 6> kAllMeasures = {
    Measure::Collaborators,    Measure::Advisees,  Measure::TeamMembers,
    Measure::AdvisorInfluence, Measure::Citations, Measure::PotentialIndex};

/// Wire name: collaborators|advisees|team_members|advisor_influence|citations|potential_index.
std::string_view to_string(Measure m);
std::optional<Measure> parse_measure(std::string_view name);

using MeasureMap = std::map<std::string, double>;

struct MeasureConfig {
  /// Citations counted by POTENTIAL_INDEX come from [max_year - window + 1, max_year].
  int recent_window_years = 5;
};

/// Value for every scholar in the graph (zeros included).
///
///   COLLABORATORS      distinct coauthors
///   ADVISEES           ADVISOR_OF out-degree
///   TEAM_MEMBERS       TEAM out-degree
///   CITATIONS          distinct citing publications that reference one of the
///                      scholar's publications and are not co-authored by them
///   ADVISOR_INFLUENCE  ADVISEES + sum of the advisees' CITATIONS
///   POTENTIAL_INDEX    CITATIONS restricted to citing years in the recent
///                      window, divided by max(1, max_year - first_pub_year)
///
/// max_year is the latest publication year in the corpus.
MeasureMap compute_measure(Measure m, const GraphStore& graph, const MeasureConfig& config = {});

struct RankEntry {
  std::string scholar_id;
  double value = 0.0;

  bool operator==(const RankEntry&) const = default;
};

struct RankingList {
  Measure measure = Measure::Collaborators;
  std::vector<RankEntry> entries;  // value desc, then id asc; only value > 0
  std::uint64_t computed_at = 0;   // graph revision

  bool operator==(const RankingList&) const = default;
};

RankingList ranked_list(Measure m, const MeasureMap& values, std::uint64_t computed_at);
RankingList ranked_list(Measure m, const GraphStore& graph, const MeasureConfig& config = {});

/// Slice [offset, offset + limit). An offset past the end yields an empty page.
std::vector<RankEntry> page(const RankingList& list, std::size_t offset, std::size_t limit);

/// In-process ranking cache keyed by (measure, graph revision).
///
/// get() serves the cached list when its computed_at matches the graph's
/// revision and otherwise recomputes under a per-measure lock, so at most one
/// computation runs per (measure, revision). Reads of different measures do
/// not contend.
class RankingCache {
 public:
  explicit RankingCache(MeasureConfig config = {}) : config_(config) {}

  std::shared_ptr<const RankingList> get(Measure m, const GraphStore& graph);
  void invalidate(Measure m);
  void invalidate_all();

  /// Number of recomputations so far (for tests and metrics).
  std::size_t computations() const;

 private:
  struct Slot {
    mutable std::mutex mu;
    std::shared_ptr<const RankingList> list;
    std::size_t computations = 0;
  };
  Slot& slot(Measure m) { return slots_[static_cast<std::size_t>(m)]; }

  MeasureConfig config_;
  std::array<Slot, kAllMeasures.size()> slots_;
};

}  // namespace wos
