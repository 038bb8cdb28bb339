#include "wos/ranking.hpp"

#include <algorithm>
#include <set>

namespace wos {

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::Collaborators: return "collaborators";
    case Measure::Advisees: return "advisees";
    case Measure::TeamMembers: return "team_members";
    case Measure::AdvisorInfluence: return "advisor_influence";
    case Measure::Citations: return "citations";
    case Measure::PotentialIndex: return "potential_index";
  }
  return "unknown";
}

std::optional<Measure> parse_measure(std::string_view name) {
  for (Measure m : kAllMeasures)
    if (to_string(m) == name) return m;
  return std::nullopt;
}

namespace {

MeasureMap zeros(const GraphStore& graph) {
  MeasureMap out;
  for (const auto& [id, s] : graph.scholars()) out.emplace_hint(out.end(), id, 0.0);
  return out;
}

MeasureMap out_degree(const GraphStore& graph, EdgeKind kind) {
  MeasureMap out = zeros(graph);
  for (auto& [id, v] : out) v = static_cast<double>(graph.neighbors(id, kind, Direction::Out).size());
  return out;
}

// Citing publications per cited scholar, restricted to citing years >= min_year.
MeasureMap citation_counts(const GraphStore& graph, int min_year) {
  MeasureMap out = zeros(graph);
  const auto& pubs = graph.publications();
  for (const auto& [id, p] : pubs) {
    if (p.year < min_year) continue;
    std::set<std::string> cited;
    for (const auto& ref : p.refs) {
      auto it = pubs.find(ref);
      if (it == pubs.end()) continue;
      for (const auto& a : it->second.authors) cited.insert(a.scholar_id);
    }
    for (const auto& a : p.authors) cited.erase(a.scholar_id);
    for (const auto& v : cited) out[v] += 1.0;
  }
  return out;
}

int max_corpus_year(const GraphStore& graph) {
  int y = 0;
  for (const auto& [id, p] : graph.publications()) y = std::max(y, p.year);
  return y;
}

}  // namespace

MeasureMap compute_measure(Measure m, const GraphStore& graph, const MeasureConfig& config) {
  switch (m) {
    case Measure::Collaborators: {
      MeasureMap out = zeros(graph);
      for (auto& [id, v] : out)
        v = static_cast<double>(graph.neighbors(id, EdgeKind::Coauthor, Direction::Both).size());
      return out;
    }
    case Measure::Advisees: return out_degree(graph, EdgeKind::AdvisorOf);
    case Measure::TeamMembers: return out_degree(graph, EdgeKind::Team);
    case Measure::Citations: return citation_counts(graph, kMinYear);
    case Measure::AdvisorInfluence: {
      const MeasureMap citations = citation_counts(graph, kMinYear);
      MeasureMap out = zeros(graph);
      for (auto& [id, v] : out)
        for (const auto& n : graph.neighbors(id, EdgeKind::AdvisorOf, Direction::Out))
          v += 1.0 + citations.at(n.scholar_id);
      return out;
    }
    case Measure::PotentialIndex: {
      const int max_year = max_corpus_year(graph);
      MeasureMap out = citation_counts(graph, max_year - config.recent_window_years + 1);
      for (auto& [id, v] : out) {
        const int age = max_year - graph.scholars().at(id).first_pub_year;
        v /= static_cast<double>(std::max(1, age));
      }
      return out;
    }
  }
  return {};
}

RankingList ranked_list(Measure m, const MeasureMap& values, std::uint64_t computed_at) {
  RankingList list{m, {}, computed_at};
  for (const auto& [id, v] : values)
    if (v > 0) list.entries.push_back({id, v});
  // values is id-ordered, so a stable sort on value keeps id ascending within ties.
  std::stable_sort(list.entries.begin(), list.entries.end(),
                   [](const RankEntry& a, const RankEntry& b) { return a.value > b.value; });
  return list;
}

RankingList ranked_list(Measure m, const GraphStore& graph, const MeasureConfig& config) {
  return ranked_list(m, compute_measure(m, graph, config), graph.revision());
}

std::vector<RankEntry> page(const RankingList& list, std::size_t offset, std::size_t limit) {
  if (offset >= list.entries.size()) return {};
  const std::size_t end = offset + std::min(limit, list.entries.size() - offset);
  return {list.entries.begin() + static_cast<std::ptrdiff_t>(offset),
          list.entries.begin() + static_cast<std::ptrdiff_t>(end)};
}

std::shared_ptr<const RankingList> RankingCache::get(Measure m, const GraphStore& graph) {
  const std::uint64_t rev = graph.revision();
  Slot& s = slot(m);
  std::lock_guard lock(s.mu);
  if (s.list && s.list->computed_at == rev) return s.list;
  s.list = std::make_shared<const RankingList>(ranked_list(m, graph, config_));
  ++s.computations;
  return s.list;
}

void RankingCache::invalidate(Measure m) {
  Slot& s = slot(m);
  std::lock_guard lock(s.mu);
  s.list.reset();
}

void RankingCache::invalidate_all() {
  for (Measure m : kAllMeasures) invalidate(m);
}

std::size_t RankingCache::computations() const {
  std::size_t n = 0;
  for (const auto& s : slots_) {
    std::lock_guard lock(s.mu);
    n += s.computations;
  }
  return n;
}

}  // namespace wos
