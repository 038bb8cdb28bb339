#pragma once

// Library output vs. brute-force oracle on one corpus. Returns a list of
// human-readable mismatches; empty means identical at zero tolerance.

#include <sstream>
#include <string>
#include <vector>

#include "support/oracle.hpp"
#include "wos/graph.hpp"
#include "wos/miner.hpp"
#include "wos/ranking.hpp"

namespace wos::testing {

inline void compare_weights(const char* what, const oracle::WeightMap& want, const std::vector<RelEdge>& got,
                            std::vector<std::string>& out) {
  oracle::WeightMap have;
  for (const auto& e : got) have[{e.src, e.dst}] = e.weight;
  if (have == want) return;
  std::ostringstream os;
  os << what << ": " << have.size() << " edges vs oracle " << want.size();
  for (const auto& [k, w] : want) {
    auto it = have.find(k);
    if (it == have.end() || it->second != w) {
      os << "; first diff " << k.first << "->" << k.second << " oracle " << w << " got "
         << (it == have.end() ? -1.0 : it->second);
      break;
    }
  }
  out.push_back(os.str());
}

inline void compare_values(const char* what, const oracle::ValueMap& want, const MeasureMap& got,
                           std::vector<std::string>& out) {
  for (const auto& [id, v] : want) {
    auto it = got.find(id);
    if (it == got.end() || it->second != v) {
      std::ostringstream os;
      os.precision(17);
      os << what << "[" << id << "]: oracle " << v << " got " << (it == got.end() ? -1.0 : it->second);
      out.push_back(os.str());
      return;
    }
  }
  if (got.size() != want.size()) out.push_back(std::string(what) + ": scholar count differs");
}

inline std::vector<std::string> oracle_mismatches(const std::vector<PublicationRecord>& records) {
  std::vector<std::string> out;
  GraphStore g;
  g.ingest(records);
  const MineOptions opt;
  mine_all(g, opt);

  const oracle::Corpus c(records);
  compare_weights("COAUTHOR", oracle::coauthor(c), g.edges(EdgeKind::Coauthor), out);
  compare_weights("CITES", oracle::cites(c), g.edges(EdgeKind::Cites), out);
  compare_weights("COCITED", oracle::cocited(c), g.edges(EdgeKind::Cocited), out);

  const auto adv = oracle::advisors(c);
  oracle::WeightMap adv_edges;
  for (const auto& [s, pick] : adv) adv_edges[{pick.advisor, s}] = 1.0;
  oracle::WeightMap got_adv;
  std::vector<RelEdge> mined_adv;
  for (const auto& e : g.edges(EdgeKind::AdvisorOf)) {
    const auto& pick = adv.find(e.dst);
    if (pick != adv.end() && std::abs(pick->second.score - e.weight) > 1e-12)
      out.push_back("ADVISOR_OF score differs for " + e.src + "->" + e.dst);
    mined_adv.push_back({e.src, e.dst, e.kind, 1.0, e.years});
  }
  compare_weights("ADVISOR_OF", adv_edges, mined_adv, out);

  const auto team = oracle::teams(c, adv, opt.team_threshold);
  oracle::WeightMap team_edges;
  for (const auto& p : team) team_edges[p] = 0.0;
  std::vector<RelEdge> mined_team;
  for (auto e : g.edges(EdgeKind::Team)) {
    e.weight = 0.0;
    mined_team.push_back(e);
  }
  compare_weights("TEAM", team_edges, mined_team, out);

  const auto m = oracle::measures(c, adv, team);
  compare_values("collaborators", m.collaborators, compute_measure(Measure::Collaborators, g), out);
  compare_values("advisees", m.advisees, compute_measure(Measure::Advisees, g), out);
  compare_values("team_members", m.team_members, compute_measure(Measure::TeamMembers, g), out);
  compare_values("advisor_influence", m.advisor_influence, compute_measure(Measure::AdvisorInfluence, g), out);
  compare_values("citations", m.citations, compute_measure(Measure::Citations, g), out);
  compare_values("potential_index", m.potential_index, compute_measure(Measure::PotentialIndex, g), out);
  return out;
}

}  // namespace wos::testing
