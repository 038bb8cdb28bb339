#include "wos/miner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "wos/error.hpp"

namespace wos {

namespace {

struct PairTally {
  double count = 0.0;
  int first_year = 0;
  int last_year = 0;

  void add(int year) {
    if (count == 0.0) {
      first_year = last_year = year;
    } else {
      first_year = std::min(first_year, year);
      last_year = std::max(last_year, year);
    }
    count += 1.0;
  }
};

using PairKey = std::pair<std::string, std::string>;

std::vector<RelEdge> to_edges(const std::map<PairKey, PairTally>& tallies, EdgeKind kind) {
  std::vector<RelEdge> out;
  out.reserve(tallies.size());
  for (const auto& [key, t] : tallies)
    out.push_back({key.first, key.second, kind, t.count, YearRange{t.first_year, t.last_year}});
  return out;
}

std::set<std::string> author_set(const PublicationRecord& p) {
  std::set<std::string> out;
  for (const auto& a : p.authors) out.insert(a.scholar_id);
  return out;
}

// Authors of every resolvable reference of `p`. Dangling refs contribute nothing.
std::set<std::string> cited_authors(const PublicationRecord& p, const PublicationTable& pubs) {
  std::set<std::string> out;
  for (const auto& ref : p.refs) {
    auto it = pubs.find(ref);
    if (it == pubs.end()) continue;
    for (const auto& a : it->second.authors) out.insert(a.scholar_id);
  }
  return out;
}

bool has_author(const PublicationRecord& p, const std::string& id) {
  return std::any_of(p.authors.begin(), p.authors.end(),
                     [&](const AuthorRef& a) { return a.scholar_id == id; });
}

}  // namespace

std::vector<RelEdge> mine_coauthors(const PublicationTable& pubs) {
  std::map<PairKey, PairTally> tallies;
  for (const auto& [id, p] : pubs) {
    const auto authors = author_set(p);
    for (auto u = authors.begin(); u != authors.end(); ++u)
      for (auto v = std::next(u); v != authors.end(); ++v) tallies[{*u, *v}].add(p.year);
  }
  return to_edges(tallies, EdgeKind::Coauthor);
}

CollabProfile collab_profile(const GraphStore& graph, const std::string& id, YearRange range) {
  const Scholar* s = graph.find_scholar(id);
  if (!s) throw NotFoundError("unknown scholar '" + id + "'");

  CollabProfile profile;
  profile.scholar_id = id;
  for (const auto& n : graph.neighbors(id, EdgeKind::Coauthor, Direction::Both)) {
    profile.weights[n.scholar_id] = n.weight;
    const Scholar* other = graph.find_scholar(n.scholar_id);
    auto geo = graph.geo_table().find(other->institution);
    if (geo == graph.geo_table().end()) {
      ++profile.missing_geo;
    } else {
      profile.geo_points.push_back({n.scholar_id, geo->second.lat, geo->second.lng});
    }
  }

  std::map<int, std::set<std::string>> active;
  for (const auto& pid : s->pub_ids) {
    const auto& p = graph.publications().at(pid);
    if (p.year < range.start || p.year > range.end) continue;
    for (const auto& a : p.authors)
      if (a.scholar_id != id) active[p.year].insert(a.scholar_id);
  }
  for (const auto& [year, ids] : active) profile.yearly_counts[year] = static_cast<int>(ids.size());
  return profile;
}

std::optional<CandidatePair> evaluate_candidate(const GraphStore& graph, const std::string& advisor,
                                                const std::string& advisee, const AdvisorModel& model,
                                                const FeatureConfig& config) {
  const Scholar* a = graph.find_scholar(advisor);
  const Scholar* s = graph.find_scholar(advisee);
  if (!a) throw NotFoundError("unknown scholar '" + advisor + "'");
  if (!s) throw NotFoundError("unknown scholar '" + advisee + "'");
  if (advisor == advisee) return std::nullopt;

  const int early_end = s->first_pub_year + config.early_career_years - 1;
  int early_total = 0;
  int early_joint = 0;
  std::optional<int> first_joint, last_joint;
  for (const auto& pid : s->pub_ids) {
    const auto& p = graph.publications().at(pid);
    const bool joint = has_author(p, advisor);
    if (p.year <= early_end) {
      ++early_total;
      if (joint) ++early_joint;
    }
    if (joint) {
      first_joint = first_joint ? std::min(*first_joint, p.year) : p.year;
      last_joint = last_joint ? std::max(*last_joint, p.year) : p.year;
    }
  }
  if (!first_joint) return std::nullopt;

  CandidatePair c;
  c.advisor = advisor;
  c.advisee = advisee;
  c.first_joint_year = *first_joint;
  c.last_joint_year = *last_joint;
  const double age_gap = s->first_pub_year - a->first_pub_year;
  const double span = *last_joint - *first_joint + 1;  // inclusive count of years
  c.features(0) = std::clamp(age_gap, 0.0, config.age_gap_cap) / config.age_gap_cap;
  c.features(1) = early_total == 0 ? 0.0 : static_cast<double>(early_joint) / early_total;
  c.features(2) = std::clamp(span, 0.0, config.span_cap) / config.span_cap;
  c.features(3) = a->first_pub_year < *first_joint ? 1.0 : 0.0;
  c.score = model.score(c.features);
  return c;
}

AdvisorMining mine_advisors(const GraphStore& graph, const AdvisorModel& model, double threshold,
                            const FeatureConfig& config) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw InvalidArgumentError("threshold must lie in (0, 1)");
  if (!model.weights.allFinite() || !std::isfinite(model.bias))
    throw InvalidArgumentError("advisor model parameters must be finite");

  AdvisorMining out;
  for (const auto& [sid, scholar] : graph.scholars()) {
    std::vector<Neighbor> coauthors = graph.neighbors(sid, EdgeKind::Coauthor, Direction::Both);
    std::sort(coauthors.begin(), coauthors.end(),
              [](const Neighbor& x, const Neighbor& y) { return x.scholar_id < y.scholar_id; });

    const CandidatePair* best = nullptr;
    const std::size_t first = out.candidates.size();
    for (const auto& n : coauthors) {
      auto c = evaluate_candidate(graph, n.scholar_id, sid, model, config);
      if (c) out.candidates.push_back(std::move(*c));
    }
    // Candidates are in id order, so only a clear win replaces the smaller id.
    // Equal feature sums can round apart, hence the tolerance.
    for (std::size_t i = first; i < out.candidates.size(); ++i) {
      const auto& c = out.candidates[i];
      if (c.score >= threshold && (!best || c.score > best->score + kAdvisorTieTolerance)) best = &c;
    }
    if (best)
      out.edges.push_back({best->advisor, best->advisee, EdgeKind::AdvisorOf, best->score,
                           YearRange{best->first_joint_year, best->last_joint_year}});
  }
  return out;
}

std::vector<std::vector<std::string>> find_advisor_cycles(const std::vector<RelEdge>& advisor_edges) {
  // Follow advisee -> advisor pointers; in-degree <= 1 makes this a functional graph.
  std::map<std::string, std::string> advisor_of;
  for (const auto& e : advisor_edges)
    if (e.kind == EdgeKind::AdvisorOf) advisor_of.emplace(e.dst, e.src);

  std::set<std::vector<std::string>> cycles;
  std::set<std::string> done;
  for (const auto& [start, unused] : advisor_of) {
    std::vector<std::string> path;
    std::map<std::string, std::size_t> pos;
    std::string cur = start;
    bool closed = false;
    while (!done.contains(cur)) {
      if (pos.contains(cur)) {
        closed = true;
        break;
      }
      pos[cur] = path.size();
      path.push_back(cur);
      auto it = advisor_of.find(cur);
      if (it == advisor_of.end()) break;
      cur = it->second;
    }
    if (closed) {
      std::vector<std::string> cycle(path.begin() + static_cast<std::ptrdiff_t>(pos[cur]), path.end());
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      cycles.insert(std::move(cycle));
    }
    done.insert(path.begin(), path.end());
  }
  return {cycles.begin(), cycles.end()};
}

std::vector<RelEdge> mine_citations(const PublicationTable& pubs) {
  std::map<PairKey, PairTally> tallies;
  for (const auto& [id, p] : pubs) {
    const auto authors = author_set(p);
    for (const auto& v : cited_authors(p, pubs)) {
      if (authors.contains(v)) continue;  // cited scholar co-authored the citing paper
      for (const auto& u : authors) tallies[{u, v}].add(p.year);
    }
  }
  return to_edges(tallies, EdgeKind::Cites);
}

std::string_view to_string(RefereeTag tag) {
  switch (tag) {
    case RefereeTag::Advisor: return "advisor";
    case RefereeTag::Advisee: return "advisee";
    case RefereeTag::Coauthor: return "coauthor";
    case RefereeTag::Other: return "other";
  }
  return "other";
}

RefereeTag referee_identity(const GraphStore& graph, const std::string& center,
                            const std::string& other) {
  if (graph.find_edge(other, center, EdgeKind::AdvisorOf)) return RefereeTag::Advisor;
  if (graph.find_edge(center, other, EdgeKind::AdvisorOf)) return RefereeTag::Advisee;
  if (graph.find_edge(center, other, EdgeKind::Coauthor)) return RefereeTag::Coauthor;
  return RefereeTag::Other;
}

std::vector<TaggedCitation> tag_citations(const GraphStore& graph, const std::vector<RelEdge>& cites) {
  std::vector<TaggedCitation> out;
  out.reserve(cites.size());
  for (const auto& e : cites) out.push_back({e, referee_identity(graph, e.dst, e.src)});
  return out;
}

std::vector<RelEdge> mine_cocitations(const PublicationTable& pubs) {
  std::map<PairKey, PairTally> tallies;
  for (const auto& [id, p] : pubs) {
    const auto cited = cited_authors(p, pubs);
    for (auto u = cited.begin(); u != cited.end(); ++u)
      for (auto v = std::next(u); v != cited.end(); ++v) tallies[{*u, *v}].add(p.year);
  }
  return to_edges(tallies, EdgeKind::Cocited);
}

std::vector<RelEdge> mine_teams(const std::vector<RelEdge>& edges, double threshold) {
  std::set<PairKey> members;
  for (const auto& e : edges) {
    if (e.kind == EdgeKind::AdvisorOf) {
      members.insert({e.src, e.dst});
    } else if (e.kind == EdgeKind::Coauthor && e.weight >= threshold) {
      members.insert({e.src, e.dst});
      members.insert({e.dst, e.src});
    }
  }
  std::vector<RelEdge> out;
  out.reserve(members.size());
  for (const auto& [owner, member] : members)
    if (owner != member) out.push_back({owner, member, EdgeKind::Team, 1.0, std::nullopt});
  return out;
}

MineReport mine_all(GraphStore& graph, const MineOptions& options) {
  MineReport report;
  auto replace = [&](EdgeKind kind, const std::vector<RelEdge>& edges) {
    graph.clear_edges(kind);
    graph.upsert_edges(edges);
    report.edge_counts[kind] = edges.size();
  };
  const auto wants = [&](EdgeKind k) { return options.kinds.contains(k); };

  if (wants(EdgeKind::Coauthor)) replace(EdgeKind::Coauthor, mine_coauthors(graph.publications()));
  if (wants(EdgeKind::AdvisorOf)) {
    AdvisorMining adv = mine_advisors(graph, options.model, options.tau, options.features);
    report.advisor_cycles = find_advisor_cycles(adv.edges);
    report.advisor_candidates = std::move(adv.candidates);
    replace(EdgeKind::AdvisorOf, adv.edges);
  }
  if (wants(EdgeKind::Cites)) replace(EdgeKind::Cites, mine_citations(graph.publications()));
  if (wants(EdgeKind::Cocited)) replace(EdgeKind::Cocited, mine_cocitations(graph.publications()));
  if (wants(EdgeKind::Team)) {
    std::vector<RelEdge> basis = graph.edges(EdgeKind::AdvisorOf);
    auto co = graph.edges(EdgeKind::Coauthor);
    basis.insert(basis.end(), co.begin(), co.end());
    replace(EdgeKind::Team, mine_teams(basis, options.team_threshold));
  }
  return report;
}

}  // namespace wos
