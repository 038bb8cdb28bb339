#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "wos/classifier.hpp"
#include "wos/corpus.hpp"
#include "wos/graph.hpp"

namespace wos {

/// COAUTHOR(u, v) weighted by the number of publications listing both.
std::vector<RelEdge> mine_coauthors(const PublicationTable& pubs);

struct CollabProfile {
  std::string scholar_id;
  std::map<std::string, double> weights;  // collaborator -> joint publications
  struct Point {
    std::string collaborator_id;
    double lat = 0.0;
    double lng = 0.0;
  };
  std::vector<Point> geo_points;
  std::size_t missing_geo = 0;        // collaborators whose institution is not in the geo table
  std::map<int, int> yearly_counts;   // year -> distinct active collaborators; zero years absent
};

/// Throws NotFoundError for an unknown scholar.
CollabProfile collab_profile(const GraphStore& graph, const std::string& id,
                             YearRange range = {1980, 2017});

struct FeatureConfig {
  int early_career_years = 5;
  double age_gap_cap = 30.0;
  double span_cap = 10.0;
};

struct CandidatePair {
  std::string advisor;
  std::string advisee;
  int first_joint_year = 0;
  int last_joint_year = 0;
  AdvisorFeatures features = AdvisorFeatures::Zero();
  double score = 0.0;
};

/// Features of `advisor` as a candidate advisor of `advisee`, computed from
/// publications. Returns std::nullopt when the two never co-authored.
std::optional<CandidatePair> evaluate_candidate(const GraphStore& graph, const std::string& advisor,
                                                const std::string& advisee, const AdvisorModel& model,
                                                const FeatureConfig& config = {});

inline constexpr double kAdvisorTieTolerance = 1e-12;

struct AdvisorMining {
  std::vector<RelEdge> edges;              // ADVISOR_OF(advisor -> advisee), weight = score
  std::vector<CandidatePair> candidates;   // every evaluated (coauthor, scholar) pair
};

/// Scores every COAUTHOR neighbor of every scholar as a candidate advisor and
/// keeps, per advisee, the best candidate whose score reaches `threshold`
/// (ties go to the smaller scholar id; scores within kAdvisorTieTolerance
/// count as tied). Requires COAUTHOR edges in `graph`.
AdvisorMining mine_advisors(const GraphStore& graph, const AdvisorModel& model, double threshold,
                            const FeatureConfig& config = {});

/// Cycles in the advisor relation, each listed from its smallest id.
std::vector<std::vector<std::string>> find_advisor_cycles(const std::vector<RelEdge>& advisor_edges);

/// CITES(u -> v): publications by u that reference work of v, excluding
/// citing publications v co-authored.
std::vector<RelEdge> mine_citations(const PublicationTable& pubs);

enum class RefereeTag { Advisor, Advisee, Coauthor, Other };
std::string_view to_string(RefereeTag tag);

/// Role of `other` relative to `center`: advisor > advisee > coauthor > other.
RefereeTag referee_identity(const GraphStore& graph, const std::string& center,
                            const std::string& other);

struct TaggedCitation {
  RelEdge edge;
  RefereeTag tag;  // citing scholar's role relative to the cited scholar
};

/// Tags each citer by its relation to the cited scholar using the ADVISOR_OF
/// and COAUTHOR edges already in `graph`.
std::vector<TaggedCitation> tag_citations(const GraphStore& graph, const std::vector<RelEdge>& cites);

/// COCITED(u, v): distinct citing publications referencing work of both.
std::vector<RelEdge> mine_cocitations(const PublicationTable& pubs);

/// TEAM(x -> m) for m among x's advisees and coauthors with weight >= threshold.
std::vector<RelEdge> mine_teams(const std::vector<RelEdge>& edges, double threshold);

struct MineOptions {
  std::set<EdgeKind> kinds{kAllEdgeKinds.begin(), kAllEdgeKinds.end()};
  AdvisorModel model;
  double tau = 0.5;
  double team_threshold = 3.0;
  FeatureConfig features;
};

struct MineReport {
  std::map<EdgeKind, std::size_t> edge_counts;
  std::vector<CandidatePair> advisor_candidates;
  std::vector<std::vector<std::string>> advisor_cycles;
};

/// Runs the requested miners in dependency order (coauthor, advisor, cites,
/// cocited, team), replacing existing edges of each mined kind.
MineReport mine_all(GraphStore& graph, const MineOptions& options);

}  // namespace wos
