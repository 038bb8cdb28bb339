#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wos/graph.hpp"
#include "wos/ranking.hpp"

namespace wos {

enum class Criterion { Fields, Advisees, Citations, Institution };

std::string_view to_string(Criterion c);

/// What a student asks of an advisor. Unset criteria do not count toward the
/// score. Weights default to 1.
struct PreferenceForm {
  std::vector<std::string> field_tags;
  std::optional<int> min_advisees;
  std::optional<int> min_citations;
  std::optional<std::string> institution;
  double fields_weight = 1.0;
  double advisees_weight = 1.0;
  double citations_weight = 1.0;
  double institution_weight = 1.0;

  /// Throws InvalidArgumentError when no criterion is set, a threshold or
  /// weight is negative, or the weights of the set criteria sum to zero.
  void validate() const;
  double weight(Criterion c) const;
  bool is_set(Criterion c) const;
};

struct Reason {
  Criterion criterion;
  std::string text;
};

struct EgoPreview {
  std::vector<Neighbor> advisors;
  std::vector<Neighbor> advisees;
  std::vector<Neighbor> coauthors;  // top coauthors by weight
};

struct Recommendation {
  std::string scholar_id;
  std::string name;
  double match_score = 0.0;
  double advisor_influence = 0.0;
  std::vector<Reason> reasons;  // one per satisfied criterion, in criterion order
  EgoPreview ego_preview;
};

struct MeasureSet {
  MeasureMap advisees;
  MeasureMap citations;
  MeasureMap advisor_influence;
};

MeasureSet advisor_measures(const GraphStore& graph);

/// Candidates are scholars with at least one advisee or positive advisor
/// influence. match_score = (sum of satisfied weights) / (sum of set weights);
/// candidates satisfying nothing are dropped. Sorted by score desc, advisor
/// influence desc, id asc; truncated to `limit`.
std::vector<Recommendation> recommend_advisors(const PreferenceForm& form, const GraphStore& graph,
                                               const MeasureSet& measures, std::size_t limit,
                                               std::size_t preview_coauthors = 10);

/// Re-derives a recommendation's score from its reasons.
double score_from_reasons(const PreferenceForm& form, const std::vector<Reason>& reasons);

}  // namespace wos
