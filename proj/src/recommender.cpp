#include "wos/recommender.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "wos/error.hpp"

namespace wos {

namespace {

constexpr std::array<Criterion, 4> kCriteria = {Criterion::Fields, Criterion::Advisees,
                                                 Criterion::Citations, Criterion::Institution};

std::string format_count(double v) {
  std::ostringstream os;
  os << static_cast<long long>(std::llround(v));
  return os.str();
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

double weight_sum(const PreferenceForm& form) {
  double total = 0.0;
  for (Criterion c : kCriteria)
    if (form.is_set(c)) total += form.weight(c);
  return total;
}

}  // namespace

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::Fields: return "fields";
    case Criterion::Advisees: return "advisees";
    case Criterion::Citations: return "citations";
    case Criterion::Institution: return "institution";
  }
  return "fields";
}

double PreferenceForm::weight(Criterion c) const {
  switch (c) {
    case Criterion::Fields: return fields_weight;
    case Criterion::Advisees: return advisees_weight;
    case Criterion::Citations: return citations_weight;
    case Criterion::Institution: return institution_weight;
  }
  return 0.0;
}

bool PreferenceForm::is_set(Criterion c) const {
  switch (c) {
    case Criterion::Fields: return !field_tags.empty();
    case Criterion::Advisees: return min_advisees.has_value();
    case Criterion::Citations: return min_citations.has_value();
    case Criterion::Institution: return institution.has_value();
  }
  return false;
}

void PreferenceForm::validate() const {
  if (std::none_of(kCriteria.begin(), kCriteria.end(), [&](Criterion c) { return is_set(c); }))
    throw InvalidArgumentError("preference form sets no criterion");
  if (min_advisees && *min_advisees < 0) throw InvalidArgumentError("min_advisees must be >= 0");
  if (min_citations && *min_citations < 0) throw InvalidArgumentError("min_citations must be >= 0");
  for (Criterion c : kCriteria)
    if (!(weight(c) >= 0.0) || !std::isfinite(weight(c)))
      throw InvalidArgumentError("criterion weights must be finite and non-negative");
  if (!(weight_sum(*this) > 0.0)) throw InvalidArgumentError("weights of the set criteria are all zero");
}

MeasureSet advisor_measures(const GraphStore& graph) {
  return {compute_measure(Measure::Advisees, graph), compute_measure(Measure::Citations, graph),
          compute_measure(Measure::AdvisorInfluence, graph)};
}

double score_from_reasons(const PreferenceForm& form, const std::vector<Reason>& reasons) {
  double satisfied = 0.0;
  for (const auto& r : reasons) satisfied += form.weight(r.criterion);
  return satisfied / weight_sum(form);
}

std::vector<Recommendation> recommend_advisors(const PreferenceForm& form, const GraphStore& graph,
                                               const MeasureSet& measures, std::size_t limit,
                                               std::size_t preview_coauthors) {
  form.validate();
  std::vector<Recommendation> out;

  for (const auto& [id, scholar] : graph.scholars()) {
    const double advisees = measures.advisees.at(id);
    const double citations = measures.citations.at(id);
    const double influence = measures.advisor_influence.at(id);
    if (advisees < 1 && !(influence > 0)) continue;

    std::vector<Reason> reasons;
    if (form.is_set(Criterion::Fields)) {
      std::set<std::string> fields;
      for (const auto& pid : scholar.pub_ids)
        for (const auto& f : graph.publications().at(pid).fields) fields.insert(f);
      std::vector<std::string> overlap;
      for (const auto& f : form.field_tags)
        if (fields.contains(f) && std::find(overlap.begin(), overlap.end(), f) == overlap.end())
          overlap.push_back(f);
      if (!overlap.empty()) reasons.push_back({Criterion::Fields, "publishes in " + join(overlap)});
    }
    if (form.min_advisees && advisees >= *form.min_advisees)
      reasons.push_back({Criterion::Advisees, "has " + format_count(advisees) + " advisee(s) ≥ " +
                                                  std::to_string(*form.min_advisees)});
    if (form.min_citations && citations >= *form.min_citations)
      reasons.push_back({Criterion::Citations, "has " + format_count(citations) + " citation(s) ≥ " +
                                                   std::to_string(*form.min_citations)});
    if (form.institution && scholar.institution == *form.institution)
      reasons.push_back({Criterion::Institution, "works at " + scholar.institution});

    // Zero-weight criteria can be satisfied yet add nothing; keep only scoring items.
    const double score = reasons.empty() ? 0.0 : score_from_reasons(form, reasons);
    if (!(score > 0.0)) continue;

    Recommendation rec;
    rec.scholar_id = id;
    rec.name = scholar.name;
    rec.match_score = score;
    rec.advisor_influence = influence;
    rec.reasons = std::move(reasons);
    out.push_back(std::move(rec));
  }

  std::sort(out.begin(), out.end(), [](const Recommendation& a, const Recommendation& b) {
    if (a.match_score != b.match_score) return a.match_score > b.match_score;
    if (a.advisor_influence != b.advisor_influence) return a.advisor_influence > b.advisor_influence;
    return a.scholar_id < b.scholar_id;
  });
  if (out.size() > limit) out.resize(limit);

  for (auto& rec : out) {
    rec.ego_preview.advisors = graph.neighbors(rec.scholar_id, EdgeKind::AdvisorOf, Direction::In);
    rec.ego_preview.advisees = graph.neighbors(rec.scholar_id, EdgeKind::AdvisorOf, Direction::Out);
    rec.ego_preview.coauthors = graph.neighbors(rec.scholar_id, EdgeKind::Coauthor, Direction::Both);
    if (rec.ego_preview.coauthors.size() > preview_coauthors)
      rec.ego_preview.coauthors.resize(preview_coauthors);
  }
  return out;
}

}  // namespace wos
