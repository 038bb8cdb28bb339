#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "wos/error.hpp"
#include "wos/recommender.hpp"

using namespace wos;
using wos::testing::f1_mined;

namespace {

std::vector<std::string> ids(const std::vector<Recommendation>& recs) {
  std::vector<std::string> out;
  for (const auto& r : recs) out.push_back(r.scholar_id);
  return out;
}

}  // namespace

TEST(Recommend, F1MinAdvisees) {
  GraphStore g = f1_mined();
  PreferenceForm form;
  form.min_advisees = 1;
  auto recs = recommend_advisors(form, g, advisor_measures(g), 10);
  ASSERT_EQ(ids(recs), (std::vector<std::string>{"s1", "s2"}));
  for (const auto& r : recs) {
    EXPECT_EQ(r.match_score, 1.0);
    ASSERT_EQ(r.reasons.size(), 1u);
    EXPECT_EQ(r.reasons[0].criterion, Criterion::Advisees);
    EXPECT_EQ(r.reasons[0].text, "has 1 advisee(s) ≥ 1");
  }
  ASSERT_EQ(recs[0].ego_preview.advisors.size(), 1u);
  EXPECT_EQ(recs[0].ego_preview.advisors[0].scholar_id, "s2");
  EXPECT_NEAR(recs[0].ego_preview.advisors[0].weight, 0.8176, 1e-4);
  ASSERT_EQ(recs[0].ego_preview.advisees.size(), 1u);
  EXPECT_EQ(recs[0].ego_preview.advisees[0].scholar_id, "s3");
  EXPECT_EQ(recs[0].ego_preview.coauthors.size(), 2u);
}

TEST(Recommend, UnreachableThresholdGivesEmptyList) {
  GraphStore g = f1_mined();
  PreferenceForm form;
  form.min_citations = 1000000;
  EXPECT_TRUE(recommend_advisors(form, g, advisor_measures(g), 10).empty());
}

TEST(Recommend, PartialMatchScore) {
  GraphStore g = f1_mined();
  PreferenceForm form;
  form.min_advisees = 1;
  form.institution = "I2";
  auto recs = recommend_advisors(form, g, advisor_measures(g), 10);
  ASSERT_EQ(ids(recs), (std::vector<std::string>{"s2", "s1"}));
  EXPECT_EQ(recs[0].match_score, 1.0);
  EXPECT_EQ(recs[0].reasons.back().text, "works at I2");
  EXPECT_EQ(recs[1].match_score, 0.5);
}

TEST(Recommend, FieldsAndCitationsReasons) {
  GraphStore g = f1_mined();
  PreferenceForm form;
  form.field_tags = {"CS", "Bio", "CS"};
  form.min_citations = 1;
  form.citations_weight = 3.0;
  auto recs = recommend_advisors(form, g, advisor_measures(g), 10);
  ASSERT_EQ(ids(recs), (std::vector<std::string>{"s2", "s1"}));
  EXPECT_EQ(recs[0].reasons[0].text, "publishes in CS");
  EXPECT_EQ(recs[0].reasons[1].text, "has 1 citation(s) ≥ 1");
  EXPECT_EQ(recs[0].match_score, 1.0);
  EXPECT_EQ(recs[1].match_score, 0.25);
}

TEST(Recommend, LimitTruncates) {
  GraphStore g = f1_mined();
  PreferenceForm form;
  form.min_advisees = 0;
  EXPECT_EQ(ids(recommend_advisors(form, g, advisor_measures(g), 1)), std::vector<std::string>{"s1"});
  EXPECT_TRUE(recommend_advisors(form, g, advisor_measures(g), 0).empty());
}

TEST(Recommend, NoAdvisorsMeansNoCandidates) {
  GraphStore g = wos::testing::f1_graph();
  PreferenceForm form;
  form.min_advisees = 0;
  EXPECT_TRUE(recommend_advisors(form, g, advisor_measures(g), 10).empty());
}

TEST(PreferenceForm, Validation) {
  PreferenceForm empty;
  EXPECT_THROW(empty.validate(), InvalidArgumentError);
  PreferenceForm neg;
  neg.min_advisees = -1;
  EXPECT_THROW(neg.validate(), InvalidArgumentError);
  PreferenceForm zero;
  zero.min_citations = 2;
  zero.citations_weight = 0.0;
  EXPECT_THROW(zero.validate(), InvalidArgumentError);
  PreferenceForm negw;
  negw.min_citations = 2;
  negw.fields_weight = -1.0;
  EXPECT_THROW(negw.validate(), InvalidArgumentError);
  GraphStore g = f1_mined();
  EXPECT_THROW(recommend_advisors(empty, g, advisor_measures(g), 10), InvalidArgumentError);
}

TEST(Recommend, ScoreMatchesReasonsAndScalesOut) {
  GraphStore g = f1_mined();
  PreferenceForm form;
  form.min_advisees = 1;
  form.institution = "I1";
  form.field_tags = {"CS"};
  form.advisees_weight = 2.0;
  form.institution_weight = 0.5;
  auto base = recommend_advisors(form, g, advisor_measures(g), 10);
  for (const auto& r : base) EXPECT_DOUBLE_EQ(r.match_score, score_from_reasons(form, r.reasons));

  PreferenceForm scaled = form;
  scaled.advisees_weight *= 8;
  scaled.institution_weight *= 8;
  scaled.fields_weight *= 8;
  auto again = recommend_advisors(scaled, g, advisor_measures(g), 10);
  ASSERT_EQ(ids(again), ids(base));
  for (std::size_t i = 0; i < base.size(); ++i) EXPECT_DOUBLE_EQ(again[i].match_score, base[i].match_score);
}

TEST(Recommend, Deterministic) {
  GraphStore g = f1_mined();
  PreferenceForm form;
  form.field_tags = {"CS"};
  auto a = recommend_advisors(form, g, advisor_measures(g), 10);
  auto b = recommend_advisors(form, g, advisor_measures(g), 10);
  ASSERT_EQ(ids(a), ids(b));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].match_score, b[i].match_score);
}
