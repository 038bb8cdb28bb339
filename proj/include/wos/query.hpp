#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wos/graph.hpp"
#include "wos/ranking.hpp"

namespace wos {

enum class Relation { Advisor, Advisees, Collaborators, Citers, Team };

std::string_view to_string(Relation r);

/// Accepts the singular and plural keyword forms, case-insensitively.
std::optional<Relation> parse_relation(std::string_view word);

struct QueryAst {
  enum class Kind { NameSearch, RelationQuery };

  Kind kind = Kind::NameSearch;
  std::string name;                 // trimmed
  std::optional<Relation> relation; // set iff kind == RelationQuery

  bool operator==(const QueryAst&) const = default;
};

/// Grammar (keywords case-insensitive, whitespace-separated):
///
///   query    := name "'s" relation     possessive, tried first
///             | relation "of" name
///             | name                   fallback
///   relation := advisor | advisee[s] | collaborator[s] | citer[s] | team
///
/// The apostrophe may be ' or U+2019. Total: any input yields an AST, falling
/// back to a NameSearch of the trimmed text.
QueryAst parse_query(std::string_view text);

/// Canonical text: "<name>'s <relation>" or the bare name. Re-parses to an
/// equal AST.
std::string to_string(const QueryAst& ast);

/// Lower-cased alphanumeric tokens of a name.
std::vector<std::string> normalize_tokens(std::string_view text);

/// Levenshtein distance (unit insert/delete/substitute).
std::size_t edit_distance(std::string_view a, std::string_view b);

enum class MatchQuality { Exact = 0, Prefix = 1, Edit1 = 2 };

struct NameHit {
  std::string scholar_id;
  std::string name;
  MatchQuality quality = MatchQuality::Exact;

  bool operator==(const NameHit&) const = default;
};

/// Token index over scholar names for autocomplete.
///
/// A name token matches a fragment token exactly, by prefix, or (for
/// fragments of four or more characters) within edit distance one. A
/// multi-token fragment requires every fragment token to match some name
/// token; the scholar's quality is the worst of those matches. Hits rank by
/// quality, then COLLABORATORS desc, then id.
class NameIndex {
 public:
  NameIndex() = default;
  NameIndex(const GraphStore& graph, const MeasureMap& collaborators);

  std::vector<NameHit> lookup(std::string_view fragment, std::size_t limit) const;

  std::size_t token_count() const { return tokens_.size(); }

 private:
  // Best quality per scholar for one fragment token.
  std::map<std::string, MatchQuality> match_token(const std::string& frag) const;

  std::map<std::string, std::vector<std::string>> tokens_;  // token -> scholar ids
  std::map<std::string, std::string> names_;
  std::map<std::string, double> collaborators_;
};

struct RelatedScholar {
  std::string scholar_id;
  std::string name;
  double weight = 0.0;
};

struct QueryAnswer {
  enum class Status { Ok, NoMatch, NoRelation, Ambiguous };

  Status status = Status::Ok;
  QueryAst ast;
  std::vector<NameHit> subjects;  // resolved scholar(s), or the name-search hits
  /// For RelationQuery: related scholars per subject (parallel to subjects).
  std::vector<std::vector<RelatedScholar>> related;
};

std::string_view to_string(QueryAnswer::Status s);

/// The edge walk behind each relation, from the subject's side.
std::vector<Neighbor> follow_relation(const GraphStore& graph, const std::string& id, Relation r);

/// NameSearch returns the fuzzy hits. RelationQuery resolves the name to the
/// hits sharing the best match quality; several such hits are reported as
/// Ambiguous (each still answered), none as NoMatch, and a resolved subject
/// without related scholars as NoRelation.
QueryAnswer answer(const QueryAst& ast, const GraphStore& graph, const NameIndex& index,
                   std::size_t limit = 10);

}  // namespace wos
