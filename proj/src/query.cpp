#include "wos/query.hpp"

#include <algorithm>
#include <cctype>

namespace wos {

namespace {

constexpr std::size_t kMinFuzzyLength = 4;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && lower(a) == lower(b);
}

// Strips a trailing possessive marker ("'s" or "’s"); nullopt if absent.
std::optional<std::string_view> strip_possessive(std::string_view s) {
  for (std::string_view mark : {std::string_view("'s"), std::string_view("'S"),
                                std::string_view("\xE2\x80\x99s"), std::string_view("\xE2\x80\x99S")}) {
    if (s.size() > mark.size() && s.ends_with(mark)) return s.substr(0, s.size() - mark.size());
  }
  return std::nullopt;
}

// Splits off the last whitespace-separated word: (head, word).
std::pair<std::string_view, std::string_view> split_last_word(std::string_view s) {
  std::size_t i = s.size();
  while (i > 0 && !is_space(s[i - 1])) --i;
  return {s.substr(0, i), s.substr(i)};
}

std::pair<std::string_view, std::string_view> split_first_word(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && !is_space(s[i])) ++i;
  return {s.substr(0, i), s.substr(i)};
}

}  // namespace

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Advisor: return "advisor";
    case Relation::Advisees: return "advisees";
    case Relation::Collaborators: return "collaborators";
    case Relation::Citers: return "citers";
    case Relation::Team: return "team";
  }
  return "advisor";
}

std::optional<Relation> parse_relation(std::string_view word) {
  const std::string w = lower(word);
  if (w == "advisor") return Relation::Advisor;
  if (w == "advisee" || w == "advisees") return Relation::Advisees;
  if (w == "collaborator" || w == "collaborators") return Relation::Collaborators;
  if (w == "citer" || w == "citers") return Relation::Citers;
  if (w == "team") return Relation::Team;
  return std::nullopt;
}

QueryAst parse_query(std::string_view text) {
  const std::string_view t = trim(text);

  // name 's relation
  if (auto [head, word] = split_last_word(t); !head.empty()) {
    if (auto rel = parse_relation(word)) {
      if (auto name = strip_possessive(trim(head))) {
        const std::string_view n = trim(*name);
        if (!n.empty()) return {QueryAst::Kind::RelationQuery, std::string(n), rel};
      }
    }
  }

  // relation of name
  if (auto [word, rest] = split_first_word(t); !rest.empty()) {
    if (auto rel = parse_relation(word)) {
      auto [of, name] = split_first_word(trim(rest));
      const std::string_view n = trim(name);
      if (iequals(of, "of") && !n.empty())
        return {QueryAst::Kind::RelationQuery, std::string(n), rel};
    }
  }

  return {QueryAst::Kind::NameSearch, std::string(t), std::nullopt};
}

std::string to_string(const QueryAst& ast) {
  if (ast.kind == QueryAst::Kind::NameSearch || !ast.relation) return ast.name;
  return ast.name + "'s " + std::string(to_string(*ast.relation));
}

std::vector<std::string> normalize_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    // Bytes >= 0x80 are kept so UTF-8 names still tokenize.
    if (std::isalnum(u) || u >= 0x80) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

NameIndex::NameIndex(const GraphStore& graph, const MeasureMap& collaborators)
    : collaborators_(collaborators) {
  for (const auto& [id, s] : graph.scholars()) {
    names_[id] = s.name;
    for (auto& tok : normalize_tokens(s.name)) {
      auto& ids = tokens_[tok];
      if (ids.empty() || ids.back() != id) ids.push_back(id);
    }
  }
}

std::map<std::string, MatchQuality> NameIndex::match_token(const std::string& frag) const {
  std::map<std::string, MatchQuality> best;
  auto note = [&](const std::vector<std::string>& ids, MatchQuality q) {
    for (const auto& id : ids) {
      auto [it, inserted] = best.try_emplace(id, q);
      if (!inserted && q < it->second) it->second = q;
    }
  };

  for (auto it = tokens_.lower_bound(frag); it != tokens_.end() && it->first.starts_with(frag); ++it)
    note(it->second, it->first == frag ? MatchQuality::Exact : MatchQuality::Prefix);

  if (frag.size() >= kMinFuzzyLength) {
    for (const auto& [tok, ids] : tokens_) {
      const std::size_t diff = tok.size() > frag.size() ? tok.size() - frag.size() : frag.size() - tok.size();
      if (diff <= 1 && tok != frag && edit_distance(tok, frag) == 1) note(ids, MatchQuality::Edit1);
    }
  }
  return best;
}

std::vector<NameHit> NameIndex::lookup(std::string_view fragment, std::size_t limit) const {
  const auto frags = normalize_tokens(fragment);
  if (frags.empty() || limit == 0) return {};

  std::map<std::string, MatchQuality> combined = match_token(frags.front());
  for (std::size_t i = 1; i < frags.size() && !combined.empty(); ++i) {
    const auto next = match_token(frags[i]);
    for (auto it = combined.begin(); it != combined.end();) {
      auto m = next.find(it->first);
      if (m == next.end()) {
        it = combined.erase(it);
      } else {
        it->second = std::max(it->second, m->second);
        ++it;
      }
    }
  }

  std::vector<NameHit> hits;
  hits.reserve(combined.size());
  for (const auto& [id, q] : combined) hits.push_back({id, names_.at(id), q});
  auto collab = [&](const std::string& id) {
    auto it = collaborators_.find(id);
    return it == collaborators_.end() ? 0.0 : it->second;
  };
  std::sort(hits.begin(), hits.end(), [&](const NameHit& a, const NameHit& b) {
    if (a.quality != b.quality) return a.quality < b.quality;
    const double ca = collab(a.scholar_id), cb = collab(b.scholar_id);
    if (ca != cb) return ca > cb;
    return a.scholar_id < b.scholar_id;
  });
  if (hits.size() > limit) hits.resize(limit);
  return hits;
}

std::string_view to_string(QueryAnswer::Status s) {
  switch (s) {
    case QueryAnswer::Status::Ok: return "ok";
    case QueryAnswer::Status::NoMatch: return "no_match";
    case QueryAnswer::Status::NoRelation: return "no_relation";
    case QueryAnswer::Status::Ambiguous: return "ambiguous";
  }
  return "ok";
}

std::vector<Neighbor> follow_relation(const GraphStore& graph, const std::string& id, Relation r) {
  switch (r) {
    case Relation::Advisor: return graph.neighbors(id, EdgeKind::AdvisorOf, Direction::In);
    case Relation::Advisees: return graph.neighbors(id, EdgeKind::AdvisorOf, Direction::Out);
    case Relation::Collaborators: return graph.neighbors(id, EdgeKind::Coauthor, Direction::Both);
    case Relation::Citers: return graph.neighbors(id, EdgeKind::Cites, Direction::In);
    case Relation::Team: return graph.neighbors(id, EdgeKind::Team, Direction::Out);
  }
  return {};
}

QueryAnswer answer(const QueryAst& ast, const GraphStore& graph, const NameIndex& index,
                   std::size_t limit) {
  QueryAnswer out;
  out.ast = ast;
  if (ast.kind == QueryAst::Kind::NameSearch || !ast.relation) {
    out.subjects = index.lookup(ast.name, limit);
    out.status = out.subjects.empty() ? QueryAnswer::Status::NoMatch : QueryAnswer::Status::Ok;
    return out;
  }

  // Resolution considers every hit, not just the first `limit`.
  auto hits = index.lookup(ast.name, graph.scholars().size());
  if (hits.empty()) {
    out.status = QueryAnswer::Status::NoMatch;
    return out;
  }
  const MatchQuality top = hits.front().quality;
  std::erase_if(hits, [&](const NameHit& h) { return h.quality != top; });
  if (hits.size() > limit) hits.resize(limit);
  out.subjects = std::move(hits);

  bool any_related = false;
  for (const auto& subject : out.subjects) {
    std::vector<RelatedScholar> related;
    for (const auto& n : follow_relation(graph, subject.scholar_id, *ast.relation))
      related.push_back({n.scholar_id, graph.scholars().at(n.scholar_id).name, n.weight});
    any_related = any_related || !related.empty();
    out.related.push_back(std::move(related));
  }
  if (out.subjects.size() > 1) {
    out.status = QueryAnswer::Status::Ambiguous;
  } else {
    out.status = any_related ? QueryAnswer::Status::Ok : QueryAnswer::Status::NoRelation;
  }
  return out;
}

}  // namespace wos
