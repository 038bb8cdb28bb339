#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wos {

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

struct AuthorRef {
  std::string scholar_id;
  std::string name;
  std::string institution;

  bool operator==(const AuthorRef&) const = default;
};

/// One publication as read from the line-record corpus.
struct PublicationRecord {
  std::string pub_id;
  std::string title;
  int year = 0;
  std::optional<std::string> venue;
  std::vector<AuthorRef> authors;  // ordered, non-empty
  std::vector<std::string> refs;   // pub_ids, no self reference
  std::vector<std::string> fields;

  bool operator==(const PublicationRecord&) const = default;
};

struct Scholar {
  std::string scholar_id;
  std::string name;
  std::string institution;
  int first_pub_year = 0;
  std::vector<std::string> pub_ids;  // sorted by (year, pub_id)

  bool operator==(const Scholar&) const = default;
};

using PublicationTable = std::map<std::string, PublicationRecord>;
using ScholarTable = std::map<std::string, Scholar>;

struct Diagnostic {
  std::size_t line = 0;  // 1-based; 0 when not tied to an input line
  std::string message;
};

struct ParseResult {
  std::vector<PublicationRecord> records;
  std::vector<Diagnostic> diagnostics;
};

/// Parses the line-delimited corpus. Blank lines are skipped; malformed lines
/// are reported in `diagnostics` and parsing continues. Throws wos::Error if
/// the stream itself fails.
ParseResult parse_corpus(std::istream& in);

/// Parses one line-record. Throws InvalidArgumentError describing the defect.
PublicationRecord parse_record(const std::string& line);

/// Canonical one-line encoding of a record, accepted by parse_record.
std::string format_record(const PublicationRecord& record);

/// Records whose `fields` contain `field_tag` exactly.
std::vector<PublicationRecord> filter_by_field(const std::vector<PublicationRecord>& records,
                                               const std::string& field_tag);

struct ScholarBuild {
  std::vector<Scholar> scholars;  // sorted by scholar_id
  std::vector<Diagnostic> warnings;
};

/// Derives one Scholar per distinct author id. When records disagree on a
/// name (or institution) the most frequent spelling wins, ties going to the
/// lexicographically smallest, and a warning is emitted.
ScholarBuild build_scholars(const std::vector<PublicationRecord>& records);

}  // namespace wos
