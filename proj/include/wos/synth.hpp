#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wos/classifier.hpp"
#include "wos/corpus.hpp"
#include "wos/graph.hpp"

namespace wos {

/// Seeded synthetic corpus with planted advisor-advisee pairs.
///
/// Generative rules (all draws from one seeded mt19937_64):
///  - A `1 - advisee_fraction` share of scholars are roots: careers start in
///    [1975, 1995], no advisor, first paper solo or with a root starting the
///    same year.
///  - Every other scholar gets a planted advisor whose career started 6 to
///    15 years earlier (forward in time, so the relation is acyclic). Advisee
///    careers start no later than `last_year - 4`. The advisee's first paper
///    is joint with the advisor with probability `first_with_advisor`; up to
///    three further early papers, in distinct years start+1..start+4,
///    include the advisor with probability `advisor_presence`.
///  - Any early paper gets an extra distractor coauthor with probability
///    `distractor_rate`, drawn from all scholars active that year.
///  - Leftover budget becomes random papers by active scholars with 0-3
///    random coauthors. A random coauthor still in their first five career
///    years is kept only with probability `early_intrusion`, as is a coauthor
///    who started more than two years before a root, on that root's papers
///    from its first five years. A lead author's own papers include the advisor with probability `advisor_presence`
///    inside the first five years and `revisit_rate` afterwards.
///  - Each paper cites up to 4 strictly earlier papers; `dangling_rate` of
///    papers add a reference outside the corpus.
///  - Institutions come from a small pool; advisees share their advisor's
///    with probability 0.5. About 10% of institutions have no geo entry.
struct SynthConfig {
  std::size_t scholars = 100;
  std::size_t pubs = 500;
  std::uint64_t seed = 7;
  double advisee_fraction = 0.6;
  double first_with_advisor = 0.9;
  double advisor_presence = 0.85;
  double distractor_rate = 0.35;
  double revisit_rate = 0.2;
  double early_intrusion = 0.2;
  double dangling_rate = 0.05;
  int last_year = 2017;
};

struct SynthCorpus {
  std::vector<PublicationRecord> records;   // ordered by pub_id
  std::vector<LabeledPair> planted;         // true advisor pairs (label 1)
  /// planted pairs plus every other (coauthor -> scholar) pair labeled 0
  std::vector<LabeledPair> manifest;
  GeoTable geo;
  std::size_t scholar_count = 0;
};

/// Throws InvalidArgumentError when pubs < scholars, scholars == 0 or
/// last_year < 2005.
SynthCorpus synthesize(const SynthConfig& config);

/// Writes corpus.jsonl, manifest.tsv and geo.tsv into `dir`.
void write_synth(const SynthCorpus& corpus, const std::filesystem::path& dir);

}  // namespace wos
