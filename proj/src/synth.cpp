#include "wos/synth.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "wos/error.hpp"

namespace wos {

namespace {

constexpr std::array<const char*, 24> kFirstNames = {
    "Alice", "Bob",   "Carol", "David", "Erin",  "Frank", "Grace", "Heidi",
    "Ivan",  "Judy",  "Karl",  "Liu",   "Mallory", "Nina", "Oscar", "Peggy",
    "Quinn", "Rupert", "Sybil", "Trent", "Uma",   "Victor", "Wei",  "Xia"};
constexpr std::array<const char*, 20> kLastNames = {
    "Anders", "Brown",  "Chen",   "Dubois", "Evans",  "Fischer", "Garcia", "Huang",
    "Ito",    "Jensen", "Kowalski", "Lee",  "Moreau", "Nakamura", "Olsen", "Patel",
    "Rossi",  "Silva",  "Tanaka", "Zhang"};

// Draw helpers on raw engine output so results do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

struct SynthScholar {
  std::string id;
  std::string name;
  std::string institution;
  int start = 0;
  std::optional<std::size_t> advisor;
  bool root = false;
};

struct DraftPub {
  int year = 0;
  std::vector<std::size_t> authors;
  std::size_t order = 0;
};

std::string padded(const char* prefix, std::size_t n, int width) {
  std::ostringstream os;
  os << prefix << std::setw(width) << std::setfill('0') << n;
  return os.str();
}

}  // namespace

SynthCorpus synthesize(const SynthConfig& cfg) {
  if (cfg.scholars == 0) throw InvalidArgumentError("synth needs at least one scholar");
  if (cfg.pubs < cfg.scholars) throw InvalidArgumentError("synth needs pubs >= scholars");
  if (cfg.last_year < 2005) throw InvalidArgumentError("synth needs last_year >= 2005");

  Rng rng(cfg.seed);
  const int last_year = cfg.last_year;
  const std::size_t n = cfg.scholars;
  const std::size_t n_roots = std::clamp<std::size_t>(
      static_cast<std::size_t>(static_cast<double>(n) * (1.0 - cfg.advisee_fraction) + 0.5), 1, n);
  const std::size_t n_insts = std::max<std::size_t>(3, n / 8);

  std::vector<SynthScholar> people(n);
  for (std::size_t i = 0; i < n; ++i) {
    SynthScholar& s = people[i];
    s.id = padded("a", i + 1, 4);
    s.name = std::string(kFirstNames[rng.below(kFirstNames.size())]) + " " +
             kLastNames[rng.below(kLastNames.size())];
    if (i < n_roots) {
      s.root = true;
      s.start = rng.between(1975, 1995);
      s.institution = padded("Inst-", rng.below(n_insts), 2);
      continue;
    }
    // Advisors are earlier scholars whose career leaves room for a 6-year gap
    // and a full early window for the advisee.
    std::size_t adv = 0;
    do {
      adv = rng.below(i);
    } while (people[adv].start + 6 > last_year - 4);
    s.advisor = adv;
    s.start = std::min(people[adv].start + rng.between(6, 15), last_year - 4);
    s.institution = rng.chance(0.5) ? people[adv].institution : padded("Inst-", rng.below(n_insts), 2);
  }

  auto active_at = [&](int year) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
      if (people[i].start <= year) out.push_back(i);
    return out;
  };
  auto add_unique = [](std::vector<std::size_t>& authors, std::size_t who) {
    if (std::find(authors.begin(), authors.end(), who) == authors.end()) authors.push_back(who);
  };

  std::vector<DraftPub> drafts;
  auto push = [&](int year, std::vector<std::size_t> authors) {
    drafts.push_back({year, std::move(authors), drafts.size()});
  };

  // First paper of every scholar anchors its academic age.
  for (std::size_t i = 0; i < n; ++i) {
    const SynthScholar& s = people[i];
    std::vector<std::size_t> authors{i};
    if (s.root) {
      if (rng.chance(0.25)) {
        std::vector<std::size_t> peers;
        for (std::size_t j = 0; j < n_roots; ++j)
          if (j != i && people[j].start == s.start) peers.push_back(j);
        if (!peers.empty()) add_unique(authors, peers[rng.below(peers.size())]);
      }
    } else {
      if (rng.chance(cfg.first_with_advisor)) add_unique(authors, *s.advisor);
      if (rng.chance(cfg.distractor_rate)) {
        auto pool = active_at(s.start);
        add_unique(authors, pool[rng.below(pool.size())]);
      }
    }
    push(s.start, std::move(authors));
  }

  // Early-career papers of advisees.
  const std::size_t n_advisees = n - n_roots;
  std::size_t budget = cfg.pubs - n;
  if (n_advisees > 0) {
    const double per = std::min(3.0, 0.6 * static_cast<double>(budget) / static_cast<double>(n_advisees));
    for (std::size_t i = n_roots; i < n && budget > 0; ++i) {
      const SynthScholar& s = people[i];
      auto extra = static_cast<std::size_t>(per);
      if (rng.chance(per - static_cast<double>(extra))) ++extra;
      const int offset = rng.between(0, 3);
      for (std::size_t k = 0; k < extra && budget > 0; ++k, --budget) {
        const int year = s.start + 1 + static_cast<int>((k + offset) % 4);
        std::vector<std::size_t> authors{i};
        if (rng.chance(cfg.advisor_presence)) add_unique(authors, *s.advisor);
        if (rng.chance(cfg.distractor_rate)) {
          auto pool = active_at(year);
          add_unique(authors, pool[rng.below(pool.size())]);
        }
        push(year, std::move(authors));
      }
    }
  }

  // Remaining budget: random papers anywhere in a lead author's career.
  for (; budget > 0; --budget) {
    const std::size_t lead = rng.below(n);
    const int year = rng.between(people[lead].start, last_year);
    std::vector<std::size_t> authors{lead};
    if (people[lead].advisor) {
      const bool early = year <= people[lead].start + 4;
      if (rng.chance(early ? cfg.advisor_presence : cfg.revisit_rate)) add_unique(authors, *people[lead].advisor);
    }
    const auto pool = active_at(year);
    const bool early_root = people[lead].root && year <= people[lead].start + 4;
    const int extra = static_cast<int>(rng.below(4));
    for (int k = 0; k < extra; ++k) {
      const std::size_t who = pool[rng.below(pool.size())];
      if (year <= people[who].start + 4 && !rng.chance(cfg.early_intrusion)) continue;
      // Early papers of roots stay within their cohort, save for rare intrusions.
      if (early_root && people[who].start < people[lead].start - 2 && !rng.chance(cfg.early_intrusion))
        continue;
      add_unique(authors, who);
    }
    push(year, std::move(authors));
  }

  std::sort(drafts.begin(), drafts.end(), [](const DraftPub& a, const DraftPub& b) {
    return a.year != b.year ? a.year < b.year : a.order < b.order;
  });

  SynthCorpus out;
  out.scholar_count = n;
  std::size_t dangling = 0;
  for (std::size_t k = 0; k < drafts.size(); ++k) {
    const DraftPub& d = drafts[k];
    PublicationRecord rec;
    rec.pub_id = padded("p", k + 1, 5);
    rec.title = "Synthetic paper " + std::to_string(k + 1);
    rec.year = d.year;
    if (rng.chance(0.7)) rec.venue = padded("Venue-", rng.below(6), 1);
    for (std::size_t who : d.authors)
      rec.authors.push_back({people[who].id, people[who].name, people[who].institution});

    // Earlier papers are exactly drafts[0, first index with this year).
    std::size_t earlier = 0;
    while (earlier < k && drafts[earlier].year < d.year) ++earlier;
    if (earlier > 0) {
      const int nrefs = static_cast<int>(rng.below(5));
      for (int r = 0; r < nrefs; ++r) {
        std::string ref = padded("p", rng.below(earlier) + 1, 5);
        if (std::find(rec.refs.begin(), rec.refs.end(), ref) == rec.refs.end()) rec.refs.push_back(ref);
      }
    }
    if (rng.chance(cfg.dangling_rate)) rec.refs.push_back(padded("ext-", ++dangling, 4));

    rec.fields = {"CS"};
    if (rng.chance(0.2)) rec.fields.push_back("Math");
    if (rng.chance(0.05)) rec.fields = {"Biology"};
    out.records.push_back(std::move(rec));
  }

  std::set<std::pair<std::string, std::string>> planted;
  for (const auto& s : people)
    if (s.advisor) planted.insert({people[*s.advisor].id, s.id});
  for (const auto& [adv, advisee] : planted) out.planted.push_back({adv, advisee, 1});

  std::set<std::pair<std::string, std::string>> coauthor_pairs;  // (candidate advisor, scholar)
  for (const auto& rec : out.records)
    for (const auto& a : rec.authors)
      for (const auto& b : rec.authors)
        if (a.scholar_id != b.scholar_id) coauthor_pairs.insert({a.scholar_id, b.scholar_id});
  for (const auto& [cand, s] : coauthor_pairs)
    out.manifest.push_back({cand, s, planted.contains({cand, s}) ? 1 : 0});

  for (std::size_t k = 0; k < n_insts; ++k) {
    const double lat = std::round((rng.unit() * 140.0 - 70.0) * 1e4) / 1e4;
    const double lng = std::round((rng.unit() * 360.0 - 180.0) * 1e4) / 1e4;
    if (rng.chance(0.1)) continue;
    out.geo[padded("Inst-", k, 2)] = {lat, lng};
  }
  return out;
}

void write_synth(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + (dir / name).string() + "'");
    return f;
  };
  {
    auto f = open("corpus.jsonl");
    for (const auto& rec : corpus.records) f << format_record(rec) << '\n';
  }
  {
    auto f = open("manifest.tsv");
    write_labeled_pairs(f, corpus.manifest);
  }
  {
    auto f = open("geo.tsv");
    f << std::setprecision(10);
    for (const auto& [inst, pt] : corpus.geo) f << inst << '\t' << pt.lat << '\t' << pt.lng << '\n';
  }
}

}  // namespace wos
