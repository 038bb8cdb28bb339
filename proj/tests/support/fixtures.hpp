#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "wos/corpus.hpp"
#include "wos/graph.hpp"
#include "wos/miner.hpp"

namespace wos::testing {

// Three scholars, four papers. Bob starts in 1998; Alice and Bob write two
// papers together; Alice and Carol one.
inline const char* const kF1Lines[] = {
    R"({"id":"p1","title":"Foundations","year":1998,"venue":"V1","authors":[{"id":"s2","name":"Bob","inst":"I2"}],"refs":[],"fields":["CS"]})",
    R"({"id":"p2","title":"Follow-up","year":2010,"venue":"V1","authors":[{"id":"s1","name":"Alice","inst":"I1"},{"id":"s2","name":"Bob","inst":"I2"}],"refs":["p1"],"fields":["CS"]})",
    R"({"id":"p3","title":"Extension","year":2011,"venue":null,"authors":[{"id":"s1","name":"Alice","inst":"I1"},{"id":"s2","name":"Bob","inst":"I2"}],"refs":["p2"],"fields":["CS"]})",
    R"({"id":"p4","title":"Survey","year":2012,"venue":"V2","authors":[{"id":"s1","name":"Alice","inst":"I1"},{"id":"s3","name":"Carol","inst":"I1"}],"refs":["p1","p2"],"fields":["CS"]})",
};

inline std::string f1_text() {
  std::string out;
  for (const char* line : kF1Lines) out += std::string(line) + "\n";
  return out;
}

inline std::vector<PublicationRecord> f1_records() {
  std::istringstream in(f1_text());
  return parse_corpus(in).records;
}

inline GeoTable f1_geo() { return {{"I1", {48.1, 11.6}}, {"I2", {40.7, -74.0}}}; }

// F1 ingested with geo, no edges.
inline GraphStore f1_graph() {
  GraphStore g;
  g.ingest(f1_records());
  g.set_geo_table(f1_geo());
  return g;
}

// F1 with every relation mined at default settings.
inline GraphStore f1_mined() {
  GraphStore g = f1_graph();
  mine_all(g, MineOptions{});
  return g;
}

}  // namespace wos::testing
