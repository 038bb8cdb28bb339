#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "wos/graph.hpp"

namespace wos {

inline constexpr std::string_view kNodeLinkFormat = "wos-nodelink";
inline constexpr int kNodeLinkVersion = 1;

/// Node-link dump, one JSON object per line:
///
///   {"format":"wos-nodelink","version":1,"nodes":N,"publications":P,"links":L,"geo":G}
///   {"type":"node","id":...,"name":...,"inst":...,"first_pub_year":...}       N lines, by id
///   {"type":"publication", <line-record keys>}                              P lines, by id
///   {"type":"link","src":...,"dst":...,"kind":...,"weight":...,"years":...} L lines, by (src,dst,kind)
///   {"type":"geo","inst":...,"lat":...,"lng":...}                           G lines, by inst
///
/// An empty graph exports the header line only. Output is deterministic.
void export_nodelink(const GraphStore& graph, std::ostream& out);
std::string export_nodelink(const GraphStore& graph);

/// Rebuilds a graph from export_nodelink output. Throws FormatError on a bad
/// header, count mismatch, or nodes that disagree with the publications.
GraphStore import_nodelink(std::istream& in);

}  // namespace wos
