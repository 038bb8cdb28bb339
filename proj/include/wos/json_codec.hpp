#pragma once

#include <json.hpp>

#include "wos/corpus.hpp"
#include "wos/graph.hpp"

namespace wos {

nlohmann::json record_to_json(const PublicationRecord& rec);
/// Strict inverse of record_to_json; throws InvalidArgumentError.
PublicationRecord record_from_json(const nlohmann::json& obj);

nlohmann::json scholar_to_json(const Scholar& s);
Scholar scholar_from_json(const nlohmann::json& obj);

nlohmann::json edge_to_json(const RelEdge& e);
RelEdge edge_from_json(const nlohmann::json& obj);

}  // namespace wos
