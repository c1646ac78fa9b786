// JSON (de)serialization for models and morphism maps.
//
// Model documents: {"worlds":[ids], "root":id, "edges":[[id,id],...],
// "valuation":{prop:[ids],...}}.  Unknown fields, dangling ids, duplicate
// worlds and missing roots are rejected.  Canonical output sorts worlds,
// edges and valuations lexicographically, so saving is byte-stable.

#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "densify/morphism.hpp"

namespace densify {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json model_to_json(const PointedModel& m);
PointedModel model_from_json(const nlohmann::json& doc);

std::string model_to_string(const PointedModel& m);  // canonical, trailing newline

PointedModel load_model(const std::string& path);
void save_model(const PointedModel& m, const std::string& path);

// {"map":{src-id: tgt-id, ...}}
nlohmann::json map_to_json(const PMorphism& f);
PMorphism map_from_json(const nlohmann::json& doc, PointedModel source, PointedModel target);
PMorphism load_map(const std::string& path, PointedModel source, PointedModel target);

}  // namespace densify
