#include "densify/model_io.hpp"

#include <algorithm>
#include <fstream>

namespace densify {

using nlohmann::json;

json model_to_json(const PointedModel& m) {
    json doc;
    std::vector<std::string> worlds = m.ids();
    std::sort(worlds.begin(), worlds.end());
    doc["worlds"] = worlds;
    doc["root"] = m.id(m.root());
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Edge& e : m.edges()) edges.emplace_back(m.id(e.first), m.id(e.second));
    std::sort(edges.begin(), edges.end());
    json je = json::array();
    for (const auto& [from, to] : edges) je.push_back(json::array({from, to}));
    doc["edges"] = je;
    json jv = json::object();
    for (const auto& [prop, members] : m.valuation_by_ids()) jv[prop] = members;
    doc["valuation"] = jv;
    return doc;
}

PointedModel model_from_json(const json& doc) {
    if (!doc.is_object()) throw IoError("model document must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "worlds" && key != "root" && key != "edges" && key != "valuation")
            throw IoError("unknown field '" + key + "' in model document");
    }
    if (!doc.contains("worlds") || !doc["worlds"].is_array())
        throw IoError("model document needs a \"worlds\" array");
    if (!doc.contains("root") || !doc["root"].is_string())
        throw IoError("model document needs a \"root\" id");

    PointedModel m;
    try {
        for (const auto& w : doc["worlds"]) {
            if (!w.is_string()) throw IoError("world ids must be strings");
            m.add_world(w.get<std::string>());
        }
        const std::string root = doc["root"].get<std::string>();
        if (!m.has_world(root)) throw IoError("root '" + root + "' is not a listed world");
        m.set_root(m.index(root));
        if (doc.contains("edges")) {
            if (!doc["edges"].is_array()) throw IoError("\"edges\" must be an array");
            for (const auto& e : doc["edges"]) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
                    throw IoError("each edge must be a pair of world ids");
                m.add_edge(m.index(e[0].get<std::string>()), m.index(e[1].get<std::string>()));
            }
        }
        if (doc.contains("valuation")) {
            if (!doc["valuation"].is_object()) throw IoError("\"valuation\" must be an object");
            for (const auto& [prop, members] : doc["valuation"].items()) {
                if (!members.is_array()) throw IoError("valuation of '" + prop + "' must be an array");
                std::set<int> ms;
                for (const auto& w : members) {
                    if (!w.is_string()) throw IoError("valuation members must be world ids");
                    ms.insert(m.index(w.get<std::string>()));
                }
                m.set_valuation(prop, std::move(ms));
            }
        }
    } catch (const DomainError& e) {
        throw IoError(e.what());
    }
    return m;
}

std::string model_to_string(const PointedModel& m) { return model_to_json(m).dump(2) + "\n"; }

PointedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError("'" + path + "': " + e.what());
    }
    return model_from_json(doc);
}

void save_model(const PointedModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << model_to_string(m);
}

json map_to_json(const PMorphism& f) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int x = 0; x < f.source.size(); ++x)
        pairs.emplace_back(f.source.id(x), f.target.id(f.map[static_cast<std::size_t>(x)]));
    std::sort(pairs.begin(), pairs.end());
    json jm = json::object();
    for (const auto& [src, tgt] : pairs) jm[src] = tgt;
    return json{{"map", jm}};
}

PMorphism map_from_json(const json& doc, PointedModel source, PointedModel target) {
    if (!doc.is_object() || !doc.contains("map") || !doc["map"].is_object())
        throw IoError("morphism document needs a \"map\" object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "map") throw IoError("unknown field '" + key + "' in morphism document");
    }
    PMorphism f;
    f.map.assign(static_cast<std::size_t>(source.size()), -1);
    try {
        for (const auto& [src, tgt] : doc["map"].items()) {
            if (!tgt.is_string()) throw IoError("map targets must be world ids");
            f.map[static_cast<std::size_t>(source.index(src))] = target.index(tgt.get<std::string>());
        }
    } catch (const DomainError& e) {
        throw IoError(e.what());
    }
    for (std::size_t x = 0; x < f.map.size(); ++x)
        if (f.map[x] < 0) throw IoError("map is missing world '" + source.id(static_cast<int>(x)) + "'");
    f.source = std::move(source);
    f.target = std::move(target);
    return f;
}

PMorphism load_map(const std::string& path, PointedModel source, PointedModel target) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError("'" + path + "': " + e.what());
    }
    return map_from_json(doc, std::move(source), std::move(target));
}

}  // namespace densify
