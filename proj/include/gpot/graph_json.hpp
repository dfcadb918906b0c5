#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "graph.hpp"

namespace gpot {

inline nlohmann::json graph_to_json(const ColoredGraph& g) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : g.vertices) j["vertices"].push_back({{"id", v.id}, {"color", v.color}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges) j["edges"].push_back({{"id", e.id}, {"ends", {e.ends[0], e.ends[1]}}});
    j["leaves"] = nlohmann::json::array();
    for (const auto& l : g.leaves)
        j["leaves"].push_back({{"id", l.id},
                               {"vertex", l.vertex},
                               {"orientation", l.orientation == Orientation::out ? "out" : "in"}});
    return j;
}

/// Parses the graph schema; malformed documents raise structural_error.
/// The result is not validated for trivalence.
inline ColoredGraph graph_from_json(const nlohmann::json& j) {
    try {
        ColoredGraph g;
        if (!j.is_object()) throw structural_error("graph document must be an object");
        for (const auto& v : j.at("vertices")) {
            int c = v.at("color").get<int>();
            g.vertices.push_back({v.at("id").get<std::string>(), c});
        }
        for (const auto& e : j.at("edges")) {
            const auto& ends = e.at("ends");
            if (!ends.is_array() || ends.size() != 2) throw structural_error("edge ends must be a pair of vertex ids");
            g.edges.push_back({e.at("id").get<std::string>(), {ends[0].get<std::string>(), ends[1].get<std::string>()}});
        }
        if (j.contains("leaves")) {
            for (const auto& l : j.at("leaves")) {
                std::string o = l.value("orientation", std::string("out"));
                if (o != "out" && o != "in") throw structural_error("leaf orientation must be \"out\" or \"in\"");
                g.leaves.push_back({l.at("id").get<std::string>(), l.at("vertex").get<std::string>(),
                                    o == "out" ? Orientation::out : Orientation::in});
            }
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw structural_error(std::string("malformed graph JSON: ") + e.what());
    }
}

inline ColoredGraph graph_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw structural_error(std::string("malformed graph JSON: ") + e.what());
    }
    return graph_from_json(j);
}

} // namespace gpot
