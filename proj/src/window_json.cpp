#include <json.hpp>

#include "hdtk/window.hpp"

namespace hdtk {

std::string window_to_json(const FiniteWindow& window, const GraphFamily& family) {
    using Json = nlohmann::ordered_json;
    Json vs = Json::array(), es = Json::array(), deg = Json::array(), sig = Json::array();
    for (std::size_t i = 0; i < window.num_vertices(); ++i) {
        vs.push_back(family.format(window.vertex(i)));
        deg.push_back(window.full_degree(i));
        if (window.on_boundary(i)) {
            sig.push_back(i);
        }
    }
    for (const auto& e : window.edges()) {
        es.push_back({e.tail, e.head});
    }
    Json doc;
    doc["vertices"] = std::move(vs);
    doc["edges"] = std::move(es);
    doc["full_degree"] = std::move(deg);
    doc["sigma"] = std::move(sig);
    return doc.dump();
}

} // namespace hdtk
