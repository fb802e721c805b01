#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "netpoly/errors.hpp"
#include "netpoly/net.hpp"

namespace netpoly {

/// A parsed net document. The labeling is present iff the document carried labels.
struct NetDocument {
    PetriNet net;
    std::optional<Labeling> labeling;
};

namespace detail {

inline const nlohmann::json& require_array(const nlohmann::json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_array()) throw ParseError(where + ": \"" + key + "\" must be an array");
    return *it;
}

inline std::string require_string(const nlohmann::json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) throw ParseError(where + ": \"" + key + "\" must be a string");
    return it->get<std::string>();
}

inline std::set<ConditionId> condition_list(const nlohmann::json& j, const char* key, const std::string& where) {
    std::set<ConditionId> out;
    auto it = j.find(key);
    if (it == j.end()) return out;
    if (!it->is_array()) throw ParseError(where + ": \"" + key + "\" must be an array");
    for (const auto& b : *it) {
        if (!b.is_string()) throw ParseError(where + ": \"" + key + "\" entries must be strings");
        if (!out.insert(b.get<std::string>()).second) {
            throw StructureError(where + ": condition " + b.get<std::string>() + " listed twice in " + key);
        }
    }
    return out;
}

}  // namespace detail

/// Parse a net document without structural checks, so that `check` can report
/// every problem. Labels must be all-or-nothing naturals; injectivity is not checked.
inline NetDocument parse_net_document(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) throw ParseError("net document must be a JSON object");

    NetDocument out;
    Labeling labels;
    std::size_t labeled = 0;
    const auto& conditions = detail::require_array(doc, "conditions", "document");
    for (std::size_t k = 0; k < conditions.size(); ++k) {
        const auto& c = conditions[k];
        const std::string where = "condition #" + std::to_string(k);
        if (!c.is_object()) throw ParseError(where + " must be an object");
        auto id = detail::require_string(c, "id", where);
        out.net.conditions.push_back(id);
        auto label = c.find("label");
        if (label == c.end()) continue;
        if (!label->is_number_unsigned()) throw ParseError(where + ": label must be a natural number");
        ++labeled;
        labels[id] = label->get<Label>();
    }
    if (labeled != 0 && labeled != conditions.size()) throw ParseError("labels must be given for all conditions or for none");
    if (labeled != 0) out.labeling = std::move(labels);

    auto events = doc.find("events");
    if (events != doc.end()) {
        if (!events->is_array()) throw ParseError("document: \"events\" must be an array");
        for (std::size_t k = 0; k < events->size(); ++k) {
            const auto& e = (*events)[k];
            const std::string where = "event #" + std::to_string(k);
            if (!e.is_object()) throw ParseError(where + " must be an object");
            Event ev;
            ev.id = detail::require_string(e, "id", where);
            ev.pre = detail::condition_list(e, "pre", where);
            ev.post = detail::condition_list(e, "post", where);
            out.net.events.push_back(std::move(ev));
        }
    }
    return out;
}

/// Parse and validate a net document. Throws ParseError for malformed input and
/// StructureError for duplicate ids, dangling references or non-injective labels.
inline NetDocument read_net(std::string_view text) {
    auto doc = parse_net_document(text);
    auto report = check(doc.net);
    if (!report.ok()) throw StructureError(report.errors.front());
    if (doc.labeling) {
        std::map<Label, ConditionId> seen;
        for (const auto& b : doc.net.conditions) {
            auto [it, inserted] = seen.emplace(doc.labeling->at(b), b);
            if (!inserted) throw StructureError("conditions " + it->second + " and " + b + " share label " + std::to_string(it->first));
        }
    }
    return doc;
}

inline nlohmann::ordered_json net_to_json(const PetriNet& n, const Labeling* l = nullptr) {
    nlohmann::ordered_json doc;
    doc["conditions"] = nlohmann::ordered_json::array();
    for (const auto& b : n.conditions) {
        nlohmann::ordered_json c;
        c["id"] = b;
        if (l) c["label"] = l->at(b);
        doc["conditions"].push_back(std::move(c));
    }
    doc["events"] = nlohmann::ordered_json::array();
    for (const auto& e : n.events) {
        nlohmann::ordered_json j;
        j["id"] = e.id;
        j["pre"] = nlohmann::ordered_json(std::vector<std::string>(e.pre.begin(), e.pre.end()));
        j["post"] = nlohmann::ordered_json(std::vector<std::string>(e.post.begin(), e.post.end()));
        doc["events"].push_back(std::move(j));
    }
    return doc;
}

/// Serialize in document order, with labels when given. Output ends with a newline.
inline std::string write_net(const PetriNet& n, const std::optional<Labeling>& l = std::nullopt) {
    return net_to_json(n, l ? &*l : nullptr).dump(2) + "\n";
}

}  // namespace netpoly
