#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netpoly/errors.hpp"

namespace netpoly {

using ConditionId = std::string;
using EventId = std::string;

/// A transition with its pre- and postcondition sets. Either set may be empty.
struct Event {
    EventId id;
    std::set<ConditionId> pre;
    std::set<ConditionId> post;

    friend bool operator==(const Event&, const Event&) = default;
};

/// Finite Petri net (B, E, pre, post).
///
/// The idle event * with empty pre and post belongs to every net and is never
/// stored. Events form a sequence: two stored events may share a signature.
struct PetriNet {
    std::vector<ConditionId> conditions;
    std::vector<Event> events;

    bool empty() const noexcept { return conditions.empty() && events.empty(); }

    friend bool operator==(const PetriNet&, const PetriNet&) = default;
};

using Label = std::size_t;

/// Injective assignment of naturals to the conditions of one net.
using Labeling = std::map<ConditionId, Label>;

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return errors.empty(); }
};

/// Collect hard errors (duplicate ids, dangling references) and warnings
/// (isolated conditions, events without preconditions).
inline ValidationReport check(const PetriNet& n) {
    ValidationReport report;
    std::set<ConditionId> known;
    for (const auto& b : n.conditions) {
        if (!known.insert(b).second) report.errors.push_back("duplicate condition id " + b);
    }
    std::set<EventId> event_ids;
    std::set<ConditionId> used;
    for (const auto& e : n.events) {
        if (!event_ids.insert(e.id).second) report.errors.push_back("duplicate event id " + e.id);
        for (const auto* side : {&e.pre, &e.post}) {
            for (const auto& b : *side) {
                if (!known.count(b)) report.errors.push_back("event " + e.id + " references unknown condition " + b);
                used.insert(b);
            }
        }
    }
    for (const auto& b : known) {
        if (!used.count(b)) report.warnings.push_back("isolated condition " + b);
    }
    for (const auto& e : n.events) {
        if (e.pre.empty()) report.warnings.push_back("event " + e.id + " has empty pre");
    }
    return report;
}

/// Throws StructureError on the first hard error; returns the warnings otherwise.
inline std::vector<std::string> validate(const PetriNet& n) {
    auto report = check(n);
    if (!report.ok()) throw StructureError(report.errors.front());
    return std::move(report.warnings);
}

/// Throws PreconditionError unless l is an injective labeling whose domain is
/// exactly the condition set of n.
inline void check_labeling(const PetriNet& n, const Labeling& l) {
    if (l.size() != n.conditions.size()) throw PreconditionError("labeling domain does not match the condition set");
    std::set<Label> images;
    for (const auto& b : n.conditions) {
        auto it = l.find(b);
        if (it == l.end()) throw PreconditionError("condition " + b + " has no label");
        if (!images.insert(it->second).second) throw PreconditionError("labeling is not injective at condition " + b);
    }
}

/// Conditions sorted by id map to 0, 1, 2, ...
inline Labeling compact_labeling(const PetriNet& n) {
    std::vector<ConditionId> ids = n.conditions;
    std::sort(ids.begin(), ids.end());
    Labeling l;
    for (std::size_t k = 0; k < ids.size(); ++k) l.emplace(ids[k], k);
    return l;
}

/// Conditions that occur in no pre- or postcondition set.
inline std::vector<ConditionId> isolated_conditions(const PetriNet& n) {
    std::set<ConditionId> used;
    for (const auto& e : n.events) {
        used.insert(e.pre.begin(), e.pre.end());
        used.insert(e.post.begin(), e.post.end());
    }
    std::vector<ConditionId> out;
    for (const auto& b : n.conditions) {
        if (!used.count(b)) out.push_back(b);
    }
    return out;
}

inline PetriNet without_isolated_conditions(const PetriNet& n) {
    const auto isolated = isolated_conditions(n);
    const std::set<ConditionId> drop(isolated.begin(), isolated.end());
    PetriNet out;
    out.events = n.events;
    for (const auto& b : n.conditions) {
        if (!drop.count(b)) out.conditions.push_back(b);
    }
    return out;
}

inline const ConditionId kLeftTag = "L:";
inline const ConditionId kRightTag = "R:";
inline const EventId kIdleName = "*";

namespace detail {

inline std::set<ConditionId> tagged(const std::set<ConditionId>& s, const std::string& tag) {
    std::set<ConditionId> out;
    for (const auto& b : s) out.insert(tag + b);
    return out;
}

}  // namespace detail

/// Synchronization product.
///
/// Conditions are the disjoint union of both condition sets, tagged "L:" and
/// "R:". Events are the pairs (e1, e2) over E1+{*} x E2+{*} except (*, *),
/// which is the idle event of the product; pre and post are the tagged unions.
inline PetriNet product(const PetriNet& n1, const PetriNet& n2) {
    PetriNet out;
    out.conditions.reserve(n1.conditions.size() + n2.conditions.size());
    for (const auto& b : n1.conditions) out.conditions.push_back(kLeftTag + b);
    for (const auto& b : n2.conditions) out.conditions.push_back(kRightTag + b);

    const Event idle{kIdleName, {}, {}};
    auto pair_up = [&](const Event& e1, const Event& e2) {
        Event e{"(" + e1.id + "," + e2.id + ")", detail::tagged(e1.pre, kLeftTag), detail::tagged(e1.post, kLeftTag)};
        auto pre2 = detail::tagged(e2.pre, kRightTag);
        auto post2 = detail::tagged(e2.post, kRightTag);
        e.pre.insert(pre2.begin(), pre2.end());
        e.post.insert(post2.begin(), post2.end());
        out.events.push_back(std::move(e));
    };
    out.events.reserve(n1.events.size() * n2.events.size() + n1.events.size() + n2.events.size());
    for (const auto& e1 : n1.events) {
        pair_up(e1, idle);
        for (const auto& e2 : n2.events) pair_up(e1, e2);
    }
    for (const auto& e2 : n2.events) pair_up(idle, e2);
    return out;
}

/// Labeling of product(n1, n2) that reuses l1 on the left copy and l2 on the right.
inline Labeling product_labeling(const Labeling& l1, const Labeling& l2) {
    Labeling out;
    for (const auto& [b, v] : l1) out.emplace(kLeftTag + b, v);
    for (const auto& [b, v] : l2) out.emplace(kRightTag + b, v);
    return out;
}

inline const EventId kAttachEventName = "star";

struct LabeledNet {
    PetriNet net;
    Labeling labeling;
};

/// Attaching n1 to n2 along equally labeled conditions.
///
/// Conditions of n1 become "L:<id>", those of n2 "R:<id>"; a condition of n2
/// whose label is also used in n1 is merged into the n1 condition. Events are
/// tagged the same way, and one fresh event "star" with empty pre and post is
/// appended. The result carries the union labeling.
inline LabeledNet attach(const PetriNet& n1, const Labeling& l1, const PetriNet& n2, const Labeling& l2) {
    check_labeling(n1, l1);
    check_labeling(n2, l2);

    LabeledNet out;
    std::map<Label, ConditionId> by_label;
    std::map<ConditionId, ConditionId> left_name;
    std::map<ConditionId, ConditionId> right_name;
    for (const auto& b : n1.conditions) {
        const ConditionId id = kLeftTag + b;
        const Label v = l1.at(b);
        out.net.conditions.push_back(id);
        out.labeling.emplace(id, v);
        by_label.emplace(v, id);
        left_name.emplace(b, id);
    }
    for (const auto& b : n2.conditions) {
        const Label v = l2.at(b);
        auto it = by_label.find(v);
        if (it != by_label.end()) {
            right_name.emplace(b, it->second);
            continue;
        }
        const ConditionId id = kRightTag + b;
        out.net.conditions.push_back(id);
        out.labeling.emplace(id, v);
        right_name.emplace(b, id);
    }

    auto rename = [](const std::set<ConditionId>& s, const std::map<ConditionId, ConditionId>& names) {
        std::set<ConditionId> r;
        for (const auto& b : s) r.insert(names.at(b));
        return r;
    };
    for (const auto& e : n1.events) out.net.events.push_back({kLeftTag + e.id, rename(e.pre, left_name), rename(e.post, left_name)});
    for (const auto& e : n2.events) out.net.events.push_back({kRightTag + e.id, rename(e.pre, right_name), rename(e.post, right_name)});
    out.net.events.push_back({kAttachEventName, {}, {}});
    return out;
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + '"';
}

}  // namespace detail

/// Graphviz rendering: conditions as circles, events as boxes, one arc per
/// pre/post membership. Nodes are emitted in sorted id order.
inline std::string to_dot(const PetriNet& n) {
    std::vector<ConditionId> conditions = n.conditions;
    std::sort(conditions.begin(), conditions.end());
    std::vector<const Event*> events;
    for (const auto& e : n.events) events.push_back(&e);
    std::sort(events.begin(), events.end(), [](const Event* a, const Event* b) { return a->id < b->id; });

    // Conditions and events may share ids, so node names carry a sort prefix.
    std::ostringstream os;
    os << "digraph net {\n";
    for (const auto& b : conditions) {
        os << "  " << detail::dot_quote("b:" + b) << " [shape=circle, label=" << detail::dot_quote(b) << "];\n";
    }
    for (const auto* e : events) {
        os << "  " << detail::dot_quote("e:" + e->id) << " [shape=box, label=" << detail::dot_quote(e->id) << "];\n";
    }
    for (const auto* e : events) {
        for (const auto& b : e->pre) os << "  " << detail::dot_quote("b:" + b) << " -> " << detail::dot_quote("e:" + e->id) << ";\n";
        for (const auto& b : e->post) os << "  " << detail::dot_quote("e:" + e->id) << " -> " << detail::dot_quote("b:" + b) << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace netpoly
