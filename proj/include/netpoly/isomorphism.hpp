#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "netpoly/net.hpp"

namespace netpoly {

/// Witness of N1 ≅ N2: a condition bijection and an event bijection that
/// transport pre and post sets.
struct Isomorphism {
    std::map<ConditionId, ConditionId> conditions;
    std::map<EventId, EventId> events;
};

namespace detail {

/// Net with conditions replaced by their positions in `conditions`.
struct IndexedNet {
    using Set = std::vector<std::size_t>;

    std::size_t condition_count = 0;
    std::vector<std::pair<Set, Set>> events;  // (pre, post), sorted indices

    static IndexedNet from(const PetriNet& n) {
        std::map<ConditionId, std::size_t> index;
        for (std::size_t k = 0; k < n.conditions.size(); ++k) index.emplace(n.conditions[k], k);
        IndexedNet out;
        out.condition_count = n.conditions.size();
        out.events.reserve(n.events.size());
        for (const auto& e : n.events) {
            Set pre, post;
            for (const auto& b : e.pre) pre.push_back(index.at(b));
            for (const auto& b : e.post) post.push_back(index.at(b));
            std::sort(pre.begin(), pre.end());
            std::sort(post.begin(), post.end());
            out.events.emplace_back(std::move(pre), std::move(post));
        }
        return out;
    }
};

/// Per-condition invariant: occurrence counts in pre and post sets, plus the
/// sorted shapes (|pre|, |post|, role) of the incident events.
struct DegreeSignature {
    std::size_t in_pre = 0;
    std::size_t in_post = 0;
    std::vector<std::tuple<std::size_t, std::size_t, int>> incident;

    friend bool operator==(const DegreeSignature&, const DegreeSignature&) = default;
    friend auto operator<=>(const DegreeSignature&, const DegreeSignature&) = default;
};

inline std::vector<DegreeSignature> degree_signatures(const IndexedNet& n) {
    std::vector<DegreeSignature> sig(n.condition_count);
    for (const auto& [pre, post] : n.events) {
        for (auto b : pre) {
            ++sig[b].in_pre;
            sig[b].incident.emplace_back(pre.size(), post.size(), 0);
        }
        for (auto b : post) {
            ++sig[b].in_post;
            sig[b].incident.emplace_back(pre.size(), post.size(), 1);
        }
    }
    for (auto& s : sig) std::sort(s.incident.begin(), s.incident.end());
    return sig;
}

class IsoSearch {
public:
    using Signature = std::pair<IndexedNet::Set, IndexedNet::Set>;

    IsoSearch(const IndexedNet& a, const IndexedNet& b) : a_(a), b_(b) {}

    /// Condition map a -> b, or nullopt.
    std::optional<std::vector<std::size_t>> run() {
        const std::size_t n = a_.condition_count;
        if (n != b_.condition_count || a_.events.size() != b_.events.size()) return std::nullopt;

        sig_a_ = degree_signatures(a_);
        sig_b_ = degree_signatures(b_);
        {
            auto sa = sig_a_, sb = sig_b_;
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            if (sa != sb) return std::nullopt;
        }
        for (const auto& ev : b_.events) ++remaining_[ev];

        // Most constrained first: rarest signature, then highest degree.
        order_.resize(n);
        for (std::size_t k = 0; k < n; ++k) order_[k] = k;
        std::map<DegreeSignature, std::size_t> freq;
        for (const auto& s : sig_a_) ++freq[s];
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
            const auto fx = freq[sig_a_[x]], fy = freq[sig_a_[y]];
            if (fx != fy) return fx < fy;
            return sig_a_[x].in_pre + sig_a_[x].in_post > sig_a_[y].in_pre + sig_a_[y].in_post;
        });
        std::vector<std::size_t> depth_of(n);
        for (std::size_t d = 0; d < n; ++d) depth_of[order_[d]] = d;

        // An event is checked at the depth where its last incident condition gets assigned.
        completes_at_.assign(n + 1, {});
        for (std::size_t e = 0; e < a_.events.size(); ++e) {
            std::size_t last = 0;
            bool any = false;
            for (const auto* side : {&a_.events[e].first, &a_.events[e].second}) {
                for (auto c : *side) {
                    last = std::max(last, depth_of[c] + 1);
                    any = true;
                }
            }
            completes_at_[any ? last : 0].push_back(e);
        }

        map_.assign(n, kUnset);
        used_.assign(n, false);
        if (!consume(0)) return std::nullopt;
        if (!extend(0)) return std::nullopt;
        return map_;
    }

private:
    static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

    Signature image(std::size_t e) const {
        Signature s;
        for (auto c : a_.events[e].first) s.first.push_back(map_[c]);
        for (auto c : a_.events[e].second) s.second.push_back(map_[c]);
        std::sort(s.first.begin(), s.first.end());
        std::sort(s.second.begin(), s.second.end());
        return s;
    }

    // Reserve a target event for every event completing at this depth; undo on failure.
    bool consume(std::size_t depth) {
        std::vector<Signature> taken;
        for (auto e : completes_at_[depth]) {
            auto s = image(e);
            auto it = remaining_.find(s);
            if (it == remaining_.end() || it->second == 0) {
                for (const auto& t : taken) ++remaining_[t];
                return false;
            }
            --it->second;
            taken.push_back(std::move(s));
        }
        return true;
    }

    void release(std::size_t depth) {
        for (auto e : completes_at_[depth]) ++remaining_[image(e)];
    }

    bool extend(std::size_t depth) {
        if (depth == order_.size()) return true;
        const std::size_t c = order_[depth];
        for (std::size_t target = 0; target < b_.condition_count; ++target) {
            if (used_[target] || !(sig_a_[c] == sig_b_[target])) continue;
            map_[c] = target;
            used_[target] = true;
            if (consume(depth + 1)) {
                if (extend(depth + 1)) return true;
                release(depth + 1);
            }
            used_[target] = false;
            map_[c] = kUnset;
        }
        return false;
    }

    const IndexedNet& a_;
    const IndexedNet& b_;
    std::vector<DegreeSignature> sig_a_, sig_b_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::size_t>> completes_at_;
    std::map<Signature, std::size_t> remaining_;
    std::vector<std::size_t> map_;
    std::vector<bool> used_;
};

}  // namespace detail

/// Find an isomorphism n1 -> n2, if one exists.
///
/// Exponential in the worst case; intended for nets with a handful of
/// conditions. Deterministic: the same inputs always yield the same witness.
inline std::optional<Isomorphism> are_isomorphic(const PetriNet& n1, const PetriNet& n2) {
    const auto a = detail::IndexedNet::from(n1);
    const auto b = detail::IndexedNet::from(n2);
    detail::IsoSearch search(a, b);
    const auto cmap = search.run();
    if (!cmap) return std::nullopt;

    Isomorphism iso;
    for (std::size_t k = 0; k < cmap->size(); ++k) iso.conditions.emplace(n1.conditions[k], n2.conditions[(*cmap)[k]]);

    // Events with equal mapped signature are interchangeable; pair them in sequence order.
    std::map<detail::IsoSearch::Signature, std::vector<std::size_t>> buckets;
    for (std::size_t e = b.events.size(); e-- > 0;) buckets[b.events[e]].push_back(e);
    for (std::size_t e = 0; e < a.events.size(); ++e) {
        detail::IsoSearch::Signature s;
        for (auto c : a.events[e].first) s.first.push_back((*cmap)[c]);
        for (auto c : a.events[e].second) s.second.push_back((*cmap)[c]);
        std::sort(s.first.begin(), s.first.end());
        std::sort(s.second.begin(), s.second.end());
        auto& bucket = buckets.at(s);
        iso.events.emplace(n1.events[e].id, n2.events[bucket.back()].id);
        bucket.pop_back();
    }
    return iso;
}

}  // namespace netpoly
