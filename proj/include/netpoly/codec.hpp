#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "netpoly/isomorphism.hpp"
#include "netpoly/net.hpp"
#include "netpoly/polynomial.hpp"

namespace netpoly {

/// Largest label encode accepts; 2^label must be materialized as an exponent.
inline constexpr Label kMaxLabel = Label{1} << 20;

/// Largest condition count canonical_poly accepts (it enumerates |B|! labelings).
inline constexpr std::size_t kCanonicalMaxConditions = 10;

/// Net polynomial: 1 + sum over stored events of x^i(e) y^j(e), where i(e)
/// and j(e) sum 2^l(b) over the pre and post conditions. The leading 1 is the
/// idle event. Isolated conditions contribute nothing.
inline Polynomial encode(const PetriNet& n, const Labeling& l) {
    check_labeling(n, l);
    for (const auto& [b, v] : l) {
        if (v > kMaxLabel) throw PreconditionError("label of condition " + b + " exceeds " + std::to_string(kMaxLabel));
    }
    auto weight = [&](const std::set<ConditionId>& s) {
        Nat k = 0;
        for (const auto& b : s) boost::multiprecision::bit_set(k, static_cast<unsigned>(l.at(b)));
        return k;
    };
    Polynomial p = Polynomial::one();
    for (const auto& e : n.events) p.add_term(Monomial{weight(e.pre), weight(e.post)}, 1);
    return p;
}

/// Condition id assigned by decode to bit position t.
inline ConditionId decoded_condition_id(std::size_t t) { return "c" + std::to_string(t); }

/// Inverse construction. Conditions are the bits of tau_poly(P), condition
/// "c<t>" labeled t. Each monomial (i, j) with coefficient a yields a events
/// "e<k>_(<i>,<j>)" with pre = tau(i), post = tau(j); the constant monomial
/// yields a - 1, the remaining one being the implicit idle event.
inline LabeledNet decode(const Polynomial& p) {
    const Nat a00 = p.constant_term();
    if (a00.is_zero()) throw PreconditionError("no idle event: constant coefficient must be at least 1");

    LabeledNet out;
    for (auto t : tau_poly(p)) {
        out.net.conditions.push_back(decoded_condition_id(t));
        out.labeling.emplace(decoded_condition_id(t), t);
    }
    auto ids = [](const Nat& k) {
        std::set<ConditionId> s;
        for (auto t : tau_nat(k)) s.insert(decoded_condition_id(t));
        return s;
    };
    for (const auto& [m, a] : p) {
        const bool idle = m.i.is_zero() && m.j.is_zero();
        const Nat count = idle ? Nat(a - 1) : a;
        const auto pre = ids(m.i);
        const auto post = ids(m.j);
        const std::string suffix = "_(" + m.i.str() + "," + m.j.str() + ")";
        for (Nat k = 1; k <= count; ++k) out.net.events.push_back({"e" + k.str() + suffix, pre, post});
    }
    return out;
}

namespace detail {

// (i, j, multiplicity) with bitmask exponents; valid while |B| <= kCanonicalMaxConditions.
using SmallTerm = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;

inline void small_encode(const IndexedNet& n, const std::vector<std::size_t>& label_of,
                         std::vector<std::pair<std::uint64_t, std::uint64_t>>& scratch, std::vector<SmallTerm>& out) {
    scratch.clear();
    for (const auto& [pre, post] : n.events) {
        std::uint64_t i = 0, j = 0;
        for (auto c : pre) i |= std::uint64_t{1} << label_of[c];
        for (auto c : post) j |= std::uint64_t{1} << label_of[c];
        scratch.emplace_back(i, j);
    }
    scratch.emplace_back(0, 0);  // idle event
    std::sort(scratch.begin(), scratch.end(), [](const auto& a, const auto& b) {
        const auto da = a.first + a.second, db = b.first + b.second;
        if (da != db) return da > db;
        return a.first > b.first;
    });
    out.clear();
    for (const auto& [i, j] : scratch) {
        if (!out.empty() && std::get<0>(out.back()) == i && std::get<1>(out.back()) == j) {
            ++std::get<2>(out.back());
        } else {
            out.emplace_back(i, j, 1);
        }
    }
}

}  // namespace detail

/// Labeling-free invariant: the compare-minimal encode(n, l) over all compact
/// labelings l onto {0, ..., |B| - 1}. Throws PreconditionError above
/// kCanonicalMaxConditions conditions.
inline Polynomial canonical_poly(const PetriNet& n) {
    if (n.conditions.size() > kCanonicalMaxConditions) {
        throw PreconditionError("canonical_poly supports at most " + std::to_string(kCanonicalMaxConditions) + " conditions");
    }
    const auto indexed = detail::IndexedNet::from(n);
    std::vector<std::size_t> label_of(indexed.condition_count);
    std::iota(label_of.begin(), label_of.end(), std::size_t{0});

    std::vector<std::pair<std::uint64_t, std::uint64_t>> scratch;
    std::vector<detail::SmallTerm> best, current;
    detail::small_encode(indexed, label_of, scratch, best);
    while (std::next_permutation(label_of.begin(), label_of.end())) {
        detail::small_encode(indexed, label_of, scratch, current);
        if (std::lexicographical_compare(current.begin(), current.end(), best.begin(), best.end())) best.swap(current);
    }

    Polynomial p;
    for (const auto& [i, j, a] : best) p.add_term(Monomial{Nat(i), Nat(j)}, Nat(a));
    return p;
}

/// decode(encode(n, l)) is isomorphic to n once isolated conditions are dropped.
inline bool roundtrip_check(const PetriNet& n, const Labeling& l) {
    const auto decoded = decode(encode(n, l));
    return are_isomorphic(without_isolated_conditions(n), decoded.net).has_value();
}

}  // namespace netpoly
