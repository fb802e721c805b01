#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "netpoly/codec.hpp"
#include "netpoly/errors.hpp"
#include "netpoly/net.hpp"
#include "netpoly/polynomial.hpp"

namespace netpoly {

/// Split of a polynomial's binary support into two disjoint sides.
struct SupportBipartition {
    BitSet s1;
    BitSet s2;
};

/// Coefficients of P indexed by the projections of its monomials onto the
/// two sides of a bipartition. Row/column 0 is the largest key in term order.
struct CoeffGrid {
    std::vector<Monomial> rows;
    std::vector<Monomial> cols;
    std::map<std::pair<std::size_t, std::size_t>, Nat> cells;
    bool complete = false;

    /// Zero when the cell is absent.
    Nat cell(std::size_t r, std::size_t c) const {
        auto it = cells.find({r, c});
        return it == cells.end() ? Nat(0) : it->second;
    }
};

/// Rank-1 decomposition cell(r, c) = row[r] * col[c].
struct Rank1Weights {
    std::vector<Nat> row;
    std::vector<Nat> col;
};

struct FactorOptions {
    /// Largest |tau(P)| the bipartition search will attempt.
    std::size_t max_support = 16;
};

/// A polynomial factor of a carry-free split.
struct Split {
    Polynomial first;
    Polynomial second;
};

inline constexpr std::size_t kMaxSupportLimit = 63;

namespace detail {

inline Monomial restrict_bits(const Monomial& m, const Nat& mask) { return Monomial{Nat(m.i & mask), Nat(m.j & mask)}; }

inline std::size_t index_of_unit(const std::vector<Monomial>& keys) {
    const Monomial unit{0, 0};
    auto it = std::find(keys.begin(), keys.end(), unit);
    return it == keys.end() ? 0 : static_cast<std::size_t>(it - keys.begin());
}

/// Smallest prime factor of g > 1.
inline Nat smallest_prime_factor(const Nat& g) {
    if (!(g & 1)) return 2;
    constexpr unsigned kTrialLimit = 1'000'000;
    for (unsigned d = 3; d <= kTrialLimit; d += 2) {
        const Nat dd = Nat(d) * d;
        if (dd > g) return g;
        if (g % d == 0) return d;
    }
    if (boost::multiprecision::miller_rabin_test(g, 25)) return g;
    throw PreconditionError("coefficient content " + g.str() + " has no prime factor below " + std::to_string(kTrialLimit));
}

inline Nat content(const Polynomial& p) {
    Nat g = 0;
    for (const auto& [m, c] : p) g = boost::multiprecision::gcd(g, c);
    return g;
}

inline Polynomial divide_exact(const Polynomial& p, const Nat& d) {
    Polynomial out;
    for (const auto& [m, c] : p) out.add_term(m, c / d);
    return out;
}

inline bool is_constant(const Polynomial& p) {
    return p.term_count() == 1 && p.begin()->first == Monomial{0, 0};
}

inline void require_idle(const Polynomial& p) {
    if (p.is_zero() || p.constant_term().is_zero()) {
        throw PreconditionError("no idle event: constant coefficient must be at least 1");
    }
}

#ifdef NETPOLY_CHECK_SPLITS
inline void verify_split(const Polynomial& p, const Split& s) {
    if (!(mul(s.first, s.second) == p)) throw std::logic_error("split does not multiply back to " + print_poly(p));
    if (!disjoint_support(s.first, s.second)) throw std::logic_error("split factors share support bits");
    if (s.first.constant_term().is_zero() || s.second.constant_term().is_zero()) {
        throw std::logic_error("split factor without constant term");
    }
}
#endif

}  // namespace detail

/// Project every monomial of P onto the two sides of bp. Throws
/// PreconditionError when bp does not partition tau_poly(P).
inline CoeffGrid project_grid(const Polynomial& p, const SupportBipartition& bp) {
    if (!disjoint(bp.s1, bp.s2) || set_union(bp.s1, bp.s2) != tau_poly(p)) {
        throw PreconditionError("bipartition does not partition the support of " + print_poly(p));
    }
    const Nat mask1 = nat_of_bits(bp.s1);
    const Nat mask2 = nat_of_bits(bp.s2);

    std::map<Monomial, std::size_t, DescendingTermOrder> row_index, col_index;
    for (const auto& [m, c] : p) {
        row_index.emplace(detail::restrict_bits(m, mask1), 0);
        col_index.emplace(detail::restrict_bits(m, mask2), 0);
    }
    CoeffGrid g;
    for (auto& [key, idx] : row_index) {
        idx = g.rows.size();
        g.rows.push_back(key);
    }
    for (auto& [key, idx] : col_index) {
        idx = g.cols.size();
        g.cols.push_back(key);
    }
    // Restriction to complementary masks is injective, so no two monomials share a cell.
    for (const auto& [m, c] : p) {
        g.cells.emplace(std::pair{row_index.at(detail::restrict_bits(m, mask1)), col_index.at(detail::restrict_bits(m, mask2))}, c);
    }
    g.complete = g.cells.size() == g.rows.size() * g.cols.size();
    return g;
}

/// Positive natural weights with cell(r, c) = row[r] * col[c], or nullopt.
///
/// Pivots on the cell of the (0,0) row and column keys (index 0 if absent),
/// with value a. Setting col[c0] = t forces row[r] = cell(r, c0) / t and
/// col[c] = cell(r0, c) * t / a; the smallest divisor t of a making every
/// quotient exact is lcm over c of a / gcd(a, cell(r0, c)), and it works iff
/// it divides every cell(r, c0).
inline std::optional<Rank1Weights> rank1_nat_factor(const CoeffGrid& g) {
    if (!g.complete || g.rows.empty() || g.cols.empty()) return std::nullopt;
    const std::size_t r0 = detail::index_of_unit(g.rows);
    const std::size_t c0 = detail::index_of_unit(g.cols);
    const Nat a = g.cell(r0, c0);

    Nat t = 1;
    for (std::size_t c = 0; c < g.cols.size(); ++c) t = boost::multiprecision::lcm(t, Nat(a / boost::multiprecision::gcd(a, g.cell(r0, c))));

    Rank1Weights w;
    w.row.reserve(g.rows.size());
    w.col.reserve(g.cols.size());
    for (std::size_t r = 0; r < g.rows.size(); ++r) {
        const Nat v = g.cell(r, c0);
        if (v % t != 0) return std::nullopt;
        w.row.push_back(v / t);
    }
    for (std::size_t c = 0; c < g.cols.size(); ++c) w.col.push_back(g.cell(r0, c) * t / a);
    for (std::size_t r = 0; r < g.rows.size(); ++r) {
        for (std::size_t c = 0; c < g.cols.size(); ++c) {
            if (w.row[r] * w.col[c] != g.cell(r, c)) return std::nullopt;
        }
    }
    return w;
}

/// Every unordered bipartition {s1, s2} of the support with both sides
/// nonempty, s1 holding the smallest bit, ordered by |s1| then by value.
inline std::vector<SupportBipartition> enumerate_bipartitions(const BitSet& support) {
    std::vector<SupportBipartition> out;
    if (support.size() < 2) return out;
    if (support.size() > kMaxSupportLimit) throw PreconditionError("support too large to enumerate");
    const auto& bits = support.positions();
    const std::size_t rest = bits.size() - 1;
    const std::uint64_t full = (std::uint64_t{1} << rest) - 1;
    for (std::size_t k = 0; k < rest; ++k) {
        // Gosper's hack: masks over the remaining bits with popcount k, ascending.
        std::uint64_t mask = (std::uint64_t{1} << k) - 1;
        while (mask < full || (k == 0 && mask == 0)) {
            SupportBipartition bp;
            bp.s1.insert(bits[0]);
            for (std::size_t q = 0; q < rest; ++q) ((mask >> q) & 1 ? bp.s1 : bp.s2).insert(bits[q + 1]);
            out.push_back(std::move(bp));
            if (mask == 0) break;
            const std::uint64_t low = mask & -mask;
            const std::uint64_t ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
    }
    return out;
}

/// One step of factorization, or nullopt when P is prime or the unit 1.
///
/// Coefficient content is split first, by its smallest prime. Otherwise the
/// first bipartition (enumeration order) whose coefficient grid is complete
/// and rank-1 over the naturals yields P = P1 * P2 with disjoint supports.
inline std::optional<Split> split_once(const Polynomial& p, const FactorOptions& opts = {}) {
    detail::require_idle(p);
    const Nat g = detail::content(p);
    if (g > 1) {
        const Nat prime = detail::smallest_prime_factor(g);
        if (detail::is_constant(p) && prime == g) return std::nullopt;
        Split s{Polynomial::constant(prime), detail::divide_exact(p, prime)};
#ifdef NETPOLY_CHECK_SPLITS
        detail::verify_split(p, s);
#endif
        return s;
    }

    const BitSet support = tau_poly(p);
    if (support.size() > std::min(opts.max_support, kMaxSupportLimit)) {
        throw PreconditionError("support has " + std::to_string(support.size()) + " bits, above the limit of " +
                                std::to_string(std::min(opts.max_support, kMaxSupportLimit)));
    }
    for (const auto& bp : enumerate_bipartitions(support)) {
        const CoeffGrid grid = project_grid(p, bp);
        const auto w = rank1_nat_factor(grid);
        if (!w) continue;
        Split s;
        for (std::size_t r = 0; r < grid.rows.size(); ++r) s.first.add_term(grid.rows[r], w->row[r]);
        for (std::size_t c = 0; c < grid.cols.size(); ++c) s.second.add_term(grid.cols[c], w->col[c]);
#ifdef NETPOLY_CHECK_SPLITS
        detail::verify_split(p, s);
#endif
        return s;
    }
    return std::nullopt;
}

/// Factors of a carry-free factorization, each prime, largest first under compare.
using Factorization = std::vector<Polynomial>;

/// Split repeatedly until every factor is prime. decompose(1) is {1}.
inline Factorization decompose(const Polynomial& p, const FactorOptions& opts = {}) {
    detail::require_idle(p);
    Factorization primes;
    std::vector<Polynomial> work{p};
    while (!work.empty()) {
        Polynomial q = std::move(work.back());
        work.pop_back();
        if (auto s = split_once(q, opts)) {
            work.push_back(std::move(s->second));
            work.push_back(std::move(s->first));
        } else {
            primes.push_back(std::move(q));
        }
    }
    std::sort(primes.begin(), primes.end(), [](const Polynomial& a, const Polynomial& b) { return compare(a, b) > 0; });
    return primes;
}

/// Prime: not the unit and admits no split.
inline bool is_prime(const Polynomial& p, const FactorOptions& opts = {}) {
    detail::require_idle(p);
    return !(p == Polynomial::one()) && !split_once(p, opts);
}

/// Prime factors of a net, as decoded nets. Uses the compact labeling; the
/// iterated product of the result is isomorphic to n minus its isolated conditions.
inline std::vector<LabeledNet> decompose_net(const PetriNet& n, const FactorOptions& opts = {}) {
    std::vector<LabeledNet> out;
    for (const auto& f : decompose(encode(n, compact_labeling(n)), opts)) out.push_back(decode(f));
    return out;
}

/// True iff the net is not the unit (its polynomial is not 1) and does not decompose.
inline bool is_prime_net(const PetriNet& n, const FactorOptions& opts = {}) {
    return is_prime(encode(n, compact_labeling(n)), opts);
}

}  // namespace netpoly
