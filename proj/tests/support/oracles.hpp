#pragma once

// Brute-force oracles, written independently of the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "netpoly/net.hpp"
#include "netpoly/polynomial.hpp"

namespace netpoly::testing {

/// Bit positions of k by repeated halving.
inline std::vector<std::size_t> bits_by_halving(std::uint64_t k) {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; k != 0; ++t, k /= 2) {
        if (k % 2 == 1) out.push_back(t);
    }
    return out;
}

/// Isomorphism by trying every condition bijection and comparing the event
/// signature multisets.
inline bool brute_force_isomorphic(const PetriNet& a, const PetriNet& b) {
    if (a.conditions.size() != b.conditions.size() || a.events.size() != b.events.size()) return false;
    const std::size_t n = a.conditions.size();
    std::map<ConditionId, std::size_t> ia, ib;
    for (std::size_t k = 0; k < n; ++k) {
        ia[a.conditions[k]] = k;
        ib[b.conditions[k]] = k;
    }
    using Sig = std::pair<std::set<std::size_t>, std::set<std::size_t>>;
    std::multiset<Sig> target;
    for (const auto& e : b.events) {
        Sig s;
        for (const auto& c : e.pre) s.first.insert(ib.at(c));
        for (const auto& c : e.post) s.second.insert(ib.at(c));
        target.insert(s);
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        std::multiset<Sig> mapped;
        for (const auto& e : a.events) {
            Sig s;
            for (const auto& c : e.pre) s.first.insert(perm[ia.at(c)]);
            for (const auto& c : e.post) s.second.insert(perm[ia.at(c)]);
            mapped.insert(s);
        }
        if (mapped == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Does a positive rank-1 factorization grid[r][c] = b[r] * c[c] exist?
/// Tries every vector b with b[r] dividing grid[r][0].
inline bool brute_force_rank1(const std::vector<std::vector<std::uint64_t>>& grid) {
    const std::size_t rows = grid.size();
    if (rows == 0 || grid[0].empty()) return false;
    const std::size_t cols = grid[0].size();
    for (const auto& row : grid) {
        for (auto v : row) {
            if (v == 0) return false;
        }
    }
    std::vector<std::vector<std::uint64_t>> divisors(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::uint64_t d = 1; d <= grid[r][0]; ++d) {
            if (grid[r][0] % d == 0) divisors[r].push_back(d);
        }
    }
    std::vector<std::size_t> pick(rows, 0);
    while (true) {
        std::vector<std::uint64_t> b(rows);
        for (std::size_t r = 0; r < rows; ++r) b[r] = divisors[r][pick[r]];
        bool ok = true;
        for (std::size_t c = 0; c < cols && ok; ++c) {
            if (grid[0][c] % b[0] != 0) {
                ok = false;
                break;
            }
            const std::uint64_t cc = grid[0][c] / b[0];
            for (std::size_t r = 0; r < rows && ok; ++r) ok = b[r] * cc == grid[r][c];
        }
        if (ok) return true;
        std::size_t r = 0;
        while (r < rows && ++pick[r] == divisors[r].size()) pick[r++] = 0;
        if (r == rows) return false;
    }
}

/// Small polynomial with machine-word exponents, multiplied term by term.
using SmallPoly = std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>;

inline SmallPoly small_mul(const SmallPoly& p, const SmallPoly& q) {
    SmallPoly out;
    for (const auto& [m1, c1] : p) {
        for (const auto& [m2, c2] : q) out[{m1.first + m2.first, m1.second + m2.second}] += c1 * c2;
    }
    return out;
}

inline SmallPoly to_small(const Polynomial& p) {
    SmallPoly out;
    for (const auto& [m, c] : p) out[{m.i.convert_to<std::uint64_t>(), m.j.convert_to<std::uint64_t>()}] = c.convert_to<std::uint64_t>();
    return out;
}

/// Does P (exponents within 64 bits) split as a carry-free product along
/// some bipartition of its support? Every bipartition is checked with the
/// brute-force rank-1 oracle over a grid built here from bit masks.
inline bool brute_force_splits(const SmallPoly& p) {
    std::uint64_t support = 0;
    for (const auto& [m, c] : p) support |= m.first | m.second;
    std::vector<std::uint64_t> bits;
    for (std::size_t t = 0; t < 64; ++t) {
        if ((support >> t) & 1) bits.push_back(std::uint64_t{1} << t);
    }
    const std::size_t m = bits.size();
    for (std::uint64_t choose = 1; choose + 1 < (std::uint64_t{1} << m); ++choose) {
        std::uint64_t mask1 = 0;
        for (std::size_t k = 0; k < m; ++k) {
            if ((choose >> k) & 1) mask1 |= bits[k];
        }
        const std::uint64_t mask2 = support & ~mask1;
        std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> rows, cols;
        for (const auto& [mono, c] : p) {
            rows.emplace(std::pair{mono.first & mask1, mono.second & mask1}, 0);
            cols.emplace(std::pair{mono.first & mask2, mono.second & mask2}, 0);
        }
        std::size_t k = 0;
        for (auto& [key, idx] : rows) idx = k++;
        k = 0;
        for (auto& [key, idx] : cols) idx = k++;
        std::vector<std::vector<std::uint64_t>> grid(rows.size(), std::vector<std::uint64_t>(cols.size(), 0));
        for (const auto& [mono, c] : p) {
            grid[rows.at({mono.first & mask1, mono.second & mask1})][cols.at({mono.first & mask2, mono.second & mask2})] = c;
        }
        if (brute_force_rank1(grid)) return true;
    }
    return false;
}

}  // namespace netpoly::testing
