#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "netpoly/errors.hpp"

namespace netpoly {

/// Unbounded natural number. Exponents are sums of powers of two indexed by
/// labels, so they outgrow any fixed width quickly.
using Nat = boost::multiprecision::cpp_int;

/// Parse a run of decimal digits. Leading zeros are allowed and do not switch radix.
inline Nat parse_nat(std::string_view digits) {
    if (digits.empty()) throw ParseError("expected a natural number");
    Nat value = 0;
    for (char ch : digits) {
        if (ch < '0' || ch > '9') throw ParseError("invalid digit in natural number");
        value *= 10;
        value += static_cast<unsigned>(ch - '0');
    }
    return value;
}

inline std::string to_string(const Nat& n) { return n.str(); }

/// Finite set of bit positions, kept sorted and duplicate-free.
///
/// Via k = sum of 2^t over the members, BitSet is in bijection with the naturals.
class BitSet {
public:
    using value_type = std::size_t;
    using const_iterator = std::vector<value_type>::const_iterator;

    BitSet() = default;
    BitSet(std::initializer_list<value_type> bits) : bits_(bits) { normalize(); }
    explicit BitSet(std::vector<value_type> bits) : bits_(std::move(bits)) { normalize(); }

    bool empty() const noexcept { return bits_.empty(); }
    std::size_t size() const noexcept { return bits_.size(); }
    const_iterator begin() const noexcept { return bits_.begin(); }
    const_iterator end() const noexcept { return bits_.end(); }
    const std::vector<value_type>& positions() const noexcept { return bits_; }

    bool contains(value_type t) const { return std::binary_search(bits_.begin(), bits_.end(), t); }

    void insert(value_type t) {
        auto it = std::lower_bound(bits_.begin(), bits_.end(), t);
        if (it == bits_.end() || *it != t) bits_.insert(it, t);
    }

    friend BitSet set_union(const BitSet& a, const BitSet& b) {
        BitSet out;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.bits_));
        return out;
    }

    friend BitSet set_intersection(const BitSet& a, const BitSet& b) {
        BitSet out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.bits_));
        return out;
    }

    friend BitSet set_difference(const BitSet& a, const BitSet& b) {
        BitSet out;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.bits_));
        return out;
    }

    friend bool disjoint(const BitSet& a, const BitSet& b) {
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (*i == *j) return false;
            if (*i < *j) ++i; else ++j;
        }
        return true;
    }

    friend bool operator==(const BitSet&, const BitSet&) = default;
    friend auto operator<=>(const BitSet&, const BitSet&) = default;

private:
    void normalize() {
        std::sort(bits_.begin(), bits_.end());
        bits_.erase(std::unique(bits_.begin(), bits_.end()), bits_.end());
    }

    std::vector<value_type> bits_;
};

/// Binary support of k: positions of its one bits. tau_nat(0) is empty.
inline BitSet tau_nat(const Nat& k) {
    std::vector<std::size_t> bits;
    if (k.is_zero()) return BitSet{};
    const std::size_t top = boost::multiprecision::msb(k);
    for (std::size_t t = boost::multiprecision::lsb(k); t <= top; ++t) {
        if (boost::multiprecision::bit_test(k, static_cast<unsigned>(t))) bits.push_back(t);
    }
    return BitSet(std::move(bits));
}

/// Inverse of tau_nat.
inline Nat nat_of_bits(const BitSet& s) {
    Nat k = 0;
    for (std::size_t t : s) boost::multiprecision::bit_set(k, static_cast<unsigned>(t));
    return k;
}

}  // namespace netpoly
