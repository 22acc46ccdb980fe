#pragma once

// Shared test utilities: a deterministic rng, random word generators, and the
// brute-force oracles the example-backed expectations are frozen from. The
// oracles stay independent of the library code paths they check.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wordcolor/core.hpp"

namespace testutil {

class Rng {
public:
    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : s_(seed) {}
    std::uint64_t next() {
        s_ ^= s_ << 13;
        s_ ^= s_ >> 7;
        s_ ^= s_ << 17;
        return s_;
    }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

private:
    std::uint64_t s_;
};

inline std::string random_word(Rng& rng, std::string_view alphabet,
                               std::size_t len) {
    std::string w;
    for (std::size_t i = 0; i < len; ++i)
        w.push_back(alphabet[rng.below(alphabet.size())]);
    return w;
}

/// Brute-force longest border: try every proper length from the top.
inline std::string brute_longest_border(std::string_view u) {
    for (std::size_t l = u.size() - 1; l > 0; --l)
        if (u.substr(0, l) == u.substr(u.size() - l)) return std::string(u.substr(0, l));
    return "";
}

inline bool brute_is_palindrome(std::string_view u) {
    std::string r(u.rbegin(), u.rend());
    return r == u;
}

/// Brute-force shortest palindrome with prefix u: for each candidate length,
/// mirror-extend u and check consistency.
inline std::string brute_palindromic_closure(std::string_view u) {
    for (std::size_t len = u.size(); len <= 2 * u.size(); ++len) {
        std::string w(len, '?');
        for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i];
        bool ok = true;
        for (std::size_t i = u.size(); i < len && ok; ++i) {
            std::size_t mirror = len - 1 - i;
            if (mirror >= u.size()) { ok = false; break; }  // underdetermined
            w[i] = u[mirror];
        }
        if (ok && brute_is_palindrome(w) && w.compare(0, u.size(), u) == 0)
            return w;
    }
    return std::string(u);
}

/// All distinct factors of a given length, by direct enumeration.
inline std::set<std::string> brute_factors(std::string_view w, std::size_t n) {
    std::set<std::string> out;
    for (std::size_t i = 0; i + n <= w.size(); ++i)
        out.insert(std::string(w.substr(i, n)));
    return out;
}

inline std::size_t brute_count(std::string_view u, std::string_view v) {
    std::size_t c = 0;
    for (std::size_t i = 0; i + v.size() <= u.size(); ++i)
        if (u.substr(i, v.size()) == v) ++c;
    return c;
}

}  // namespace testutil
