#pragma once

// Immutable window index: factor sets with occurrence lists per length (built
// lazily, internally synchronized), plus per-length min/max letter counts for
// balance and richness queries. Factor statistics are only reliable up to
// n_max = window/2; longer queries throw WindowError instead of silently
// under-counting trailing occurrences.

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "wordcolor/core.hpp"
#include "wordcolor/infinite_word.hpp"

namespace wordcolor {

class FactorIndex {
public:
    FactorIndex(const InfiniteWord& x, std::size_t window)
        : win_(x.prefix(window)), alphabet_(x.alphabet()),
          label_(x.label()), n_max_(window / 2) {
        if (window < 2)
            throw std::invalid_argument("FactorIndex: window must be >= 2");
    }

    std::size_t window() const { return win_.size(); }
    std::size_t n_max() const { return n_max_; }
    std::string_view text() const { return win_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::string& word_label() const { return label_; }

    /// lambda(n): number of distinct length-n factors of the window.
    std::size_t complexity(std::size_t n) const {
        if (n == 0) return 1;
        return factors(n).size();
    }

    /// Length-n factors with their sorted occurrence start lists.
    const std::map<Word, std::vector<std::size_t>>& factors(std::size_t n) const {
        check_len(n);
        std::lock_guard<std::mutex> lock(mu_);
        auto it = by_len_.find(n);
        if (it == by_len_.end()) {
            std::map<Word, std::vector<std::size_t>> m;
            for (std::size_t i = 0; i + n <= win_.size(); ++i)
                m[win_.substr(i, n)].push_back(i);
            it = by_len_.emplace(n, std::move(m)).first;
        }
        return it->second;
    }

    /// Window membership. Honest about the window only: a factor may of
    /// course also occur beyond it.
    bool contains(std::string_view u) const {
        if (u.empty()) return false;
        return win_.find(u) != std::string::npos;
    }

    std::vector<std::size_t> occurrences(std::string_view u) const {
        if (u.empty()) throw std::invalid_argument("occurrences: empty factor");
        std::vector<std::size_t> occ;
        for (std::size_t p = win_.find(u); p != std::string::npos;
             p = win_.find(u, p + 1))
            occ.push_back(p);
        return occ;
    }

    /// Per-length extrema of letter counts over all window factors of that
    /// length, O(window) per length, cached.
    std::pair<std::size_t, std::size_t> count_range(char letter, std::size_t n) const {
        check_len(n);
        if (n == 0) return {0, 0};
        std::lock_guard<std::mutex> lock(mu_);
        auto& per_letter = ranges_[letter];
        auto it = per_letter.find(n);
        if (it == per_letter.end()) {
            const std::uint32_t* ps = prefix_counts(letter).data();
            std::uint32_t mn = ~std::uint32_t(0), mx = 0;
            const std::size_t last = win_.size() - n;  // n <= n_max <= size/2
            for (std::size_t i = 0; i <= last; ++i) {
                std::uint32_t c = ps[i + n] - ps[i];
                mn = std::min(mn, c);
                mx = std::max(mx, c);
            }
            it = per_letter.emplace(n, std::make_pair<std::size_t, std::size_t>(mn, mx))
                     .first;
        }
        return it->second;
    }

    std::size_t prefix_count(char letter, std::size_t n) const {
        std::lock_guard<std::mutex> lock(mu_);
        return prefix_counts(letter).at(n);
    }

private:
    void check_len(std::size_t n) const {
        if (n > n_max_)
            throw WindowError("factor length " + std::to_string(n) +
                              " exceeds n_max = " + std::to_string(n_max_));
    }

    // called under the lock
    const std::vector<std::uint32_t>& prefix_counts(char letter) const {
        auto it = prefix_counts_.find(letter);
        if (it == prefix_counts_.end()) {
            std::vector<std::uint32_t> ps(win_.size() + 1, 0);
            for (std::size_t i = 0; i < win_.size(); ++i)
                ps[i + 1] = ps[i] + (win_[i] == letter ? 1 : 0);
            it = prefix_counts_.emplace(letter, std::move(ps)).first;
        }
        return it->second;
    }

    std::string win_;
    Alphabet alphabet_;
    std::string label_;
    std::size_t n_max_;
    mutable std::mutex mu_;
    mutable std::map<std::size_t, std::map<Word, std::vector<std::size_t>>> by_len_;
    mutable std::map<char, std::map<std::size_t, std::pair<std::size_t, std::size_t>>> ranges_;
    mutable std::map<char, std::vector<std::uint32_t>> prefix_counts_;
};

}  // namespace wordcolor
