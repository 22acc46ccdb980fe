#pragma once

// Alphabets, finite-word primitives and morphisms. Everything in here is a
// pure function of its inputs; words are plain std::strings whose characters
// must belong to a declared Alphabet.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wordcolor {

using Word = std::string;

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAFactorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotSturmianError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotApplicableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DesubstitutionError : std::runtime_error {
    DesubstitutionError(const std::string& what, std::size_t pos)
        : std::runtime_error(what), position(pos) {}
    std::size_t position;
};
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

/// Finite ordered set of letters. Declaration order doubles as the default
/// lexicographic order for Lyndon checks.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::string_view letters) : letters_(letters) {
        for (std::size_t i = 0; i < letters_.size(); ++i)
            for (std::size_t j = i + 1; j < letters_.size(); ++j)
                if (letters_[i] == letters_[j])
                    throw std::invalid_argument("alphabet: duplicate letter");
        if (letters_.empty())
            throw std::invalid_argument("alphabet: empty");
    }

    std::size_t size() const { return letters_.size(); }
    const std::string& letters() const { return letters_; }
    char letter(std::size_t i) const { return letters_.at(i); }
    bool is_binary() const { return letters_.size() == 2; }

    bool contains(char c) const {
        return letters_.find(c) != std::string::npos;
    }

    /// Position in declaration order, -1 if absent.
    int rank(char c) const {
        auto p = letters_.find(c);
        return p == std::string::npos ? -1 : static_cast<int>(p);
    }

    void require(std::string_view u) const {
        for (char c : u)
            if (!contains(c))
                throw std::invalid_argument(std::string("letter '") + c +
                                            "' not in alphabet " + letters_);
    }

    bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }

    /// Smallest alphabet containing every letter of u, in order of first
    /// appearance.
    static Alphabet of(std::string_view u) {
        std::string ls;
        for (char c : u)
            if (ls.find(c) == std::string::npos) ls.push_back(c);
        if (ls.empty()) throw std::invalid_argument("alphabet: empty word");
        return Alphabet(ls);
    }

private:
    std::string letters_;
};

/// Total map letter -> finite word. An image may be empty; the morphism is
/// then erasing.
class Morphism {
public:
    Morphism(Alphabet source, Alphabet target, std::map<char, Word> images)
        : source_(std::move(source)), target_(std::move(target)),
          images_(std::move(images)) {
        for (char c : source_.letters())
            if (!images_.count(c))
                throw std::invalid_argument(std::string("morphism: no image for '") + c + "'");
        for (auto& [c, w] : images_) {
            if (!source_.contains(c))
                throw std::invalid_argument("morphism: image for foreign letter");
            target_.require(w);
        }
    }

    /// Builds source/target alphabets from the rule list itself.
    Morphism(std::initializer_list<std::pair<char, Word>> rules) {
        std::string src, tgt;
        for (auto& [c, w] : rules) {
            if (src.find(c) != std::string::npos)
                throw std::invalid_argument("morphism: duplicate rule");
            src.push_back(c);
            for (char t : w)
                if (tgt.find(t) == std::string::npos) tgt.push_back(t);
            images_[c] = w;
        }
        source_ = Alphabet(src);
        target_ = Alphabet(tgt.empty() ? src : tgt);
    }

    const Alphabet& source() const { return source_; }
    const Alphabet& target() const { return target_; }

    const Word& image(char c) const {
        auto it = images_.find(c);
        if (it == images_.end())
            throw std::invalid_argument(std::string("morphism: letter '") + c +
                                        "' outside source alphabet");
        return it->second;
    }

    bool non_erasing() const {
        for (auto& [c, w] : images_)
            if (w.empty()) return false;
        return true;
    }

    Word operator()(std::string_view u) const {
        Word out;
        for (char c : u) out += image(c);
        return out;
    }

    std::string rules_string() const {
        std::string s;
        for (char c : source_.letters()) {
            if (!s.empty()) s += ';';
            s += c;
            s += "->";
            s += images_.at(c);
        }
        return s;
    }

private:
    Alphabet source_, target_;
    std::map<char, Word> images_;
};

inline Word apply(const Morphism& m, std::string_view u) { return m(u); }

/// Failure function: border[i] = length of the longest border of u[0..i].
inline std::vector<std::size_t> border_array(std::string_view u) {
    std::vector<std::size_t> f(u.size(), 0);
    for (std::size_t i = 1; i < u.size(); ++i) {
        std::size_t j = f[i - 1];
        while (j > 0 && u[i] != u[j]) j = f[j - 1];
        if (u[i] == u[j]) ++j;
        f[i] = j;
    }
    return f;
}

/// Longest proper prefix of u that is also a proper suffix; empty word iff
/// u is unbordered.
inline Word longest_border(std::string_view u) {
    if (u.empty()) throw std::invalid_argument("longest_border: empty word");
    auto f = border_array(u);
    return Word(u.substr(0, f.back()));
}

inline bool is_unbordered(std::string_view u) {
    if (u.empty()) throw std::invalid_argument("is_unbordered: empty word");
    return border_array(u).back() == 0;
}

/// True iff u is strictly smaller than each of its nontrivial conjugates in
/// the order induced by the alphabet's letter ranks.
inline bool is_lyndon(std::string_view u, const Alphabet& order) {
    if (u.empty()) throw std::invalid_argument("is_lyndon: empty word");
    order.require(u);
    const std::size_t n = u.size();
    for (std::size_t r = 1; r < n; ++r) {
        // compare u against the conjugate starting at r
        int cmp = 0;
        for (std::size_t k = 0; k < n; ++k) {
            char x = u[k];
            char y = u[(r + k) % n];
            if (x != y) {
                cmp = order.rank(x) < order.rank(y) ? -1 : 1;
                break;
            }
        }
        if (cmp >= 0) return false;  // equal conjugate or a smaller one
    }
    return true;
}

/// u and v are conjugate when u = rt and v = tr for some split.
inline bool are_conjugate(std::string_view u, std::string_view v) {
    if (u.size() != v.size()) return false;
    if (u.empty()) return true;
    std::string doubled(u);
    doubled += u;
    return doubled.find(v) != std::string::npos;
}

/// Number of (possibly overlapping) occurrences of v in u.
inline std::size_t count_occurrences(std::string_view u, std::string_view v) {
    if (v.empty()) throw std::invalid_argument("count_occurrences: empty pattern");
    if (v.size() > u.size()) return 0;
    std::size_t count = 0;
    for (std::size_t p = u.find(v); p != std::string_view::npos;
         p = u.find(v, p + 1))
        ++count;
    return count;
}

inline Word reversal(std::string_view u) {
    return Word(u.rbegin(), u.rend());
}

inline bool is_palindrome(std::string_view u) {
    for (std::size_t i = 0, j = u.size(); i + 1 < j; ++i, --j)
        if (u[i] != u[j - 1]) return false;
    return true;
}

/// Letterwise bar map on a binary alphabet.
inline Word complement(std::string_view u, const Alphabet& alph) {
    if (!alph.is_binary())
        throw std::invalid_argument("complement: alphabet is not binary");
    alph.require(u);
    Word out(u);
    for (char& c : out) c = c == alph.letter(0) ? alph.letter(1) : alph.letter(0);
    return out;
}

/// z[i] = length of the longest common prefix of s and s[i..]; z[0] = |s|.
inline std::vector<std::size_t> z_array(std::string_view s) {
    const std::size_t n = s.size();
    std::vector<std::size_t> z(n, 0);
    if (n == 0) return z;
    z[0] = n;
    std::size_t l = 0, r = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (i < r) z[i] = std::min(r - i, z[i - l]);
        while (i + z[i] < n && s[z[i]] == s[i + z[i]]) ++z[i];
        if (i + z[i] > r) { l = i; r = i + z[i]; }
    }
    return z;
}

/// Shortest palindrome having u as a prefix: append the reversal of the part
/// in front of u's longest palindromic suffix.
inline Word palindromic_closure(std::string_view u) {
    if (u.empty()) return Word();
    // longest palindromic suffix via z-matching of reversal(u) against u
    Word r = reversal(u);
    std::string s = r;
    s += '\x01';
    s += u;
    auto z = z_array(s);
    const std::size_t n = u.size();
    std::size_t keep = 1;  // a single letter is always a palindromic suffix
    for (std::size_t i = 0; i < n; ++i) {
        // suffix of u starting at i is a palindrome iff it matches the
        // reversal's prefix entirely
        if (z[n + 1 + i] >= n - i) { keep = n - i; break; }
    }
    Word out(u);
    out += reversal(u.substr(0, n - keep));
    return out;
}

}  // namespace wordcolor
