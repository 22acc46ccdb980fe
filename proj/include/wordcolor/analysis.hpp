#pragma once

// Window-based structural analysis: special factors, balance, repetitions,
// recurrence evidence, return words, derived words, the S-operator, richness.
// Everything here reports facts about a finite prefix; recurrence-style
// verdicts are evidence, never proofs.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wordcolor/core.hpp"
#include "wordcolor/factor_index.hpp"
#include "wordcolor/infinite_word.hpp"

namespace wordcolor {

enum class Side { left, right };

/// All length-n factors extendable within the window by at least two distinct
/// letters on the given side.
inline std::set<Word> special_factors(const FactorIndex& idx, std::size_t n,
                                      Side side) {
    std::set<Word> out;
    std::string_view w = idx.text();
    for (const auto& [factor, occ] : idx.factors(n)) {
        std::set<char> ext;
        for (std::size_t i : occ) {
            if (side == Side::right) {
                if (i + n < w.size()) ext.insert(w[i + n]);
            } else {
                if (i > 0) ext.insert(w[i - 1]);
            }
        }
        if (ext.size() >= 2) out.insert(factor);
    }
    return out;
}

struct BalanceReport {
    bool balanced = true;
    // witness when unbalanced: two same-length factors whose counts of
    // `letter` differ by at least 2
    Word u, v;
    char letter = 0;
    std::size_t length = 0;
};

inline BalanceReport is_balanced(const FactorIndex& idx, std::size_t up_to) {
    std::string_view w = idx.text();
    for (std::size_t n = 1; n <= up_to; ++n) {
        for (char letter : idx.alphabet().letters()) {
            auto [mn, mx] = idx.count_range(letter, n);
            if (mx - mn <= 1) continue;
            BalanceReport r;
            r.balanced = false;
            r.letter = letter;
            r.length = n;
            for (std::size_t i = 0; i + n <= w.size(); ++i) {
                std::size_t c = idx.prefix_count(letter, i + n) -
                                idx.prefix_count(letter, i);
                if (c == mx && r.u.empty()) r.u = Word(w.substr(i, n));
                if (c == mn && r.v.empty()) r.v = Word(w.substr(i, n));
            }
            return r;
        }
    }
    return {};
}

/// 'a' if the window contains aa, 'b' if it contains bb; anything else is not
/// a Sturmian window. (Letter names follow the alphabet's two letters.)
inline char sturmian_type(const FactorIndex& idx) {
    if (!idx.alphabet().is_binary())
        throw NotSturmianError("sturmian_type: alphabet is not binary");
    char a = idx.alphabet().letter(0), b = idx.alphabet().letter(1);
    bool has_aa = idx.contains(Word{a, a});
    bool has_bb = idx.contains(Word{b, b});
    if (has_aa && !has_bb) return a;
    if (has_bb && !has_aa) return b;
    throw NotSturmianError(has_aa ? "window contains both aa and bb"
                                  : "window contains neither aa nor bb");
}

enum class RepetitionKind { square, overlap };

struct Repetition {
    Word root;
    std::size_t position;  // first occurrence
};

/// All vv (square) or vva, a = first letter of v (overlap) with |v| <=
/// max_root, deduplicated by root, position of first occurrence.
inline std::vector<Repetition> repetitions(const FactorIndex& idx,
                                           RepetitionKind kind,
                                           std::size_t max_root) {
    std::string_view w = idx.text();
    if (2 * max_root + 1 > w.size())
        throw std::invalid_argument("repetitions: window too small for max_root");
    std::map<Word, std::size_t> found;
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t l = 1; l <= max_root; ++l) {
            std::size_t end = i + 2 * l + (kind == RepetitionKind::overlap ? 1 : 0);
            if (end > w.size()) break;
            if (w.compare(i, l, w, i + l, l) != 0) continue;
            if (kind == RepetitionKind::overlap && w[i + 2 * l] != w[i]) continue;
            Word root(w.substr(i, l));
            found.emplace(root, i);  // keeps the first position
        }
    }
    std::vector<Repetition> out;
    for (auto& [root, pos] : found) out.push_back({root, pos});
    return out;
}

/// Prefix lengths k <= n with an unbordered length-k prefix.
inline std::vector<std::size_t> unbordered_prefixes(const InfiniteWord& x,
                                                    std::size_t n) {
    if (n < 1) throw std::invalid_argument("unbordered_prefixes: empty window");
    Word w = x.prefix(n);
    auto f = border_array(w);
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k <= n; ++k)
        if (f[k - 1] == 0) out.push_back(k);
    return out;
}

/// Palindromic prefix lengths with the letter that follows each one.
inline std::vector<std::pair<std::size_t, char>> palindromic_prefixes(
    const InfiniteWord& x, std::size_t n) {
    if (n < 1) throw std::invalid_argument("palindromic_prefixes: empty window");
    Word w = x.prefix(n + 1);  // one extra symbol: the follower of length-n
    std::string_view win(w.data(), n);
    // prefix of length k is a palindrome iff the reversal's suffix of length k
    // equals it; one z-array over w # reverse(w) answers all k at once
    std::string s(win);
    s += '\x01';
    s += reversal(win);
    auto z = z_array(s);
    std::vector<std::pair<std::size_t, char>> out;
    for (std::size_t k = 1; k <= n; ++k)
        if (z[n + 1 + (n - k)] >= k) out.emplace_back(k, w[k]);
    return out;
}

struct GapReport {
    std::vector<std::size_t> occurrences;  // sorted start positions, 0-based
    std::size_t max_gap = 0;               // max difference of consecutive starts
    std::size_t trailing_gap = 0;          // window end minus last start (caveat)
};

inline GapReport recurrence_gaps(const InfiniteWord& x, const Word& u,
                                 std::size_t n) {
    if (u.empty()) throw std::invalid_argument("recurrence_gaps: empty factor");
    Word w = x.prefix(n);
    GapReport r;
    for (std::size_t p = w.find(u); p != std::string::npos; p = w.find(u, p + 1))
        r.occurrences.push_back(p);
    if (r.occurrences.empty())
        throw NotAFactorError("recurrence_gaps: not a factor of the window");
    for (std::size_t j = 1; j < r.occurrences.size(); ++j)
        r.max_gap = std::max(r.max_gap, r.occurrences[j] - r.occurrences[j - 1]);
    r.trailing_gap = n - r.occurrences.back();
    return r;
}

/// Return words to a prefix u, in order of first occurrence. sigma(i) is the
/// i-th return word (1-based), the order-preserving recoding bijection.
class ReturnWordTable {
public:
    ReturnWordTable(Word u, std::vector<Word> words,
                    std::vector<std::size_t> occurrences, bool truncated)
        : u_(std::move(u)), words_(std::move(words)),
          occurrences_(std::move(occurrences)), truncated_(truncated) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            index_[words_[i]] = i + 1;
    }

    const Word& u() const { return u_; }
    std::size_t size() const { return words_.size(); }
    const std::vector<Word>& words() const { return words_; }

    const Word& sigma(std::size_t i) const {
        if (i < 1 || i > words_.size())
            throw std::invalid_argument("sigma: index out of range");
        return words_[i - 1];
    }

    /// 1-based index of a return word, 0 if unknown.
    std::size_t index_of(std::string_view v) const {
        auto it = index_.find(Word(v));
        return it == index_.end() ? 0 : it->second;
    }

    std::vector<Word> complete_returns() const {
        std::vector<Word> out;
        for (const auto& v : words_) out.push_back(v + u_);
        return out;
    }

    /// Occurrence starts of u in the analyzed window.
    const std::vector<std::size_t>& occurrence_starts() const { return occurrences_; }

    /// True when the window ended inside a block: return words appearing only
    /// beyond the window are unknown to this table.
    bool window_truncated() const { return truncated_; }

    static char letter_of(std::size_t i) {
        static const char* digits =
            "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
        if (i < 1 || i > 61)
            throw std::invalid_argument("derived alphabet larger than 61 symbols");
        return digits[i];
    }

    /// sigma as a morphism from the derived alphabet back to the base word.
    Morphism as_morphism(const Alphabet& base) const {
        std::string src;
        std::map<char, Word> images;
        for (std::size_t i = 1; i <= words_.size(); ++i) {
            src.push_back(letter_of(i));
            images[letter_of(i)] = words_[i - 1];
        }
        return Morphism(Alphabet(src), base, images);
    }

private:
    Word u_;
    std::vector<Word> words_;
    std::map<Word, std::size_t> index_;
    std::vector<std::size_t> occurrences_;
    bool truncated_;
};

inline ReturnWordTable return_words(const InfiniteWord& x, const Word& u,
                                    std::size_t n) {
    if (u.empty()) throw std::invalid_argument("return_words: empty prefix");
    Word w = x.prefix(n);
    if (w.compare(0, u.size(), u) != 0)
        throw std::invalid_argument("return_words: u is not a prefix of the word");
    std::vector<std::size_t> occ;
    for (std::size_t p = w.find(u); p != std::string::npos; p = w.find(u, p + 1))
        occ.push_back(p);
    if (occ.size() < 3)
        throw WindowError("return_words: prefix occurs fewer than 3 times in the window");
    std::vector<Word> words;
    std::map<Word, bool> seen;
    for (std::size_t j = 0; j + 1 < occ.size(); ++j) {
        Word v = w.substr(occ[j], occ[j + 1] - occ[j]);
        if (!seen.count(v)) {
            seen[v] = true;
            words.push_back(v);
        }
    }
    bool truncated = occ.back() + u.size() < w.size();
    return ReturnWordTable(u, std::move(words), std::move(occ), truncated);
}

namespace detail {

/// Recodes the base word as its sequence of return words. The prefix parsed
/// from the construction window is materialized eagerly; growing further
/// extends the base window, and a return word never seen in the construction
/// window raises WindowError (the table's alphabet would change).
class DerivedStream final : public Stream {
public:
    DerivedStream(InfiniteWord base, const ReturnWordTable& table,
                  std::size_t base_window, std::string label, Alphabet alphabet)
        : Stream(std::move(alphabet), std::move(label)), base_(std::move(base)),
          table_(table), base_window_(base_window) {
        last_occ_ = table_.occurrence_starts().front();
    }

protected:
    void grow(std::string& buf, std::size_t need) override {
        if (buf.empty()) {
            const auto& occ = table_.occurrence_starts();
            for (std::size_t j = 0; j + 1 < occ.size(); ++j)
                buf.push_back(letter_for(occ[j], occ[j + 1]));
            last_occ_ = occ.back();
        }
        const Word& u = table_.u();
        while (buf.size() < need) {
            if (base_window_ > (1u << 27))
                throw WindowError("derived word: next return not found within search bound");
            base_window_ *= 2;
            Word w = base_.prefix(base_window_);
            std::size_t from = last_occ_;
            std::vector<std::size_t> occ;
            for (std::size_t p = w.find(u, from); p != std::string::npos;
                 p = w.find(u, p + 1))
                occ.push_back(p);
            for (std::size_t j = 0; j + 1 < occ.size() && buf.size() < need; ++j) {
                buf.push_back(letter_for(occ[j], occ[j + 1]));
                last_occ_ = occ[j + 1];
            }
        }
    }

private:
    char letter_for(std::size_t from, std::size_t to) {
        Word v = base_.prefix(to).substr(from, to - from);
        std::size_t i = table_.index_of(v);
        if (i == 0)
            throw WindowError("derived word: return word unseen in the construction window");
        return ReturnWordTable::letter_of(i);
    }

    InfiniteWord base_;
    ReturnWordTable table_;
    std::size_t base_window_;
    std::size_t last_occ_;
};

}  // namespace detail

struct DerivedWord {
    InfiniteWord word;            // over the derived alphabet 1..card(R_u)
    ReturnWordTable table;
    std::size_t window_length;    // derived letters materialized from the window
};

inline DerivedWord derived_word(const InfiniteWord& x, const Word& u,
                                std::size_t n) {
    ReturnWordTable table = return_words(x, u, n);
    std::string letters;
    for (std::size_t i = 1; i <= table.size(); ++i)
        letters.push_back(ReturnWordTable::letter_of(i));
    Alphabet alph(letters);
    std::string label = "derived:u=" + u + ";of=" + x.label();
    auto stream = std::make_shared<detail::DerivedStream>(x, table, n, label, alph);
    std::size_t derived_len = table.occurrence_starts().size() - 1;
    return DerivedWord{InfiniteWord(stream), std::move(table), derived_len};
}

/// S(x) = D_a(x) when the first letter a looks uniformly recurrent on the
/// window (max occurrence gap, trailing gap included, stays within
/// gap_bound); otherwise Z with the witness gap. Evidence, not proof.
struct SOperatorOutcome {
    bool is_z = false;
    char first_letter = 0;
    std::size_t window_used = 0;
    std::size_t max_gap = 0;
    // for Z: consecutive occurrence starts (or last start and window end)
    // whose distance exceeds the bound
    std::optional<std::pair<std::size_t, std::size_t>> gap_witness;
    std::optional<DerivedWord> derived;
};

inline SOperatorOutcome s_operator(const InfiniteWord& x, std::size_t n,
                                   std::size_t gap_bound) {
    if (n < 2) throw WindowError("s_operator: window too small");
    SOperatorOutcome out;
    out.first_letter = x.at(0);
    out.window_used = n;
    GapReport gaps = recurrence_gaps(x, Word(1, out.first_letter), n);
    out.max_gap = std::max(gaps.max_gap, gaps.trailing_gap);
    if (gaps.max_gap > gap_bound) {
        for (std::size_t j = 1; j < gaps.occurrences.size(); ++j)
            if (gaps.occurrences[j] - gaps.occurrences[j - 1] > gap_bound) {
                out.gap_witness = {gaps.occurrences[j - 1], gaps.occurrences[j]};
                break;
            }
        out.is_z = true;
        return out;
    }
    if (gaps.trailing_gap > gap_bound) {
        out.gap_witness = {gaps.occurrences.back(), n};
        out.is_z = true;
        return out;
    }
    out.derived = derived_word(x, Word(1, out.first_letter), n);
    return out;
}

/// Applies S to successive outcomes until Z or max_steps. Each derived word
/// is analyzed on the window its parent's parse produced.
inline std::vector<SOperatorOutcome> s_iterate(const InfiniteWord& x,
                                               std::size_t n,
                                               std::size_t gap_bound,
                                               std::size_t max_steps) {
    std::vector<SOperatorOutcome> chain;
    InfiniteWord cur = x;
    std::size_t win = n;
    for (std::size_t step = 0; step < max_steps; ++step) {
        SOperatorOutcome out = s_operator(cur, win, gap_bound);
        bool z = out.is_z;
        if (!z) {
            cur = out.derived->word;
            win = out.derived->window_length;
        }
        chain.push_back(std::move(out));
        if (z) break;
        if (win < 3) break;  // derived window too thin to keep iterating
    }
    return chain;
}

/// The unique letter z such that some same-length window factor has strictly
/// fewer z's than w. Exactly one letter qualifies on a balanced aperiodic
/// window; ties mean the window is not Sturmian.
inline char richness(const FactorIndex& idx, std::string_view w) {
    if (w.empty()) throw std::invalid_argument("richness: empty factor");
    if (!idx.alphabet().is_binary())
        throw NotSturmianError("richness: alphabet is not binary");
    if (!idx.contains(w)) throw NotAFactorError("richness: not a window factor");
    char a = idx.alphabet().letter(0), b = idx.alphabet().letter(1);
    std::size_t ca = static_cast<std::size_t>(std::count(w.begin(), w.end(), a));
    std::size_t cb = w.size() - ca;
    bool rich_a = ca > idx.count_range(a, w.size()).first;
    bool rich_b = cb > idx.count_range(b, w.size()).first;
    if (rich_a == rich_b)
        throw NotSturmianError(rich_a ? "factor rich in both letters"
                                      : "factor rich in neither letter");
    return rich_a ? a : b;
}

/// Balance up to `depth` plus full Sturmian complexity at `depth`: the
/// window evidence richness-based colorings require.
inline bool sturmian_window_evidence(const FactorIndex& idx, std::size_t depth = 30) {
    if (!idx.alphabet().is_binary()) return false;
    std::size_t d = std::min(depth, idx.n_max());
    if (d < 2) return false;
    if (!is_balanced(idx, d).balanced) return false;
    return idx.complexity(d) == d + 1;  // aperiodic on the window
}

struct NonRecurrentEvidence {
    Word prefix;
    std::size_t occurrence_count = 0;
    std::size_t last_occurrence = 0;  // start position, 0-based
    std::size_t max_gap = 0;
    std::size_t window = 0;
};

/// Shortest prefix whose occurrences stop before the final quarter of the
/// window: evidence of non-recurrence, never a proof.
inline std::optional<NonRecurrentEvidence> shortest_nonrecurrent_prefix(
    const InfiniteWord& x, std::size_t n) {
    if (n < 4) throw WindowError("shortest_nonrecurrent_prefix: window too small");
    Word w = x.prefix(n);
    auto z = z_array(w);
    std::size_t limit = n / 2;
    // last_at[k] = rightmost i > 0 with z[i] >= k; count_at[k] = how many
    std::vector<std::size_t> last_at(limit + 2, 0), count_at(limit + 2, 0);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t k = std::min(z[i], limit + 1);
        if (k == 0) continue;
        count_at[k] += 1;
        last_at[k] = std::max(last_at[k], i);
    }
    for (std::size_t k = limit; k >= 1; --k) {
        count_at[k] += count_at[k + 1];
        last_at[k] = std::max(last_at[k], last_at[k + 1]);
    }
    std::size_t margin = n / 4;
    for (std::size_t k = 1; k <= limit; ++k) {
        std::size_t last = last_at[k];  // 0 when the prefix only occurs at 0
        if (last + k <= n - margin) {
            NonRecurrentEvidence e;
            e.prefix = w.substr(0, k);
            e.occurrence_count = count_at[k] + 1;  // plus the prefix itself
            e.last_occurrence = last;
            e.window = n;
            return e;
        }
    }
    return std::nullopt;
}

/// Shortest prefix whose occurrence gaps exceed gap_bound within the window.
/// The scan stays short: even uniformly recurrent words have gaps that grow
/// linearly with the prefix length, so flagging long prefixes against a fixed
/// bound says nothing.
inline std::optional<NonRecurrentEvidence>
shortest_non_uniformly_recurrent_prefix(const InfiniteWord& x, std::size_t n,
                                        std::size_t gap_bound,
                                        std::size_t max_prefix_len = 8) {
    if (n < 4) throw WindowError("window too small");
    Word w = x.prefix(n);
    auto z = z_array(w);
    std::size_t limit = std::min(max_prefix_len, n / 2);
    for (std::size_t k = 1; k <= limit; ++k) {
        std::size_t prev = 0, max_gap = 0, count = 1;
        for (std::size_t i = 1; i + k <= n; ++i) {
            if (z[i] >= k) {
                max_gap = std::max(max_gap, i - prev);
                prev = i;
                ++count;
            }
        }
        max_gap = std::max(max_gap, n - prev);  // trailing gap
        if (max_gap > gap_bound) {
            NonRecurrentEvidence e;
            e.prefix = w.substr(0, k);
            e.occurrence_count = count;
            e.last_occurrence = prev;
            e.max_gap = max_gap;
            e.window = n;
            return e;
        }
    }
    return std::nullopt;
}

}  // namespace wordcolor
