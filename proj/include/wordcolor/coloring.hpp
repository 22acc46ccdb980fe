#pragma once

// Factor colorings as total maps from non-empty window factors to
// finite palettes, plus the transfer/pullback/lift combinators. A scheme
// classifies factor strings, not occurrences; membership probes (zu in F,
// ua in F) consult the window and turn into advisory flags near its edge.
//
// Schemes whose color classes split cleanly into prefix-only and
// non-prefix-only classes advertise prefix_partitioned(); the verifier then
// runs a bit-parallel DP over prefix blocks instead of classifying every
// candidate block.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wordcolor/analysis.hpp"
#include "wordcolor/core.hpp"
#include "wordcolor/factor_index.hpp"
#include "wordcolor/frequency.hpp"
#include "wordcolor/infinite_word.hpp"

namespace wordcolor {

struct Palette {
    std::vector<std::string> names;

    std::size_t size() const { return names.size(); }
    const std::string& name(int c) const { return names.at(static_cast<std::size_t>(c)); }
    int index_of(std::string_view n) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == n) return static_cast<int>(i);
        return -1;
    }
    void check_unique() const {
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j)
                if (names[i] == names[j])
                    throw std::invalid_argument("palette: duplicate color name " + names[i]);
    }
};

struct Classified {
    int color = 0;
    bool advisory = false;  // probe left the reliable part of the window
};

namespace detail {

class SchemeRule {
public:
    SchemeRule(Palette palette, std::string label, Word window_text)
        : palette_(std::move(palette)), label_(std::move(label)),
          win_(std::move(window_text)) {
        palette_.check_unique();
    }
    virtual ~SchemeRule() = default;

    virtual Classified classify(std::string_view u) const = 0;
    virtual Classified prefix_color(std::size_t len) const {
        if (len == 0 || len > win_.size())
            throw WindowError("prefix_color: length outside the window");
        return classify(std::string_view(win_).substr(0, len));
    }

    const Palette& palette() const { return palette_; }
    const std::string& label() const { return label_; }
    std::string_view window_text() const { return win_; }
    bool prefix_partitioned() const { return prefix_partitioned_; }
    std::optional<int> dead_color() const { return dead_; }

protected:
    bool is_window_prefix(std::string_view u) const {
        return u.size() <= win_.size() && win_.compare(0, u.size(), u) == 0;
    }
    static void require_nonempty(std::string_view u) {
        if (u.empty())
            throw std::invalid_argument("coloring: the empty word is outside the domain");
    }

    Palette palette_;
    std::string label_;
    Word win_;
    bool prefix_partitioned_ = false;
    std::optional<int> dead_ = std::nullopt;
};

}  // namespace detail

class ColoringScheme {
public:
    explicit ColoringScheme(std::shared_ptr<const detail::SchemeRule> rule)
        : rule_(std::move(rule)) {}

    int classify(std::string_view u) const { return rule_->classify(u).color; }
    Classified classify_checked(std::string_view u) const { return rule_->classify(u); }
    int prefix_color(std::size_t len) const { return rule_->prefix_color(len).color; }
    Classified prefix_color_checked(std::size_t len) const { return rule_->prefix_color(len); }

    const Palette& palette() const { return rule_->palette(); }
    const std::string& label() const { return rule_->label(); }
    std::string_view window_text() const { return rule_->window_text(); }
    std::size_t window() const { return rule_->window_text().size(); }
    bool prefix_partitioned() const { return rule_->prefix_partitioned(); }
    std::optional<int> dead_color() const { return rule_->dead_color(); }

    /// Same rule under different color names.
    ColoringScheme renamed(std::vector<std::string> names) const;

private:
    std::shared_ptr<const detail::SchemeRule> rule_;
};

namespace detail {

class RenamedRule final : public SchemeRule {
public:
    RenamedRule(std::shared_ptr<const SchemeRule> inner, Palette palette)
        : SchemeRule(std::move(palette), inner->label(), Word(inner->window_text())),
          inner_(std::move(inner)) {
        if (palette_.size() != inner_->palette().size())
            throw std::invalid_argument("renamed: palette size mismatch");
        prefix_partitioned_ = inner_->prefix_partitioned();
        dead_ = inner_->dead_color();
    }
    Classified classify(std::string_view u) const override { return inner_->classify(u); }
    Classified prefix_color(std::size_t len) const override { return inner_->prefix_color(len); }

private:
    std::shared_ptr<const SchemeRule> inner_;
};

}  // namespace detail

inline ColoringScheme ColoringScheme::renamed(std::vector<std::string> names) const {
    return ColoringScheme(std::make_shared<detail::RenamedRule>(
        rule_, Palette{std::move(names)}));
}

namespace detail {

class Prefix2Rule final : public SchemeRule {
public:
    Prefix2Rule(Word win, std::string label)
        : SchemeRule(Palette{{"0", "1"}}, std::move(label), std::move(win)) {
        prefix_partitioned_ = true;
        dead_ = 0;
    }
    Classified classify(std::string_view u) const override {
        require_nonempty(u);
        return {is_window_prefix(u) ? 1 : 0, false};
    }
    Classified prefix_color(std::size_t) const override { return {1, false}; }
};

class ThresholdRule final : public SchemeRule {
public:
    ThresholdRule(Word win, std::size_t t, std::string label)
        : SchemeRule(make_palette(t), std::move(label), std::move(win)), t_(t) {
        prefix_partitioned_ = true;
        dead_ = 0;
    }
    Classified classify(std::string_view u) const override {
        require_nonempty(u);
        if (!is_window_prefix(u)) return {0, false};
        return prefix_color(u.size());
    }
    Classified prefix_color(std::size_t len) const override {
        return {static_cast<int>(std::min(len, t_ + 1)), false};
    }

private:
    static Palette make_palette(std::size_t t) {
        Palette p;
        for (std::size_t i = 0; i <= t + 1; ++i) p.names.push_back(std::to_string(i));
        return p;
    }
    std::size_t t_;
};

class LastLetterRule final : public SchemeRule {
public:
    LastLetterRule(Word win, Alphabet alph, std::string label)
        : SchemeRule(make_palette(alph), std::move(label), std::move(win)),
          alph_(std::move(alph)) {
        prefix_partitioned_ = true;
        dead_ = static_cast<int>(alph_.size());
    }
    Classified classify(std::string_view u) const override {
        require_nonempty(u);
        if (!is_window_prefix(u)) return {*dead_, false};
        return {alph_.rank(u.back()), false};
    }
    Classified prefix_color(std::size_t len) const override {
        return {alph_.rank(win_[len - 1]), false};
    }

private:
    static Palette make_palette(const Alphabet& a) {
        Palette p;
        for (char c : a.letters()) p.names.push_back(std::string(1, c));
        p.names.push_back("_");  // the symbol outside the alphabet
        return p;
    }
    Alphabet alph_;
};

class Richness3Rule final : public SchemeRule {
public:
    Richness3Rule(std::shared_ptr<const FactorIndex> idx, std::string label)
        : SchemeRule(make_palette(idx->alphabet()), std::move(label),
                     Word(idx->text())),
          idx_(std::move(idx)) {
        prefix_partitioned_ = true;
        dead_ = 2;
        if (!sturmian_window_evidence(*idx_))
            throw NotSturmianError("richness3: window fails balance/aperiodicity evidence");
    }
    Classified classify(std::string_view u) const override {
        require_nonempty(u);
        if (!is_window_prefix(u)) return {2, false};
        return prefix_color(u.size());
    }
    Classified prefix_color(std::size_t len) const override {
        if (len > idx_->n_max()) return {2, true};  // advisory: beyond n_max
        char a = idx_->alphabet().letter(0);
        std::size_t ca = idx_->prefix_count(a, len);
        bool rich_a = ca > idx_->count_range(a, len).first;
        char b = idx_->alphabet().letter(1);
        bool rich_b = (len - ca) > idx_->count_range(b, len).first;
        if (rich_a == rich_b)
            throw NotSturmianError("richness3: tie inside a supposedly Sturmian window");
        return {rich_a ? 0 : 1, false};
    }

private:
    static Palette make_palette(const Alphabet& a) {
        Palette p;
        p.names.push_back(std::string(1, a.letter(0)));
        p.names.push_back(std::string(1, a.letter(1)));
        p.names.push_back("0");
        return p;
    }
    std::shared_ptr<const FactorIndex> idx_;
};

/// The derived-word lift. Colors, in palette order: "-1" (non-prefixes),
/// "0" (prefixes z with zu not a window factor), the lengths 1..|u|-1
/// (short prefixes), then the inner scheme's colors applied to sigma^{-1}(z).
class DerivedLiftRule final : public SchemeRule {
public:
    DerivedLiftRule(const InfiniteWord& x, Word u, std::size_t window,
                    ColoringScheme inner, std::string label)
        : SchemeRule(make_palette(u, inner), std::move(label), x.prefix(window)),
          u_(std::move(u)), inner_(std::move(inner)),
          derived_(derived_word(x, u_, window)) {
        prefix_partitioned_ = true;
        dead_ = 0;
        dpref_ = derived_.word.prefix(derived_.window_length);
        // rank_[p] = number of occurrence starts of u strictly before p
        rank_.assign(win_.size() + 1, 0);
        std::size_t c = 0, next = 0;
        const auto& occ = derived_.table.occurrence_starts();
        for (std::size_t p = 0; p <= win_.size(); ++p) {
            rank_[p] = c;
            if (next < occ.size() && occ[next] == p) {
                ++c;
                ++next;
            }
        }
        z_ = z_array(win_);
    }

    Classified classify(std::string_view u) const override {
        require_nonempty(u);
        if (!is_window_prefix(u)) return {0, false};
        return prefix_color(u.size());
    }

    Classified prefix_color(std::size_t len) const override {
        {
            std::lock_guard<std::mutex> lock(cache_mu_);
            auto it = cache_.find(len);
            if (it != cache_.end()) return it->second;
        }
        Classified c = prefix_color_uncached(len);
        std::lock_guard<std::mutex> lock(cache_mu_);
        cache_.emplace(len, c);
        return c;
    }

    const DerivedWord& derived() const { return derived_; }

private:
    Classified prefix_color_uncached(std::size_t len) const {
        if (len < u_.size()) return {length_color(len), false};
        bool advisory = len + u_.size() > win_.size() / 2;
        // boundary case: the word's own continuation at len starts with u,
        // so z . u is the prefix of length len + |u| and sigma^{-1}(z) is a
        // derived-word prefix
        if (len + u_.size() <= win_.size() &&
            win_.compare(len, u_.size(), u_) == 0) {
            std::size_t m = rank_[len];
            if (m == 0 || m > dpref_.size() || m > inner_.window())
                return {1, true};
            auto in = inner_.prefix_color_checked(m);
            return {inner_offset() + in.color, advisory || in.advisory};
        }
        if (!zu_in_window(len)) return {1, advisory};
        if (u_.size() > 1) return lifted_color_literal(len, advisory);
        // |u| = 1: occurrences cannot cross the z|u seam, so the blocks of
        // z . u are the word's own blocks plus one closed by the appended u
        std::size_t m = rank_[len];
        if (m == 0) return {1, true};
        std::size_t o_last = derived_.table.occurrence_starts()[m - 1];
        Word v = win_.substr(o_last, len - o_last);
        std::size_t d = derived_.table.index_of(v);
        if (d == 0 || m - 1 >= dpref_.size() || m > inner_.window())
            return {1, true};
        char dl = ReturnWordTable::letter_of(d);
        if (dl == dpref_[m - 1]) {
            // sigma^{-1}(z) is exactly the derived prefix of length m
            auto in = inner_.prefix_color_checked(m);
            return {inner_offset() + in.color, advisory || in.advisory};
        }
        // a non-prefix factor of the derived word
        Word s = dpref_.substr(0, m - 1);
        s.push_back(dl);
        auto in = inner_.classify_checked(s);
        return {inner_offset() + in.color, advisory || in.advisory};
    }

    /// For longer u the appended copy can complete occurrences that cross the
    /// seam, so sigma^{-1}(z) is parsed from the literal string z . u.
    Classified lifted_color_literal(std::size_t len, bool advisory) const {
        Word zu = win_.substr(0, len) + u_;
        std::vector<std::size_t> occ;
        for (std::size_t p = zu.find(u_); p != std::string::npos;
             p = zu.find(u_, p + 1))
            occ.push_back(p);
        if (occ.empty() || occ.front() != 0 || occ.back() != len)
            return {1, true};
        Word code;
        for (std::size_t j = 0; j + 1 < occ.size(); ++j) {
            Word v = zu.substr(occ[j], occ[j + 1] - occ[j]);
            std::size_t d = derived_.table.index_of(v);
            if (d == 0) return {1, true};
            code.push_back(ReturnWordTable::letter_of(d));
        }
        if (code.empty() || code.size() > inner_.window()) return {1, true};
        if (dpref_.compare(0, code.size(), code) == 0) {
            auto in = inner_.prefix_color_checked(code.size());
            return {inner_offset() + in.color, advisory || in.advisory};
        }
        auto in = inner_.classify_checked(code);
        return {inner_offset() + in.color, advisory || in.advisory};
    }

    int length_color(std::size_t len) const { return 2 + static_cast<int>(len) - 1; }
    int inner_offset() const { return 2 + static_cast<int>(u_.size()) - 1; }

    bool zu_in_window(std::size_t len) const {
        // does prefix(len) . u occur anywhere in the window?
        for (std::size_t i = 1; i + len + u_.size() <= win_.size(); ++i) {
            if (z_[i] < len) continue;
            if (win_.compare(i + len, u_.size(), u_) == 0) return true;
        }
        return false;
    }

    static Palette make_palette(const Word& u, const ColoringScheme& inner) {
        Palette p;
        p.names.push_back("-1");
        p.names.push_back("0");
        for (std::size_t l = 1; l < u.size(); ++l)
            p.names.push_back(std::to_string(l));
        for (const auto& n : inner.palette().names) {
            for (const auto& taken : p.names)
                if (n == taken)
                    throw std::invalid_argument(
                        "derived_lift: inner palette collides with {-1,0,...,|u|}: " + n);
            if (n == std::to_string(u.size()))
                throw std::invalid_argument(
                    "derived_lift: inner palette collides with {-1,0,...,|u|}: " + n);
            p.names.push_back(n);
        }
        return p;
    }

    Word u_;
    ColoringScheme inner_;
    DerivedWord derived_;
    Word dpref_;
    std::vector<std::size_t> rank_;
    std::vector<std::size_t> z_;
    mutable std::mutex cache_mu_;
    mutable std::map<std::size_t, Classified> cache_;
};

class PullbackRule final : public SchemeRule {
public:
    PullbackRule(Morphism h, Word s_win, ColoringScheme inner, std::string label)
        : SchemeRule(make_palette(inner), std::move(label), std::move(s_win)),
          h_(std::move(h)), inner_(std::move(inner)) {
        // mixed classes are possible: a non-prefix of s may map onto a prefix
        // of t, so the fast prefix DP is not valid here
        prefix_partitioned_ = false;
        // h(prefix of s) must be a prefix of the inner scheme's window
        Word img = h_(std::string_view(win_).substr(
            0, std::min<std::size_t>(win_.size(), 4096)));
        std::string_view t = inner_.window_text();
        if (img.size() > t.size() || t.compare(0, img.size(), img) != 0)
            throw std::invalid_argument(
                "pullback: h(s) does not agree with the inner scheme's word");
    }
    Classified classify(std::string_view u) const override {
        require_nonempty(u);
        Word img = h_(u);
        if (img.empty()) return {static_cast<int>(inner_.palette().size()), false};
        if (img.size() > inner_.window())
            return {static_cast<int>(inner_.palette().size()), true};  // advisory probe
        return inner_.classify_checked(img);
    }

private:
    static Palette make_palette(const ColoringScheme& inner) {
        Palette p;
        p.names = inner.palette().names;
        p.names.push_back("e");
        return p;
    }
    Morphism h_;
    ColoringScheme inner_;
};

class PrependTransferRule final : public SchemeRule {
public:
    // scheme on ax, built from a scheme c' on x
    PrependTransferRule(char a, Word ax_win, ColoringScheme inner, std::string label)
        : SchemeRule(make_palette(inner), std::move(label), std::move(ax_win)),
          a_(a), inner_(std::move(inner)) {
        prefix_partitioned_ = true;
        dead_ = static_cast<int>(inner_.palette().size()) + 1;  // the diamond
    }
    Classified classify(std::string_view u) const override {
        require_nonempty(u);
        if (!is_window_prefix(u)) return {*dead_, false};
        return prefix_color(u.size());
    }
    Classified prefix_color(std::size_t len) const override {
        int star = static_cast<int>(inner_.palette().size());
        // probe: u a as a factor of the ax window
        Word ua(win_.substr(0, len));
        ua.push_back(a_);
        bool advisory = len + 1 > win_.size() / 2;
        if (win_.find(ua) == std::string::npos) return {star, advisory};
        Word shifted(win_.substr(1, len - 1));  // a^{-1} u a, u starts with a
        shifted.push_back(a_);
        if (shifted.empty())
            throw std::logic_error("prepend_transfer: empty shifted word");
        auto in = inner_.classify_checked(shifted);
        return {in.color, advisory || in.advisory};
    }

private:
    static Palette make_palette(const ColoringScheme& inner) {
        Palette p;
        p.names = inner.palette().names;
        p.names.push_back("*");
        p.names.push_back("<>");
        return p;
    }
    char a_;
    ColoringScheme inner_;
};

class StripTransferRule final : public SchemeRule {
public:
    // scheme on x from one scheme per letter a on ax
    StripTransferRule(Word x_win, std::map<char, ColoringScheme> per_letter,
                      Alphabet alph, std::string label)
        : SchemeRule(make_palette(per_letter, alph), std::move(label), std::move(x_win)),
          per_letter_(std::move(per_letter)), alph_(std::move(alph)) {
        prefix_partitioned_ = true;
        dead_ = static_cast<int>(palette_.size()) - 1;  // the star
        int off = 0;
        for (char a : alph_.letters()) {
            offset_[a] = off;
            off += static_cast<int>(per_letter_.at(a).palette().size());
        }
    }
    Classified classify(std::string_view u) const override {
        require_nonempty(u);
        if (!is_window_prefix(u)) return {*dead_, false};
        return prefix_color(u.size());
    }
    Classified prefix_color(std::size_t len) const override {
        char a = win_[len - 1];
        const ColoringScheme& ca = per_letter_.at(a);
        Word w(1, a);
        w += win_.substr(0, len - 1);  // a u a^{-1}
        auto in = ca.classify_checked(w);
        return {offset_.at(a) + in.color, in.advisory};
    }

private:
    static Palette make_palette(const std::map<char, ColoringScheme>& per_letter,
                                const Alphabet& alph) {
        Palette p;
        for (char a : alph.letters()) {
            auto it = per_letter.find(a);
            if (it == per_letter.end())
                throw std::invalid_argument(
                    std::string("strip_transfer: no scheme for letter ") + a);
            for (const auto& n : it->second.palette().names)
                p.names.push_back("(" + std::string(1, a) + "," + n + ")");
        }
        p.names.push_back("*");
        return p;
    }
    std::map<char, ColoringScheme> per_letter_;
    Alphabet alph_;
    std::map<char, int> offset_;
};

class Frequency4Rule final : public SchemeRule {
public:
    Frequency4Rule(Word win, char letter, std::size_t block_bound,
                   FrequencyComparator cmp, std::string label)
        : SchemeRule(Palette{{"0", "1", "2", "3"}}, std::move(label), std::move(win)),
          letter_(letter), bound_(block_bound), cmp_(std::move(cmp)) {
        prefix_partitioned_ = true;
        dead_ = 0;
        counts_.assign(win_.size() + 1, 0);
        for (std::size_t i = 0; i < win_.size(); ++i)
            counts_[i + 1] = counts_[i] + (win_[i] == letter_ ? 1 : 0);
    }
    Classified classify(std::string_view u) const override {
        require_nonempty(u);
        if (!is_window_prefix(u)) return {0, false};
        return prefix_color(u.size());
    }
    Classified prefix_color(std::size_t len) const override {
        if (len >= bound_) return {3, false};
        long long c = static_cast<long long>(counts_[len]);
        FrequencyOrder ord = cmp_.compare(c, static_cast<long long>(len));
        return {ord == FrequencyOrder::above ? 1 : 2, false};
    }

private:
    char letter_;
    std::size_t bound_;
    FrequencyComparator cmp_;
    std::vector<std::size_t> counts_;
};

class FunctionRule final : public SchemeRule {
public:
    FunctionRule(Word win, Palette palette,
                 std::function<int(std::string_view)> fn, std::string label)
        : SchemeRule(std::move(palette), std::move(label), std::move(win)),
          fn_(std::move(fn)) {}
    Classified classify(std::string_view u) const override {
        require_nonempty(u);
        return {fn_(u), false};
    }

private:
    std::function<int(std::string_view)> fn_;
};

}  // namespace detail

/// The two-color prefix test: 1 on prefixes, 0 elsewhere.
inline ColoringScheme prefix2(const InfiniteWord& x, std::size_t window) {
    return ColoringScheme(std::make_shared<detail::Prefix2Rule>(
        x.prefix(window), "prefix2"));
}

/// Prefixes colored by length up to t, t+1 beyond, 0 elsewhere.
inline ColoringScheme threshold(const InfiniteWord& x, std::size_t window,
                                std::size_t t) {
    return ColoringScheme(std::make_shared<detail::ThresholdRule>(
        x.prefix(window), t, "threshold:t=" + std::to_string(t)));
}

/// Prefixes colored by their last letter, one extra color for
/// everything else.
inline ColoringScheme last_letter(const InfiniteWord& x, std::size_t window) {
    return ColoringScheme(std::make_shared<detail::LastLetterRule>(
        x.prefix(window), x.alphabet(), "lastletter"));
}

/// Prefixes colored by the letter they are rich in, non-prefixes by 0.
inline ColoringScheme richness3(const InfiniteWord& x,
                                std::shared_ptr<const FactorIndex> idx) {
    if (idx->word_label() != x.label())
        throw std::invalid_argument("richness3: index built over a different word");
    return ColoringScheme(std::make_shared<detail::Richness3Rule>(
        std::move(idx), "rich3"));
}

inline ColoringScheme richness3(const InfiniteWord& x, std::size_t window) {
    return richness3(x, std::make_shared<FactorIndex>(x, window));
}

/// The four-case coloring that lifts a scheme on D_u(x) back to x.
inline ColoringScheme derived_lift(const InfiniteWord& x, const Word& u,
                                   std::size_t window, const ColoringScheme& inner) {
    return ColoringScheme(std::make_shared<detail::DerivedLiftRule>(
        x, u, window, inner, "lift:u=" + u + ";inner=" + inner.label()));
}

/// Color U by the inner scheme's color of h(U), with a fresh color
/// e for erased factors.
inline ColoringScheme pullback(const Morphism& h, const InfiniteWord& s,
                               std::size_t window, const ColoringScheme& inner_on_t) {
    return ColoringScheme(std::make_shared<detail::PullbackRule>(
        h, s.prefix(window), inner_on_t,
        "pullback:h=" + h.rules_string() + ";inner=" + inner_on_t.label()));
}

/// Forward letter transfer: a scheme on ax from a scheme on x.
inline ColoringScheme prepend_transfer(char a, const InfiniteWord& x,
                                       std::size_t window,
                                       const ColoringScheme& scheme_for_x) {
    InfiniteWord ax = prepend(a, x);
    return ColoringScheme(std::make_shared<detail::PrependTransferRule>(
        a, ax.prefix(window), scheme_for_x,
        "prepend_transfer:" + std::string(1, a) + ";inner=" + scheme_for_x.label()));
}

/// Reverse letter transfer: a scheme on x from one scheme per letter a on ax.
inline ColoringScheme strip_transfer(const InfiniteWord& x, std::size_t window,
                                     const std::map<char, ColoringScheme>& schemes_for_ax) {
    return ColoringScheme(std::make_shared<detail::StripTransferRule>(
        x.prefix(window), schemes_for_ax, x.alphabet(), "strip_transfer"));
}

/// Frequency split: non-prefixes 0; short prefixes 1 or 2 by comparing their letter
/// ratio against f'_a; long prefixes 3.
inline ColoringScheme frequency4(const InfiniteWord& x, std::size_t window,
                                 char letter, std::size_t block_bound,
                                 const FrequencyComparator& fprime) {
    return ColoringScheme(std::make_shared<detail::Frequency4Rule>(
        x.prefix(window), letter, block_bound, fprime,
        "freq4:a=" + std::string(1, letter) + ";M=" + std::to_string(block_bound)));
}

/// Arbitrary classification rule over the window; no fast-DP guarantees.
inline ColoringScheme function_scheme(const InfiniteWord& x, std::size_t window,
                                      Palette palette,
                                      std::function<int(std::string_view)> fn,
                                      std::string label = "custom") {
    return ColoringScheme(std::make_shared<detail::FunctionRule>(
        x.prefix(window), std::move(palette), std::move(fn), std::move(label)));
}

/// Follow the S-iteration to the last infinite word
/// before Z, color it with prefix2 (renamed W/B), and lift back through each
/// derived-word step. Throws NotApplicableError when Z is not reached on the
/// window (the word may simply be uniformly recurrent).
inline ColoringScheme nonuniform_pipeline(const InfiniteWord& x, std::size_t window,
                                          std::size_t gap_bound,
                                          std::size_t max_steps = 8) {
    auto chain = s_iterate(x, window, gap_bound, max_steps);
    if (chain.empty() || !chain.back().is_z)
        throw NotApplicableError(
            "pipeline: S-iteration did not reach Z within the window");
    std::size_t n = chain.size();
    // words x_0 = x, x_1 = D(x_0), ..., x_{n-1}; S(x_{n-1}) = Z
    std::vector<InfiniteWord> words{x};
    std::vector<std::size_t> windows{window};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        words.push_back(chain[i].derived->word);
        windows.push_back(chain[i].derived->window_length);
    }
    ColoringScheme scheme =
        prefix2(words.back(), windows.back()).renamed({"B", "W"});
    for (std::size_t i = n - 1; i-- > 0;) {
        Word u(1, words[i].at(0));
        // keep palettes disjoint from the lift's {-1, 0, ..., |u|}
        std::vector<std::string> names = scheme.palette().names;
        bool changed = false;
        for (auto& nm : names) {
            bool clash = nm == "-1" || nm == "0" || nm == std::to_string(u.size());
            for (std::size_t l = 1; l < u.size(); ++l)
                clash = clash || nm == std::to_string(l);
            if (clash) {
                nm += "'";
                changed = true;
            }
        }
        if (changed) scheme = scheme.renamed(names);
        scheme = derived_lift(words[i], u, windows[i], scheme);
    }
    return scheme;
}

}  // namespace wordcolor
