#pragma once

// The exact word-spec and coloring-spec grammars used by the CLI and report
// files:
//
//   word     := base ("|" modifier)*
//   base     := "fix:<rules>@<seed>" | "sturmian:[pre=[..];]per=[..]"
//             | "epi:[pre=..;]per=.." | "pf" | "luca" | "ultper:v=<w>;u=<w>"
//   modifier := "suffix:<k>" | "prepend:<a>" | "splice:<v>"
//   rules    := a->img(;b->img)*
//
//   coloring := "prefix2" | "threshold:t=<int>" | "lastletter" | "rich3"
//             | "lift:u=<w>;inner=<spec>" | "pullback:h=<rules>;inner=<spec>"
//             | "freq4:a=<letter>;M=<int>" | "pipeline:gap=<int>"
//
// Handles carry their canonical spec string as the provenance label, so
// emitting a config and re-parsing it reproduces the same behavior.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wordcolor/analysis.hpp"
#include "wordcolor/coloring.hpp"
#include "wordcolor/core.hpp"
#include "wordcolor/frequency.hpp"
#include "wordcolor/infinite_word.hpp"

namespace wordcolor {

namespace detail {

inline long parse_int(std::string_view s, std::size_t at) {
    if (s.empty()) throw ParseError("expected an integer", at);
    long v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw ParseError("expected an integer", at);
        v = v * 10 + (c - '0');
        if (v > 1000000000L) throw ParseError("integer too large", at);
    }
    return v;
}

inline std::vector<long> parse_int_list(std::string_view s, std::size_t at) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("expected [..] list", at);
    std::vector<long> out;
    std::string_view body = s.substr(1, s.size() - 2);
    if (body.empty()) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = body.find(',', start);
        std::string_view item = body.substr(
            start, comma == std::string_view::npos ? std::string_view::npos
                                                   : comma - start);
        out.push_back(parse_int(item, at + 1 + start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace detail

/// "a->ab;b->a"
inline Morphism parse_morphism_rules(std::string_view rules, std::size_t at = 0) {
    std::map<char, Word> images;
    std::string src, tgt;
    std::size_t start = 0;
    while (start <= rules.size()) {
        std::size_t semi = rules.find(';', start);
        std::string_view rule = rules.substr(
            start, semi == std::string_view::npos ? std::string_view::npos
                                                  : semi - start);
        if (rule.size() < 3 || rule.substr(1, 2) != "->")
            throw ParseError("expected letter->image", at + start);
        char c = rule[0];
        if (images.count(c)) throw ParseError("duplicate rule", at + start);
        Word img(rule.substr(3));
        images[c] = img;
        src.push_back(c);
        for (char t : img)
            if (tgt.find(t) == std::string::npos) tgt.push_back(t);
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    if (images.empty()) throw ParseError("empty rule list", at);
    for (char c : src)
        if (tgt.find(c) == std::string::npos) tgt.push_back(c);
    return Morphism(Alphabet(src), Alphabet(tgt), images);
}

inline InfiniteWord parse_word_spec(std::string_view spec) {
    if (spec.empty()) throw ParseError("empty word spec", 0);
    // split off modifiers
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t bar = spec.find('|', start);
        parts.push_back(spec.substr(
            start, bar == std::string_view::npos ? std::string_view::npos
                                                 : bar - start));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }

    std::string_view base = parts[0];
    InfiniteWord word = [&]() -> InfiniteWord {
        if (base == "pf") return paperfolding();
        if (base == "luca") return luca_word();
        if (base.rfind("fix:", 0) == 0) {
            std::string_view body = base.substr(4);
            std::size_t atpos = body.rfind('@');
            if (atpos == std::string_view::npos || atpos + 2 != body.size())
                throw ParseError("fix: expected @<seed letter>", 4);
            Morphism m = parse_morphism_rules(body.substr(0, atpos), 4);
            return fixed_point(m, body[atpos + 1]);
        }
        if (base.rfind("sturmian:", 0) == 0) {
            std::string_view body = base.substr(9);
            IntDirective d;
            std::size_t pos = 0;
            if (body.rfind("pre=", 0) == 0) {
                std::size_t semi = body.find(';');
                if (semi == std::string_view::npos)
                    throw ParseError("sturmian: expected per=[..] after pre", 9);
                d.pre = detail::parse_int_list(body.substr(4, semi - 4), 13);
                pos = semi + 1;
            }
            std::string_view rest = body.substr(pos);
            if (rest.rfind("per=", 0) != 0)
                throw ParseError("sturmian: expected per=[..]", 9 + pos);
            d.per = detail::parse_int_list(rest.substr(4), 9 + pos + 4);
            d.validate();
            return standard_sturmian(d);
        }
        if (base.rfind("epi:", 0) == 0) {
            std::string_view body = base.substr(4);
            LetterDirective d;
            std::size_t pos = 0;
            if (body.rfind("pre=", 0) == 0) {
                std::size_t semi = body.find(';');
                if (semi == std::string_view::npos)
                    throw ParseError("epi: expected per=.. after pre", 4);
                d.pre = Word(body.substr(4, semi - 4));
                pos = semi + 1;
            }
            std::string_view rest = body.substr(pos);
            if (rest.rfind("per=", 0) != 0)
                throw ParseError("epi: expected per=..", 4 + pos);
            d.per = Word(rest.substr(4));
            d.validate();
            return episturmian_standard(d);
        }
        if (base.rfind("ultper:", 0) == 0) {
            std::string_view body = base.substr(7);
            if (body.rfind("v=", 0) != 0)
                throw ParseError("ultper: expected v=<w>;u=<w>", 7);
            std::size_t semi = body.find(";u=");
            if (semi == std::string_view::npos)
                throw ParseError("ultper: expected ;u=<w>", 7);
            Word v(body.substr(2, semi - 2));
            Word u(body.substr(semi + 3));
            if (u.empty()) throw ParseError("ultper: empty period", 7 + semi + 3);
            return eventually_periodic(v, u);
        }
        throw ParseError("unknown word spec '" + std::string(base) + "'", 0);
    }();

    std::size_t offset = base.size();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        std::string_view mod = parts[i];
        if (mod.rfind("suffix:", 0) == 0) {
            word = suffix(word, static_cast<std::size_t>(
                                    detail::parse_int(mod.substr(7), offset + 8)));
        } else if (mod.rfind("prepend:", 0) == 0) {
            if (mod.size() != 9)
                throw ParseError("prepend: expected a single letter", offset + 9);
            word = prepend(mod[8], word);
        } else if (mod.rfind("splice:", 0) == 0) {
            word = splice(Word(mod.substr(7)), word);
        } else {
            throw ParseError("unknown modifier '" + std::string(mod) + "'",
                             offset + 1);
        }
        offset += 1 + mod.size();
    }
    return word;
}

namespace detail {

/// Rename any inner color that collides with the lift's reserved names
/// {-1, 0, 1, .., |u|}; prefix2 inners get the W/B names.
inline ColoringScheme lift_safe_inner(const ColoringScheme& inner, const Word& u) {
    if (inner.label() == "prefix2") return inner.renamed({"B", "W"});
    std::vector<std::string> reserved = {"-1", "0"};
    for (std::size_t l = 1; l <= u.size(); ++l)
        reserved.push_back(std::to_string(l));
    std::vector<std::string> names = inner.palette().names;
    bool changed = false;
    for (auto& nm : names) {
        bool clash = true;
        while (clash) {
            clash = false;
            for (const auto& r : reserved)
                if (nm == r) {
                    nm += "'";
                    clash = true;
                    changed = true;
                }
        }
    }
    return changed ? inner.renamed(names) : inner;
}

}  // namespace detail

/// Builds the coloring a spec names, over the given word and window.
inline ColoringScheme parse_coloring_spec(std::string_view spec,
                                          const InfiniteWord& x,
                                          std::size_t window) {
    if (spec == "prefix2") return prefix2(x, window);
    if (spec == "lastletter") return last_letter(x, window);
    if (spec == "rich3") return richness3(x, window);
    if (spec.rfind("threshold:t=", 0) == 0)
        return threshold(x, window, static_cast<std::size_t>(
                                        detail::parse_int(spec.substr(12), 12)));
    if (spec.rfind("pipeline:gap=", 0) == 0)
        return nonuniform_pipeline(x, window, static_cast<std::size_t>(
                                                  detail::parse_int(spec.substr(13), 13)));
    if (spec.rfind("lift:u=", 0) == 0) {
        std::string_view body = spec.substr(7);
        std::size_t semi = body.find(";inner=");
        if (semi == std::string_view::npos)
            throw ParseError("lift: expected ;inner=<spec>", 7);
        Word u(body.substr(0, semi));
        std::string_view inner_spec = body.substr(semi + 7);
        DerivedWord d = derived_word(x, u, window);
        ColoringScheme inner =
            parse_coloring_spec(inner_spec, d.word, d.window_length);
        return derived_lift(x, u, window, detail::lift_safe_inner(inner, u));
    }
    if (spec.rfind("pullback:h=", 0) == 0) {
        std::string_view body = spec.substr(11);
        std::size_t semi = body.find(";inner=");
        if (semi == std::string_view::npos)
            throw ParseError("pullback: expected ;inner=<spec>", 11);
        Morphism h = parse_morphism_rules(body.substr(0, semi), 11);
        std::string_view inner_spec = body.substr(semi + 7);
        InfiniteWord t = morphic_image(h, x);
        std::size_t t_window = h(x.prefix(window)).size();
        if (t_window < 4)
            throw std::invalid_argument("pullback: image window too small");
        ColoringScheme inner = parse_coloring_spec(inner_spec, t, t_window);
        return pullback(h, x, window, inner);
    }
    if (spec.rfind("freq4:a=", 0) == 0) {
        std::string_view body = spec.substr(8);
        if (body.size() < 1) throw ParseError("freq4: expected a letter", 8);
        char letter = body[0];
        if (body.substr(1).rfind(";M=", 0) != 0)
            throw ParseError("freq4: expected ;M=<int>", 9);
        std::size_t block_bound = static_cast<std::size_t>(
            detail::parse_int(body.substr(4), 12));
        auto cmp = FrequencyComparator::from_word(x, letter);
        if (!cmp) {
            // no exact oracle: honest interval from the window's tail ratios;
            // rationals inside it raise PrecisionError at classification time
            auto est = letter_frequency(x, letter, window);
            Rational lo{0, 1}, hi{1, 1};
            bool first = true;
            for (auto& [len, count] : est.samples) {
                if (len * 2 < window) continue;
                Rational r{static_cast<long long>(count), static_cast<long long>(len)};
                if (first) {
                    lo = hi = r;
                    first = false;
                    continue;
                }
                if (static_cast<double>(r.num) * lo.den <
                    static_cast<double>(lo.num) * r.den)
                    lo = r;
                if (static_cast<double>(r.num) * hi.den >
                    static_cast<double>(hi.num) * r.den)
                    hi = r;
            }
            cmp = FrequencyComparator::empirical(lo, hi);
        }
        return frequency4(x, window, letter, block_bound, *cmp);
    }
    throw ParseError("unknown coloring spec '" + std::string(spec) + "'", 0);
}

}  // namespace wordcolor
