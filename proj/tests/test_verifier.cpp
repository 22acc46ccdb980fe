#include "doctest.h"

#include <map>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "wordcolor/coloring.hpp"
#include "wordcolor/infinite_word.hpp"
#include "wordcolor/verifier.hpp"

using namespace wordcolor;

namespace {

InfiniteWord fibonacci() {
    return fixed_point(Morphism{{'a', "ab"}, {'b', "a"}}, 'a');
}

InfiniteWord thue_morse() {
    return fixed_point(Morphism{{'a', "ab"}, {'b', "ba"}}, 'a');
}

InfiniteWord square_free_ternary() {
    // Thue's square-free ternary word
    return fixed_point(Morphism{{'0', "012"}, {'1', "02"}, {'2', "1"}}, '0');
}

/// Exhaustive oracle: memoized DFS over all factorizations into blocks of one
/// color, classifying every block by string. Independent of the z-array DP.
std::set<std::size_t> dfs_reachable(const Word& w, const ColoringScheme& scheme,
                                    int color, std::size_t max_block) {
    std::set<std::size_t> reach{0};
    std::vector<char> state(w.size() + 1, 0);
    state[0] = 1;
    for (std::size_t i = 0; i <= w.size(); ++i) {
        if (!state[i]) continue;
        for (std::size_t l = 1; l <= max_block && i + l <= w.size(); ++l) {
            if (state[i + l]) continue;
            if (scheme.classify(std::string_view(w).substr(i, l)) == color) {
                state[i + l] = 1;
                reach.insert(i + l);
            }
        }
    }
    return reach;
}

}  // namespace

TEST_SUITE("verifier") {

TEST_CASE("prefix2 on Fibonacci: color 1 grows with a witness over {a, ab}") {
    InfiniteWord fib = fibonacci();
    const std::size_t n = 10000;
    ColoringScheme scheme = prefix2(fib, n);
    auto res = mono_reachable(fib, n, scheme, 1);
    CHECK(res.verdict == Verdict::growing);
    CHECK(res.frontier > 3 * n / 4);
    auto witness = res.witness(res.frontier);
    REQUIRE(witness.has_value());
    CHECK(witness->verify(scheme));
    std::set<Word> blocks;
    for (auto& b : witness->blocks) blocks.insert(b.word);
    CHECK(blocks == std::set<Word>{"a", "ab"});
}

TEST_CASE("a color assigned to nothing reachable is trivially saturated") {
    InfiniteWord fib = fibonacci();
    ColoringScheme scheme = last_letter(fib, 1000);
    // the bottom color never attaches to a prefix, so no chain can start
    int bottom = scheme.palette().index_of("_");
    REQUIRE(bottom >= 0);
    auto res = mono_reachable(fib, 1000, scheme, bottom);
    CHECK(res.verdict == Verdict::saturated);
    CHECK(res.frontier == 0);
    CHECK(res.reachable_positions() == std::vector<std::size_t>{0});
}

TEST_CASE("prefix2 saturates on the square-free ternary word") {
    InfiniteWord sq = square_free_ternary();
    const std::size_t n = 8000;
    ColoringScheme scheme = prefix2(sq, n);
    auto res = mono_reachable(sq, n, scheme, 1);
    CHECK(res.verdict == Verdict::saturated);
    // independent DFS to past the frontier confirms the frontier exactly
    Word w = sq.prefix(std::min<std::size_t>(n, res.frontier * 2 + 64));
    auto oracle = dfs_reachable(w, scheme, 1, n / 8);
    CHECK(*oracle.rbegin() == res.frontier);
}

TEST_CASE("DP equals exhaustive DFS at small scale for the built-in schemes") {
    std::vector<InfiniteWord> words{
        fibonacci(),          thue_morse(),           luca_word(),
        paperfolding(),       square_free_ternary(),  eventually_periodic("", "ab"),
        eventually_periodic("", "a"),                 standard_sturmian({{2}, {1}}),
    };
    for (auto& x : words) {
        const std::size_t n = 60;
        const std::size_t max_block = 60;
        std::vector<ColoringScheme> schemes;
        schemes.push_back(prefix2(x, 4 * n));
        schemes.push_back(threshold(x, 4 * n, 2));
        schemes.push_back(last_letter(x, 4 * n));
        Word w = x.prefix(n);
        for (auto& scheme : schemes) {
            for (std::size_t c = 0; c < scheme.palette().size(); ++c) {
                auto res = mono_reachable(x, n, scheme, static_cast<int>(c), max_block);
                auto oracle = dfs_reachable(w, scheme, static_cast<int>(c), max_block);
                auto got = res.reachable_positions();
                CHECK(std::set<std::size_t>(got.begin(), got.end()) == oracle);
            }
        }
    }
}

TEST_CASE("DP equals DFS for richness and lift schemes at small scale") {
    {
        InfiniteWord fib = fibonacci();
        ColoringScheme scheme = richness3(fib, 2000);
        Word w = fib.prefix(60);
        for (int c = 0; c < 3; ++c) {
            auto res = mono_reachable(fib, 60, scheme, c, 60);
            auto oracle = dfs_reachable(w, scheme, c, 60);
            auto got = res.reachable_positions();
            CHECK(std::set<std::size_t>(got.begin(), got.end()) == oracle);
        }
    }
    {
        InfiniteWord L = luca_word();
        ColoringScheme scheme = nonuniform_pipeline(L, 4000, 8);
        Word w = L.prefix(60);
        for (std::size_t c = 0; c < scheme.palette().size(); ++c) {
            auto res = mono_reachable(L, 60, scheme, static_cast<int>(c), 60);
            auto oracle = dfs_reachable(w, scheme, static_cast<int>(c), 60);
            auto got = res.reachable_positions();
            CHECK(std::set<std::size_t>(got.begin(), got.end()) == oracle);
        }
    }
}

TEST_CASE("reachable sets are monotone in window and block bound") {
    InfiniteWord fib = fibonacci();
    ColoringScheme scheme = prefix2(fib, 4000);
    auto small = mono_reachable(fib, 1000, scheme, 1, 50);
    auto big_window = mono_reachable(fib, 2000, scheme, 1, 50);
    auto big_blocks = mono_reachable(fib, 1000, scheme, 1, 120);
    for (std::size_t p : small.reachable_positions()) {
        CHECK(big_window.is_reachable(p));
        CHECK(big_blocks.is_reachable(p));
    }
}

TEST_CASE("saturated verdicts are stable under window doubling") {
    InfiniteWord words[] = {square_free_ternary(), paperfolding()};
    for (auto& x : words) {
        auto r1 = prefixal_search(x, 4000);
        auto r2 = prefixal_search(x, 8000);
        CHECK(r1.verdict == Verdict::saturated);
        CHECK(r2.verdict == Verdict::saturated);
        // with the block cap held fixed the frontier itself is stable
        auto f1 = prefixal_search(x, 4000, 500);
        auto f2 = prefixal_search(x, 8000, 500);
        CHECK(f1.frontier == f2.frontier);
        CHECK(f1.verdict == Verdict::saturated);
        CHECK(f2.verdict == Verdict::saturated);
    }
}

TEST_CASE("mono_verdict on richness3(fib): ALL-SATURATED") {
    InfiniteWord fib = fibonacci();
    auto verdict = mono_verdict(fib, 10000, richness3(fib, 10000));
    CHECK(verdict.all_saturated);
    CHECK(verdict.per_color.size() == 3);
}

TEST_CASE("mono_verdict on the lifted Luca scheme: ALL-SATURATED") {
    InfiniteWord L = luca_word();
    auto scheme = nonuniform_pipeline(L, 10000, 8);
    auto verdict = mono_verdict(L, 10000, scheme);
    CHECK(verdict.all_saturated);
}

TEST_CASE("threshold saturates on a non-recurrent word") {
    // prefixes of length >= 7 of baabaa+fib start with baabaaa, which never
    // reoccurs, so long-prefix chains stop after one block
    InfiniteWord s = splice("baabaa", standard_sturmian({{}, {1}}));
    const std::size_t n = 20000;
    auto verdict = mono_verdict(s, n, threshold(s, n, 6));
    CHECK(verdict.all_saturated);
    CHECK(verdict.per_color.size() == 8);  // t + 2
}

TEST_CASE("frequency4 saturates on the golden-ratio example") {
    InfiniteWord s = splice("baabaa", standard_sturmian({{}, {1}}));
    const std::size_t n = 100000;
    auto cmp = FrequencyComparator::from_word(s, 'a');
    REQUIRE(cmp.has_value());
    auto verdict = mono_verdict(s, n, frequency4(s, n, 'a', 7, *cmp));
    CHECK(verdict.all_saturated);
}

TEST_CASE("advisory probes inside the DP flag the result PARTIAL") {
    InfiniteWord fib = fibonacci();
    ColoringScheme scheme = richness3(fib, 1000);
    // blocks past n_max = 500 force advisory richness colors
    auto res = mono_reachable(fib, 1000, scheme, 0, 600);
    CHECK(res.partial);
    auto clean = mono_reachable(fib, 1000, scheme, 0, 100);
    CHECK_FALSE(clean.partial);
}

TEST_CASE("last_letter saturates on the overlap-free Thue-Morse word") {
    InfiniteWord tm = thue_morse();
    const std::size_t n = 30000;
    auto verdict = mono_verdict(tm, n, last_letter(tm, n));
    CHECK(verdict.all_saturated);
}

TEST_CASE("strip of prepend transfers: chains embed into the base scheme's") {
    InfiniteWord fib = fibonacci();
    const std::size_t n = 10000;
    ColoringScheme base = prefix2(fib, n);
    std::map<char, ColoringScheme> per_letter{
        {'a', prepend_transfer('a', fib, n, base)},
        {'b', prepend_transfer('b', fib, n, base)},
    };
    ColoringScheme composite = strip_transfer(fib, n, per_letter);
    auto base_res = mono_reachable(fib, n, base, 1);
    bool all_saturated = true;
    for (std::size_t c = 0; c + 1 < composite.palette().size(); ++c) {
        auto res = mono_reachable(fib, n, composite, static_cast<int>(c));
        // composite blocks are prefixes, so every chain is also a base chain
        for (std::size_t p : res.reachable_positions())
            CHECK(base_res.is_reachable(p));
        all_saturated = all_saturated && res.verdict == Verdict::saturated;
        if (res.frontier > 0) {
            auto wit = res.witness(res.frontier);
            REQUIRE(wit.has_value());
            for (auto& b : wit->blocks) CHECK(base.classify(b.word) == 1);
        }
    }
    // plain prefix2 cannot stop the Fibonacci word, but the composite pins
    // every block to one final letter, and on a standard word the last letter
    // of a prefix is the letter it is rich in: those chains all die
    CHECK(base_res.verdict == Verdict::growing);
    CHECK(all_saturated);
}

TEST_CASE("periodic words escape: last_letter on a^omega grows") {
    InfiniteWord x = eventually_periodic("", "a");
    ColoringScheme scheme = last_letter(x, 2000);
    auto verdict = mono_verdict(x, 2000, scheme);
    CHECK_FALSE(verdict.all_saturated);
    auto res = mono_reachable(x, 2000, scheme, scheme.palette().index_of("a"));
    CHECK(res.verdict == Verdict::growing);
}

TEST_CASE("prefixal search: Fibonacci factors into {a, ab}") {
    auto out = prefixal_search(fibonacci(), 10000);
    CHECK(out.verdict == Verdict::growing);
    CHECK(out.unbordered_count <= 3);
    CHECK(out.border_consistent);
    REQUIRE(out.witness.has_value());
    std::set<Word> blocks;
    for (auto& b : out.witness->blocks) blocks.insert(b.word);
    CHECK(blocks == std::set<Word>{"a", "ab"});
}

TEST_CASE("prefixal search: paperfolding and D_a(L) saturate") {
    auto pf = prefixal_search(paperfolding(), 1 << 14);
    CHECK(pf.verdict == Verdict::saturated);
    CHECK(pf.unbordered_count >= 10);
    CHECK(pf.border_consistent);

    DerivedWord d = derived_word(luca_word(), "a", 40000);
    auto dl = prefixal_search(d.word, d.window_length);
    CHECK(dl.verdict == Verdict::saturated);
    CHECK(dl.unbordered_count >= 10);
    CHECK(dl.border_consistent);
}

TEST_CASE("equally rich search on Fibonacci saturates for both letters") {
    auto by_letter = equally_rich_search(fibonacci(), 10000);
    REQUIRE(by_letter.size() == 2);
    CHECK(by_letter.at('a').verdict == Verdict::saturated);
    CHECK(by_letter.at('b').verdict == Verdict::saturated);
    CHECK(by_letter.at('a').frontier < 5000);  // chains die early
    CHECK_THROWS_AS(equally_rich_search(thue_morse(), 4000), NotSturmianError);
}

TEST_CASE("ramsey witness on ab^omega with the introduction's coloring") {
    InfiniteWord x = eventually_periodic("a", "b");
    // c(u) = a if u in ab*, b if u in b+
    Palette pal{{"a", "b"}};
    ColoringScheme scheme = function_scheme(
        x, 2000, pal,
        [](std::string_view u) { return u[0] == 'a' ? 0 : 1; }, "intro");
    auto rw = ramsey_witness(x, 200, scheme, 5);
    REQUIRE(rw.has_value());
    CHECK(rw->color == 1);
    CHECK(rw->suffix_start == 1);  // the suffix b^omega (position 2, 1-based)
    for (auto& b : rw->blocks) CHECK(b == "b");
}

TEST_CASE("ramsey witness on a constant scheme chains unit blocks") {
    InfiniteWord x = fibonacci();
    Palette pal{{"only"}};
    ColoringScheme scheme =
        function_scheme(x, 500, pal, [](std::string_view) { return 0; }, "const");
    auto rw = ramsey_witness(x, 100, scheme, 8);
    REQUIRE(rw.has_value());
    CHECK(rw->suffix_start == 0);
    CHECK(rw->blocks.size() == 8);
    for (auto& b : rw->blocks) CHECK(b.size() == 1);
}

TEST_CASE("ramsey witness on prefix2(fib): non-prefix blocks recur densely") {
    InfiniteWord fib = fibonacci();
    ColoringScheme scheme = prefix2(fib, 20000);
    auto rw = ramsey_witness(fib, 20000, scheme, 8);
    REQUIRE(rw.has_value());
    CHECK(rw->color == 0);
    CHECK(rw->blocks.size() == 8);
    Word w = fib.prefix(20000);
    std::size_t pos = rw->suffix_start;
    for (auto& b : rw->blocks) {
        CHECK(scheme.classify(b) == rw->color);
        CHECK(w.compare(pos, b.size(), b) == 0);
        pos += b.size();
    }
}

TEST_CASE("block bound check: Fibonacci {a, ab} witness sandwich") {
    InfiniteWord fib = fibonacci();
    const std::size_t n = 10000;
    auto out = prefixal_search(fib, n);
    REQUIRE(out.witness.has_value());
    std::vector<Word> blocks;
    for (auto& b : out.witness->blocks) blocks.push_back(b.word);
    auto rep = block_bound_check(blocks, fib, n, 2);
    CHECK(rep.holds);
    for (auto& ls : rep.letters) {
        if (ls.letter != 'a') continue;
        CHECK(ls.min_block_ratio == doctest::Approx(0.5));   // block ab
        CHECK(ls.max_block_ratio == doctest::Approx(1.0));   // block a
        CHECK(ls.liminf_estimate > 0.5);
        CHECK(ls.limsup_estimate < 1.0);
    }
}

TEST_CASE("block bound check: single block type and random segmentation") {
    InfiniteWord abab = eventually_periodic("", "ab");
    std::vector<Word> blocks(50, "ab");
    auto rep = block_bound_check(blocks, abab, 2000, 2);
    CHECK(rep.holds);
    for (auto& ls : rep.letters)
        CHECK(ls.min_block_ratio == doctest::Approx(0.5));

    // random segmentation of Thue-Morse into blocks of length <= 10
    InfiniteWord tm = thue_morse();
    Word w = tm.prefix(4000);
    testutil::Rng rng(31);
    std::vector<Word> seg;
    for (std::size_t p = 0; p < w.size();) {
        std::size_t l = std::min<std::size_t>(1 + rng.below(10), w.size() - p);
        seg.push_back(w.substr(p, l));
        p += l;
    }
    auto rep2 = block_bound_check(seg, tm, 4000, 10);
    CHECK(rep2.holds);
    CHECK_THROWS_AS(block_bound_check(seg, tm, 4000, 5), std::invalid_argument);
}

TEST_CASE("witnesses re-verify for every queried reachable position") {
    InfiniteWord fib = fibonacci();
    ColoringScheme scheme = prefix2(fib, 2000);
    auto res = mono_reachable(fib, 2000, scheme, 1);
    auto positions = res.reachable_positions();
    testutil::Rng rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t p = positions[rng.below(positions.size())];
        auto wit = res.witness(p);
        REQUIRE(wit.has_value());
        CHECK(wit->covered == p);
        CHECK(wit->verify(scheme));
    }
}

TEST_CASE("frontier curves are monotone and consistent with frontier_at") {
    InfiniteWord fib = fibonacci();
    auto res = mono_reachable(fib, 4000, prefix2(fib, 4000), 1);
    std::size_t prev = 0;
    for (auto& pt : res.curve) {
        CHECK(pt.frontier >= prev);
        prev = pt.frontier;
    }
    CHECK(res.frontier_at(4000) == res.frontier);
    CHECK(res.frontier_at(0) <= res.frontier);
}

}  // TEST_SUITE
