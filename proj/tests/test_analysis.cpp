#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "wordcolor/analysis.hpp"
#include "wordcolor/core.hpp"
#include "wordcolor/factor_index.hpp"
#include "wordcolor/infinite_word.hpp"

using namespace wordcolor;

namespace {

InfiniteWord fibonacci() {
    return fixed_point(Morphism{{'a', "ab"}, {'b', "a"}}, 'a');
}

InfiniteWord thue_morse() {
    return fixed_point(Morphism{{'a', "ab"}, {'b', "ba"}}, 'a');
}

/// All binary words of length <= max_len in radix order, concatenated: a
/// full-complexity window fixture.
InfiniteWord champernowne_fixture(std::size_t max_len) {
    Word v;
    for (std::size_t len = 1; len <= max_len; ++len)
        for (std::uint64_t bits = 0; bits < (1ull << len); ++bits)
            for (std::size_t i = len; i-- > 0;)
                v.push_back((bits >> i) & 1 ? '1' : '0');
    return eventually_periodic(v, "01");
}

/// Independent richness oracle: minimum letter count over the enumerated
/// factor set.
char brute_richness(const Word& window, std::string_view w, char a, char b) {
    auto factors = testutil::brute_factors(window, w.size());
    std::size_t min_a = w.size() + 1, min_b = w.size() + 1;
    for (const auto& f : factors) {
        std::size_t ca = testutil::brute_count(f, std::string(1, a));
        min_a = std::min(min_a, ca);
        min_b = std::min(min_b, f.size() - ca);
    }
    std::size_t ca = testutil::brute_count(w, std::string(1, a));
    bool rich_a = ca > min_a;
    bool rich_b = (w.size() - ca) > min_b;
    REQUIRE(rich_a != rich_b);
    return rich_a ? a : b;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("factor index basics and window guardrails") {
    InfiniteWord fib = fibonacci();
    FactorIndex idx(fib, 1000);
    CHECK(idx.n_max() == 500);
    CHECK(idx.complexity(0) == 1);
    CHECK(idx.contains("aba"));
    CHECK_FALSE(idx.contains("bb"));
    CHECK_THROWS_AS(idx.factors(501), WindowError);
    CHECK_THROWS_AS(FactorIndex(fib, 1), std::invalid_argument);
    auto occ = idx.occurrences("aa");
    CHECK(std::is_sorted(occ.begin(), occ.end()));
    CHECK(occ.size() == testutil::brute_count(fib.prefix(1000), "aa"));
}

TEST_CASE("sturmian complexity: lambda(n) = n+1") {
    FactorIndex idx(fibonacci(), 10000);
    for (std::size_t n = 1; n <= 100; ++n) CHECK(idx.complexity(n) == n + 1);
}

TEST_CASE("periodic window complexity is eventually constant") {
    FactorIndex idx(eventually_periodic("", "ab"), 100);
    for (std::size_t n = 1; n <= 50; ++n) CHECK(idx.complexity(n) == 2);
}

TEST_CASE("full-complexity fixture reaches 2^n factors") {
    InfiniteWord x = champernowne_fixture(12);
    FactorIndex idx(x, 60000);
    Word w = x.prefix(60000);
    for (std::size_t n = 1; n <= 10; ++n) {
        CHECK(idx.complexity(n) == (1ull << n));
        CHECK(testutil::brute_factors(w, n).size() == (1ull << n));
    }
}

TEST_CASE("aperiodic windows have strictly growing complexity") {
    for (auto x : {fibonacci(), thue_morse(), paperfolding()}) {
        FactorIndex idx(x, 4000);
        for (std::size_t n = 1; n <= 30; ++n)
            CHECK(idx.complexity(n + 1) > idx.complexity(n));
    }
}

TEST_CASE("special factors: Fibonacci has exactly one special per length and side") {
    FactorIndex idx(fibonacci(), 10000);
    for (std::size_t n = 1; n <= 50; ++n) {
        CHECK(special_factors(idx, n, Side::right).size() == 1);
        CHECK(special_factors(idx, n, Side::left).size() == 1);
    }
}

TEST_CASE("special factors: periodic words have none") {
    FactorIndex idx(eventually_periodic("", "ab"), 100);
    for (std::size_t n = 1; n <= 20; ++n) {
        CHECK(special_factors(idx, n, Side::right).empty());
        CHECK(special_factors(idx, n, Side::left).empty());
    }
}

TEST_CASE("special factors: Tribonacci left special factors are prefixes") {
    InfiniteWord t = episturmian_standard({"", "abc"});
    FactorIndex idx(t, 4000);
    auto ls = special_factors(idx, 5, Side::left);
    REQUIRE(ls.size() == 1);
    CHECK(*ls.begin() == t.prefix(5));
    // oracle: group length-6 factors by their length-5 suffix
    std::map<Word, std::set<char>> by_suffix;
    for (const auto& f : testutil::brute_factors(t.prefix(4000), 6))
        by_suffix[f.substr(1)].insert(f[0]);
    std::size_t special = 0;
    for (auto& [suffix, firsts] : by_suffix)
        if (firsts.size() >= 2) {
            ++special;
            CHECK(suffix == t.prefix(5));
        }
    CHECK(special == 1);
}

TEST_CASE("balance: Sturmian windows balanced, Thue-Morse not") {
    FactorIndex fib_idx(fibonacci(), 10000);
    CHECK(is_balanced(fib_idx, 60).balanced);

    FactorIndex tm_idx(thue_morse(), 4000);
    auto r = is_balanced(tm_idx, 10);
    REQUIRE_FALSE(r.balanced);
    // the witness re-verifies: same length, count difference >= 2
    CHECK(r.u.size() == r.v.size());
    CHECK(r.length == r.u.size());
    std::size_t cu = testutil::brute_count(r.u, std::string(1, r.letter));
    std::size_t cv = testutil::brute_count(r.v, std::string(1, r.letter));
    CHECK(cu >= cv + 2);
    CHECK(r.length == 2);  // found at aa vs bb

    FactorIndex aa(eventually_periodic("", "a"), 64);
    CHECK(is_balanced(aa, 20).balanced);
}

TEST_CASE("sturmian type") {
    CHECK(sturmian_type(FactorIndex(fibonacci(), 4000)) == 'a');
    CHECK(sturmian_type(FactorIndex(standard_sturmian({{2}, {1}}), 4000)) == 'a');
    CHECK_THROWS_AS(sturmian_type(FactorIndex(eventually_periodic("", "ab"), 100)),
                    NotSturmianError);  // neither aa nor bb
    CHECK_THROWS_AS(sturmian_type(FactorIndex(thue_morse(), 1000)),
                    NotSturmianError);  // both
}

TEST_CASE("repetitions: Thue-Morse is overlap-free but has squares") {
    FactorIndex idx(thue_morse(), 1 << 14);
    CHECK(repetitions(idx, RepetitionKind::overlap, 50).empty());
    auto squares = repetitions(idx, RepetitionKind::square, 10);
    CHECK_FALSE(squares.empty());
    bool has_bb = false;
    Word w = thue_morse().prefix(1 << 14);
    for (auto& rep : squares) {
        CHECK(w.substr(rep.position, rep.root.size()) == rep.root);
        CHECK(w.substr(rep.position + rep.root.size(), rep.root.size()) == rep.root);
        has_bb = has_bb || rep.root == "b";
    }
    CHECK(has_bb);
}

TEST_CASE("repetitions: Fibonacci contains the square aa") {
    FactorIndex idx(fibonacci(), 2000);
    auto squares = repetitions(idx, RepetitionKind::square, 5);
    bool has_aa = false;
    for (auto& rep : squares) has_aa = has_aa || rep.root == "a";
    CHECK(has_aa);
    CHECK_THROWS_AS(repetitions(idx, RepetitionKind::square, 2000),
                    std::invalid_argument);
}

TEST_CASE("unbordered prefixes") {
    auto pf = unbordered_prefixes(paperfolding(), 1 << 14);
    CHECK(pf.size() >= 10);
    // every block length 2^n - 1 is an unbordered prefix length
    for (std::size_t n = 2; n <= 14; ++n)
        CHECK(std::count(pf.begin(), pf.end(), (1u << n) - 1) == 1);

    auto aaa = unbordered_prefixes(eventually_periodic("", "a"), 100);
    CHECK(aaa == std::vector<std::size_t>{1});

    auto fib = unbordered_prefixes(fibonacci(), 10000);
    CHECK(fib.size() <= 3);
}

TEST_CASE("palindromic prefixes of the period-doubling word") {
    InfiniteWord pd = fixed_point(Morphism{{'0', "01"}, {'1', "00"}}, '0');
    auto pals = palindromic_prefixes(pd, 1 << 14);
    std::size_t followed_by_0 = 0, followed_by_1 = 0;
    for (auto& [len, next] : pals) {
        CHECK(is_palindrome(pd.prefix(len)));
        (next == '0' ? followed_by_0 : followed_by_1) += 1;
    }
    CHECK(followed_by_0 >= 5);
    CHECK(followed_by_1 >= 5);
}

TEST_CASE("recurrence gaps") {
    auto fib = recurrence_gaps(fibonacci(), "a", 10000);
    CHECK(fib.max_gap == 2);  // no bb in the Fibonacci word

    auto small = recurrence_gaps(luca_word(), "ab", 1000);
    auto large = recurrence_gaps(luca_word(), "ab", 10000);
    CHECK(large.max_gap > small.max_gap);  // gaps keep growing with the window

    auto once = recurrence_gaps(eventually_periodic("a", "b"), "a", 100);
    CHECK(once.occurrences == std::vector<std::size_t>{0});
    CHECK(once.max_gap == 0);
    CHECK(once.trailing_gap == 100);

    CHECK_THROWS_AS(recurrence_gaps(fibonacci(), "bb", 1000), NotAFactorError);
}

TEST_CASE("return words of the Luca word: R_a = {ab, a} in that order") {
    auto table = return_words(luca_word(), "a", 10000);
    REQUIRE(table.size() == 2);
    CHECK(table.sigma(1) == "ab");
    CHECK(table.sigma(2) == "a");
    CHECK(table.complete_returns() == std::vector<Word>{"aba", "aa"});
    // a complete return begins and ends with u and contains it exactly twice
    for (const auto& vu : table.complete_returns()) {
        CHECK(vu.front() == 'a');
        CHECK(vu.back() == 'a');
        CHECK(count_occurrences(vu, "a") == 2);
    }
}

TEST_CASE("return word counts") {
    CHECK(return_words(fibonacci(), "a", 10000).size() == 2);
    auto ab = return_words(eventually_periodic("", "ab"), "a", 100);
    CHECK(ab.words() == std::vector<Word>{"ab"});
    CHECK_THROWS_AS(return_words(fibonacci(), "b", 1000), std::invalid_argument);
    CHECK_THROWS_AS(return_words(eventually_periodic("a", "b"), "a", 100),
                    WindowError);  // fewer than 3 occurrences
}

TEST_CASE("Sturmian prefixes have exactly two return words") {
    for (auto x : {fibonacci(), standard_sturmian({{2}, {1}}),
                   standard_sturmian({{}, {1, 2}})}) {
        Word w = x.prefix(20);
        for (std::size_t len = 1; len <= 8; ++len)
            CHECK(return_words(x, w.substr(0, len), 40000).size() == 2);
    }
}

TEST_CASE("suffixes of standard episturmian words: long prefixes carry their past") {
    // y = u x with y standard episturmian: beyond some length, every
    // occurrence of a prefix of x inside the window is preceded by u
    InfiniteWord y = episturmian_standard({"", "abc"});
    const std::size_t cut = 3;
    InfiniteWord x = suffix(y, cut);
    Word u = y.prefix(cut);
    Word win = y.prefix(6000);
    for (std::size_t len : {16, 24, 32}) {
        Word p = x.prefix(len);
        std::size_t checked = 0;
        for (std::size_t i = win.find(p); i != std::string::npos;
             i = win.find(p, i + 1)) {
            if (i < cut) continue;  // the defining occurrence
            CHECK(win.compare(i - cut, cut, u) == 0);
            ++checked;
        }
        CHECK(checked >= 3);  // the prefix does recur, always behind u
    }
}

TEST_CASE("episturmian palindromic prefixes are followed by several letters") {
    InfiniteWord t = episturmian_standard({"", "abc"});
    auto pals = palindromic_prefixes(t, 8000);
    std::map<char, int> followers;
    for (auto& [len, next] : pals) followers[next] += 1;
    int rich = 0;
    for (auto& [letter, count] : followers)
        if (count >= 3) ++rich;
    CHECK(rich >= 2);
}

TEST_CASE("derived word of the Luca word") {
    InfiniteWord L = luca_word();
    // independent oracle: gap-code the occurrence list of 'a' directly
    Word w = L.prefix(2000);
    std::vector<std::size_t> occ;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == 'a') occ.push_back(i);
    std::string oracle;
    for (std::size_t j = 0; j + 1 < occ.size(); ++j)
        oracle += occ[j + 1] - occ[j] == 2 ? '1' : '2';
    CHECK(oracle.substr(0, 16) == "1121122112112221");

    DerivedWord d = derived_word(L, "a", 10000);
    CHECK(d.word.prefix(16) == "1121122112112221");
    CHECK(d.word.prefix(oracle.size()) == oracle);
    CHECK(d.word.alphabet().letters() == "12");
}

TEST_CASE("derived word expansion reproduces the base word") {
    for (auto x : {luca_word(), fibonacci()}) {
        DerivedWord d = derived_word(x, "a", 5000);
        Morphism sigma = d.table.as_morphism(x.alphabet());
        Word expanded = wordcolor::apply(sigma, d.word.prefix(d.window_length));
        CHECK_FALSE(expanded.empty());
        CHECK(expanded == x.prefix(expanded.size()));
    }
}

TEST_CASE("derived word of the Fibonacci word is Sturmian on its window") {
    DerivedWord d = derived_word(fibonacci(), "a", 10000);
    FactorIndex idx(d.word, d.window_length);
    for (std::size_t n = 1; n <= 50; ++n) CHECK(idx.complexity(n) == n + 1);
}

TEST_CASE("derived word of a periodic word is constant") {
    DerivedWord d = derived_word(eventually_periodic("", "ab"), "a", 100);
    CHECK(d.word.prefix(10) == "1111111111");
}

TEST_CASE("derived streams extend beyond the construction window") {
    DerivedWord d = derived_word(luca_word(), "a", 1000);
    Word head = d.word.prefix(d.window_length);
    Word extended = d.word.prefix(d.window_length + 50);
    CHECK(extended.compare(0, head.size(), head) == 0);
}

TEST_CASE("s operator on the Luca word: S(L) = D_a(L), S^2(L) = Z") {
    auto chain = s_iterate(luca_word(), 10000, 8, 8);
    REQUIRE(chain.size() == 2);
    CHECK_FALSE(chain[0].is_z);
    CHECK(chain[0].first_letter == 'a');
    CHECK(chain[0].max_gap <= 8);
    REQUIRE(chain[1].is_z);
    CHECK(chain[1].first_letter == '1');
    REQUIRE(chain[1].gap_witness.has_value());
    auto [from, to] = *chain[1].gap_witness;
    CHECK(to - from > 8);
    // the witness re-verifies on the derived word: no '1' strictly between
    Word d = chain[0].derived->word.prefix(to + 1);
    CHECK(d[from] == '1');
    for (std::size_t i = from + 1; i < to; ++i) CHECK(d[i] != '1');
}

TEST_CASE("s operator stays defined on the Fibonacci word") {
    auto chain = s_iterate(fibonacci(), 20000, 16, 4);
    CHECK(chain.size() == 4);
    for (auto& out : chain) CHECK_FALSE(out.is_z);
}

TEST_CASE("s operator hits Z immediately on ab^omega") {
    auto out = s_operator(eventually_periodic("a", "b"), 1000, 64);
    REQUIRE(out.is_z);
    CHECK(out.first_letter == 'a');
    REQUIRE(out.gap_witness.has_value());
    CHECK(out.gap_witness->first == 0);
}

TEST_CASE("richness of single letters and richness errors") {
    FactorIndex idx(fibonacci(), 10000);
    CHECK(richness(idx, "a") == 'a');
    CHECK(richness(idx, "b") == 'b');
    CHECK_THROWS_AS(richness(idx, "bb"), NotAFactorError);
    FactorIndex tm(thue_morse(), 2000);
    CHECK_THROWS_AS(richness(tm, "ab"), NotSturmianError);
}

TEST_CASE("richness of Fibonacci prefixes equals the last letter") {
    InfiniteWord fib = fibonacci();
    FactorIndex idx(fib, 10000);
    Word w = fib.prefix(50);
    for (std::size_t len = 1; len <= 50; ++len) {
        Word p = w.substr(0, len);
        CHECK(richness(idx, p) == p.back());
        CHECK(richness(idx, p) == brute_richness(fib.prefix(2000), p, 'a', 'b'));
    }
}

TEST_CASE("richness is reversal invariant and total on Sturmian windows") {
    InfiniteWord fib = fibonacci();
    FactorIndex idx(fib, 10000);
    Word w = fib.prefix(3000);
    for (std::size_t len = 1; len <= 20; ++len) {
        for (const auto& f : testutil::brute_factors(w.substr(0, 500), len)) {
            char r = richness(idx, f);
            CHECK(richness(idx, reversal(f)) == r);
        }
    }
    // richness() throws when both or neither letter qualifies, so totality up
    // to length 30 is the uniqueness check
    for (std::size_t len = 21; len <= 30; ++len)
        for (const auto& f : testutil::brute_factors(w.substr(0, 200), len))
            CHECK_NOTHROW(richness(idx, f));
}

TEST_CASE("balanced windows give at most two consecutive count values") {
    FactorIndex idx(standard_sturmian({{}, {2, 1}}), 8000);
    for (std::size_t n = 1; n <= 40; ++n) {
        auto [mn, mx] = idx.count_range('a', n);
        CHECK(mx - mn <= 1);
    }
}

TEST_CASE("sturmian window evidence") {
    CHECK(sturmian_window_evidence(FactorIndex(fibonacci(), 4000)));
    CHECK_FALSE(sturmian_window_evidence(FactorIndex(thue_morse(), 4000)));
    CHECK_FALSE(sturmian_window_evidence(FactorIndex(eventually_periodic("", "ab"), 100)));
}

TEST_CASE("shortest non-recurrent prefix of baabaa+fibonacci is baabaaa") {
    InfiniteWord s = splice("baabaa", fibonacci());
    auto e = shortest_nonrecurrent_prefix(s, 100000);
    REQUIRE(e.has_value());
    CHECK(e->prefix == "baabaaa");
    CHECK(e->occurrence_count == 1);
    CHECK(e->last_occurrence == 0);
    // shorter prefixes keep occurring: baabaa is a factor of the Fibonacci
    // word, so the candidate really is the shortest
    CHECK(recurrence_gaps(s, "baabaa", 100000).occurrences.size() > 100);
}

TEST_CASE("shortest non-uniformly-recurrent prefix of the Luca word is ab") {
    // gaps of ab grow only logarithmically in the window, so the sweep uses a
    // bound the window can actually exceed
    auto e = shortest_non_uniformly_recurrent_prefix(luca_word(), 20000, 8);
    REQUIRE(e.has_value());
    CHECK(e->prefix == "ab");
    CHECK(e->max_gap > 8);
}

TEST_CASE("uniformly recurrent words yield no candidates") {
    CHECK_FALSE(shortest_nonrecurrent_prefix(fibonacci(), 50000).has_value());
    CHECK_FALSE(shortest_non_uniformly_recurrent_prefix(fibonacci(), 50000, 64)
                    .has_value());
}

}  // TEST_SUITE
