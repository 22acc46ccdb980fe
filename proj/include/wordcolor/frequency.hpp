#pragma once

// Letter frequencies: empirical liminf/limsup estimates over a window, and
// exact order predicates against the (irrational) frequency of a letter in a
// Sturmian directive word, decided by nesting continued-fraction convergents.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wordcolor/bigint.hpp"
#include "wordcolor/core.hpp"
#include "wordcolor/infinite_word.hpp"

namespace wordcolor {

struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct FrequencyEstimate {
    char letter = 'a';
    // (n, count of the letter in the length-n prefix) at the sample points
    std::vector<std::pair<std::size_t, std::size_t>> samples;
    // min/max prefix ratio over the tail samples (n >= window/2): finite
    // stand-ins for liminf and limsup
    double liminf_estimate = 0.0;
    double limsup_estimate = 0.0;

    double final_ratio() const {
        if (samples.empty()) return 0.0;
        auto [n, c] = samples.back();
        return n ? static_cast<double>(c) / static_cast<double>(n) : 0.0;
    }
};

/// Ratios |x[0..n)|_a / n at `samples` evenly spaced points up to n = window.
inline FrequencyEstimate letter_frequency(const InfiniteWord& x, char letter,
                                          std::size_t window,
                                          std::size_t samples = 64) {
    if (window < 1) throw std::invalid_argument("letter_frequency: empty window");
    if (samples < 1) samples = 1;
    FrequencyEstimate est;
    est.letter = letter;
    Word w = x.prefix(window);
    std::size_t count = 0, next_mark = 1, step = std::max<std::size_t>(window / samples, 1);
    for (std::size_t n = 1; n <= window; ++n) {
        if (w[n - 1] == letter) ++count;
        if (n == next_mark || n == window) {
            est.samples.emplace_back(n, count);
            next_mark += step;
        }
    }
    double lo = 2.0, hi = -1.0;
    for (auto& [n, c] : est.samples) {
        if (n * 2 < window) continue;  // tail only
        double r = static_cast<double>(c) / static_cast<double>(n);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    est.liminf_estimate = lo;
    est.limsup_estimate = hi;
    return est;
}

enum class FrequencyOrder {
    below,  // p/q < f  (or p/q == f when f is rational)
    above,  // p/q > f
};

/// Decides rationals against a letter frequency. Three flavours:
///  - exact via continued-fraction convergents of a Sturmian directive
///    (always strict: the frequency is a quadratic irrational),
///  - exact rational (for ultimately periodic words; ties count as `below`),
///  - empirical interval (throws PrecisionError for rationals inside it).
class FrequencyComparator {
public:
    static FrequencyComparator exact_sturmian(IntDirective d, char letter) {
        if (letter != 'a' && letter != 'b')
            throw std::invalid_argument("comparator: Sturmian words are over {a,b}");
        d.validate();
        FrequencyComparator c;
        c.kind_ = Kind::sturmian;
        c.directive_ = std::move(d);
        c.letter_ = letter;
        return c;
    }

    static FrequencyComparator exact_rational(long long num, long long den) {
        if (den <= 0 || num < 0 || num > den)
            throw std::invalid_argument("comparator: frequency must be in [0,1]");
        FrequencyComparator c;
        c.kind_ = Kind::rational;
        c.value_ = {num, den};
        return c;
    }

    static FrequencyComparator empirical(Rational lo, Rational hi) {
        FrequencyComparator c;
        c.kind_ = Kind::interval;
        c.lo_ = lo;
        c.hi_ = hi;
        return c;
    }

    /// Builds the exact comparator a word advertises, if any.
    static std::optional<FrequencyComparator> from_word(const InfiniteWord& x,
                                                        char letter) {
        auto hint = x.frequency_hint(letter);
        if (!hint) return std::nullopt;
        if (hint->kind == FrequencyHint::Kind::sturmian_directive)
            return exact_sturmian(hint->directive, letter);
        return exact_rational(static_cast<long long>(hint->rational_num),
                              static_cast<long long>(hint->rational_den));
    }

    bool decides_exactly() const { return kind_ != Kind::interval; }

    /// p/q vs the frequency. Requires q >= 1, 0 <= p/q <= 1.
    FrequencyOrder compare(long long p, long long q) const {
        if (q < 1 || p < 0 || p > q)
            throw std::invalid_argument("comparator: rational outside [0,1]");
        switch (kind_) {
            case Kind::rational: {
                // p/q vs num/den exactly; equality counts as below
                __int128 lhs = static_cast<__int128>(p) * value_.den;
                __int128 rhs = static_cast<__int128>(value_.num) * q;
                return lhs > rhs ? FrequencyOrder::above : FrequencyOrder::below;
            }
            case Kind::interval: {
                __int128 l = static_cast<__int128>(p) * lo_.den -
                             static_cast<__int128>(lo_.num) * q;
                __int128 h = static_cast<__int128>(p) * hi_.den -
                             static_cast<__int128>(hi_.num) * q;
                if (l < 0) return FrequencyOrder::below;
                if (h > 0) return FrequencyOrder::above;
                throw PrecisionError(
                    "interval comparator cannot decide " + std::to_string(p) +
                    "/" + std::to_string(q));
            }
            case Kind::sturmian:
                return compare_sturmian(p, q);
        }
        throw std::logic_error("unreachable");
    }

    /// Consecutive convergents of the frequency of 'b', as decimal strings;
    /// used by reports and by high-precision cross-checks.
    std::pair<std::string, std::string> convergent_bounds(std::size_t depth) const {
        if (kind_ != Kind::sturmian)
            throw std::invalid_argument("convergent_bounds: not a directive comparator");
        Natural h_prev = 1, k_prev = 0;  // h_{-1}/k_{-1}
        Natural h = 0, k = 1;            // h_0/k_0, a_0 = 0
        std::string lo, hi;
        for (std::size_t n = 1; n <= depth; ++n) {
            step(n, h, k, h_prev, k_prev);
            std::string frac = h.to_string() + "/" + k.to_string();
            (n % 2 == 1 ? hi : lo) = frac;  // odd convergents above, even below
        }
        return {lo, hi};
    }

private:
    enum class Kind { sturmian, rational, interval };

    // partial quotients of alpha = frequency of b: [0; d_1 + 1, d_2, d_3, ...]
    std::uint64_t quotient(std::size_t n) const {
        return n == 1 ? static_cast<std::uint64_t>(directive_.at(0)) + 1
                      : static_cast<std::uint64_t>(directive_.at(n - 1));
    }

    void step(std::size_t n, Natural& h, Natural& k, Natural& h_prev,
              Natural& k_prev) const {
        std::uint64_t a = quotient(n);
        Natural h_next = h;
        h_next.mul_add(a, h_prev);
        Natural k_next = k;
        k_next.mul_add(a, k_prev);
        h_prev = std::move(h);
        k_prev = std::move(k);
        h = std::move(h_next);
        k = std::move(k_next);
    }

    FrequencyOrder compare_sturmian(long long p, long long q) const {
        // frequency of a = 1 - alpha, so flip the rational when asked about a
        long long pp = p, qq = q;
        bool flip = (letter_ == 'a');
        if (flip) pp = q - p;
        // now decide pp/qq against alpha = [0; d1+1, d2, ...]
        Natural h_prev = 1, k_prev = 0;
        Natural h = 0, k = 1;
        const std::size_t max_depth = 10000;
        for (std::size_t n = 1; n <= max_depth; ++n) {
            step(n, h, k, h_prev, k_prev);
            // cmp = pp/qq vs h/k  <=>  pp*k vs qq*h
            Natural lhs = k.times(static_cast<std::uint64_t>(pp));
            Natural rhs = h.times(static_cast<std::uint64_t>(qq));
            int cmp = lhs.compare(rhs);
            bool odd = (n % 2 == 1);  // odd convergents lie above alpha
            if (cmp == 0) {
                // the rational IS this convergent; alpha is on the other side
                FrequencyOrder ord = odd ? FrequencyOrder::above : FrequencyOrder::below;
                return flip ? flipped(ord) : ord;
            }
            if (odd && cmp > 0) return flip ? flipped(FrequencyOrder::above) : FrequencyOrder::above;
            if (!odd && cmp < 0) return flip ? flipped(FrequencyOrder::below) : FrequencyOrder::below;
        }
        throw PrecisionError("convergents did not separate the rational");
    }

    static FrequencyOrder flipped(FrequencyOrder o) {
        return o == FrequencyOrder::above ? FrequencyOrder::below
                                          : FrequencyOrder::above;
    }

    Kind kind_ = Kind::interval;
    IntDirective directive_;
    char letter_ = 'b';
    Rational value_;     // rational kind
    Rational lo_, hi_;   // interval kind
};

}  // namespace wordcolor
