#pragma once

// Lazy, memoized infinite words. A handle wraps a shared stream that grows a
// committed prefix on demand; reads of any position are deterministic and
// repeatable. Buffers grow geometrically. All handle methods lock the stream,
// so a handle may be shared across threads.

#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wordcolor/core.hpp"

namespace wordcolor {

/// Eventually periodic sequence of positive integers directing a standard
/// Sturmian word. The first entry may be 0, which swaps the letter roles.
struct IntDirective {
    std::vector<long> pre;
    std::vector<long> per;

    void validate() const {
        if (per.empty()) throw std::invalid_argument("directive: empty period");
        // only the very first entry may be 0 (it swaps the roles of a and b),
        // and a 0 inside the period would repeat
        for (std::size_t i = 0; i < pre.size(); ++i)
            if (pre[i] < (i == 0 ? 0 : 1))
                throw std::invalid_argument("directive: entry below 1");
        for (long v : per)
            if (v < 1) throw std::invalid_argument("directive: period entry below 1");
    }

    long at(std::size_t i) const {
        return i < pre.size() ? pre[i] : per[(i - pre.size()) % per.size()];
    }

    std::string to_string() const {
        auto list = [](const std::vector<long>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(v[i]);
            }
            return s + "]";
        };
        return "pre=" + list(pre) + ";per=" + list(per);
    }
};

/// Eventually periodic sequence of letters directing a standard episturmian
/// word (iterated palindromic closure).
struct LetterDirective {
    std::string pre;
    std::string per;

    void validate() const {
        if (per.empty()) throw std::invalid_argument("directive: empty period");
    }

    char at(std::size_t i) const {
        return i < pre.size() ? pre[i] : per[(i - pre.size()) % per.size()];
    }
};

/// How the letter frequency of a word can be decided exactly, when it can.
/// Carried by streams so colorings can build exact comparators.
struct FrequencyHint {
    enum class Kind { sturmian_directive, rational };
    Kind kind;
    IntDirective directive;       // kind == sturmian_directive
    std::size_t rational_num = 0; // kind == rational: count of the letter ...
    std::size_t rational_den = 1; // ... in the period, over the period length
    char letter = 'a';            // which letter the rational refers to
};

namespace detail {

class Stream {
public:
    Stream(Alphabet alphabet, std::string label)
        : alphabet_(std::move(alphabet)), label_(std::move(label)) {}
    virtual ~Stream() = default;

    char at(std::size_t i) {
        std::lock_guard<std::mutex> lock(mu_);
        ensure(i + 1);
        return buf_[i];
    }

    std::string prefix(std::size_t n) {
        std::lock_guard<std::mutex> lock(mu_);
        ensure(n);
        return buf_.substr(0, n);
    }

    const Alphabet& alphabet() const { return alphabet_; }
    const std::string& label() const { return label_; }

    virtual std::optional<FrequencyHint> frequency_hint(char) const {
        return std::nullopt;
    }

protected:
    /// Append symbols to buf until buf.size() >= need. Called under the lock.
    virtual void grow(std::string& buf, std::size_t need) = 0;

    void ensure(std::size_t need) {
        if (buf_.size() >= need) return;
        std::size_t target = std::max(need, buf_.size() * 2 + 16);
        grow(buf_, target);
        if (buf_.size() < need)
            throw std::runtime_error("stream stalled: " + label_);
    }

private:
    Alphabet alphabet_;
    std::string label_;
    std::string buf_;
    std::mutex mu_;
};

}  // namespace detail

class InfiniteWord {
public:
    explicit InfiniteWord(std::shared_ptr<detail::Stream> s) : stream_(std::move(s)) {}

    /// 0-based random access (the CLI reports 1-based positions).
    char at(std::size_t i) const { return stream_->at(i); }
    Word prefix(std::size_t n) const { return stream_->prefix(n); }
    const Alphabet& alphabet() const { return stream_->alphabet(); }
    const std::string& label() const { return stream_->label(); }
    std::optional<FrequencyHint> frequency_hint(char letter) const {
        return stream_->frequency_hint(letter);
    }

private:
    std::shared_ptr<detail::Stream> stream_;
};

namespace detail {

class FixedPointStream final : public Stream {
public:
    FixedPointStream(Morphism m, char seed, std::string label)
        : Stream(m.target(), std::move(label)), m_(std::move(m)), next_(1) {
        const Word& img = m_.image(seed);
        if (img.size() < 2 || img[0] != seed)
            throw std::invalid_argument(
                "fixed_point: image of seed must start with the seed and have length >= 2");
        seed_ = seed;
    }

protected:
    void grow(std::string& buf, std::size_t need) override {
        if (buf.empty()) buf = m_.image(seed_);
        while (buf.size() < need) {
            if (next_ >= buf.size())
                throw std::invalid_argument(
                    "fixed_point: morphism erases all reachable letters");
            buf += m_.image(buf[next_++]);
        }
    }

private:
    Morphism m_;
    char seed_;
    std::size_t next_;
};

class StandardSturmianStream final : public Stream {
public:
    StandardSturmianStream(IntDirective d, std::string label)
        : Stream(Alphabet("ab"), std::move(label)), d_(std::move(d)) {
        d_.validate();
        prev_ = "a";                       // s_0
        std::string s1;
        for (long r = 0; r < d_.at(0); ++r) s1 += "a";
        s1 += "b";                         // s_1 = s_0^{d_1} s_{-1}
        cur_ = s1;
        step_ = 1;
    }

    std::optional<FrequencyHint> frequency_hint(char letter) const override {
        if (letter != 'a' && letter != 'b') return std::nullopt;
        FrequencyHint h;
        h.kind = FrequencyHint::Kind::sturmian_directive;
        h.directive = d_;
        h.letter = letter;
        return h;
    }

protected:
    // s_n = s_{n-1}^{d_n} s_{n-2}; for n >= 1 each s_n is a prefix of s_{n+1},
    // so the committed buffer only ever extends.
    void grow(std::string& buf, std::size_t need) override {
        while (cur_.size() < need) {
            std::string next;
            long reps = d_.at(step_);
            next.reserve(cur_.size() * reps + prev_.size());
            for (long r = 0; r < reps; ++r) next += cur_;
            next += prev_;
            prev_ = std::move(cur_);
            cur_ = std::move(next);
            ++step_;
        }
        buf.assign(cur_, 0, std::max(need, buf.size()));
    }

private:
    IntDirective d_;
    std::string prev_, cur_;
    std::size_t step_;
};

class EpisturmianStream final : public Stream {
public:
    EpisturmianStream(LetterDirective d, Alphabet alphabet, std::string label)
        : Stream(std::move(alphabet), std::move(label)), d_(std::move(d)) {
        d_.validate();
        this->alphabet().require(d_.pre);
        this->alphabet().require(d_.per);
    }

protected:
    void grow(std::string& buf, std::size_t need) override {
        // u_{n+1} = palindromic_closure(u_n . d_n); each u_n is a prefix of
        // the next, and the length grows by at least one per step.
        while (buf.size() < need) {
            buf.push_back(d_.at(step_++));
            buf = palindromic_closure(buf);
        }
    }

private:
    LetterDirective d_;
    std::size_t step_ = 0;
};

class PaperfoldingStream final : public Stream {
public:
    explicit PaperfoldingStream(std::string label)
        : Stream(Alphabet("01"), std::move(label)) {}

protected:
    void grow(std::string& buf, std::size_t need) override {
        if (buf.empty()) buf = "0";  // w_1
        while (buf.size() < need) {
            // w_{n+1} = w_n 0 reversal(complement(w_n))
            Word tail = reversal(complement(buf, alphabet()));
            buf += '0';
            buf += tail;
        }
    }
};

class LucaStream final : public Stream {
public:
    explicit LucaStream(std::string label)
        : Stream(Alphabet("ab"), std::move(label)) {}

protected:
    void grow(std::string& buf, std::size_t need) override {
        if (buf.empty()) buf = "ab";  // W_1
        while (buf.size() < need) {
            // W_k = W_1 ... W_{k-1} a, and buf currently holds W_1 ... W_{k-1}
            std::string w = buf;
            buf += w;
            buf += 'a';
        }
    }
};

class UltimatelyPeriodicStream final : public Stream {
public:
    UltimatelyPeriodicStream(Word v, Word u, Alphabet alphabet, std::string label)
        : Stream(std::move(alphabet), std::move(label)), v_(std::move(v)), u_(std::move(u)) {
        if (u_.empty())
            throw std::invalid_argument("eventually_periodic: empty period");
    }

    std::optional<FrequencyHint> frequency_hint(char letter) const override {
        FrequencyHint h;
        h.kind = FrequencyHint::Kind::rational;
        h.letter = letter;
        h.rational_num = static_cast<std::size_t>(
            std::count(u_.begin(), u_.end(), letter));
        h.rational_den = u_.size();
        return h;
    }

protected:
    void grow(std::string& buf, std::size_t need) override {
        if (buf.empty()) buf = v_;
        while (buf.size() < need) buf += u_;
    }

private:
    Word v_, u_;
};

/// Position arithmetic on top of another handle: drop k symbols, or glue a
/// finite word in front.
class ShiftSpliceStream final : public Stream {
public:
    ShiftSpliceStream(InfiniteWord inner, std::size_t drop, Word front,
                      std::string label)
        : Stream(inner.alphabet(), std::move(label)), inner_(std::move(inner)),
          drop_(drop), front_(std::move(front)) {
        inner_.alphabet().require(front_);
    }

    std::optional<FrequencyHint> frequency_hint(char letter) const override {
        // liminf/limsup frequencies ignore any finite prefix edit
        return inner_.frequency_hint(letter);
    }

protected:
    void grow(std::string& buf, std::size_t need) override {
        std::size_t from_inner =
            need > front_.size() ? need - front_.size() : 0;
        Word p = inner_.prefix(from_inner + drop_);
        buf.assign(front_);
        buf.append(p, drop_, std::string::npos);
    }

private:
    InfiniteWord inner_;
    std::size_t drop_;
    Word front_;
};

}  // namespace detail

enum class SturmianCode { L, R };  // L: a->a, b->ab    R: a->a, b->ba

namespace detail {

class DesubstituteStream final : public Stream {
public:
    DesubstituteStream(InfiniteWord inner, SturmianCode code, std::string label)
        : Stream(Alphabet("ab"), std::move(label)), inner_(std::move(inner)),
          code_(code) {
        for (char c : inner_.alphabet().letters())
            if (c != 'a' && c != 'b')
                throw std::invalid_argument("desubstitute: word must be over {a,b}");
    }

protected:
    void grow(std::string& buf, std::size_t need) override {
        while (buf.size() < need) {
            if (code_ == SturmianCode::R) {
                // prefix code {a, ba}
                char c = inner_.at(pos_);
                if (c == 'a') {
                    buf += 'a';
                    pos_ += 1;
                } else {
                    if (inner_.at(pos_ + 1) != 'a')
                        throw DesubstitutionError(
                            "desubstitute: 'b' not followed by 'a' under the R-code",
                            pos_);
                    buf += 'b';
                    pos_ += 2;
                }
            } else {
                // code {a, ab} with deciphering delay 1: read "ab" when the
                // next symbol is b
                char c = inner_.at(pos_);
                if (c != 'a')
                    throw DesubstitutionError(
                        "desubstitute: block cannot start with 'b' under the L-code",
                        pos_);
                if (inner_.at(pos_ + 1) == 'b') {
                    buf += 'b';
                    pos_ += 2;
                } else {
                    buf += 'a';
                    pos_ += 1;
                }
            }
        }
    }

private:
    InfiniteWord inner_;
    SturmianCode code_;
    std::size_t pos_ = 0;
};

class MorphicImageStream final : public Stream {
public:
    MorphicImageStream(Morphism m, InfiniteWord inner, std::string label)
        : Stream(m.target(), std::move(label)), m_(std::move(m)),
          inner_(std::move(inner)) {}

protected:
    void grow(std::string& buf, std::size_t need) override {
        std::size_t stall = 0;
        while (buf.size() < need) {
            buf += m_.image(inner_.at(pos_++));
            if (++stall > need + (1u << 20))
                throw std::invalid_argument(
                    "morphic image: morphism erases the whole tail");
        }
    }

private:
    Morphism m_;
    InfiniteWord inner_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// The fixed point of m starting with `seed`; requires m(seed) = seed.x.
inline InfiniteWord fixed_point(const Morphism& m, char seed) {
    std::string label = "fix:" + m.rules_string() + "@" + std::string(1, seed);
    return InfiniteWord(std::make_shared<detail::FixedPointStream>(m, seed, label));
}

/// Characteristic Sturmian word of the directive sequence, built from the
/// standard sequences s_{-1} = b, s_0 = a, s_n = s_{n-1}^{d_n} s_{n-2}.
inline InfiniteWord standard_sturmian(const IntDirective& d) {
    std::string label = "sturmian:" + d.to_string();
    return InfiniteWord(std::make_shared<detail::StandardSturmianStream>(d, label));
}

/// Standard episturmian word of a letter directive, by iterated palindromic
/// closure.
inline InfiniteWord episturmian_standard(const LetterDirective& d) {
    std::string all = d.pre + d.per;
    std::string label = "epi:pre=" + d.pre + ";per=" + d.per;
    return InfiniteWord(std::make_shared<detail::EpisturmianStream>(
        d, Alphabet::of(all), label));
}

/// Regular paper-folding word, the limit of w_1 = 0,
/// w_{n+1} = w_n 0 reversal(complement(w_n)).
inline InfiniteWord paperfolding() {
    return InfiniteWord(std::make_shared<detail::PaperfoldingStream>("pf"));
}

/// L = W_1 W_2 W_3 ... with W_1 = ab and W_k = W_1...W_{k-1} a.
inline InfiniteWord luca_word() {
    return InfiniteWord(std::make_shared<detail::LucaStream>("luca"));
}

inline InfiniteWord eventually_periodic(const Word& v, const Word& u) {
    if (u.empty()) throw std::invalid_argument("eventually_periodic: empty period");
    std::string label = "ultper:v=" + v + ";u=" + u;
    return InfiniteWord(std::make_shared<detail::UltimatelyPeriodicStream>(
        v, u, Alphabet::of(v + u), label));
}

inline InfiniteWord suffix(const InfiniteWord& x, std::size_t k) {
    std::string label = x.label() + "|suffix:" + std::to_string(k);
    return InfiniteWord(std::make_shared<detail::ShiftSpliceStream>(x, k, Word(), label));
}

inline InfiniteWord splice(const Word& v, const InfiniteWord& x) {
    std::string label = x.label() + "|splice:" + v;
    return InfiniteWord(std::make_shared<detail::ShiftSpliceStream>(x, 0, v, label));
}

inline InfiniteWord prepend(char a, const InfiniteWord& x) {
    std::string label = x.label() + "|prepend:" + std::string(1, a);
    return InfiniteWord(std::make_shared<detail::ShiftSpliceStream>(
        x, 0, Word(1, a), label));
}

/// The unique t with L(t) = x (resp. R(t) = x), parsed lazily. Throws
/// DesubstitutionError with the failing position when x is not a product of
/// code words.
inline InfiniteWord desubstitute(const InfiniteWord& x, SturmianCode code) {
    std::string label =
        x.label() + (code == SturmianCode::L ? "|desub:L" : "|desub:R");
    return InfiniteWord(std::make_shared<detail::DesubstituteStream>(x, code, label));
}

/// h applied letterwise to x; h must not erase the whole tail.
inline InfiniteWord morphic_image(const Morphism& m, const InfiniteWord& x) {
    std::string label = "h(" + m.rules_string() + "):" + x.label();
    return InfiniteWord(std::make_shared<detail::MorphicImageStream>(m, x, label));
}

/// The two Sturmian morphisms used throughout: L: a->a, b->ab and
/// R: a->a, b->ba.
inline Morphism sturmian_L() { return Morphism{{'a', "a"}, {'b', "ab"}}; }
inline Morphism sturmian_R() { return Morphism{{'a', "a"}, {'b', "ba"}}; }

}  // namespace wordcolor
