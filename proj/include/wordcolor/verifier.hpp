#pragma once

// Reachability over a finite prefix: position j is reachable for a color iff
// the prefix [0, j) splits into blocks of that color, each of length at most
// max_block. For prefix-partitioned schemes every usable block is an
// occurrence of a prefix of the word, which a z-array detects, so the DP runs
// bit-parallel over an allowed-length mask. Other schemes get the literal
// quadratic DP.
//
// SATURATED is an evidence verdict, never a theorem: the DP bounds finite
// chains, and compactness does not convert infinite reachable sets into
// infinite factorizations in general.

#include <algorithm>
#include <cstddef>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wordcolor/analysis.hpp"
#include "wordcolor/coloring.hpp"
#include "wordcolor/core.hpp"
#include "wordcolor/factor_index.hpp"
#include "wordcolor/frequency.hpp"
#include "wordcolor/infinite_word.hpp"

namespace wordcolor {

enum class Verdict { saturated, growing };

inline const char* to_string(Verdict v) {
    return v == Verdict::saturated ? "SATURATED" : "GROWING";
}

struct FrontierPoint {
    std::size_t scanned;   // source position whose blocks advanced the frontier
    std::size_t frontier;  // max reachable position at that moment
};

struct WitnessBlock {
    std::size_t start = 0;  // 0-based
    Word word;
    int color = 0;
};

struct FactorizationWitness {
    std::vector<WitnessBlock> blocks;
    std::size_t covered = 0;

    /// Blocks must concatenate to the exact prefix and re-classify to their
    /// recorded colors.
    bool verify(const ColoringScheme& scheme) const {
        std::size_t pos = 0;
        for (const auto& b : blocks) {
            if (b.start != pos || b.word.empty()) return false;
            if (scheme.classify(b.word) != b.color) return false;
            std::string_view w = scheme.window_text();
            if (pos + b.word.size() > w.size()) return false;
            if (w.compare(pos, b.word.size(), b.word) != 0) return false;
            pos += b.word.size();
        }
        return pos == covered;
    }
};

namespace detail {

class BitVec {
public:
    explicit BitVec(std::size_t bits = 0) { resize(bits); }
    void resize(std::size_t bits) {
        bits_ = bits;
        w_.assign(bits / 64 + 2, 0);
    }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    std::size_t bits() const { return bits_; }
    std::vector<std::uint64_t>& words() { return w_; }
    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Everything a result needs to reconstruct witnesses later.
struct DpContext {
    Word window;
    std::optional<ColoringScheme> scheme;  // absent for raw prefixal search
    int color = 0;
    std::size_t max_block = 0;
    bool fast = false;
    BitVec reach;
    std::vector<std::uint32_t> zcap;  // fast path: usable block cap per source
    BitVec allowed;                   // fast path: allowed block lengths
};

inline std::uint64_t low_bits_mask(std::size_t upto_bit) {
    // bits 0..upto_bit inclusive
    return upto_bit >= 63 ? ~std::uint64_t(0)
                          : ((std::uint64_t(1) << (upto_bit + 1)) - 1);
}

}  // namespace detail

class ReachabilityResult {
public:
    int color = 0;
    std::string color_name;
    Verdict verdict = Verdict::saturated;
    bool partial = false;  // advisory probes occurred inside the DP
    std::size_t window = 0;
    std::size_t max_block = 0;
    std::size_t frontier = 0;
    std::vector<FrontierPoint> curve;  // frontier change points, in scan order

    bool is_reachable(std::size_t pos) const {
        return pos <= window && ctx_ && ctx_->reach.get(pos);
    }

    std::vector<std::size_t> reachable_positions() const {
        std::vector<std::size_t> out;
        if (!ctx_) return out;
        for (std::size_t i = 0; i <= window; ++i)
            if (ctx_->reach.get(i)) out.push_back(i);
        return out;
    }

    /// Frontier as of a given scanned source position.
    std::size_t frontier_at(std::size_t scanned) const {
        std::size_t f = 0;
        for (const auto& p : curve) {
            if (p.scanned > scanned) break;
            f = p.frontier;
        }
        return f;
    }

    /// Factorization chain 0 -> pos choosing the shortest viable block at
    /// every step (deterministic; on the Fibonacci word this reproduces the
    /// {a, ab} parse).
    std::optional<FactorizationWitness> witness(std::size_t pos) const;

    std::shared_ptr<detail::DpContext> ctx_;  // shared with witnesses
};

namespace detail {

/// Bit-parallel DP over prefix blocks. `allowed` holds the usable block
/// lengths; zcap[i] caps them per source position.
inline void run_fast_dp(DpContext& ctx, ReachabilityResult& res) {
    const std::size_t n = ctx.window.size();
    auto& reach_w = ctx.reach.words();
    const auto& a_w = ctx.allowed.words();
    // highest allowed length <= c, for frontier bookkeeping
    std::vector<std::uint32_t> highest(ctx.max_block + 1, 0);
    for (std::size_t c = 1; c <= ctx.max_block; ++c)
        highest[c] = ctx.allowed.get(c) ? static_cast<std::uint32_t>(c) : highest[c - 1];

    ctx.reach.set(0);
    std::size_t frontier = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (!ctx.reach.get(i)) continue;
        std::size_t cap = ctx.zcap[i];
        if (cap == 0) continue;
        if (highest[cap] > 0 && i + highest[cap] > frontier) {
            frontier = i + highest[cap];
            res.curve.push_back({i, frontier});
        }
        const std::size_t nw = cap / 64 + 1;
        const std::size_t off = i & 63, base = i >> 6;
        std::uint64_t carry = 0;
        for (std::size_t w = 0; w < nw; ++w) {
            std::uint64_t a = a_w[w];
            if (w == nw - 1) a &= low_bits_mask(cap & 63);
            reach_w[base + w] |= off ? (a << off) | carry : a;
            carry = off ? (a >> (64 - off)) : 0;
        }
        reach_w[base + nw] |= carry;
    }
    res.frontier = frontier;
}

/// Literal DP: classify every candidate block. Quadratic; for small windows
/// and for schemes without the prefix partition.
inline void run_generic_dp(DpContext& ctx, ReachabilityResult& res) {
    const std::size_t n = ctx.window.size();
    std::string_view w = ctx.window;
    ctx.reach.set(0);
    std::size_t frontier = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (!ctx.reach.get(i)) continue;
        std::size_t cap = std::min(ctx.max_block, n - i);
        for (std::size_t l = 1; l <= cap; ++l) {
            auto c = ctx.scheme->classify_checked(w.substr(i, l));
            res.partial = res.partial || c.advisory;
            if (c.color != ctx.color) continue;
            if (!ctx.reach.get(i + l)) {
                ctx.reach.set(i + l);
                if (i + l > frontier) {
                    frontier = i + l;
                    res.curve.push_back({i, frontier});
                }
            }
        }
    }
    res.frontier = frontier;
}

inline Verdict verdict_for(std::size_t frontier, std::size_t n) {
    // positions in the final quarter are excluded from saturation claims
    return frontier <= n - n / 4 ? Verdict::saturated : Verdict::growing;
}

}  // namespace detail

inline std::optional<FactorizationWitness> ReachabilityResult::witness(
    std::size_t pos) const {
    if (!ctx_ || pos > window || !ctx_->reach.get(pos)) return std::nullopt;
    FactorizationWitness out;
    out.covered = pos;
    if (pos == 0) return out;
    std::string_view w = ctx_->window;

    // co-reachability of pos, then a forward walk taking the shortest block
    // that stays co-reachable
    detail::BitVec co(pos + 1);
    co.set(pos);
    // smallest l with: l allowed for this color from p, and co[p + l]
    auto viable_step = [&](std::size_t p) -> std::size_t {
        std::size_t cap;
        if (ctx_->fast) {
            cap = std::min<std::size_t>(ctx_->zcap[p], pos - p);
            const auto& a_w = ctx_->allowed.words();
            if (cap == 0) return 0;
            const std::size_t nw = cap / 64 + 1;
            for (std::size_t wd = 0; wd < nw; ++wd) {
                std::uint64_t a = a_w[wd];
                if (wd == nw - 1) a &= detail::low_bits_mask(cap & 63);
                // co bits at positions p + 64*wd + [0..63]
                std::size_t bit = p + 64 * wd;
                std::size_t base = bit >> 6, off = bit & 63;
                std::uint64_t c = co.words()[base] >> off;
                if (off) c |= co.words()[base + 1] << (64 - off);
                if (std::uint64_t v = a & c)
                    return 64 * wd + static_cast<std::size_t>(std::countr_zero(v));
            }
            return 0;
        }
        cap = std::min(ctx_->max_block, pos - p);
        for (std::size_t l = 1; l <= cap; ++l)
            if (co.get(p + l) &&
                ctx_->scheme->classify(w.substr(p, l)) == ctx_->color)
                return l;
        return 0;
    };

    // backward co-reachability
    for (std::size_t j = pos; j-- > 0;) {
        if (!ctx_->reach.get(j)) continue;
        if (ctx_->fast) {
            std::size_t cap = std::min<std::size_t>(ctx_->zcap[j], pos - j);
            if (cap == 0) continue;
            const auto& a_w = ctx_->allowed.words();
            const std::size_t nw = cap / 64 + 1;
            bool ok = false;
            for (std::size_t wd = 0; wd < nw && !ok; ++wd) {
                std::uint64_t a = a_w[wd];
                if (wd == nw - 1) a &= detail::low_bits_mask(cap & 63);
                std::size_t bit = j + 64 * wd;
                std::size_t base = bit >> 6, off = bit & 63;
                std::uint64_t c = co.words()[base] >> off;
                if (off) c |= co.words()[base + 1] << (64 - off);
                if (a & c) ok = true;
            }
            if (ok) co.set(j);
        } else {
            std::size_t cap = std::min(ctx_->max_block, pos - j);
            for (std::size_t l = 1; l <= cap; ++l) {
                if (!co.get(j + l)) continue;
                if (ctx_->scheme->classify(w.substr(j, l)) == ctx_->color) {
                    co.set(j);
                    break;
                }
            }
        }
    }
    if (!co.get(0)) return std::nullopt;

    std::size_t p = 0;
    while (p < pos) {
        std::size_t l = viable_step(p);
        if (l == 0) return std::nullopt;
        WitnessBlock b;
        b.start = p;
        b.word = Word(w.substr(p, l));
        b.color = ctx_->color;
        out.blocks.push_back(std::move(b));
        p += l;
    }
    return out;
}

/// Core reachability for one color. max_block defaults to window/8.
inline ReachabilityResult mono_reachable(const InfiniteWord& x, std::size_t n,
                                         const ColoringScheme& scheme, int color,
                                         std::size_t max_block = 0) {
    if (n < 4) throw WindowError("mono_reachable: window too small");
    if (scheme.window() < n)
        throw std::invalid_argument("mono_reachable: scheme window smaller than n");
    if (color < 0 || static_cast<std::size_t>(color) >= scheme.palette().size())
        throw std::invalid_argument("mono_reachable: color outside the palette");
    if (max_block == 0) max_block = std::max<std::size_t>(n / 8, 1);
    max_block = std::min(max_block, n);

    auto ctx = std::make_shared<detail::DpContext>();
    ctx->window = x.prefix(n);
    ctx->scheme = scheme;
    ctx->color = color;
    ctx->max_block = max_block;
    ctx->reach.resize(n + 1);

    ReachabilityResult res;
    res.color = color;
    res.color_name = scheme.palette().name(color);
    res.window = n;
    res.max_block = max_block;
    res.ctx_ = ctx;

    if (scheme.prefix_partitioned()) {
        ctx->fast = true;
        auto z = z_array(ctx->window);
        ctx->zcap.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t zi = i == 0 ? n : z[i];
            ctx->zcap[i] = static_cast<std::uint32_t>(
                std::min({zi, max_block, n - i}));
        }
        ctx->allowed.resize(max_block + 1);
        std::size_t upto = std::min(max_block, scheme.window());
        for (std::size_t l = 1; l <= upto; ++l) {
            auto c = scheme.prefix_color_checked(l);
            res.partial = res.partial || c.advisory;
            if (c.color == color) ctx->allowed.set(l);
        }
        detail::run_fast_dp(*ctx, res);
    } else {
        detail::run_generic_dp(*ctx, res);
    }
    res.verdict = detail::verdict_for(res.frontier, n);
    return res;
}

struct MonoVerdict {
    std::vector<ReachabilityResult> per_color;
    bool all_saturated = true;
    bool partial = false;
};

/// Runs mono_reachable for every palette color. ALL-SATURATED is the
/// window evidence that no monochromatic factorization survives.
inline MonoVerdict mono_verdict(const InfiniteWord& x, std::size_t n,
                                const ColoringScheme& scheme,
                                std::size_t max_block = 0) {
    MonoVerdict out;
    for (std::size_t c = 0; c < scheme.palette().size(); ++c) {
        auto r = mono_reachable(x, n, scheme, static_cast<int>(c), max_block);
        out.all_saturated = out.all_saturated && r.verdict == Verdict::saturated;
        out.partial = out.partial || r.partial;
        out.per_color.push_back(std::move(r));
    }
    return out;
}

struct PrefixalOutcome {
    Verdict verdict = Verdict::saturated;
    std::size_t frontier = 0;
    std::size_t window = 0;
    std::size_t unbordered_count = 0;
    bool border_consistent = false;
    std::optional<FactorizationWitness> witness;
    ReachabilityResult reach;
};

/// Reachability with block set = all prefixes, cross-checked against the
/// unbordered-prefix count (a word has a prefixal factorization iff it has
/// finitely many unbordered prefixes).
inline PrefixalOutcome prefixal_search(const InfiniteWord& x, std::size_t n,
                                       std::size_t max_block = 0) {
    // prefix2's color 1 is exactly "is a prefix", so reuse the machinery
    ColoringScheme scheme = prefix2(x, n);
    PrefixalOutcome out;
    out.reach = mono_reachable(x, n, scheme, 1, max_block);
    out.verdict = out.reach.verdict;
    out.frontier = out.reach.frontier;
    out.window = n;
    out.unbordered_count = unbordered_prefixes(x, n).size();
    if (out.verdict == Verdict::growing)
        out.witness = out.reach.witness(out.frontier);
    // many unbordered prefixes <=> no prefixal factorization expected
    bool many = out.unbordered_count >= 10;
    out.border_consistent = many == (out.verdict == Verdict::saturated);
    return out;
}

/// Per-letter reachability with blocks = equally rich prefixes.
inline std::map<char, ReachabilityResult> equally_rich_search(
    const InfiniteWord& x, std::size_t n, std::size_t max_block = 0) {
    ColoringScheme scheme = richness3(x, n);  // throws NotSturmianError
    std::map<char, ReachabilityResult> out;
    out[x.alphabet().letter(0)] = mono_reachable(x, n, scheme, 0, max_block);
    out[x.alphabet().letter(1)] = mono_reachable(x, n, scheme, 1, max_block);
    return out;
}

struct RamseyWitness {
    std::size_t suffix_start = 0;       // n_1, 0-based
    std::vector<std::size_t> positions;  // n_1 < n_2 < ... < n_{k+1}, 0-based
    int color = 0;
    std::vector<Word> blocks;
};

/// Greedy pigeonhole search for a chain of k same-colored consecutive blocks
/// somewhere in the window; re-verified by re-classification. Ramsey only
/// guarantees existence in the infinite limit, so not-found is a legitimate
/// answer.
inline std::optional<RamseyWitness> ramsey_witness(const InfiniteWord& x,
                                                   std::size_t n,
                                                   const ColoringScheme& scheme,
                                                   std::size_t k) {
    if (k < 2) throw std::invalid_argument("ramsey_witness: k must be >= 2");
    if (scheme.window() < n)
        throw std::invalid_argument("ramsey_witness: scheme window smaller than n");
    Word w = x.prefix(n);
    const std::size_t block_cap = std::max<std::size_t>(n / 8, 1);

    auto try_chain_generic = [&](std::size_t start, int color)
        -> std::optional<RamseyWitness> {
        RamseyWitness rw;
        rw.suffix_start = start;
        rw.color = color;
        rw.positions.push_back(start);
        std::size_t p = start;
        while (rw.blocks.size() < k) {
            std::size_t found = 0;
            std::size_t cap = std::min(block_cap, n - p);
            for (std::size_t l = 1; l <= cap; ++l) {
                if (scheme.classify(std::string_view(w).substr(p, l)) == color) {
                    found = l;
                    break;
                }
            }
            if (!found) return std::nullopt;
            rw.blocks.push_back(w.substr(p, found));
            p += found;
            rw.positions.push_back(p);
        }
        return rw;
    };

    if (scheme.prefix_partitioned()) {
        auto z = z_array(w);
        auto zat = [&](std::size_t i) { return i == 0 ? n : z[i]; };
        std::size_t upto = std::min(block_cap, scheme.window());
        std::map<int, std::vector<std::size_t>> allowed;  // color -> lengths
        for (std::size_t l = 1; l <= upto; ++l)
            allowed[scheme.prefix_color(l)].push_back(l);
        auto dead = scheme.dead_color();
        for (std::size_t c = 0; c < scheme.palette().size(); ++c) {
            int color = static_cast<int>(c);
            bool is_dead = dead && *dead == color;
            const auto* lens = allowed.count(color) ? &allowed[color] : nullptr;
            if (!is_dead && !lens) continue;
            for (std::size_t start = 0; start < n; ++start) {
                RamseyWitness rw;
                rw.suffix_start = start;
                rw.color = color;
                rw.positions.push_back(start);
                std::size_t p = start;
                bool ok = true;
                while (rw.blocks.size() < k) {
                    std::size_t zcap = std::min(zat(p), n - p);
                    std::size_t step = 0;
                    if (lens && !lens->empty() && lens->front() <= zcap)
                        step = lens->front();  // shortest prefix block
                    if (is_dead) {
                        // shortest non-prefix block jumps just past the match
                        std::size_t nonpref = zat(p) + 1;
                        if (p + nonpref <= n && nonpref <= block_cap &&
                            (step == 0 || nonpref < step))
                            step = nonpref;
                    }
                    if (step == 0) { ok = false; break; }
                    rw.blocks.push_back(w.substr(p, step));
                    p += step;
                    rw.positions.push_back(p);
                }
                if (!ok) continue;
                bool verified = true;
                for (const auto& b : rw.blocks)
                    verified = verified && scheme.classify(b) == color;
                if (verified) return rw;
            }
        }
        return std::nullopt;
    }

    const std::size_t start_cap = std::min<std::size_t>(n, 4096);
    for (std::size_t c = 0; c < scheme.palette().size(); ++c)
        for (std::size_t start = 0; start < start_cap; ++start)
            if (auto rw = try_chain_generic(start, static_cast<int>(c))) return rw;
    return std::nullopt;
}

struct LetterSandwich {
    char letter = 0;
    double min_block_ratio = 1.0;   // m_a over the blocks
    double max_block_ratio = 0.0;   // M_a
    double liminf_estimate = 0.0;   // empirical f'
    double limsup_estimate = 0.0;   // empirical f''
    bool holds = false;
};

struct SandwichReport {
    std::vector<LetterSandwich> letters;
    double margin = 0.0;  // 2M/N
    bool holds = true;
};

/// Frequency sandwich: block ratios bound the prefix ratios of
/// the stretch the factorization covers, within the advisory margin
/// 2M/covered. (A factorization bounds nothing beyond its own reach, so the
/// estimates are taken over the covered prefix, not the enclosing window.)
inline SandwichReport block_bound_check(const std::vector<Word>& blocks,
                                        const InfiniteWord& x, std::size_t n,
                                        std::size_t max_len) {
    if (blocks.empty())
        throw std::invalid_argument("block_bound_check: no blocks");
    std::size_t covered = 0;
    for (const auto& b : blocks) {
        if (b.empty() || b.size() > max_len)
            throw std::invalid_argument("block_bound_check: block exceeds M");
        covered += b.size();
    }
    if (covered > n)
        throw std::invalid_argument("block_bound_check: blocks exceed the window");
    SandwichReport rep;
    rep.margin = 2.0 * static_cast<double>(max_len) / static_cast<double>(covered);
    for (char letter : x.alphabet().letters()) {
        LetterSandwich ls;
        ls.letter = letter;
        for (const auto& b : blocks) {
            double r = static_cast<double>(std::count(b.begin(), b.end(), letter)) /
                       static_cast<double>(b.size());
            ls.min_block_ratio = std::min(ls.min_block_ratio, r);
            ls.max_block_ratio = std::max(ls.max_block_ratio, r);
        }
        auto est = letter_frequency(x, letter, covered);
        ls.liminf_estimate = est.liminf_estimate;
        ls.limsup_estimate = est.limsup_estimate;
        ls.holds = ls.min_block_ratio - rep.margin <= ls.liminf_estimate &&
                   ls.limsup_estimate <= ls.max_block_ratio + rep.margin;
        rep.holds = rep.holds && ls.holds;
        rep.letters.push_back(ls);
    }
    return rep;
}

}  // namespace wordcolor
