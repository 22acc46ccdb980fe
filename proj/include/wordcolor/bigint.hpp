#pragma once

// Minimal non-negative big integer: just what continued-fraction convergents
// need (h_n = a_n h_{n-1} + h_{n-2}, cross-multiplication compares, decimal
// printing for reports).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wordcolor {

class Natural {
public:
    Natural() : limbs_{0} {}
    Natural(std::uint64_t v) : limbs_{v} {}  // NOLINT: implicit on purpose

    bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }

    Natural& add(const Natural& o) {
        limbs_.resize(std::max(limbs_.size(), o.limbs_.size()), 0);
        unsigned __int128 carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            unsigned __int128 s = carry + limbs_[i];
            if (i < o.limbs_.size()) s += o.limbs_[i];
            limbs_[i] = static_cast<std::uint64_t>(s);
            carry = s >> 64;
        }
        if (carry) limbs_.push_back(static_cast<std::uint64_t>(carry));
        return *this;
    }

    Natural& mul_small(std::uint64_t k) {
        unsigned __int128 carry = 0;
        for (auto& limb : limbs_) {
            unsigned __int128 p = static_cast<unsigned __int128>(limb) * k + carry;
            limb = static_cast<std::uint64_t>(p);
            carry = p >> 64;
        }
        while (carry) {
            limbs_.push_back(static_cast<std::uint64_t>(carry));
            carry >>= 64;
        }
        trim();
        return *this;
    }

    /// this = k*this + o  (the convergent recurrence step)
    Natural& mul_add(std::uint64_t k, const Natural& o) {
        mul_small(k);
        add(o);
        return *this;
    }

    /// -1, 0, +1 comparison.
    int compare(const Natural& o) const {
        if (limbs_.size() != o.limbs_.size())
            return limbs_.size() < o.limbs_.size() ? -1 : 1;
        for (std::size_t i = limbs_.size(); i-- > 0;)
            if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
        return 0;
    }

    bool operator==(const Natural& o) const { return compare(o) == 0; }
    bool operator<(const Natural& o) const { return compare(o) < 0; }

    Natural times(std::uint64_t k) const {
        Natural c = *this;
        c.mul_small(k);
        return c;
    }

    /// Schoolbook product; only used for cross-multiplication compares.
    Natural times_big(const Natural& o) const {
        std::vector<std::uint64_t> out(limbs_.size() + o.limbs_.size() + 1, 0);
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            unsigned __int128 carry = 0;
            for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
                unsigned __int128 cur =
                    static_cast<unsigned __int128>(limbs_[i]) * o.limbs_[j] +
                    out[i + j] + carry;
                out[i + j] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
            }
            std::size_t pos = i + o.limbs_.size();
            while (carry) {
                unsigned __int128 cur = carry + out[pos];
                out[pos] = static_cast<std::uint64_t>(cur);
                carry = cur >> 64;
                ++pos;
            }
        }
        Natural r;
        r.limbs_ = std::move(out);
        r.trim();
        return r;
    }

    std::string to_string() const {
        std::vector<std::uint64_t> digits = limbs_;
        std::string out;
        auto all_zero = [&] {
            for (auto d : digits)
                if (d) return false;
            return true;
        };
        if (all_zero()) return "0";
        while (!all_zero()) {
            // divide by 10 in place, most significant limb first
            unsigned __int128 rem = 0;
            for (std::size_t i = digits.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | digits[i];
                digits[i] = static_cast<std::uint64_t>(cur / 10);
                rem = cur % 10;
            }
            out.push_back(static_cast<char>('0' + static_cast<int>(rem)));
        }
        return std::string(out.rbegin(), out.rend());
    }

    std::size_t decimal_digits() const { return to_string().size(); }

private:
    void trim() {
        while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
    }
    std::vector<std::uint64_t> limbs_;  // little-endian base 2^64
};

}  // namespace wordcolor
