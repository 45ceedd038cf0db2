#pragma once

#include "nkze/rng.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nkze {

/// Fixed-length binary string. The tag keeps search and shape policies from
/// being mixed up at call sites.
template <class Tag> class Bits {
  public:
    Bits() = default;
    explicit Bits(std::size_t n) : bits_(n, 0) {}
    Bits(std::initializer_list<int> init) {
        bits_.reserve(init.size());
        for (int b : init) bits_.push_back(b ? 1 : 0);
    }

    static Bits from_string(std::string_view s) {
        Bits out(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != '0' && s[i] != '1')
                throw std::invalid_argument("bit string must contain only 0/1");
            out.bits_[i] = s[i] == '1';
        }
        return out;
    }

    static Bits random(std::size_t n, Rng& rng) {
        Bits out(n);
        for (auto& b : out.bits_) b = rng.coin() ? 1 : 0;
        return out;
    }

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }

    Bits flipped(std::size_t i) const {
        Bits out = *this;
        out.flip(i);
        return out;
    }

    std::size_t hamming(const Bits& other) const {
        std::size_t d = 0;
        for (std::size_t i = 0; i < bits_.size(); ++i) d += bits_[i] != other.bits_[i];
        return d;
    }

    /// Leftmost bit most significant. Only meaningful for size() <= 64.
    std::uint64_t to_uint() const {
        std::uint64_t v = 0;
        for (auto b : bits_) v = (v << 1) | b;
        return v;
    }

    static Bits from_uint(std::uint64_t v, std::size_t n) {
        Bits out(n);
        for (std::size_t i = 0; i < n; ++i) out.bits_[n - 1 - i] = (v >> i) & 1U;
        return out;
    }

    std::string to_string() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
        return s;
    }

    const std::vector<std::uint8_t>& raw() const noexcept { return bits_; }

    friend bool operator==(const Bits&, const Bits&) = default;
    friend auto operator<=>(const Bits&, const Bits&) = default;

  private:
    std::vector<std::uint8_t> bits_;
};

struct SearchTag {};
struct ShapeTag {};

using SearchPolicy = Bits<SearchTag>;
using ShapePolicy = Bits<ShapeTag>;

} // namespace nkze
