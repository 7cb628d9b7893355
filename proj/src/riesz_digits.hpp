#pragma once

// Base-b digit expansion of a growing integer r^n * L, supporting the Riesz
// product kernels. Digits are exact; floating point enters only when a
// fractional phase is read off for the cosine.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <vector>

namespace normlab::detail {

class DigitScroll {
  public:
    DigitScroll(const mpz_class& value, std::uint32_t base) : base_(base) {
        // chew off as many digits per division as fit a 63-bit divisor
        std::uint32_t chunk_digits = 0;
        std::uint64_t chunk = 1;
        while (chunk <= (std::uint64_t{1} << 63) / base) {
            chunk *= base;
            ++chunk_digits;
        }
        mpz_class rest = value;
        mpz_class q;
        while (rest > 0) {
            const unsigned long rem =
                mpz_tdiv_q_ui(q.get_mpz_t(), rest.get_mpz_t(), chunk);
            std::uint64_t part = rem;
            for (std::uint32_t i = 0; i < chunk_digits; ++i) {
                digits_.push_back(static_cast<std::uint8_t>(part % base));
                part /= base;
            }
            mpz_swap(rest.get_mpz_t(), q.get_mpz_t());
        }
        trim();
    }

    void multiply(std::uint64_t factor) {
        std::uint64_t carry = 0;
        for (auto& d : digits_) {
            const std::uint64_t v = std::uint64_t(d) * factor + carry;
            d = static_cast<std::uint8_t>(v % base_);
            carry = v / base_;
        }
        while (carry > 0) {
            digits_.push_back(static_cast<std::uint8_t>(carry % base_));
            carry /= base_;
        }
    }

    // digit count D: the value is < base^D
    std::uint64_t size() const { return digits_.size(); }

    // Fractional part of value / base^q, from the top 54 bits' worth of
    // digits below weight q. |cos(pi x)| has period 1, so this is all the
    // cosine ever needs.
    double frac_below(std::uint64_t q) const {
        const std::uint64_t take = std::min<std::uint64_t>(q, frac_digits(base_));
        double f = 0.0;
        for (std::uint64_t t = take; t >= 1; --t) {
            const double d = (q - t) < digits_.size() ? digits_[q - t] : 0.0;
            f = (f + d) / base_;
        }
        return f;
    }

    static std::uint32_t frac_digits(std::uint32_t base) {
        return static_cast<std::uint32_t>(std::ceil(54.0 / std::log2(double(base))));
    }

  private:
    void trim() {
        while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
    }

    std::uint32_t base_;
    std::vector<std::uint8_t> digits_;  // little-endian, digits_[i] weighs base^i
};

}  // namespace normlab::detail
