#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace normlab {

// Finite digit string over {0, ..., base-1}, one digit per byte. Positions
// are 1-based in every public operation, matching the index arithmetic; the
// backing store is plain 0-based.
struct DigitSeq {
    int base = 2;  // in [2, 255]
    std::vector<std::uint8_t> digits;

    std::uint64_t length() const { return digits.size(); }
    std::uint8_t digit_at(std::uint64_t pos) const { return digits[pos - 1]; }

    bool operator==(const DigitSeq&) const = default;
};

// Throws std::invalid_argument unless base is in [2,255] and every digit is
// below base.
void validate(const DigitSeq& s);

// v as the exact rational V / base^len with V = sum v_j b^{len-j}. The
// denominator is kept as written, not reduced.
struct DigitValue {
    mpz_class numerator;
    mpz_class denominator;
};

DigitValue value_of(const DigitSeq& v);

}  // namespace normlab
