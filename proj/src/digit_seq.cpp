#include "normlab/digit_seq.hpp"

#include <stdexcept>
#include <string>

namespace normlab {

void validate(const DigitSeq& s) {
    if (s.base < 2 || s.base > 255)
        throw std::invalid_argument("digit sequence base must be in [2, 255]");
    for (std::size_t i = 0; i < s.digits.size(); ++i) {
        if (s.digits[i] >= s.base)
            throw std::invalid_argument("digit " + std::to_string(int(s.digits[i])) +
                                        " at position " + std::to_string(i + 1) +
                                        " is not below base " + std::to_string(s.base));
    }
}

DigitValue value_of(const DigitSeq& v) {
    DigitValue out;
    out.numerator = 0;
    for (const std::uint8_t d : v.digits) {
        out.numerator *= v.base;  // Horner over the digit string
        out.numerator += d;
    }
    mpz_ui_pow_ui(out.denominator.get_mpz_t(), v.base, v.digits.size());
    return out;
}

}  // namespace normlab
