#pragma once

#include <stdexcept>
#include <string>

namespace normlab {

// Enumeration or sweep would exceed the configured budget.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// DSEQ1 file problems carry a distinct code so callers can map them to
// machine-readable errors.
struct DseqError : std::runtime_error {
    enum class Code { bad_header, bad_digit, truncated, io };
    Code code;
    DseqError(Code c, const std::string& what) : std::runtime_error(what), code(c) {}
};

inline const char* dseq_code_name(DseqError::Code c) {
    switch (c) {
        case DseqError::Code::bad_header: return "dseq_bad_header";
        case DseqError::Code::bad_digit: return "dseq_bad_digit";
        case DseqError::Code::truncated: return "dseq_truncated";
        case DseqError::Code::io: return "dseq_io";
    }
    return "dseq_unknown";
}

}  // namespace normlab
