#pragma once

#include <iosfwd>
#include <string>

#include "normlab/digit_seq.hpp"

namespace normlab {

// DSEQ1 digit-sequence file: one ASCII header line
//   DSEQ1 base=<b> len=<N>\n
// followed by exactly N payload bytes, byte value == digit value. Bit-exact
// across platforms.

DigitSeq read_dseq(std::istream& in);
DigitSeq read_dseq_file(const std::string& path);

void write_dseq(std::ostream& out, const DigitSeq& s);
void write_dseq_file(const std::string& path, const DigitSeq& s);

}  // namespace normlab
