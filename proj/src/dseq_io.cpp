#include "normlab/dseq_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "normlab/errors.hpp"

namespace normlab {

DigitSeq read_dseq(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        throw DseqError(DseqError::Code::bad_header, "missing DSEQ1 header line");

    std::istringstream hs(header);
    std::string magic, base_kv, len_kv;
    hs >> magic >> base_kv >> len_kv;
    if (magic != "DSEQ1" || base_kv.rfind("base=", 0) != 0 || len_kv.rfind("len=", 0) != 0)
        throw DseqError(DseqError::Code::bad_header, "malformed DSEQ1 header: " + header);

    long base = 0;
    unsigned long long len = 0;
    try {
        base = std::stol(base_kv.substr(5));
        len = std::stoull(len_kv.substr(4));
    } catch (const std::exception&) {
        throw DseqError(DseqError::Code::bad_header, "unparseable DSEQ1 header: " + header);
    }
    if (base < 2 || base > 255)
        throw DseqError(DseqError::Code::bad_header,
                        "DSEQ1 base out of range: " + std::to_string(base));

    DigitSeq s;
    s.base = static_cast<int>(base);
    s.digits.resize(len);
    if (len > 0) {
        in.read(reinterpret_cast<char*>(s.digits.data()), static_cast<std::streamsize>(len));
        if (static_cast<unsigned long long>(in.gcount()) != len)
            throw DseqError(DseqError::Code::truncated,
                            "DSEQ1 payload truncated: declared " + std::to_string(len) +
                                " bytes, got " + std::to_string(in.gcount()));
    }
    for (std::size_t i = 0; i < s.digits.size(); ++i) {
        if (s.digits[i] >= s.base)
            throw DseqError(DseqError::Code::bad_digit,
                            "digit " + std::to_string(int(s.digits[i])) + " at position " +
                                std::to_string(i + 1) + " is not below base " +
                                std::to_string(s.base));
    }
    return s;
}

DigitSeq read_dseq_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DseqError(DseqError::Code::io, "cannot open " + path);
    return read_dseq(in);
}

void write_dseq(std::ostream& out, const DigitSeq& s) {
    validate(s);
    out << "DSEQ1 base=" << s.base << " len=" << s.digits.size() << "\n";
    out.write(reinterpret_cast<const char*>(s.digits.data()),
              static_cast<std::streamsize>(s.digits.size()));
    if (!out) throw DseqError(DseqError::Code::io, "DSEQ1 write failed");
}

void write_dseq_file(const std::string& path, const DigitSeq& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DseqError(DseqError::Code::io, "cannot open " + path + " for writing");
    write_dseq(out, s);
}

}  // namespace normlab
