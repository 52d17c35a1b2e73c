#include "sinfreq/sample_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sinfreq {

namespace {

[[noreturn]] void parse_fail(size_t line, const std::string& msg) {
    std::ostringstream os;
    os << "sample file, line " << line << ": " << msg;
    throw std::runtime_error(os.str());
}

long parse_header_field(const std::string& header, const std::string& key, size_t line) {
    const std::string tag = key + "=";
    const size_t pos = header.find(tag);
    if (pos == std::string::npos) parse_fail(line, "missing '" + key + "=' in header");
    char* end = nullptr;
    const long v = std::strtol(header.c_str() + pos + tag.size(), &end, 10);
    if (end == header.c_str() + pos + tag.size()) parse_fail(line, "unreadable '" + key + "' value");
    return v;
}

}  // namespace

SampleFile read_sample_file(std::istream& in) {
    std::string line;
    size_t lineno = 1;
    if (!std::getline(in, line)) throw std::runtime_error("sample file, line 1: empty file");
    if (line.rfind("# sinfreq v1", 0) != 0)
        parse_fail(1, "header must start with '# sinfreq v1'");

    SampleFile f;
    f.dims = static_cast<int>(parse_header_field(line, "dims", 1));
    if (f.dims != 1 && f.dims != 2) parse_fail(1, "dims must be 1 or 2");
    f.M = static_cast<int>(parse_header_field(line, "M", 1));
    f.N = f.dims == 2 ? static_cast<int>(parse_header_field(line, "N", 1)) : 1;
    if (f.M < 2 || (f.dims == 2 && f.N < 2)) parse_fail(1, "M (and N) must be >= 2");

    const size_t expected = static_cast<size_t>(f.M) * static_cast<size_t>(f.N);
    f.samples.reserve(expected);
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const char* s = line.c_str();
        char* end = nullptr;
        const double re = std::strtod(s, &end);
        if (end == s) parse_fail(lineno, "expected 're,im'");
        while (*end == ' ' || *end == '\t') ++end;
        if (*end != ',') parse_fail(lineno, "expected ',' between re and im");
        const char* s2 = end + 1;
        const double im = std::strtod(s2, &end);
        if (end == s2) parse_fail(lineno, "unreadable imaginary part");
        while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
        if (*end != '\0') parse_fail(lineno, "trailing characters after sample");
        if (f.samples.size() == expected) parse_fail(lineno, "more samples than the header declares");
        f.samples.emplace_back(re, im);
    }
    if (f.samples.size() != expected) {
        std::ostringstream os;
        os << "sample file: header declares " << expected << " samples, found " << f.samples.size();
        throw std::runtime_error(os.str());
    }
    return f;
}

SampleFile read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_sample_file(in);
}

void write_sample_file(std::ostream& out, const SampleFile& f) {
    out << "# sinfreq v1 dims=" << f.dims << " M=" << f.M;
    if (f.dims == 2) out << " N=" << f.N;
    out << "\n";
    char buf[64];
    for (const cplx& z : f.samples) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", z.real(), z.imag());
        out << buf;
    }
}

void write_sample_file(const std::string& path, const SampleFile& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_sample_file(out, f);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

SignalFrame to_frame(const SampleFile& f) {
    return f.dims == 2 ? SignalFrame::make_2d(f.samples, f.M, f.N)
                       : SignalFrame::make_1d(f.samples);
}

SampleFile from_frame(const SignalFrame& f) {
    SampleFile s;
    s.dims = f.dims;
    s.M = f.M;
    s.N = f.dims == 2 ? f.N : 1;
    s.samples = f.data;
    return s;
}

}  // namespace sinfreq
