#pragma once

#include <iosfwd>
#include <string>

#include "sinfreq/surface.hpp"

namespace sinfreq {

/// UTF-8 text sample file:
///   # sinfreq v1 dims=<d> M=<M> [N=<N>]
///   re,im          (one sample per line, row-major, row index = first dim)
struct SampleFile {
    int dims = 1;
    int M = 0;
    int N = 1;
    std::vector<cplx> samples;
};

SampleFile read_sample_file(std::istream& in);
SampleFile read_sample_file(const std::string& path);
void write_sample_file(std::ostream& out, const SampleFile& f);
void write_sample_file(const std::string& path, const SampleFile& f);

SignalFrame to_frame(const SampleFile& f);
SampleFile from_frame(const SignalFrame& f);

}  // namespace sinfreq
