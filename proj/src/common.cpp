#include "psap/common.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace psap {

std::string format_number(double v, int sig_digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig_digits, v);
    return buf;
}

std::string format_complex(complex v, int sig_digits) {
    double im = v.imag() == 0.0 ? 0.0 : v.imag();  // drop the sign of -0
    std::string s = format_number(v.real(), sig_digits);
    if (im >= 0 || std::isnan(im)) s += "+";
    s += format_number(im, sig_digits);
    s += "i";
    return s;
}

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for hashing: " + path);
    std::uint64_t h = 14695981039346656037ull;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        h = fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
    }
    return h;
}

}  // namespace psap
