#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace testutil {

inline std::string golden_path(const std::string& name) {
    return std::string(GOLDEN_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Byte comparison against a frozen file. GOLDEN_REGEN=1 rewrites the files
// instead; inspect the diff before committing a regeneration.
inline void golden_check(const std::string& name, const std::string& bytes) {
    const std::string path = golden_path(name);
    if (std::getenv("GOLDEN_REGEN")) {
        std::ofstream out(path, std::ios::binary);
        REQUIRE(out.good());
        out << bytes;
        MESSAGE("regenerated " << path);
        return;
    }
    const std::string want = read_file(path);
    if (bytes == want) {
        CHECK(bytes == want);
        return;
    }
    std::size_t i = 0;
    while (i < bytes.size() && i < want.size() && bytes[i] == want[i]) ++i;
    std::size_t from = i > 30 ? i - 30 : 0;
    FAIL_CHECK(name << ": first difference at byte " << i << "; got ["
                    << bytes.substr(from, 60) << "] want ["
                    << want.substr(from, 60) << "]");
}

inline bool is_prime_trial(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline uint64_t modpow(uint64_t b, uint64_t e, uint64_t m) {
    unsigned __int128 acc = 1, base = b % m;
    while (e) {
        if (e & 1) acc = acc * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<uint64_t>(acc);
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Long-double e(t) = exp(2 pi i t), the reference for cross-checking the
// double-precision sums.
inline std::complex<long double> unit_e_ld(long double t) {
    const long double tau = 6.283185307179586476925286766559L;
    return {std::cos(tau * t), std::sin(tau * t)};
}

} // namespace testutil
