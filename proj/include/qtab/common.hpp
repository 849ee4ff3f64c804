#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtab {

using cplx = std::complex<double>;

// Error hierarchy: every throwing operation uses one of these so the CLI can
// map failures to exit codes (usage/config -> 2, runtime -> 1).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct ArgumentError : Error {
    using Error::Error;
};
struct IndexError : Error {
    using Error::Error;
};
struct SchemaError : Error {
    using Error::Error;
};
struct DataError : Error {
    using Error::Error;
};
struct DecodeError : Error {
    using Error::Error;
};
struct TrainingError : Error {
    using Error::Error;
};

// Deterministic RNG used everywhere randomness is needed. Wraps mt19937_64
// with fixed draw conventions so trajectories are reproducible across
// platforms, and serializes its state for checkpoint resume.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Rejection-free modulo bias is irrelevant at
    // the sizes used here (n << 2^64), but keep draws to one engine call.
    std::uint64_t integer(std::uint64_t n) { return eng_() % n; }

    // One raw engine word, for deriving sub-seeds.
    std::uint64_t raw() { return eng_(); }

    // Draw an index from a cumulative distribution (non-decreasing, last
    // entry ~1). Inverse-CDF by binary search; deterministic given the seed.
    std::size_t categorical(std::span<const double> cumulative) {
        const double u = uniform();
        std::size_t lo = 0, hi = cumulative.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cumulative[mid] > u)
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }

    std::string state() const {
        std::ostringstream os;
        os << eng_;
        return os.str();
    }

    void restore(const std::string& s) {
        std::istringstream is(s);
        is >> eng_;
        if (is.fail()) throw ArgumentError("invalid rng state string");
    }

private:
    std::mt19937_64 eng_;
};

// Bit-order convention shared by all modules: qubit 0 is the leftmost
// (most significant) character of a bitstring, matching the register
// concatenation |feature1 || feature2 || ...> reading order.
inline std::uint64_t qubit_mask(int qubit, int num_qubits) {
    return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

inline int bit_of(std::uint64_t index, int qubit, int num_qubits) {
    return static_cast<int>((index >> (num_qubits - 1 - qubit)) & 1u);
}

inline std::string to_bitstring(std::uint64_t index, int num_qubits) {
    std::string s(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q)
        if (bit_of(index, q, num_qubits)) s[static_cast<std::size_t>(q)] = '1';
    return s;
}

inline std::uint64_t from_bitstring(std::string_view bits) {
    std::uint64_t v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw ArgumentError("bitstring contains non-binary character");
        v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

// FNV-1a, used for schema fingerprints in data and checkpoint files.
inline std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace qtab
