#pragma once

#include <string>
#include <vector>

#include "qtab/common.hpp"
#include "qtab/schema.hpp"

namespace qtab {

// Where one schema feature lands inside the encoded bitstring.
struct RegisterSlot {
    enum class Kind { NumericBits, OneHot, BooleanBit, RowIndexBits };
    int feature_index = -1;
    int offset = 0;  // first qubit of the slot (qubit 0 = leftmost bit)
    int width = 1;
    Kind kind = Kind::NumericBits;
};

// Qubit register structure of the generator: one numerical register followed
// by the categorical one-hot registers, in feature declaration order (the
// order the encoded bitstring concatenates features in). Boolean mode
// absorbs two-category features as single bits at the tail of the numerical
// register; unique-row-index mode collapses everything into one numerical
// register holding a row index.
struct RegisterLayout {
    EncodingMode mode = EncodingMode::NonBoolean;
    int numerical_width = 0;              // n, 0 when the schema has no numeric slot
    std::vector<int> categorical_sizes;   // c_i per one-hot register, in register order
    std::vector<RegisterSlot> slots;      // one per schema feature, feature order
    std::uint64_t row_space_size = 0;     // |S|, set in unique-row-index mode

    int total_qubits() const {
        int n = numerical_width;
        for (int c : categorical_sizes) n += c;
        return n;
    }
    int num_registers() const {
        return (numerical_width > 0 ? 1 : 0) + static_cast<int>(categorical_sizes.size());
    }
    // Offset of categorical register r (0-based among categorical registers).
    int categorical_offset(int r) const {
        int off = numerical_width;
        for (int i = 0; i < r; ++i) off += categorical_sizes[static_cast<std::size_t>(i)];
        return off;
    }
    std::string register_string() const;  // e.g. "[n5,c3,c2]"
};

RegisterLayout build_layout(const TabularSchema& schema, EncodingMode mode);

// Per-layer gate counts: numerical = 3n-2, categorical_i = c_i (one X prep
// plus c_i-1 single-excitation gates), cross = R-1 controlled
// single-excitation entanglers.
struct GateCounts {
    int numerical = 0;
    std::vector<int> categorical;
    int cross = 0;
    int total = 0;
};

GateCounts gate_counts(const RegisterLayout& layout);

// Number of distinct rows representable by a schema (product of feature
// cardinalities); the unique-row-index search space size.
std::uint64_t row_space_size(const TabularSchema& schema);

}  // namespace qtab
