#include "qtab/layout.hpp"

#include <sstream>

namespace qtab {

std::string RegisterLayout::register_string() const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    if (numerical_width > 0) {
        os << "n" << numerical_width;
        first = false;
    }
    for (int c : categorical_sizes) {
        if (!first) os << ",";
        os << "c" << c;
        first = false;
    }
    os << "]";
    return os.str();
}

std::uint64_t row_space_size(const TabularSchema& schema) {
    std::uint64_t n = 1;
    for (const auto& f : schema.features) {
        const std::uint64_t card = f.cardinality();
        if (n > (std::uint64_t{1} << 62) / card)
            throw SchemaError("row space too large for unique-row-index encoding");
        n *= card;
    }
    return n;
}

RegisterLayout build_layout(const TabularSchema& schema, EncodingMode mode) {
    schema.validate();
    RegisterLayout layout;
    layout.mode = mode;
    layout.slots.resize(schema.features.size());

    if (mode == EncodingMode::UniqueRowIndex) {
        layout.row_space_size = row_space_size(schema);
        int bits = 1;
        while ((std::uint64_t{1} << bits) < layout.row_space_size) ++bits;
        layout.numerical_width = bits;
        for (std::size_t f = 0; f < schema.features.size(); ++f)
            layout.slots[f] = {static_cast<int>(f), 0, bits, RegisterSlot::Kind::RowIndexBits};
        return layout;
    }

    // Numerical register: true numeric features in declaration order, then
    // (Boolean mode) absorbed two-category features, also in declaration
    // order, at the least significant end.
    int offset = 0;
    for (std::size_t f = 0; f < schema.features.size(); ++f) {
        if (!schema.features[f].is_numeric()) continue;
        const int w = schema.features[f].numeric().qubits;
        layout.slots[f] = {static_cast<int>(f), offset, w, RegisterSlot::Kind::NumericBits};
        offset += w;
    }
    if (mode == EncodingMode::Boolean) {
        for (std::size_t f = 0; f < schema.features.size(); ++f) {
            if (schema.features[f].is_numeric()) continue;
            if (schema.features[f].categorical().categories.size() != 2) continue;
            layout.slots[f] = {static_cast<int>(f), offset, 1, RegisterSlot::Kind::BooleanBit};
            offset += 1;
        }
    }
    layout.numerical_width = offset;

    // Categorical one-hot registers, feature declaration order.
    for (std::size_t f = 0; f < schema.features.size(); ++f) {
        if (schema.features[f].is_numeric()) continue;
        const int c = static_cast<int>(schema.features[f].categorical().categories.size());
        if (mode == EncodingMode::Boolean && c == 2) continue;
        layout.slots[f] = {static_cast<int>(f), offset, c, RegisterSlot::Kind::OneHot};
        layout.categorical_sizes.push_back(c);
        offset += c;
    }
    return layout;
}

GateCounts gate_counts(const RegisterLayout& layout) {
    GateCounts gc;
    const int n = layout.numerical_width;
    gc.numerical = n > 0 ? 3 * n - 2 : 0;
    gc.categorical = layout.categorical_sizes;
    gc.cross = layout.num_registers() - 1;
    gc.total = gc.numerical + gc.cross;
    for (int c : gc.categorical) gc.total += c;
    return gc;
}

}  // namespace qtab
