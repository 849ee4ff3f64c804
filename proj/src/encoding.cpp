#include "qtab/encoding.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace qtab {

using nlohmann::json;

std::uint64_t bin_numeric(double value, const NumericSpec& spec) {
    const double w = spec.bin_width();
    const double raw = std::round((value - spec.min) / w);
    if (raw <= 0.0) return 0;
    const double top = static_cast<double>(spec.bin_count() - 1);
    if (raw >= top) return spec.bin_count() - 1;
    return static_cast<std::uint64_t>(raw);
}

double unbin_numeric(std::uint64_t index, const NumericSpec& spec) {
    if (index >= spec.bin_count())
        throw ArgumentError("bin index " + std::to_string(index) + " out of range for " +
                            std::to_string(spec.bin_count()) + " bins");
    return spec.min + static_cast<double>(index) * spec.bin_width();
}

std::uint64_t category_index(const std::string& value, const FeatureSpec& feature) {
    const auto& cats = feature.categorical().categories;
    for (std::size_t i = 0; i < cats.size(); ++i)
        if (cats[i] == value) return i;
    throw DataError("unknown category '" + value + "' for feature '" + feature.name + "'");
}

namespace {

std::uint64_t feature_code(const Value& v, const FeatureSpec& f) {
    if (f.is_numeric()) return bin_numeric(num_value(v), f.numeric());
    return category_index(cat_value(v), f);
}

void write_bits(std::string& bits, int offset, int width, std::uint64_t value) {
    for (int b = 0; b < width; ++b)
        bits[static_cast<std::size_t>(offset + b)] =
            ((value >> (width - 1 - b)) & 1u) ? '1' : '0';
}

std::uint64_t read_bits(std::string_view bits, int offset, int width) {
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b)
        v = (v << 1) | static_cast<std::uint64_t>(bits[static_cast<std::size_t>(offset + b)] == '1');
    return v;
}

}  // namespace

std::string encode_row(const Row& row, const TabularSchema& schema, const RegisterLayout& layout) {
    if (row.size() != schema.features.size())
        throw DataError("row has " + std::to_string(row.size()) + " values, schema expects " +
                        std::to_string(schema.features.size()));
    if (layout.mode == EncodingMode::UniqueRowIndex) {
        std::string bits(static_cast<std::size_t>(layout.total_qubits()), '0');
        write_bits(bits, 0, layout.total_qubits(), unique_row_index(row, schema));
        return bits;
    }
    std::string bits(static_cast<std::size_t>(layout.total_qubits()), '0');
    for (const RegisterSlot& slot : layout.slots) {
        const auto f = static_cast<std::size_t>(slot.feature_index);
        const std::uint64_t code = feature_code(row[f], schema.features[f]);
        switch (slot.kind) {
            case RegisterSlot::Kind::NumericBits:
                write_bits(bits, slot.offset, slot.width, code);
                break;
            case RegisterSlot::Kind::BooleanBit:
                bits[static_cast<std::size_t>(slot.offset)] = code ? '1' : '0';
                break;
            case RegisterSlot::Kind::OneHot:
                bits[static_cast<std::size_t>(slot.offset) + code] = '1';
                break;
            case RegisterSlot::Kind::RowIndexBits:
                break;  // unreachable, handled above
        }
    }
    return bits;
}

Row decode_bits(std::string_view bits, const TabularSchema& schema, const RegisterLayout& layout) {
    if (static_cast<int>(bits.size()) != layout.total_qubits())
        throw DecodeError("bitstring length " + std::to_string(bits.size()) + " does not match layout width " +
                          std::to_string(layout.total_qubits()));
    if (layout.mode == EncodingMode::UniqueRowIndex) return unique_row_index_decode(bits, schema);

    Row row(schema.features.size());
    for (const RegisterSlot& slot : layout.slots) {
        const auto f = static_cast<std::size_t>(slot.feature_index);
        const FeatureSpec& feat = schema.features[f];
        switch (slot.kind) {
            case RegisterSlot::Kind::NumericBits:
                row[f] = unbin_numeric(read_bits(bits, slot.offset, slot.width), feat.numeric());
                break;
            case RegisterSlot::Kind::BooleanBit: {
                const std::size_t idx = bits[static_cast<std::size_t>(slot.offset)] == '1' ? 1 : 0;
                row[f] = feat.categorical().categories[idx];
                break;
            }
            case RegisterSlot::Kind::OneHot: {
                int hot = -1, weight = 0;
                for (int b = 0; b < slot.width; ++b)
                    if (bits[static_cast<std::size_t>(slot.offset + b)] == '1') {
                        hot = b;
                        ++weight;
                    }
                if (weight != 1)
                    throw DecodeError("one-hot register for feature '" + feat.name + "' has weight " +
                                      std::to_string(weight) + " in bitstring " + std::string(bits));
                row[f] = feat.categorical().categories[static_cast<std::size_t>(hot)];
                break;
            }
            case RegisterSlot::Kind::RowIndexBits:
                break;  // unreachable
        }
    }
    return row;
}

bool bits_valid(std::uint64_t basis_index, const TabularSchema& schema, const RegisterLayout& layout) {
    const int n = layout.total_qubits();
    if (layout.mode == EncodingMode::UniqueRowIndex) return basis_index < layout.row_space_size;
    for (const RegisterSlot& slot : layout.slots) {
        if (slot.kind != RegisterSlot::Kind::OneHot) continue;
        int weight = 0;
        for (int b = 0; b < slot.width; ++b) weight += bit_of(basis_index, slot.offset + b, n);
        if (weight != 1) return false;
    }
    (void)schema;
    return true;
}

std::uint64_t unique_row_index(const Row& row, const TabularSchema& schema) {
    std::uint64_t idx = 0;
    for (std::size_t f = 0; f < schema.features.size(); ++f) {
        idx = idx * schema.features[f].cardinality() + feature_code(row[f], schema.features[f]);
    }
    return idx;
}

std::string unique_row_index_encode(const Row& row, const TabularSchema& schema) {
    const std::uint64_t size = row_space_size(schema);
    int bits = 1;
    while ((std::uint64_t{1} << bits) < size) ++bits;
    std::string out(static_cast<std::size_t>(bits), '0');
    write_bits(out, 0, bits, unique_row_index(row, schema));
    return out;
}

Row unique_row_index_decode(std::string_view bits, const TabularSchema& schema) {
    std::uint64_t idx = from_bitstring(bits);
    if (idx >= row_space_size(schema))
        throw DecodeError("row index " + std::to_string(idx) + " is outside the search space of size " +
                          std::to_string(row_space_size(schema)));
    Row row(schema.features.size());
    for (std::size_t f = schema.features.size(); f-- > 0;) {
        const FeatureSpec& feat = schema.features[f];
        const std::uint64_t card = feat.cardinality();
        const std::uint64_t code = idx % card;
        idx /= card;
        if (feat.is_numeric())
            row[f] = unbin_numeric(code, feat.numeric());
        else
            row[f] = feat.categorical().categories[code];
    }
    return row;
}

EncodedDataset encode_table(const Table& table, const SchemaFile& sf) {
    const RegisterLayout layout = build_layout(sf.schema, sf.mode);
    EncodedDataset ds;
    ds.mode = sf.mode;
    ds.schema_fingerprint = schema_hash(sf);
    ds.num_bits = layout.total_qubits();
    ds.rows.reserve(table.rows.size());
    for (const Row& row : table.rows) ds.rows.push_back(encode_row(row, sf.schema, layout));
    return ds;
}

void save_encoded(const EncodedDataset& ds, const std::string& path) {
    json root;
    root["version"] = 1;
    root["mode"] = mode_name(ds.mode);
    root["schema_fingerprint"] = ds.schema_fingerprint;
    root["num_bits"] = ds.num_bits;
    root["rows"] = ds.rows;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write encoded dataset: " + path);
    out << root.dump() << "\n";
}

EncodedDataset load_encoded(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open encoded dataset: " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw DataError(std::string("encoded dataset is not valid JSON: ") + e.what());
    }
    if (root.value("version", 0) != 1) throw DataError("unsupported encoded dataset version");
    EncodedDataset ds;
    const auto mode = parse_mode(root.value("mode", std::string{}));
    if (!mode) throw DataError("encoded dataset has unknown mode");
    ds.mode = *mode;
    ds.schema_fingerprint = root.at("schema_fingerprint").get<std::uint64_t>();
    ds.num_bits = root.at("num_bits").get<int>();
    ds.rows = root.at("rows").get<std::vector<std::string>>();
    for (const auto& r : ds.rows)
        if (static_cast<int>(r.size()) != ds.num_bits)
            throw DataError("encoded dataset has a row of wrong width");
    return ds;
}

}  // namespace qtab
