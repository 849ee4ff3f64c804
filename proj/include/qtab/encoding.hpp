#pragma once

#include <string>
#include <vector>

#include "qtab/layout.hpp"
#include "qtab/schema.hpp"
#include "qtab/table.hpp"

namespace qtab {

// Equal-width bin index of a value: clamp(round((v - min)/W), 0, 2^q - 1),
// W = (max - min)/2^q, rounding half away from zero. Out-of-range values
// clamp instead of failing so evaluation data outside the training range
// still encodes.
std::uint64_t bin_numeric(double value, const NumericSpec& spec);

// Bin representative: the lower edge min + i*W, which makes
// bin_numeric(unbin_numeric(i)) == i exact.
double unbin_numeric(std::uint64_t index, const NumericSpec& spec);

// Category position of a value within its feature's ordered category list.
std::uint64_t category_index(const std::string& value, const FeatureSpec& feature);

// Row -> bitstring under the layout: numeric features as big-endian bin
// indices, one-hot categories with the first category on the leftmost bit
// (|1000...>), Boolean-absorbed binaries as one bit equal to the category
// index. Unique-row-index layouts encode the mixed-radix row index instead.
std::string encode_row(const Row& row, const TabularSchema& schema, const RegisterLayout& layout);

// Inverse of encode_row up to binning (numeric cells come back as bin
// representatives). Throws DecodeError naming the offending register on a
// one-hot weight violation, or for an out-of-range unique-row index.
Row decode_bits(std::string_view bits, const TabularSchema& schema, const RegisterLayout& layout);

// True when a basis state decodes cleanly (one-hot registers have weight 1;
// unique-row index < |S|).
bool bits_valid(std::uint64_t basis_index, const TabularSchema& schema, const RegisterLayout& layout);

// Unique-row-index codec (mixed radix over feature cardinalities, first
// feature most significant), independent of any layout.
std::uint64_t unique_row_index(const Row& row, const TabularSchema& schema);
std::string unique_row_index_encode(const Row& row, const TabularSchema& schema);
Row unique_row_index_decode(std::string_view bits, const TabularSchema& schema);

// Encoded dataset file: bitstrings of every ingested row plus the schema
// fingerprint they were produced with.
struct EncodedDataset {
    EncodingMode mode = EncodingMode::NonBoolean;
    std::uint64_t schema_fingerprint = 0;
    int num_bits = 0;
    std::vector<std::string> rows;
};

EncodedDataset encode_table(const Table& table, const SchemaFile& sf);
void save_encoded(const EncodedDataset& ds, const std::string& path);
EncodedDataset load_encoded(const std::string& path);

}  // namespace qtab
