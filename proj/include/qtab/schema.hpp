#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qtab/common.hpp"

namespace qtab {

// Equal-width binning spec for a numeric feature: 2^qubits bins of width
// (max - min) / 2^qubits, bounds frozen from the training data at ingestion.
struct NumericSpec {
    double min = 0.0;
    double max = 1.0;
    int qubits = 1;

    double bin_width() const { return (max - min) / static_cast<double>(std::uint64_t{1} << qubits); }
    std::uint64_t bin_count() const { return std::uint64_t{1} << qubits; }
};

struct CategoricalSpec {
    std::vector<std::string> categories;  // ordered, defines one-hot positions
};

struct FeatureSpec {
    std::string name;
    std::variant<NumericSpec, CategoricalSpec> kind;

    bool is_numeric() const { return std::holds_alternative<NumericSpec>(kind); }
    const NumericSpec& numeric() const { return std::get<NumericSpec>(kind); }
    const CategoricalSpec& categorical() const { return std::get<CategoricalSpec>(kind); }
    // Number of distinct encoded values this feature can take.
    std::uint64_t cardinality() const {
        return is_numeric() ? numeric().bin_count() : categorical().categories.size();
    }
};

struct TabularSchema {
    std::vector<FeatureSpec> features;

    void validate() const;
    int feature_index(const std::string& name) const;  // -1 if absent
};

enum class EncodingMode { Boolean, NonBoolean, UniqueRowIndex };

const char* mode_name(EncodingMode m);
std::optional<EncodingMode> parse_mode(const std::string& s);

// Schema file = feature specs + the encoding mode chosen at ingestion.
struct SchemaFile {
    TabularSchema schema;
    EncodingMode mode = EncodingMode::NonBoolean;
};

std::string schema_to_json(const SchemaFile& sf);
SchemaFile schema_from_json(const std::string& text);
SchemaFile load_schema(const std::string& path);
void save_schema(const SchemaFile& sf, const std::string& path);

// Fingerprint of the canonical JSON form; stored in encoded-data and
// checkpoint files to catch mismatched inputs.
std::uint64_t schema_hash(const SchemaFile& sf);

}  // namespace qtab
