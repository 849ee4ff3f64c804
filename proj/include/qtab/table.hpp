#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qtab/common.hpp"
#include "qtab/schema.hpp"

namespace qtab {

// One cell of a typed row: numeric value or category label.
using Value = std::variant<double, std::string>;
using Row = std::vector<Value>;

inline double num_value(const Value& v) { return std::get<double>(v); }
inline const std::string& cat_value(const Value& v) { return std::get<std::string>(v); }

// Typed table whose columns follow a schema's feature order.
struct Table {
    std::vector<std::string> columns;
    std::vector<Row> rows;

    std::size_t num_rows() const { return rows.size(); }
};

// Raw CSV contents, all cells as strings. RFC-4180 quoting, first row header.
struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const;  // -1 if absent
};

RawTable read_csv(const std::string& path);
void write_csv(const Table& table, const std::string& path);

// Project and type-convert raw CSV columns against a schema. Unknown
// categories or unparseable numerics raise DataError naming the row.
Table typed_table(const RawTable& raw, const TabularSchema& schema);

}  // namespace qtab
