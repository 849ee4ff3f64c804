#include "qtab/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qtab {
namespace {

// RFC 4180: fields may be quoted; quotes escape as "".
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q.push_back(c);
    }
    q.push_back('"');
    return q;
}

std::string format_number(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        std::ostringstream os;
        os << static_cast<long long>(v);
        return os.str();
    }
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

int RawTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

RawTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open CSV file: " + path);
    RawTable t;
    std::string line;
    if (!std::getline(in, line)) throw DataError("CSV file is empty: " + path);
    t.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        cells.resize(t.header.size());
        t.rows.push_back(std::move(cells));
    }
    return t;
}

void write_csv(const Table& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write CSV file: " + path);
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << quote_csv(table.columns[i]);
    out << "\n";
    for (const Row& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            if (std::holds_alternative<double>(row[i]))
                out << format_number(num_value(row[i]));
            else
                out << quote_csv(cat_value(row[i]));
        }
        out << "\n";
    }
}

Table typed_table(const RawTable& raw, const TabularSchema& schema) {
    Table t;
    std::vector<int> col_of;
    for (const auto& f : schema.features) {
        t.columns.push_back(f.name);
        const int c = raw.column_index(f.name);
        if (c < 0) throw DataError("CSV is missing declared column '" + f.name + "'");
        col_of.push_back(c);
    }
    t.rows.reserve(raw.rows.size());
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        Row row;
        row.reserve(schema.features.size());
        for (std::size_t f = 0; f < schema.features.size(); ++f) {
            const std::string& cell = raw.rows[r][static_cast<std::size_t>(col_of[f])];
            if (schema.features[f].is_numeric()) {
                double v = 0.0;
                const auto* end = cell.data() + cell.size();
                auto [p, ec] = std::from_chars(cell.data(), end, v);
                if (ec != std::errc{} || p != end)
                    throw DataError("row " + std::to_string(r + 2) + ": cannot parse numeric value '" +
                                    cell + "' in column '" + schema.features[f].name + "'");
                row.emplace_back(v);
            } else {
                const auto& cats = schema.features[f].categorical().categories;
                bool known = false;
                for (const auto& c : cats)
                    if (c == cell) {
                        known = true;
                        break;
                    }
                if (!known)
                    throw DataError("row " + std::to_string(r + 2) + ": unknown category '" + cell +
                                    "' in column '" + schema.features[f].name + "'");
                row.emplace_back(cell);
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace qtab
