#include "qtab/schema.hpp"

#include <fstream>

#include <json.hpp>

namespace qtab {

using nlohmann::json;

void TabularSchema::validate() const {
    if (features.empty()) throw SchemaError("schema has no features");
    for (const auto& f : features) {
        if (f.name.empty()) throw SchemaError("feature with empty name");
        if (f.is_numeric()) {
            const auto& n = f.numeric();
            if (!(n.max > n.min))
                throw SchemaError("numeric feature '" + f.name + "' needs max > min");
            if (n.qubits < 1 || n.qubits > 16)
                throw SchemaError("numeric feature '" + f.name + "' needs 1..16 qubits");
        } else {
            const auto& cats = f.categorical().categories;
            if (cats.size() < 2)
                throw SchemaError("categorical feature '" + f.name + "' needs >= 2 categories");
            for (std::size_t i = 0; i < cats.size(); ++i)
                for (std::size_t j = i + 1; j < cats.size(); ++j)
                    if (cats[i] == cats[j])
                        throw SchemaError("categorical feature '" + f.name + "' has duplicate category '" +
                                          cats[i] + "'");
        }
    }
    for (std::size_t i = 0; i < features.size(); ++i)
        for (std::size_t j = i + 1; j < features.size(); ++j)
            if (features[i].name == features[j].name)
                throw SchemaError("duplicate feature name '" + features[i].name + "'");
}

int TabularSchema::feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < features.size(); ++i)
        if (features[i].name == name) return static_cast<int>(i);
    return -1;
}

const char* mode_name(EncodingMode m) {
    switch (m) {
        case EncodingMode::Boolean: return "boolean";
        case EncodingMode::NonBoolean: return "non-boolean";
        case EncodingMode::UniqueRowIndex: return "unique-row-index";
    }
    return "?";
}

std::optional<EncodingMode> parse_mode(const std::string& s) {
    if (s == "boolean") return EncodingMode::Boolean;
    if (s == "non-boolean") return EncodingMode::NonBoolean;
    if (s == "unique-row-index") return EncodingMode::UniqueRowIndex;
    return std::nullopt;
}

std::string schema_to_json(const SchemaFile& sf) {
    json feats = json::array();
    for (const auto& f : sf.schema.features) {
        json j;
        j["name"] = f.name;
        if (f.is_numeric()) {
            j["kind"] = "numeric";
            j["min"] = f.numeric().min;
            j["max"] = f.numeric().max;
            j["qubits"] = f.numeric().qubits;
        } else {
            j["kind"] = "categorical";
            j["categories"] = f.categorical().categories;
        }
        feats.push_back(j);
    }
    json root;
    root["version"] = 1;
    root["mode"] = mode_name(sf.mode);
    root["features"] = feats;
    return root.dump(2) + "\n";
}

SchemaFile schema_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("schema file is not valid JSON: ") + e.what());
    }
    if (!root.contains("version") || root["version"].get<int>() != 1)
        throw SchemaError("unsupported schema file version");
    SchemaFile sf;
    const auto mode = parse_mode(root.value("mode", std::string{}));
    if (!mode) throw SchemaError("schema file has unknown encoding mode");
    sf.mode = *mode;
    for (const auto& j : root.at("features")) {
        FeatureSpec f;
        f.name = j.at("name").get<std::string>();
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "numeric") {
            NumericSpec n;
            n.min = j.at("min").get<double>();
            n.max = j.at("max").get<double>();
            n.qubits = j.at("qubits").get<int>();
            f.kind = n;
        } else if (kind == "categorical") {
            CategoricalSpec c;
            c.categories = j.at("categories").get<std::vector<std::string>>();
            f.kind = c;
        } else {
            throw SchemaError("feature '" + f.name + "' has unknown kind '" + kind + "'");
        }
        sf.schema.features.push_back(std::move(f));
    }
    sf.schema.validate();
    return sf;
}

SchemaFile load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open schema file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return schema_from_json(text);
}

void save_schema(const SchemaFile& sf, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write schema file: " + path);
    out << schema_to_json(sf);
}

std::uint64_t schema_hash(const SchemaFile& sf) { return fnv1a(schema_to_json(sf)); }

}  // namespace qtab
