#ifndef MCI_TEST_SUPPORT_HPP
#define MCI_TEST_SUPPORT_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mci/cli.hpp"

namespace support {

struct cli_result {
    int exit_code = 0;
    std::string out;
    std::string err;
};

inline cli_result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = mci::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string test_data(const std::string& name) {
    return std::string(MCI_TEST_DATA_DIR) + "/" + name;
}

inline std::string schema_path(const std::string& name) {
    return std::string(MCI_SCHEMA_DIR) + "/" + name;
}

// scratch file that cleans up after the test
class temp_file {
public:
    explicit temp_file(const std::string& name)
        : path_((std::filesystem::temp_directory_path() / name).string()) {}
    ~temp_file() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// Structural validator for the JSON-Schema subset used under schemas/:
// type, enum, minimum/maximum, required, properties, additionalProperties,
// items, minItems/maxItems. Returns human-readable problems, empty if valid.
inline void check_schema(const nlohmann::json& schema, const nlohmann::json& value,
                         const std::string& where, std::vector<std::string>& problems) {
    using nlohmann::json;
    if (schema.contains("type")) {
        const std::string type = schema["type"].get<std::string>();
        bool ok = true;
        if (type == "object")
            ok = value.is_object();
        else if (type == "array")
            ok = value.is_array();
        else if (type == "string")
            ok = value.is_string();
        else if (type == "boolean")
            ok = value.is_boolean();
        else if (type == "integer")
            ok = value.is_number_integer() || value.is_number_unsigned();
        else if (type == "number")
            ok = value.is_number();
        if (!ok) {
            problems.push_back(where + ": expected " + type + ", got " +
                               std::string(value.type_name()));
            return;
        }
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& candidate : schema["enum"]) found = found || candidate == value;
        if (!found) problems.push_back(where + ": value not in enum");
    }
    if (value.is_number()) {
        const double v = value.get<double>();
        if (schema.contains("minimum") && v < schema["minimum"].get<double>())
            problems.push_back(where + ": below minimum");
        if (schema.contains("maximum") && v > schema["maximum"].get<double>())
            problems.push_back(where + ": above maximum");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    problems.push_back(where + ": missing required key '" +
                                       key.get<std::string>() + "'");
        const auto& props = schema.contains("properties") ? schema["properties"]
                                                          : json::object();
        for (const auto& [key, sub] : value.items()) {
            if (props.contains(key))
                check_schema(props[key], sub, where + "." + key, problems);
            else if (schema.value("additionalProperties", true) == false)
                problems.push_back(where + ": unexpected key '" + key + "'");
        }
    }
    if (value.is_array()) {
        if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>())
            problems.push_back(where + ": too few items");
        if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>())
            problems.push_back(where + ": too many items");
        if (schema.contains("items"))
            for (std::size_t i = 0; i < value.size(); ++i)
                check_schema(schema["items"], value[i],
                             where + "[" + std::to_string(i) + "]", problems);
    }
}

inline std::vector<std::string> validate_against_schema(const std::string& schema_file,
                                                        const std::string& json_text) {
    const auto schema = nlohmann::json::parse(read_file(schema_file));
    const auto value = nlohmann::json::parse(json_text);
    std::vector<std::string> problems;
    check_schema(schema, value, "$", problems);
    return problems;
}

} // namespace support

#endif // MCI_TEST_SUPPORT_HPP
