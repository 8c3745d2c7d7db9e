#pragma once
#include <map>
#include <string>
#include <variant>
#include <vector>

// Minimal TOML-style reader covering what scenario files need: [sections],
// [[arrays of tables]], dotted section paths, scalar and flat-array values,
// and # comments. Not a general TOML implementation.

namespace machsim::toml_lite {

struct Value;
using Table = std::map<std::string, Value>;

struct Value {
    std::variant<std::string, double, bool, std::vector<Value>, Table, std::vector<Table>> v;
    bool is_int = false;       // numeric literal had no fraction/exponent
    long long int_value = 0;   // valid when is_int

    bool is_str() const { return std::holds_alternative<std::string>(v); }
    bool is_num() const { return std::holds_alternative<double>(v); }
    bool is_bool() const { return std::holds_alternative<bool>(v); }
    bool is_array() const { return std::holds_alternative<std::vector<Value>>(v); }
    bool is_table() const { return std::holds_alternative<Table>(v); }
    bool is_table_array() const { return std::holds_alternative<std::vector<Table>>(v); }
};

// Throws machsim::ConfigError with a line reference on malformed input.
Table parse(const std::string& text);
Table parse_file(const std::string& path);

}  // namespace machsim::toml_lite
