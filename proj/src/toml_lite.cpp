#include "machsim/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "machsim/types.hpp"

namespace machsim::toml_lite {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// strips a trailing comment, respecting double-quoted strings
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '"' && (i == 0 || s[i - 1] != '\\')) in_str = !in_str;
        if (c == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

std::vector<std::string> split_path(const std::string& s, int line) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '.')) {
        part = trim(part);
        if (part.empty()) fail(line, "empty section path component");
        parts.push_back(part);
    }
    if (parts.empty()) fail(line, "empty section path");
    return parts;
}

bool looks_like_number(const std::string& s) {
    if (s.empty()) return false;
    char c = s[0];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
}

Value parse_scalar(const std::string& raw, int line) {
    Value v;
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
        std::string s;
        for (size_t i = 1; i + 1 < raw.size(); ++i) {
            if (raw[i] == '\\' && i + 2 < raw.size()) ++i;  // keep escaped char verbatim
            s += raw[i];
        }
        v.v = s;
        return v;
    }
    if (raw == "true" || raw == "false") {
        v.v = (raw == "true");
        return v;
    }
    if (looks_like_number(raw)) {
        try {
            size_t pos = 0;
            double d = std::stod(raw, &pos);
            if (pos != raw.size()) fail(line, "bad number '" + raw + "'");
            v.v = d;
            if (raw.find_first_of(".eE") == std::string::npos) {
                v.is_int = true;
                v.int_value = std::stoll(raw);
            }
            return v;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            fail(line, "bad number '" + raw + "'");
        }
    }
    fail(line, "unrecognized value '" + raw + "'");
}

Value parse_value(const std::string& raw, int line) {
    if (!raw.empty() && raw.front() == '[') {
        if (raw.back() != ']') fail(line, "unterminated array");
        Value arr;
        std::vector<Value> items;
        std::string body = raw.substr(1, raw.size() - 2);
        // split on commas outside quotes
        std::string cur;
        bool in_str = false;
        for (char c : body) {
            if (c == '"') in_str = !in_str;
            if (c == ',' && !in_str) {
                std::string item = trim(cur);
                if (!item.empty()) items.push_back(parse_scalar(item, line));
                cur.clear();
            } else {
                cur += c;
            }
        }
        std::string item = trim(cur);
        if (!item.empty()) items.push_back(parse_scalar(item, line));
        arr.v = items;
        return arr;
    }
    return parse_scalar(raw, line);
}

Table* descend(Table& root, const std::vector<std::string>& path, int line) {
    Table* t = &root;
    for (const auto& key : path) {
        bool fresh = !t->count(key);
        Value& slot = (*t)[key];
        if (slot.is_table_array()) {
            auto& arr = std::get<std::vector<Table>>(slot.v);
            if (arr.empty()) fail(line, "section '" + key + "' has no elements");
            t = &arr.back();
        } else {
            if (!slot.is_table()) {
                if (!fresh) fail(line, "'" + key + "' is not a section");
                slot.v = Table{};
            }
            t = &std::get<Table>(slot.v);
        }
    }
    return t;
}

}  // namespace

Table parse(const std::string& text) {
    Table root;
    Table* current = &root;

    std::stringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string s = trim(strip_comment(line));
        if (s.empty()) continue;

        if (s.size() >= 4 && s.compare(0, 2, "[[") == 0) {
            if (s.compare(s.size() - 2, 2, "]]") != 0) fail(lineno, "unterminated [[section]]");
            auto path = split_path(s.substr(2, s.size() - 4), lineno);
            Table* parent =
                path.size() > 1
                    ? descend(root, {path.begin(), path.end() - 1}, lineno)
                    : &root;
            Value& slot = (*parent)[path.back()];
            if (!slot.is_table_array()) slot.v = std::vector<Table>{};
            std::get<std::vector<Table>>(slot.v).emplace_back();
            current = &std::get<std::vector<Table>>(slot.v).back();
            continue;
        }
        if (s.front() == '[') {
            if (s.back() != ']') fail(lineno, "unterminated [section]");
            auto path = split_path(s.substr(1, s.size() - 2), lineno);
            current = descend(root, path, lineno);
            continue;
        }
        size_t eq = std::string::npos;
        {
            bool in_str = false;
            for (size_t i = 0; i < s.size(); ++i) {
                if (s[i] == '"') in_str = !in_str;
                if (s[i] == '=' && !in_str) {
                    eq = i;
                    break;
                }
            }
        }
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (val.empty()) fail(lineno, "missing value for '" + key + "'");
        if (current->count(key)) fail(lineno, "duplicate key '" + key + "'");
        (*current)[key] = parse_value(val, lineno);
    }
    return root;
}

Table parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace machsim::toml_lite
