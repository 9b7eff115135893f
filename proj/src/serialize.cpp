#include "gwv/serialize.hpp"

#include <cstdio>

namespace gwv {

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

void JsonWriter::field(std::string_view key, double v) { field_raw(key, format_g17(v)); }

void JsonWriter::field(std::string_view key, std::string_view v) {
    field_raw(key, "\"" + json_escape(v) + "\"");
}

void JsonWriter::field(std::string_view key, bool v) { field_raw(key, v ? "true" : "false"); }

void JsonWriter::field(std::string_view key, long v) { field_raw(key, std::to_string(v)); }

void JsonWriter::field_raw(std::string_view key, std::string_view json_value) {
    if (!body_.empty()) body_ += ",";
    body_ += "\"";
    body_ += json_escape(key);
    body_ += "\":";
    body_ += json_value;
}

std::string JsonWriter::str() const { return "{" + body_ + "}"; }

std::string csv_join(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ",";
        out += cells[i];
    }
    return out;
}

}  // namespace gwv
