#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gwv {

// All floating-point output goes through this: 17 significant digits, enough
// to round-trip any double bit-exactly.
std::string format_g17(double v);

// Minimal insertion-ordered JSON object writer (doubles at 17 significant
// digits, which general-purpose JSON emitters do not guarantee).
class JsonWriter {
public:
    void field(std::string_view key, double v);
    void field(std::string_view key, std::string_view v);
    void field(std::string_view key, bool v);
    void field(std::string_view key, long v);
    // value must already be valid JSON (nested array/object).
    void field_raw(std::string_view key, std::string_view json_value);
    std::string str() const;

private:
    std::string body_;
};

std::string json_escape(std::string_view s);
std::string csv_join(const std::vector<std::string>& cells);

}  // namespace gwv
