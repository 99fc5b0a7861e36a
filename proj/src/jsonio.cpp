#include "satqos/jsonio.hpp"

#include <cassert>
#include <charconv>
#include <cstdio>

namespace satqos {

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    assert(ec == std::errc());
    return std::string(buf, end);
}

std::string format_fixed6(double value) {
    char buf[512];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
    assert(ec == std::errc());
    return std::string(buf, end);
}

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

void JsonWriter::pre_value() {
    if (!needs_comma_.empty()) {
        if (needs_comma_.back()) out_ += ',';
        needs_comma_.back() = true;
    }
}

void JsonWriter::begin_object() {
    pre_value();
    out_ += '{';
    needs_comma_.push_back(false);
}

void JsonWriter::end_object() {
    needs_comma_.pop_back();
    out_ += '}';
}

void JsonWriter::begin_array() {
    pre_value();
    out_ += '[';
    needs_comma_.push_back(false);
}

void JsonWriter::end_array() {
    needs_comma_.pop_back();
    out_ += ']';
}

void JsonWriter::key(std::string_view name) {
    if (needs_comma_.back()) out_ += ',';
    needs_comma_.back() = false;  // the upcoming value completes the pair
    out_ += '"';
    out_ += json_escape(name);
    out_ += "\":";
}

void JsonWriter::value(double v) {
    pre_value();
    out_ += format_double(v);
}

void JsonWriter::value(std::uint64_t v) {
    pre_value();
    out_ += std::to_string(v);
}

void JsonWriter::value(std::int64_t v) {
    pre_value();
    out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
    pre_value();
    out_ += v ? "true" : "false";
}

void JsonWriter::value(std::string_view v) {
    pre_value();
    out_ += '"';
    out_ += json_escape(v);
    out_ += '"';
}

std::string JsonWriter::take() { return std::move(out_); }

}  // namespace satqos
