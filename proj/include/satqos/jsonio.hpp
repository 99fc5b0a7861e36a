#pragma once

// Canonical JSON emission. Object keys are written in the order the
// caller supplies them (all emitters in this project use alphabetical
// order), floating-point values with 17 significant digits via
// std::to_chars, so identical data produces identical bytes on every
// platform and run.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace satqos {

// 17-significant-digit general format (round-trips every double).
std::string format_double(double value);
// Fixed-point with six decimals, for the CSV tables.
std::string format_fixed6(double value);

std::string json_escape(std::string_view s);

class JsonWriter {
  public:
    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(std::string_view name);
    void value(double v);
    void value(std::uint64_t v);
    void value(std::int64_t v);
    void value(int v) { value(static_cast<std::int64_t>(v)); }
    void value(bool v);
    void value(std::string_view v);
    void value(const char* v) { value(std::string_view(v)); }

    // Convenience: key + scalar.
    template <typename T>
    void field(std::string_view name, T v) {
        key(name);
        value(v);
    }

    std::string take();

  private:
    void pre_value();
    std::string out_;
    std::vector<bool> needs_comma_;
};

}  // namespace satqos
