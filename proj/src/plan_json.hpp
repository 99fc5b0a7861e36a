#pragma once

// Internal: strict JSON object readers with JSON-pointer error paths,
// shared by the plan and report-bundle parsers.

#include <cstdint>
#include <set>
#include <string>

#include <json.hpp>

#include "satqos/errors.hpp"
#include "satqos/jsonio.hpp"
#include "satqos/testplan.hpp"

namespace satqos::detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
    throw ValidationError("validation error at " + path + ": " + msg);
}

// Tracks which keys were consumed; finish() rejects everything else.
class ObjectReader {
  public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) fail(path_.empty() ? "/" : path_, "expected an object");
    }

    const json* optional(const char* name) {
        known_.insert(name);
        auto it = j_.find(name);
        return it == j_.end() ? nullptr : &*it;
    }

    const json& required(const char* name) {
        const json* p = optional(name);
        if (p == nullptr) fail(child(name), "missing required field");
        return *p;
    }

    void finish() const {
        for (const auto& item : j_.items()) {
            if (!known_.contains(item.key())) fail(child(item.key()), "unknown key");
        }
    }

    std::string child(const std::string& name) const { return path_ + "/" + name; }

  private:
    const json& j_;
    std::string path_;
    std::set<std::string, std::less<>> known_;
};

inline double as_double(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

inline std::int64_t as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

inline std::uint64_t as_u64(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        fail(path, "expected an unsigned integer");
    }
    return j.get<std::uint64_t>();
}

inline std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

inline bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

// Plan object (not the whole document): parse from / emit into a writer.
TestPlan parse_plan_object(const json& j, const std::string& path);
void emit_plan_object(JsonWriter& w, const TestPlan& plan);

}  // namespace satqos::detail
