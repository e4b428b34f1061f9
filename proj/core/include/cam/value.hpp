#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace cam {

/// Runtime value of the interpreted language: 64-bit integer, boolean, or a
/// fixed-length integer array. Values have copy semantics everywhere.
class Value {
  public:
    Value() : repr_(std::int64_t{0}) {}
    explicit Value(std::int64_t v) : repr_(v) {}
    explicit Value(bool v) : repr_(v) {}
    explicit Value(std::vector<std::int64_t> v) : repr_(std::move(v)) {}

    static Value integer(std::int64_t v) { return Value(v); }
    static Value boolean(bool v) { return Value(v); }
    static Value array(std::vector<std::int64_t> v) { return Value(std::move(v)); }

    bool is_int() const { return std::holds_alternative<std::int64_t>(repr_); }
    bool is_bool() const { return std::holds_alternative<bool>(repr_); }
    bool is_array() const { return std::holds_alternative<std::vector<std::int64_t>>(repr_); }

    std::int64_t as_int() const { return std::get<std::int64_t>(repr_); }
    bool as_bool() const { return std::get<bool>(repr_); }
    const std::vector<std::int64_t>& as_array() const {
        return std::get<std::vector<std::int64_t>>(repr_);
    }
    std::vector<std::int64_t>& as_array() {
        return std::get<std::vector<std::int64_t>>(repr_);
    }

    const char* type_name() const {
        if (is_int()) return "int";
        if (is_bool()) return "bool";
        return "array";
    }

    /// Deep structural equality. Values of different types are never equal;
    /// arrays compare length first, then element by element.
    friend bool operator==(const Value&, const Value&) = default;

    /// Renders the value the way it would appear in source text, e.g. `42`,
    /// `true`, `[1, 2, 3]`.
    std::string to_string() const;

  private:
    std::variant<std::int64_t, bool, std::vector<std::int64_t>> repr_;
};

} // namespace cam
