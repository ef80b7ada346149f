// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geoverify {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dataset record failed to parse or violated a schema invariant.
class DatasetError : public Error {
public:
    DatasetError(std::size_t line, std::string field, const std::string& message)
        : Error(format(line, field, message)), line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(std::size_t line, const std::string& field, const std::string& message) {
        std::string out;
        if (line > 0) out += "line " + std::to_string(line) + ": ";
        if (!field.empty()) out += "field '" + field + "': ";
        return out + message;
    }

    std::size_t line_;
    std::string field_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace geoverify
