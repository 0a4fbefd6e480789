// wbansim - coexistence simulator for wireless body area networks
// Copyright (C) 2026 The wbansim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wbansim
{

// Invalid argument to an operation (non-positive dt, out-of-range index, ...).
class ParameterError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Input is well-formed but statistically degenerate (constant samples, zero variance).
class DegenerateInputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed file content. `line()` is 1-based; 0 means the error is not tied to a line.
class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string &message, std::size_t line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line)
    {
    }

    // Prepends context (e.g. a file name) while keeping the line number.
    ParseError(const std::string &context, const ParseError &inner)
        : std::runtime_error(context + ": " + inner.what()), line_(inner.line_)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A scenario, schedule or trace set does not satisfy a structural requirement.
class ValidationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedFamilyError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A quantity is mathematically undefined for the given input (e.g. AOD with zero LCR).
class UndefinedValueError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Missing or invalid configuration key. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace wbansim
