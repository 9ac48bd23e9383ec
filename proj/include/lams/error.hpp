// Copyright 2026 The lams Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lams {

// Every error raised by the library derives from LamsError; `kind()` is the
// stable identifier the CLI and tests match on.
class LamsError : public std::runtime_error {
public:
    LamsError(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define LAMS_DEFINE_ERROR(Name)                                              \
    class Name : public LamsError {                                          \
    public:                                                                  \
        explicit Name(const std::string& msg) : LamsError(#Name, msg) {}     \
    };

// ast-core
LAMS_DEFINE_ERROR(SumNotOne)
// parser
LAMS_DEFINE_ERROR(NonQubitParam)
// typechecker
LAMS_DEFINE_ERROR(LinearityViolation)
LAMS_DEFINE_ERROR(TypeMismatch)
LAMS_DEFINE_ERROR(ArityError)
LAMS_DEFINE_ERROR(NotQubitType)
LAMS_DEFINE_ERROR(NoJoin)
LAMS_DEFINE_ERROR(NotLiftable)
// rewrite engine
LAMS_DEFINE_ERROR(StuckIllTyped)
LAMS_DEFINE_ERROR(NotAKetSum)
LAMS_DEFINE_ERROR(ZeroNorm)
// semantics
LAMS_DEFINE_ERROR(DomainMismatch)
LAMS_DEFINE_ERROR(KeyNotVec)
LAMS_DEFINE_ERROR(DepthMismatch)
// harness
LAMS_DEFINE_ERROR(OutOfFragment)

#undef LAMS_DEFINE_ERROR

// Parse errors carry a 1-based source position.
class SyntaxError : public LamsError {
public:
    SyntaxError(const std::string& msg, int line, int col)
        : LamsError("SyntaxError", at(msg, line, col)), line_(line), col_(col) {}
    int line() const { return line_; }
    int column() const { return col_; }

protected:
    SyntaxError(const char* kind, const std::string& msg, int line, int col)
        : LamsError(kind, at(msg, line, col)), line_(line), col_(col) {}

private:
    static std::string at(const std::string& msg, int line, int col) {
        return std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
    }
    int line_, col_;
};

class UnknownIdentifier : public SyntaxError {
public:
    UnknownIdentifier(const std::string& name, int line, int col)
        : SyntaxError("UnknownIdentifier", "unknown identifier '" + name + "'", line, col) {}
};

}  // namespace lams
