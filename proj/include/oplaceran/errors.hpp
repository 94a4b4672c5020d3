/*
 * Copyright 2026 The OPlaceRAN Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OPLACERAN_ERRORS_HPP
#define OPLACERAN_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oplaceran {

/// Base of every exception raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define OPLACERAN_DECLARE_ERROR(Name)              \
    class Name : public Error                      \
    {                                              \
    public:                                        \
        using Error::Error;                        \
    }

OPLACERAN_DECLARE_ERROR(ParseError);
OPLACERAN_DECLARE_ERROR(NoPath);
OPLACERAN_DECLARE_ERROR(UnknownNode);
OPLACERAN_DECLARE_ERROR(DuplicateId);
OPLACERAN_DECLARE_ERROR(MissingEntry);
OPLACERAN_DECLARE_ERROR(UnknownSolver);
OPLACERAN_DECLARE_ERROR(TooLarge);
OPLACERAN_DECLARE_ERROR(UnknownToken);
OPLACERAN_DECLARE_ERROR(UnknownDeployment);
OPLACERAN_DECLARE_ERROR(InsufficientResources);
OPLACERAN_DECLARE_ERROR(LinkOverCommit);
OPLACERAN_DECLARE_ERROR(SimulatorUnavailable);
OPLACERAN_DECLARE_ERROR(CatalogUnavailable);

#undef OPLACERAN_DECLARE_ERROR

/// An error that carries an itemized list of the broken constraints.
class ViolationError : public Error
{
public:
    ViolationError(const std::string& what, std::vector<std::string> violations)
        : Error(what + compose(violations)), violations_(std::move(violations))
    {
    }

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string compose(const std::vector<std::string>& v)
    {
        std::string s;
        for (const auto& item : v) {
            s += s.empty() ? ": " : "; ";
            s += item;
        }
        return s;
    }

    std::vector<std::string> violations_;
};

class ValidationError : public ViolationError
{
public:
    using ViolationError::ViolationError;
};

class InfeasibleRequest : public ViolationError
{
public:
    using ViolationError::ViolationError;
};

} // namespace oplaceran

#endif // OPLACERAN_ERRORS_HPP
