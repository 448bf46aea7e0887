// SPDX-License-Identifier: Apache-2.0
//
// srris: successive relaying with reconfigurable intelligent surfaces
// Copyright (C) 2026 The srris authors
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

#ifndef SRRIS_ERRORS_HPP
#define SRRIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace srris
{
    // Invalid scenario or sweep configuration. The message names the offending field path.
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Argument outside the mathematical domain of an operation (e.g. non-positive distance).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Caller broke a documented precondition (dimension mismatch, non-Hermitian input, ...).
    class ContractViolation : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };

    // The inner barrier solver could not converge within its iteration cap.
    class SolverError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Exhaustive search refused because the grid would be too large.
    class GuardError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Row set handed to the aggregator does not cover every requested tuple.
    class AggregationError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    inline void require(bool cond, const std::string &what)
    {
        if (!cond)
            throw ContractViolation(what);
    }
}

#endif
