// SPDX-License-Identifier: Apache-2.0
//
// subnyq - sub-Nyquist carrier and DOA estimation toolkit
// Copyright (C) 2026 The subnyq authors
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

#ifndef SUBNYQ_ERROR_HPP
#define SUBNYQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace subnyq
{
    // Base class of every error the library throws on purpose.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Invalid parameters or a configuration that violates a recovery condition.
    class ConfigError : public Error
    {
    public:
        using Error::Error;
    };

    // Rejection sampling could not satisfy the scene constraints.
    class ConstraintError : public Error
    {
    public:
        using Error::Error;
    };

    class InsufficientSensorsError : public Error
    {
    public:
        using Error::Error;
    };

    class RankDeficientError : public Error
    {
    public:
        using Error::Error;
    };

    class PairingAmbiguityError : public Error
    {
    public:
        using Error::Error;
    };

    class DimensionError : public Error
    {
    public:
        using Error::Error;
    };

    class IoError : public Error
    {
    public:
        using Error::Error;
    };
}

#endif
