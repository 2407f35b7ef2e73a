// Copyright 2026 The tcue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TCUE__ERRORS_HPP_
#define TCUE__ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tcue
{

/// Root of every error the engine throws.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Input was rejected before any work ran: bad documents, bad configs,
/// out-of-range arguments. The CLI maps these to exit code 2.
class InputError : public Error
{
public:
  using Error::Error;
};

class ParseError : public InputError
{
public:
  using InputError::InputError;
};

class ValidationError : public InputError
{
public:
  using InputError::InputError;
};

class GridTooSmall : public InputError
{
public:
  using InputError::InputError;
};

class NonPositiveSigma : public InputError
{
public:
  using InputError::InputError;
};

class UnorderedSamples : public InputError
{
public:
  using InputError::InputError;
};

class TooManyWaypoints : public InputError
{
public:
  using InputError::InputError;
};

class SceneNotFound : public InputError
{
public:
  using InputError::InputError;
};

class ClockRegression : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

}  // namespace tcue

#endif  // TCUE__ERRORS_HPP_
