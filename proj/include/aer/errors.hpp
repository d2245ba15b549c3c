// Copyright 2026 The aer Authors. All Rights Reserved.
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

#pragma once

#include <stdexcept>
#include <string>

namespace aer {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed container or truncated chunk while reading audio.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Container parsed fine but holds no samples.
class EmptyAudioError : public DecodeError {
 public:
  using DecodeError::DecodeError;
};

/// Well-formed file in an encoding we do not read (e.g. A-law, 8-bit PCM).
class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

/// Bad argument value at an API boundary.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Tensor or layer geometry that does not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t epoch, std::size_t step)
      : Error(what), epoch_(epoch), step_(step) {}
  std::size_t epoch() const { return epoch_; }
  std::size_t step() const { return step_; }

 private:
  std::size_t epoch_;
  std::size_t step_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace aer
