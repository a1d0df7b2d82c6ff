// Copyright 2026 The qrelay Authors
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

namespace qrelay {

/// Bad experiment definition (config file, CLI flags, calibration anchors).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A single-use entangled link was touched after consumption.
class ReplayError : public std::runtime_error {
 public:
  explicit ReplayError(const std::string& what) : std::runtime_error(what) {}
};

/// A link was used outside its coherence window.
class ExpiredError : public std::runtime_error {
 public:
  explicit ExpiredError(const std::string& what) : std::runtime_error(what) {}
};

/// Entanglement distribution could not produce the requested links.
class DistributionError : public std::runtime_error {
 public:
  explicit DistributionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qrelay
