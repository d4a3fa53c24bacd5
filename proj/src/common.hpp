// Copyright 2026 The fairbias Authors
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

#ifndef FAIRBIAS_COMMON_HPP_
#define FAIRBIAS_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/dynamic_bitset.hpp>
#include <boost/rational.hpp>

namespace fairbias {

/// Dense index of a point (server location) in [0, n).
using PointId = std::int32_t;

/// Integer cost units. Callers pick a fixed-point scale for real distances.
using Cost = std::int64_t;

/// Exact rational value. All LP values and demands are carried this way.
using Rational = boost::rational<std::int64_t>;

/// Membership flags over the points of an instance (free servers, subsets).
using PointSet = boost::dynamic_bitset<>;

enum class ErrorCode {
  kInvalidArgument = 1,
  kNotMetric,
  kParse,
  kIo,
  kIncompatible,
  kInternal,
};

/// Every failure raised by the library carries one of the codes above; the C
/// API maps them one-to-one onto its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::kInvalidArgument, what);
}

}  // namespace fairbias

#endif  // FAIRBIAS_COMMON_HPP_
