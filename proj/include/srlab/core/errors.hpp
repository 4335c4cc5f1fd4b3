// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace srlab {

/// A literal that cannot be represented exactly in the requested format.
class NotRepresentable : public std::invalid_argument {
 public:
  explicit NotRepresentable(const std::string& what) : std::invalid_argument(what) {}
};

/// Rounding would leave the normal range of a bounded format (overflow or
/// subnormal territory). There are no subnormals, infinities or NaNs.
class RangeError : public std::range_error {
 public:
  explicit RangeError(const std::string& what) : std::range_error(what) {}
};

/// A condition number was requested for an exactly vanishing result.
class ZeroDenominator : public std::domain_error {
 public:
  explicit ZeroDenominator(const std::string& what) : std::domain_error(what) {}
};

}  // namespace srlab
