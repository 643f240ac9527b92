// Copyright 2026 The camus-bench Authors. All Rights Reserved.
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

#include "camus/label_mask.hpp"

#include <algorithm>
#include <cmath>

#include "camus/error.hpp"

namespace camus {
namespace {

void check_geometry(int width, int height, Spacing spacing) {
  if (width <= 0 || height <= 0) {
    throw ValidationError("mask dimensions must be positive, got " + std::to_string(width) +
                          "x" + std::to_string(height));
  }
  if (!(spacing.x > 0.0) || !(spacing.z > 0.0) || !std::isfinite(spacing.x) ||
      !std::isfinite(spacing.z)) {
    throw ValidationError("mask spacing must be positive and finite");
  }
}

}  // namespace

LabelMask::LabelMask(int width, int height, Spacing spacing)
    : LabelMask(width, height, spacing,
                std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                          static_cast<std::size_t>(std::max(height, 0)))) {}

LabelMask::LabelMask(int width, int height, Spacing spacing, std::vector<std::uint8_t> values)
    : width_(width), height_(height), spacing_(spacing), values_(std::move(values)) {
  check_geometry(width, height, spacing);
  if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ValidationError("mask payload has " + std::to_string(values_.size()) +
                          " values, expected " + std::to_string(width * height));
  }
}

bool LabelMask::has_annotation_labels() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](std::uint8_t v) { return v <= kMaxLabel; });
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width < 0 || height < 0 ||
      bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ValidationError("binary mask payload does not match its dimensions");
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

}  // namespace camus
