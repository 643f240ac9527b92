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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace camus {

/// Physical pixel size in millimetres: `x` lateral (parallel to the probe),
/// `z` axial (depth).
struct Spacing {
  double x = 1.0;
  double z = 1.0;

  bool operator==(const Spacing&) const = default;
};

/// Annotation label values. Grayscale images reuse LabelMask with 0..255.
enum Label : std::uint8_t {
  kBackground = 0,
  kLvCavity = 1,
  kMyocardium = 2,
  kLeftAtrium = 3,
};
inline constexpr std::uint8_t kMaxLabel = kLeftAtrium;

/// Header keys that are not interpreted by the reader but kept, in file
/// order, so a read/write cycle preserves them.
using HeaderFields = std::vector<std::pair<std::string, std::string>>;

/// Row-major 2D grid of 8-bit values with physical spacing.
class LabelMask {
 public:
  LabelMask() = default;
  /// Zero-filled mask. Throws ValidationError on non-positive sizes/spacing.
  LabelMask(int width, int height, Spacing spacing);
  /// Throws ValidationError when `values.size() != width * height`.
  LabelMask(int width, int height, Spacing spacing, std::vector<std::uint8_t> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  Spacing spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::uint8_t operator()(int col, int row) const {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }
  std::uint8_t& operator()(int col, int row) {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }

  std::span<const std::uint8_t> values() const noexcept { return values_; }
  std::span<std::uint8_t> values() noexcept { return values_; }

  const HeaderFields& extra_header() const noexcept { return extra_header_; }
  void set_extra_header(HeaderFields fields) { extra_header_ = std::move(fields); }

  /// True when every value is a valid annotation label (0..3).
  bool has_annotation_labels() const noexcept;

  bool operator==(const LabelMask&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  Spacing spacing_{};
  std::vector<std::uint8_t> values_;
  HeaderFields extra_header_;
};

/// Foreground/background grid; no spacing, geometry is in pixel units.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height) : width_(width), height_(height),
        bits_(static_cast<std::size_t>(width) * height, 0) {}
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool operator()(int col, int row) const {
    return bits_[static_cast<std::size_t>(row) * width_ + col] != 0;
  }
  void set(int col, int row, bool on) {
    bits_[static_cast<std::size_t>(row) * width_ + col] = on ? 1 : 0;
  }
  bool contains(int col, int row) const noexcept {
    return col >= 0 && row >= 0 && col < width_ && row < height_;
  }
  /// Out-of-grid positions read as background.
  bool at_or_background(int col, int row) const noexcept {
    return contains(col, row) && (*this)(col, row);
  }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }

  bool operator==(const BinaryMask&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;  // 0 or 1
};

}  // namespace camus
