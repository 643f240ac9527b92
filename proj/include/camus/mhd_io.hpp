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

#include <filesystem>
#include <string>
#include <string_view>

#include "camus/label_mask.hpp"

/// MetaImage-style mask files: a `Key = Value` text header (`.mhd`) plus a
/// separate raw payload, one unsigned byte per pixel, row-major,
/// width-fastest.
///
/// Interpreted keys: `NDims` (must be 2), `DimSize` (width height),
/// `ElementType` (`MET_UCHAR`), `ElementSpacing` (lateral axial, mm) and
/// `ElementDataFile` (path relative to the header). `CompressedData`,
/// `ElementNumberOfChannels` and `HeaderSize` are checked for values this
/// reader supports (False, 1, 0) and otherwise kept like any other key.
///
/// Headers are written in a fixed order: NDims, DimSize, ElementType,
/// ElementSpacing, preserved keys in their original order, ElementDataFile.
namespace camus {

struct MaskReadOptions {
  /// Reject values above 3 (annotation masks). Off for grayscale images.
  bool strict_labels = false;
};

/// Parsed header content, before the payload is attached.
struct MhdHeader {
  int width = 0;
  int height = 0;
  Spacing spacing{};
  std::string data_file;
  HeaderFields extra;
};

MhdHeader parse_mhd_header(std::string_view text);
std::string format_mhd_header(const LabelMask& mask, std::string_view data_file);

LabelMask read_mask(const std::filesystem::path& header_path, const MaskReadOptions& options = {});

/// Writes `<path>` and `<path stem>.raw` next to it.
void write_mask(const LabelMask& mask, const std::filesystem::path& header_path);

}  // namespace camus
