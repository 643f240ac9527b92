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

#include "camus/mhd_io.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "camus/error.hpp"
#include "camus/number_format.hpp"

namespace camus {
namespace {

constexpr std::string_view kNDims = "NDims";
constexpr std::string_view kDimSize = "DimSize";
constexpr std::string_view kElementType = "ElementType";
constexpr std::string_view kElementSpacing = "ElementSpacing";
constexpr std::string_view kElementDataFile = "ElementDataFile";

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    if (j > i) tokens.push_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw FormatError("header key '" + std::string(key) + "' has unsupported value '" +
                        std::string(value) + "' (expected " + std::string(want) + ")",
                    std::string(key));
}

void check_supported_extra(std::string_view key, std::string_view value) {
  if (key == "CompressedData" && to_lower(value) != "false") bad_value(key, value, "False");
  if (key == "ElementNumberOfChannels" && value != "1") bad_value(key, value, "1");
  if (key == "HeaderSize" && value != "0") bad_value(key, value, "0");
}

std::vector<char> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

MhdHeader parse_mhd_header(std::string_view text) {
  std::optional<std::string> ndims, dims, type, spacing, data_file;
  MhdHeader header;
  std::set<std::string, std::less<>> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("header line " + std::to_string(line_no) + " is not 'Key = Value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw FormatError("header line " + std::to_string(line_no) + " has no key");
    if (!seen.insert(key).second) throw FormatError("duplicate header key '" + key + "'", key);

    if (key == kNDims) ndims = value;
    else if (key == kDimSize) dims = value;
    else if (key == kElementType) type = value;
    else if (key == kElementSpacing) spacing = value;
    else if (key == kElementDataFile) data_file = value;
    else {
      check_supported_extra(key, value);
      header.extra.emplace_back(key, value);
    }
  }

  const auto require = [](const std::optional<std::string>& v, std::string_view key) -> const std::string& {
    if (!v) throw FormatError("missing header key '" + std::string(key) + "'", std::string(key));
    return *v;
  };

  if (require(ndims, kNDims) != "2") bad_value(kNDims, *ndims, "2");

  const auto dim_tokens = split_ws(require(dims, kDimSize));
  if (dim_tokens.size() != 2) bad_value(kDimSize, *dims, "two integers");
  const auto w = parse_int(dim_tokens[0]);
  const auto h = parse_int(dim_tokens[1]);
  if (!w || !h || *w <= 0 || *h <= 0 || *w > (1 << 20) || *h > (1 << 20)) {
    bad_value(kDimSize, *dims, "two positive integers");
  }
  header.width = static_cast<int>(*w);
  header.height = static_cast<int>(*h);

  if (require(type, kElementType) != "MET_UCHAR") bad_value(kElementType, *type, "MET_UCHAR");

  const auto sp_tokens = split_ws(require(spacing, kElementSpacing));
  if (sp_tokens.size() != 2) bad_value(kElementSpacing, *spacing, "two decimals");
  const auto sx = parse_double(sp_tokens[0]);
  const auto sz = parse_double(sp_tokens[1]);
  if (!sx || !sz || !(*sx > 0.0) || !(*sz > 0.0) || !std::isfinite(*sx) || !std::isfinite(*sz)) {
    bad_value(kElementSpacing, *spacing, "two positive decimals");
  }
  header.spacing = {*sx, *sz};

  header.data_file = require(data_file, kElementDataFile);
  if (header.data_file.empty() || header.data_file == "LOCAL" || header.data_file == "LIST") {
    bad_value(kElementDataFile, header.data_file, "a raw file path");
  }
  return header;
}

std::string format_mhd_header(const LabelMask& mask, std::string_view data_file) {
  std::ostringstream out;
  out << kNDims << " = 2\n";
  out << kDimSize << " = " << mask.width() << ' ' << mask.height() << '\n';
  out << kElementType << " = MET_UCHAR\n";
  out << kElementSpacing << " = " << format_double(mask.spacing().x) << ' '
      << format_double(mask.spacing().z) << '\n';
  for (const auto& [key, value] : mask.extra_header()) out << key << " = " << value << '\n';
  out << kElementDataFile << " = " << data_file << '\n';
  return out.str();
}

LabelMask read_mask(const std::filesystem::path& header_path, const MaskReadOptions& options) {
  const auto header_bytes = read_file_bytes(header_path);
  MhdHeader header;
  try {
    header = parse_mhd_header(std::string_view(header_bytes.data(), header_bytes.size()));
  } catch (const FormatError& e) {
    throw FormatError(header_path.string() + ": " + e.what(), e.key());
  }

  std::filesystem::path raw_path(header.data_file);
  if (raw_path.is_relative()) raw_path = header_path.parent_path() / raw_path;
  auto raw = read_file_bytes(raw_path);

  const std::size_t expected = static_cast<std::size_t>(header.width) * header.height;
  if (raw.size() != expected) {
    throw TruncationError(raw_path.string() + ": raw payload has " + std::to_string(raw.size()) +
                          " bytes, header declares " + std::to_string(header.width) + "x" +
                          std::to_string(header.height) + " = " + std::to_string(expected));
  }

  std::vector<std::uint8_t> values(raw.begin(), raw.end());
  LabelMask mask(header.width, header.height, header.spacing, std::move(values));
  mask.set_extra_header(std::move(header.extra));

  if (options.strict_labels) {
    const auto v = mask.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] > kMaxLabel) {
        throw ValidationError(header_path.string() + ": label " + std::to_string(v[i]) +
                              " at pixel (" + std::to_string(i % header.width) + ", " +
                              std::to_string(i / header.width) + ") is not in {0,1,2,3}");
      }
    }
  }
  return mask;
}

void write_mask(const LabelMask& mask, const std::filesystem::path& header_path) {
  std::filesystem::path raw_path = header_path;
  raw_path.replace_extension(".raw");
  const std::string raw_name = raw_path.filename().string();

  {
    std::ofstream raw(raw_path, std::ios::binary | std::ios::trunc);
    if (!raw) throw IoError("cannot write '" + raw_path.string() + "'");
    const auto values = mask.values();
    raw.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size()));
    if (!raw) throw IoError("failed writing '" + raw_path.string() + "'");
  }
  std::ofstream out(header_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + header_path.string() + "'");
  out << format_mhd_header(mask, raw_name);
  if (!out) throw IoError("failed writing '" + header_path.string() + "'");
}

}  // namespace camus
