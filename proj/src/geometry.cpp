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

#include "camus/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "camus/error.hpp"
#include "camus/number_format.hpp"

namespace camus {
namespace {

struct Offset {
  int dc;
  int dr;
};

constexpr std::array<Offset, 4> kFour{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
constexpr std::array<Offset, 8> kEight{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

// Moore neighbourhood, clockwise on screen (rows grow downwards), from west.
constexpr std::array<Offset, 8> kMoore{{{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};

int moore_index(int dc, int dr) {
  for (int i = 0; i < 8; ++i) {
    if (kMoore[i].dc == dc && kMoore[i].dr == dr) return i;
  }
  return -1;
}

// Flood fill over pixels where `value(idx) == want`, marking them in
// `label` with `id`. Returns the component size.
template <std::size_t N, class Pred>
std::size_t flood(int width, int height, std::size_t seed, const std::array<Offset, N>& nbrs, Pred accept,
                  std::vector<int>& label, int id, std::vector<std::size_t>& stack) {
  std::size_t size = 0;
  stack.clear();
  stack.push_back(seed);
  label[seed] = id;
  while (!stack.empty()) {
    const std::size_t idx = stack.back();
    stack.pop_back();
    ++size;
    const int col = static_cast<int>(idx % width);
    const int row = static_cast<int>(idx / width);
    for (const auto& o : nbrs) {
      const int c = col + o.dc;
      const int r = row + o.dr;
      if (c < 0 || r < 0 || c >= width || r >= height) continue;
      const std::size_t n = static_cast<std::size_t>(r) * width + c;
      if (label[n] == 0 && accept(n)) {
        label[n] = id;
        stack.push_back(n);
      }
    }
  }
  return size;
}

}  // namespace

std::string_view to_string(StructureId s) {
  switch (s) {
    case StructureId::kLvEndo: return "LV_endo";
    case StructureId::kLvEpi: return "LV_epi";
    case StructureId::kLa: return "LA";
  }
  return "?";
}

std::optional<StructureId> parse_structure(std::string_view token) {
  const auto t = to_lower(trim(token));
  if (t == "lv_endo" || t == "endo") return StructureId::kLvEndo;
  if (t == "lv_epi" || t == "epi") return StructureId::kLvEpi;
  if (t == "la") return StructureId::kLa;
  return std::nullopt;
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.z - b.z); }

Contour::Contour(std::vector<Point2> points, bool closed) : points_(std::move(points)), closed_(closed) {
  if (points_.size() < 3) {
    throw DegenerateError("contour needs at least 3 points, got " + std::to_string(points_.size()));
  }
  for (std::size_t i = 0; i < edge_count(); ++i) {
    const auto [a, b] = edge(i);
    if (a == b) throw DegenerateError("contour has repeated consecutive point at index " + std::to_string(i));
    if (!std::isfinite(a.x) || !std::isfinite(a.z)) throw DegenerateError("contour has a non-finite point");
  }
}

double Contour::signed_area() const noexcept {
  double twice = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    twice += cross(points_[i], points_[(i + 1) % points_.size()]);
  }
  return 0.5 * twice;
}

BinaryMask region_of(const LabelMask& mask, StructureId structure) {
  const auto values = mask.values();
  std::vector<std::uint8_t> bits(values.size());
  std::transform(values.begin(), values.end(), bits.begin(), [structure](std::uint8_t v) -> std::uint8_t {
    switch (structure) {
      case StructureId::kLvEndo: return v == kLvCavity;
      case StructureId::kLvEpi: return v == kLvCavity || v == kMyocardium;
      case StructureId::kLa: return v == kLeftAtrium;
    }
    return 0;
  });
  return BinaryMask(mask.width(), mask.height(), std::move(bits));
}

BinaryMask keep_largest_fill_holes(const BinaryMask& region) {
  const int width = region.width();
  const int height = region.height();
  const auto bits = region.bits();
  const std::size_t n = bits.size();

  std::vector<int> label(n, 0);
  std::vector<std::size_t> stack;
  int best_id = 0;
  std::size_t best_size = 0;
  int next_id = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (bits[i] == 0 || label[i] != 0) continue;
    const int id = next_id++;
    const std::size_t size =
        flood(width, height, i, kFour, [&](std::size_t j) { return bits[j] != 0; }, label, id, stack);
    if (size > best_size) {
      best_size = size;
      best_id = id;
    }
  }
  if (best_id == 0) return BinaryMask(width, height);

  // Background reachable from the border through 8-connected non-kept pixels.
  std::vector<int> outside(n, 0);
  const auto is_background = [&](std::size_t j) { return label[j] != best_id; };
  const auto seed_border = [&](int col, int row) {
    const std::size_t idx = static_cast<std::size_t>(row) * width + col;
    if (outside[idx] == 0 && is_background(idx)) flood(width, height, idx, kEight, is_background, outside, 1, stack);
  };
  for (int col = 0; col < width; ++col) {
    seed_border(col, 0);
    seed_border(col, height - 1);
  }
  for (int row = 0; row < height; ++row) {
    seed_border(0, row);
    seed_border(width - 1, row);
  }

  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = outside[i] == 0 ? 1 : 0;
  return BinaryMask(width, height, std::move(out));
}

Contour trace_contour(const BinaryMask& region, Spacing spacing) {
  const int width = region.width();
  const int height = region.height();
  const auto bits = region.bits();

  const auto first = std::find(bits.begin(), bits.end(), std::uint8_t{1});
  const std::size_t total = region.count();
  if (total < 3) {
    throw DegenerateError("region has " + std::to_string(total) + " pixel(s); at least 3 are needed for a contour");
  }
  const std::size_t seed = static_cast<std::size_t>(first - bits.begin());

  {
    std::vector<int> label(bits.size(), 0);
    std::vector<std::size_t> stack;
    const std::size_t reached =
        flood(width, height, seed, kFour, [&](std::size_t j) { return bits[j] != 0; }, label, 1, stack);
    if (reached != total) {
      throw ValidationError("region is not a single 4-connected component; apply keep_largest_fill_holes first");
    }
  }

  struct Pixel {
    int col;
    int row;
    bool operator==(const Pixel&) const = default;
  };
  const Pixel start{static_cast<int>(seed % width), static_cast<int>(seed / width)};

  std::vector<Pixel> path{start};
  Pixel cur = start;
  int back_dir = 0;  // west of the first pixel is background
  std::optional<Pixel> second;
  const std::size_t max_steps = 8 * total + 16;

  for (std::size_t step = 0;; ++step) {
    if (step > max_steps) throw DegenerateError("contour tracing did not terminate");
    int found = -1;
    for (int k = 1; k <= 8; ++k) {
      const int d = (back_dir + k) % 8;
      if (region.at_or_background(cur.col + kMoore[d].dc, cur.row + kMoore[d].dr)) {
        found = d;
        break;
      }
    }
    if (found < 0) throw DegenerateError("isolated pixel while tracing contour");

    const Pixel next{cur.col + kMoore[found].dc, cur.row + kMoore[found].dr};
    const Offset back = kMoore[(found + 7) % 8];
    const Pixel backtrack{cur.col + back.dc, cur.row + back.dr};

    if (cur == start && second && next == *second) break;
    if (!second) second = next;

    back_dir = moore_index(backtrack.col - next.col, backtrack.row - next.row);
    cur = next;
    path.push_back(cur);
  }
  if (path.size() > 1 && path.back() == start) path.pop_back();

  std::vector<Point2> points;
  points.reserve(path.size());
  for (const auto& p : path) points.push_back({p.col * spacing.x, p.row * spacing.z});

  Contour contour(std::move(points), true);
  if (contour.signed_area() < 0.0) {
    std::vector<Point2> reversed(contour.points().begin(), contour.points().end());
    std::reverse(reversed.begin() + 1, reversed.end());
    contour = Contour(std::move(reversed), true);
  }
  return contour;
}

}  // namespace camus
