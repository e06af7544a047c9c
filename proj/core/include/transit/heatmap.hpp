#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "transit/corpus.hpp"
#include "transit/themes.hpp"

namespace transit {

inline constexpr std::size_t kGridCols = 14;
inline constexpr std::size_t kStandardRows = 42;
inline constexpr std::size_t kLongRows = 81;
inline constexpr std::size_t kStandardCapacity = kStandardRows * kGridCols;
inline constexpr std::size_t kLongCapacity = kLongRows * kGridCols;

enum class GridKind { kStandard, kLong };

// Page of 14-word lines: 42 rows, or 81 rows for long essays.
class PageGrid {
 public:
  explicit PageGrid(GridKind kind = GridKind::kStandard);

  GridKind kind() const { return kind_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return kGridCols; }
  std::uint32_t at(std::size_t row, std::size_t col) const {
    return cells_[row * kGridCols + col];
  }
  std::uint32_t& at(std::size_t row, std::size_t col) {
    return cells_[row * kGridCols + col];
  }
  std::uint32_t max_count() const;
  std::uint64_t total() const;
  const std::vector<std::uint32_t>& cells() const { return cells_; }

 private:
  GridKind kind_;
  std::size_t rows_;
  std::vector<std::uint32_t> cells_;
};

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct SentencePlacement {
  std::string sentence_id;
  std::vector<Cell> cells;
};

struct EssayLayout {
  GridKind kind = GridKind::kStandard;
  std::vector<SentencePlacement> placements;  // essay sentence order

  const std::vector<Cell>* cells_of(std::string_view sentence_id) const;
};

// Words fill rows left to right, 14 per row. Essays over 588 words use the
// 81-row grid; over 1134 words is a LayoutError. Empty essays are rejected.
EssayLayout layout_essay(const Essay& essay);

// Themes drawn on heatmaps; Neither is not mapped.
inline constexpr std::array<ThemeLabel, 3> kHeatmapThemes = {
    ThemeLabel::kMedicalProcedural, ThemeLabel::kEmpathetic, ThemeLabel::kBoth};

struct HeatmapSet {
  // [theme][bucket], theme index follows kHeatmapThemes.
  std::array<std::array<PageGrid, kBucketCount>, 3> standard;
  std::array<std::array<PageGrid, kBucketCount>, 3> long_form;

  HeatmapSet();
  const PageGrid& grid(GridKind kind, std::size_t theme,
                       std::size_t bucket) const;
  std::uint64_t total() const;
  bool has_long_essays() const;
};

// Each sentence's theme increments every cell it occupies in the grid for
// (theme, bucket of the essay score). Rows of `themes` are matched by
// (essay_id, sentence_id).
HeatmapSet build_heatmaps(const std::vector<Essay>& essays,
                          const ThemeTable& themes);

enum class RenderFormat { kText, kJson, kPgm };
RenderFormat parse_render_format(std::string_view name);  // UsageError
std::string_view format_extension(RenderFormat format);

// text: tab-separated counts; json: {"rows","cols","cells":[[...]]};
// pgm: binary P5, maxval 255, intensity 255*(1 - count/max).
std::string render_grid(const PageGrid& grid, RenderFormat format);
PageGrid grid_from_json(std::string_view json_text);

}  // namespace transit
