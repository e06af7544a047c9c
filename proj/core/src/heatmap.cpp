#include "transit/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"
#include "transit/errors.hpp"

namespace transit {

PageGrid::PageGrid(GridKind kind)
    : kind_(kind),
      rows_(kind == GridKind::kStandard ? kStandardRows : kLongRows),
      cells_(rows_ * kGridCols, 0) {}

std::uint32_t PageGrid::max_count() const {
  return cells_.empty() ? 0 : *std::max_element(cells_.begin(), cells_.end());
}

std::uint64_t PageGrid::total() const {
  std::uint64_t sum = 0;
  for (auto c : cells_) sum += c;
  return sum;
}

const std::vector<Cell>* EssayLayout::cells_of(std::string_view sentence_id) const {
  for (const auto& p : placements)
    if (p.sentence_id == sentence_id) return &p.cells;
  return nullptr;
}

EssayLayout layout_essay(const Essay& essay) {
  std::size_t words = 0;
  for (const auto& s : essay.sentences) words += s.word_count();
  if (words == 0)
    throw ContractError("essay '" + essay.essay_id + "' has no words to lay out");
  if (words > kLongCapacity)
    throw LayoutError("essay '" + essay.essay_id + "' has " +
                      std::to_string(words) + " words; the long page holds " +
                      std::to_string(kLongCapacity));
  EssayLayout layout;
  layout.kind = words > kStandardCapacity ? GridKind::kLong : GridKind::kStandard;
  std::size_t position = 0;
  for (const auto& s : essay.sentences) {
    SentencePlacement placement{s.sentence_id, {}};
    for (const auto& t : s.tokens) {
      if (t.is_punct()) continue;
      placement.cells.push_back({position / kGridCols, position % kGridCols});
      ++position;
    }
    layout.placements.push_back(std::move(placement));
  }
  return layout;
}

HeatmapSet::HeatmapSet() {
  for (auto& row : long_form) row.fill(PageGrid(GridKind::kLong));
}

const PageGrid& HeatmapSet::grid(GridKind kind, std::size_t theme,
                                 std::size_t bucket) const {
  return kind == GridKind::kStandard ? standard.at(theme).at(bucket)
                                     : long_form.at(theme).at(bucket);
}

std::uint64_t HeatmapSet::total() const {
  std::uint64_t sum = 0;
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t b = 0; b < kBucketCount; ++b)
      sum += standard[t][b].total() + long_form[t][b].total();
  return sum;
}

bool HeatmapSet::has_long_essays() const {
  for (const auto& row : long_form)
    for (const auto& g : row)
      if (g.total() > 0) return true;
  return false;
}

HeatmapSet build_heatmaps(const std::vector<Essay>& essays,
                          const ThemeTable& themes) {
  std::map<std::pair<std::string_view, std::string_view>, ThemeLabel> lookup;
  for (const auto& r : themes.rows) lookup[{r.essay_id, r.sentence_id}] = r.theme;

  HeatmapSet set;
  for (const auto& essay : essays) {
    std::size_t words = 0;
    for (const auto& s : essay.sentences) words += s.word_count();
    if (words == 0) continue;
    const EssayLayout layout = layout_essay(essay);
    const std::size_t bucket = bucket_of(essay.empathy_score, essay.essay_id).index;
    for (const auto& placement : layout.placements) {
      auto it = lookup.find({essay.essay_id, placement.sentence_id});
      if (it == lookup.end())
        throw IntegrityError("no theme for sentence '" + placement.sentence_id +
                             "' of essay '" + essay.essay_id + "'");
      const auto theme_it =
          std::find(kHeatmapThemes.begin(), kHeatmapThemes.end(), it->second);
      if (theme_it == kHeatmapThemes.end()) continue;  // Neither
      const auto theme = static_cast<std::size_t>(theme_it - kHeatmapThemes.begin());
      PageGrid& grid = layout.kind == GridKind::kStandard
                           ? set.standard[theme][bucket]
                           : set.long_form[theme][bucket];
      for (const Cell& c : placement.cells) ++grid.at(c.row, c.col);
    }
  }
  return set;
}

RenderFormat parse_render_format(std::string_view name) {
  if (name == "text") return RenderFormat::kText;
  if (name == "json") return RenderFormat::kJson;
  if (name == "pgm") return RenderFormat::kPgm;
  throw UsageError("unknown render format '" + std::string(name) +
                   "' (expected text, json or pgm)");
}

std::string_view format_extension(RenderFormat format) {
  switch (format) {
    case RenderFormat::kText: return "tsv";
    case RenderFormat::kJson: return "json";
    case RenderFormat::kPgm: return "pgm";
  }
  return "";
}

std::string render_grid(const PageGrid& grid, RenderFormat format) {
  switch (format) {
    case RenderFormat::kText: {
      std::ostringstream out;
      for (std::size_t r = 0; r < grid.rows(); ++r) {
        for (std::size_t c = 0; c < grid.cols(); ++c) {
          if (c) out << '\t';
          out << grid.at(r, c);
        }
        out << '\n';
      }
      return out.str();
    }
    case RenderFormat::kJson: {
      nlohmann::ordered_json j;
      j["rows"] = grid.rows();
      j["cols"] = grid.cols();
      auto cells = nlohmann::ordered_json::array();
      for (std::size_t r = 0; r < grid.rows(); ++r) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < grid.cols(); ++c) row.push_back(grid.at(r, c));
        cells.push_back(std::move(row));
      }
      j["cells"] = std::move(cells);
      return j.dump() + "\n";
    }
    case RenderFormat::kPgm: {
      std::string out = "P5\n" + std::to_string(grid.cols()) + " " +
                        std::to_string(grid.rows()) + "\n255\n";
      const std::uint32_t max = grid.max_count();
      for (std::uint32_t count : grid.cells()) {
        // Frequent positions are dark; an empty grid renders white.
        const long level =
            max == 0 ? 255
                     : std::lround(255.0 * (1.0 - static_cast<double>(count) /
                                                      static_cast<double>(max)));
        out.push_back(static_cast<char>(static_cast<unsigned char>(level)));
      }
      return out;
    }
  }
  throw UsageError("unknown render format");
}

PageGrid grid_from_json(std::string_view json_text) {
  const auto j = nlohmann::json::parse(json_text);
  const auto rows = j.at("rows").get<std::size_t>();
  if (j.at("cols").get<std::size_t>() != kGridCols ||
      (rows != kStandardRows && rows != kLongRows))
    throw IntegrityError("grid must be 42x14 or 81x14");
  PageGrid grid(rows == kStandardRows ? GridKind::kStandard : GridKind::kLong);
  const auto& cells = j.at("cells");
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < kGridCols; ++c)
      grid.at(r, c) = cells.at(r).at(c).get<std::uint32_t>();
  return grid;
}

}  // namespace transit
