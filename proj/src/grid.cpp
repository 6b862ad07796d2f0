#include "clusterlens/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clusterlens/errors.hpp"
#include "clusterlens/kdtree.hpp"

namespace clusterlens {

namespace {

Range padded(double lo, double hi) {
    if (lo == hi) {
        return {lo - 0.5, hi + 0.5};
    }
    return {lo, hi};
}

}

Viewport Viewport::fit(const Dataset& d, double width, double height, double cell_size) {
    Viewport v;
    v.width = width;
    v.height = height;
    v.cell_size = cell_size;
    const auto coords = d.coords();
    auto [xl, xh] = std::minmax_element(coords.begin(), coords.end(), [](const Point2& a, const Point2& b) { return a.x < b.x; });
    auto [yl, yh] = std::minmax_element(coords.begin(), coords.end(), [](const Point2& a, const Point2& b) { return a.y < b.y; });
    v.x_range = padded(xl->x, xh->x);
    v.y_range = padded(yl->y, yh->y);
    return v;
}

void Viewport::validate() const {
    if (!(width > 0) || !(height > 0) || !std::isfinite(width) || !std::isfinite(height)) {
        throw ArgumentError("viewport width and height must be positive");
    }
    if (!(cell_size >= kMinCellSize) || !std::isfinite(cell_size)) {
        throw ArgumentError("cell size must be at least " + std::to_string(static_cast<int>(kMinCellSize)) + " pixels");
    }
    if (!(x_range.hi > x_range.lo) || !(y_range.hi > y_range.lo) || !std::isfinite(x_range.hi - x_range.lo) ||
        !std::isfinite(y_range.hi - y_range.lo)) {
        throw ArgumentError("viewport ranges must be non-degenerate");
    }
}

Point2 Viewport::to_pixel(Point2 p) const {
    const double mx = kViewportMargin * width;
    const double my = kViewportMargin * height;
    return {
        mx + (p.x - x_range.lo) / (x_range.hi - x_range.lo) * (width - 2 * mx),
        my + (y_range.hi - p.y) / (y_range.hi - y_range.lo) * (height - 2 * my),
    };
}

std::size_t Viewport::cols() const {
    return static_cast<std::size_t>(std::ceil(width / cell_size));
}

std::size_t Viewport::rows() const {
    return static_cast<std::size_t>(std::ceil(height / cell_size));
}

const GridCell* GridLayout::find(std::size_t col, std::size_t row) const {
    auto it = std::lower_bound(cells.begin(), cells.end(), std::pair{row, col}, [](const GridCell& c, const std::pair<std::size_t, std::size_t>& key) {
        return std::pair{c.row, c.col} < key;
    });
    if (it == cells.end() || it->col != col || it->row != row) {
        return nullptr;
    }
    return &*it;
}

std::pair<std::size_t, std::size_t> cell_of(Point2 pixel, double cell_size, std::size_t cols, std::size_t rows) {
    auto index = [cell_size](double v, std::size_t limit) {
        const double raw = std::floor(v / cell_size);
        if (!(raw > 0)) {
            return std::size_t{0};
        }
        return std::min(limit - 1, static_cast<std::size_t>(raw));
    };
    return {index(pixel.x, cols), index(pixel.y, rows)};
}

GridLayout build_grid(const Dataset& d, const Viewport& viewport) {
    viewport.validate();

    GridLayout grid;
    grid.cols = viewport.cols();
    grid.rows = viewport.rows();
    grid.cell_size = viewport.cell_size;
    grid.pixels.reserve(d.n());
    for (const auto& p : d.coords()) {
        grid.pixels.push_back(viewport.to_pixel(p));
    }

    // Each cell gathers its points through a box query. Boxes are widened slightly and filtered with
    // cell_of so that points on a cell border, or clamped into a border cell, land exactly where cell_of puts them.
    const KdTree tree(grid.pixels);
    const double slack = 1e-6 * grid.cell_size;
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < grid.rows; ++r) {
        for (std::size_t c = 0; c < grid.cols; ++c) {
            Point2 lo{static_cast<double>(c) * grid.cell_size - slack, static_cast<double>(r) * grid.cell_size - slack};
            Point2 hi{static_cast<double>(c + 1) * grid.cell_size + slack, static_cast<double>(r + 1) * grid.cell_size + slack};
            if (c == 0) {
                lo.x = -inf;
            }
            if (r == 0) {
                lo.y = -inf;
            }
            if (c + 1 == grid.cols) {
                hi.x = inf;
            }
            if (r + 1 == grid.rows) {
                hi.y = inf;
            }

            GridCell cell;
            cell.col = c;
            cell.row = r;
            for (auto idx : tree.query(lo, hi)) {
                if (cell_of(grid.pixels[idx], grid.cell_size, grid.cols, grid.rows) == std::pair{c, r}) {
                    cell.points.push_back(idx);
                }
            }
            if (!cell.points.empty()) {
                grid.cells.push_back(std::move(cell));
            }
        }
    }
    return grid;
}

CellSums cell_feature_sums(const GridLayout& grid, const Dataset& d, std::vector<std::size_t> selected) {
    if (selected.empty()) {
        throw ArgumentError("select at least one feature");
    }
    if (selected.size() > kMaxSelectedFeatures) {
        throw LimitError("at most " + std::to_string(kMaxSelectedFeatures) + " features can be visualized at once, got " +
                         std::to_string(selected.size()));
    }
    std::sort(selected.begin(), selected.end());
    if (std::adjacent_find(selected.begin(), selected.end()) != selected.end()) {
        throw ArgumentError("feature selected twice");
    }
    if (selected.back() >= d.m()) {
        throw LookupError("unknown feature index " + std::to_string(selected.back()));
    }

    CellSums out;
    out.selected = std::move(selected);
    out.sums.reserve(grid.cells.size());
    for (const auto& cell : grid.cells) {
        std::vector<double> row(out.selected.size(), 0.0);
        for (std::size_t j = 0; j < out.selected.size(); ++j) {
            const auto column = d.column(out.selected[j]);
            for (auto idx : cell.points) {
                row[j] += column[idx];
            }
        }
        out.sums.push_back(std::move(row));
    }
    return out;
}

std::vector<CellSegments> cell_segments(const GridLayout& grid, const CellSums& sums) {
    const std::size_t k = sums.selected.size();
    std::vector<double> max_sum(k, 0.0);
    for (const auto& row : sums.sums) {
        for (std::size_t j = 0; j < k; ++j) {
            max_sum[j] = std::max(max_sum[j], row[j]);
        }
    }

    std::vector<CellSegments> out;
    out.reserve(grid.cells.size());
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
        CellSegments cell;
        cell.col = grid.cells[i].col;
        cell.row = grid.cells[i].row;
        const auto& row = sums.sums[i];
        for (std::size_t j = 0; j < k; ++j) {
            if (row[j] > 0) {
                const double relative = row[j] / max_sum[j];
                cell.segments.push_back({sums.selected[j], 0.0, kMinSegmentOpacity + (1 - kMinSegmentOpacity) * relative});
            }
        }
        if (cell.segments.empty()) {
            cell.empty_texture = true;
        } else {
            const double fraction = 1.0 / static_cast<double>(cell.segments.size());
            for (auto& seg : cell.segments) {
                seg.width_fraction = fraction;
            }
        }
        out.push_back(std::move(cell));
    }
    return out;
}

}
