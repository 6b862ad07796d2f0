#ifndef CLUSTERLENS_GRID_HPP
#define CLUSTERLENS_GRID_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "dataset.hpp"

/**
 * @file grid.hpp
 * @brief Pixel-grid aggregation of the scatterplot and the per-cell feature encoding.
 *
 * The projected points are mapped to pixels, binned into square cells of `cell_size` pixels,
 * and each cell is split into equal-width segments, one per selected feature that is expressed
 * (positive sum) in that cell. Segment opacity encodes the cell's sum relative to the largest
 * sum of the same feature over all cells.
 */

namespace clusterlens {

inline constexpr double kDefaultCellSize = 20;
inline constexpr double kMinCellSize = 4;
inline constexpr std::size_t kMaxSelectedFeatures = 10;
inline constexpr double kMinSegmentOpacity = 0.15;
inline constexpr double kViewportMargin = 0.02;

struct Range {
    double lo = 0;
    double hi = 0;
};

/**
 * Data ranges are mapped linearly onto `[margin, size - margin]` pixels, with a margin of 2% of the
 * size on each side. Pixel y grows downwards, so `y_range.hi` maps to the top of the view.
 */
struct Viewport {
    double width = 800;
    double height = 600;
    Range x_range;
    Range y_range;
    double cell_size = kDefaultCellSize;

    /// Viewport whose ranges are the bounding box of the dataset's coordinates.
    static Viewport fit(const Dataset& d, double width, double height, double cell_size = kDefaultCellSize);

    /// Throws ArgumentError when sizes or ranges are invalid.
    void validate() const;

    Point2 to_pixel(Point2 p) const;

    std::size_t cols() const;
    std::size_t rows() const;
};

struct GridCell {
    std::size_t col = 0;
    std::size_t row = 0;
    std::vector<std::size_t> points;
};

/**
 * Non-empty cells in raster order (by row, then column).
 */
struct GridLayout {
    std::size_t cols = 0;
    std::size_t rows = 0;
    double cell_size = kDefaultCellSize;
    std::vector<Point2> pixels;
    std::vector<GridCell> cells;

    const GridCell* find(std::size_t col, std::size_t row) const;
};

/// Cell containing a pixel position; positions outside the view are clamped to the border cells.
std::pair<std::size_t, std::size_t> cell_of(Point2 pixel, double cell_size, std::size_t cols, std::size_t rows);

/**
 * Assigns each point to the cell containing its pixel position, using a KD-tree to gather the points of each cell.
 */
GridLayout build_grid(const Dataset& d, const Viewport& viewport);

struct CellSums {
    std::vector<std::size_t> selected;
    /// `sums[cell][j]` is the sum of feature `selected[j]` over the points of `cells[cell]`.
    std::vector<std::vector<double>> sums;
};

/**
 * Throws ArgumentError for an empty or repeated selection, LimitError above `kMaxSelectedFeatures`
 * and LookupError for unknown feature indices. `selected` is stored in ascending order.
 */
CellSums cell_feature_sums(const GridLayout& grid, const Dataset& d, std::vector<std::size_t> selected);

struct Segment {
    std::size_t feature_index = 0;
    double width_fraction = 0;
    double opacity = 0;
};

struct CellSegments {
    std::size_t col = 0;
    std::size_t row = 0;
    std::vector<Segment> segments;
    bool empty_texture = false;
};

/**
 * One entry per grid cell. Segment opacity is `kMinSegmentOpacity + (1 - kMinSegmentOpacity) * sum / max_sum`,
 * where `max_sum` is the feature's largest cell sum.
 */
std::vector<CellSegments> cell_segments(const GridLayout& grid, const CellSums& sums);

}

#endif
