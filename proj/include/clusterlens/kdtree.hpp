#ifndef CLUSTERLENS_KDTREE_HPP
#define CLUSTERLENS_KDTREE_HPP

#include <cstddef>
#include <vector>

#include "dataset.hpp"

namespace clusterlens {

/**
 * Static 2D KD-tree over a point set, answering axis-aligned box queries.
 * The tree is stored implicitly: each subrange of `order_` has its splitting point at the midpoint.
 */
class KdTree {
public:
    explicit KdTree(std::vector<Point2> points);

    /// Indices of all points with `lo.x <= x <= hi.x` and `lo.y <= y <= hi.y`, in ascending order.
    std::vector<std::size_t> query(Point2 lo, Point2 hi) const;

    std::size_t size() const { return points_.size(); }

private:
    void build(std::size_t begin, std::size_t end, int axis);
    void collect(std::size_t begin, std::size_t end, int axis, Point2 lo, Point2 hi, std::vector<std::size_t>& out) const;

    std::vector<Point2> points_;
    std::vector<std::size_t> order_;
};

}

#endif
