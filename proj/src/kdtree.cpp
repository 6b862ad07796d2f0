#include "clusterlens/kdtree.hpp"

#include <algorithm>
#include <numeric>

namespace clusterlens {

namespace {

double coord(const Point2& p, int axis) {
    return axis == 0 ? p.x : p.y;
}

}

KdTree::KdTree(std::vector<Point2> points) : points_(std::move(points)), order_(points_.size()) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    build(0, order_.size(), 0);
}

void KdTree::build(std::size_t begin, std::size_t end, int axis) {
    if (end - begin <= 1) {
        return;
    }
    const std::size_t mid = begin + (end - begin) / 2;
    auto first = order_.begin() + static_cast<std::ptrdiff_t>(begin);
    std::nth_element(first, order_.begin() + static_cast<std::ptrdiff_t>(mid), order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t l, std::size_t r) { return coord(points_[l], axis) < coord(points_[r], axis); });
    build(begin, mid, 1 - axis);
    build(mid + 1, end, 1 - axis);
}

void KdTree::collect(std::size_t begin, std::size_t end, int axis, Point2 lo, Point2 hi, std::vector<std::size_t>& out) const {
    if (begin >= end) {
        return;
    }
    const std::size_t mid = begin + (end - begin) / 2;
    const std::size_t idx = order_[mid];
    const Point2& p = points_[idx];
    if (p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y) {
        out.push_back(idx);
    }
    const double split = coord(p, axis);
    // Left subtree holds values <= split, right subtree values >= split.
    if (coord(lo, axis) <= split) {
        collect(begin, mid, 1 - axis, lo, hi, out);
    }
    if (coord(hi, axis) >= split) {
        collect(mid + 1, end, 1 - axis, lo, hi, out);
    }
}

std::vector<std::size_t> KdTree::query(Point2 lo, Point2 hi) const {
    std::vector<std::size_t> out;
    collect(0, order_.size(), 0, lo, hi, out);
    std::sort(out.begin(), out.end());
    return out;
}

}
