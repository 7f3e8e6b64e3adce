// Raster containers shared by the field, camera and IO layers. All grids are
// row-major with (u, v) = (column, row) indexing; u in [0, width),
// v in [0, height).
#ifndef GVO_RASTERS_HPP
#define GVO_RASTERS_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "gvo/errors.hpp"

namespace gvo::fields {

template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height),
          data_(static_cast<size_t>(width) * height, fill) {
        if (width <= 0 || height <= 0)
            throw InvalidArgumentError("Grid: dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return data_.empty(); }
    size_t size() const { return data_.size(); }

    T& at(int u, int v) { return data_[static_cast<size_t>(v) * width_ + u]; }
    const T& at(int u, int v) const {
        return data_[static_cast<size_t>(v) * width_ + u];
    }
    bool in_bounds(int u, int v) const {
        return u >= 0 && u < width_ && v >= 0 && v < height_;
    }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool operator==(const Grid&) const = default;

private:
    int width_ = 0, height_ = 0;
    std::vector<T> data_;
};

/// Normalized depth raster: values in (0, 1], invalid pixels flagged.
struct DepthMap {
    Grid<double> value;
    Grid<uint8_t> valid;  // 1 = valid

    DepthMap() = default;
    DepthMap(int w, int h) : value(w, h, 0.0), valid(w, h, 0) {}
    bool valid_at(int u, int v) const { return valid.at(u, v) != 0; }
};

/// Pixel displacement field from frame t to frame t-1.
struct FlowField {
    Grid<double> du;
    Grid<double> dv;

    FlowField() = default;
    FlowField(int w, int h) : du(w, h, 0.0), dv(w, h, 0.0) {}
    Eigen::Vector2d at(int u, int v) const {
        return {du.at(u, v), dv.at(u, v)};
    }
};

/// Stereo displacement field. The horizontal channel stores the disparity
/// (left-minus-right column offset, positive in front of the camera); the
/// vertical channel is the rectification residual, near zero for good rigs.
struct ParallaxFlow {
    Grid<double> du;
    Grid<double> dv;

    ParallaxFlow() = default;
    ParallaxFlow(int w, int h) : du(w, h, 0.0), dv(w, h, 0.0) {}
    bool empty() const { return du.empty(); }
};

/// Per-pixel residual weight in [0, 1].
struct WeightMap {
    Grid<double> value;

    WeightMap() = default;
    WeightMap(int w, int h, double fill = 1.0) : value(w, h, fill) {}
};

/// Exclusion mask: true = pixel excluded from the valid set.
struct PixelMask {
    Grid<uint8_t> excluded;

    PixelMask() = default;
    PixelMask(int w, int h) : excluded(w, h, 0) {}
    bool is_excluded(int u, int v) const { return excluded.at(u, v) != 0; }
};

/// Optional RGB raster, channels in [0, 1].
struct ImageRgb {
    Grid<double> r, g, b;

    ImageRgb() = default;
    ImageRgb(int w, int h)
        : r(w, h, 0.0), g(w, h, 0.0), b(w, h, 0.0) {}
    bool empty() const { return r.empty(); }
};

}  // namespace gvo::fields

#endif
