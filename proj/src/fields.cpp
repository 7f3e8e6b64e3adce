#include "gvo/fields.hpp"

#include <cmath>

namespace gvo::fields {

void FramePair::validate() const {
    const int w = width(), h = height();
    auto check = [&](int gw, int gh, const char* name) {
        if (gw != w || gh != h) {
            throw InvalidArgumentError(std::string("FramePair: ") + name +
                                       " dimensions disagree with depth_t");
        }
    };
    check(depth_prev.value.width(), depth_prev.value.height(), "depth_prev");
    check(flow.du.width(), flow.du.height(), "flow");
    check(mask.excluded.width(), mask.excluded.height(), "mask");
    if (!parallax_t.empty())
        check(parallax_t.du.width(), parallax_t.du.height(), "parallax_t");
    if (!parallax_prev.empty())
        check(parallax_prev.du.width(), parallax_prev.du.height(),
              "parallax_prev");
    if (!image_t.empty()) check(image_t.r.width(), image_t.r.height(), "image_t");
    if (!image_prev.empty())
        check(image_prev.r.width(), image_prev.r.height(), "image_prev");
    rig.validate();
}

std::optional<double> bilinear_sample(const Grid<double>& grid,
                                      const Grid<uint8_t>* valid,
                                      const Eigen::Vector2d& pos) {
    const double x = pos.x(), y = pos.y();
    const int w = grid.width(), h = grid.height();
    if (!(x >= 0.0 && x <= w - 1 && y >= 0.0 && y <= h - 1)) return std::nullopt;

    int x0 = static_cast<int>(std::floor(x));
    int y0 = static_cast<int>(std::floor(y));
    const double fx = x - x0;
    const double fy = y - y0;
    // Zero-weight neighbors do not contribute, so a fractional part of
    // exactly zero needs only one sample along that axis (this also covers
    // positions on the far border where x0+1 would leave the grid).
    const int x1 = (fx == 0.0) ? x0 : x0 + 1;
    const int y1 = (fy == 0.0) ? y0 : y0 + 1;

    auto ok = [&](int u, int v) { return !valid || valid->at(u, v) != 0; };
    if (!ok(x0, y0) || !ok(x1, y0) || !ok(x0, y1) || !ok(x1, y1))
        return std::nullopt;

    // Nested lerp form: exact on lattice points and for constant rasters.
    auto lerp = [](double a, double b, double t) { return a + t * (b - a); };
    const double top = lerp(grid.at(x0, y0), grid.at(x1, y0), fx);
    const double bot = lerp(grid.at(x0, y1), grid.at(x1, y1), fx);
    return lerp(top, bot, fy);
}

std::optional<cam::Vec4> warp_backproject(const FramePair& pair,
                                          const Eigen::Vector2i& px) {
    const Eigen::Vector2d target =
        px.cast<double>() + pair.flow.at(px.x(), px.y());
    const auto d = bilinear_sample(pair.depth_prev.value,
                                   &pair.depth_prev.valid, target);
    if (!d) return std::nullopt;
    return cam::backproject(pair.rig.intr, *d, target.x(), target.y());
}

PixelMask specularity_mask(const ImageRgb& image, double threshold_frac,
                           int dilate_px) {
    const int w = image.r.width(), h = image.r.height();
    PixelMask hits(w, h);
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            const double m = std::max({image.r.at(u, v), image.g.at(u, v),
                                       image.b.at(u, v)});
            if (m >= threshold_frac) hits.excluded.at(u, v) = 1;
        }
    }
    if (dilate_px <= 0) return hits;

    PixelMask out(w, h);
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            if (!hits.excluded.at(u, v)) continue;
            const int u0 = std::max(0, u - dilate_px);
            const int u1 = std::min(w - 1, u + dilate_px);
            const int v0 = std::max(0, v - dilate_px);
            const int v1 = std::min(h - 1, v + dilate_px);
            for (int vv = v0; vv <= v1; ++vv)
                for (int uu = u0; uu <= u1; ++uu) out.excluded.at(uu, vv) = 1;
        }
    }
    return out;
}

PixelMask mask_union(const PixelMask& a, const PixelMask& b) {
    if (a.excluded.empty()) return b;
    if (b.excluded.empty()) return a;
    PixelMask out = a;
    for (size_t i = 0; i < out.excluded.data().size(); ++i) {
        if (b.excluded.data()[i]) out.excluded.data()[i] = 1;
    }
    return out;
}

std::vector<Eigen::Vector2i> build_omega(const FramePair& pair) {
    pair.validate();
    std::vector<Eigen::Vector2i> omega;
    omega.reserve(pair.depth_t.value.size());
    for (int v = 0; v < pair.height(); ++v) {
        for (int u = 0; u < pair.width(); ++u) {
            if (pair.mask.is_excluded(u, v)) continue;
            if (!pair.depth_t.valid_at(u, v)) continue;
            // In front of the camera at the identity pose; valid normalized
            // depth already guarantees this, kept as an explicit guard.
            if (pair.depth_t.value.at(u, v) <= cam::kMinDepth) continue;
            const Eigen::Vector2i px(u, v);
            const auto q = warp_backproject(pair, px);
            if (!q || q->z() <= cam::kMinDepth) continue;
            omega.push_back(px);
        }
    }
    if (omega.empty()) {
        throw DegenerateFrameError("build_omega: no valid pixels in frame");
    }
    return omega;
}

}  // namespace gvo::fields
