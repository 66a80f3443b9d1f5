#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

namespace ctxlab {

/// Dense RGB image, intensities in [0, 255]. Stored as an (H*W) x 3 matrix,
/// row index = y * width + x, so pixel planes can go straight into GEMM-based
/// layers without reshaping.
struct Image {
    int height = 0;
    int width = 0;
    Eigen::MatrixXd px;  // (height*width) x 3

    Image() = default;
    Image(int h, int w) : height(h), width(w), px(Eigen::MatrixXd::Zero(h * w, 3)) {}

    int npixels() const { return height * width; }
    double& at(int y, int x, int c) { return px(y * width + x, c); }
    double at(int y, int x, int c) const { return px(y * width + x, c); }

    /// Clamp every channel into [0, 255] in place.
    void clamp();
    /// Round to integer intensities in place (values stay doubles).
    void quantize();
    /// Max absolute per-channel difference against another image of the same shape.
    double linf_distance(const Image& other) const;
    /// Content hash over rounded 8-bit intensities; stable across save/load.
    std::uint64_t content_hash() const;
};

/// Binary PPM (P6) I/O; intensities round to 8 bits on write.
void save_ppm(const Image& img, const std::string& path);
Image load_ppm(const std::string& path);

}  // namespace ctxlab
