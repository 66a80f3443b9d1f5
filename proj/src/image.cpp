#include "ctxlab/image.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "ctxlab/rng.hpp"

namespace ctxlab {

void Image::clamp() {
    px = px.cwiseMax(0.0).cwiseMin(255.0);
}

void Image::quantize() {
    for (Eigen::Index i = 0; i < px.size(); ++i) {
        double* d = px.data() + i;
        *d = std::nearbyint(std::min(255.0, std::max(0.0, *d)));
    }
}

double Image::linf_distance(const Image& other) const {
    if (other.height != height || other.width != width)
        throw std::invalid_argument("linf_distance: shape mismatch");
    return (px - other.px).cwiseAbs().maxCoeff();
}

static std::vector<std::uint8_t> to_bytes(const Image& img) {
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(img.npixels()) * 3);
    for (int p = 0; p < img.npixels(); ++p) {
        for (int c = 0; c < 3; ++c) {
            const double v = std::nearbyint(std::min(255.0, std::max(0.0, img.px(p, c))));
            bytes[static_cast<std::size_t>(p) * 3 + c] = static_cast<std::uint8_t>(v);
        }
    }
    return bytes;
}

std::uint64_t Image::content_hash() const {
    const auto bytes = to_bytes(*this);
    std::uint64_t h = fnv1a64(&height, sizeof(height));
    h = fnv1a64(&width, sizeof(width), h);
    return fnv1a64(bytes.data(), bytes.size(), h);
}

void save_ppm(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_ppm: cannot open " + path);
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    const auto bytes = to_bytes(img);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("save_ppm: write failed for " + path);
}

Image load_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_ppm: cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P6") throw std::runtime_error("load_ppm: not a P6 file: " + path);
    int w = 0, h = 0, maxval = 0;
    in >> w >> h >> maxval;
    if (maxval != 255 || w <= 0 || h <= 0)
        throw std::runtime_error("load_ppm: unsupported header in " + path);
    in.get();  // single whitespace after header
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(w) * h * 3);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!in) throw std::runtime_error("load_ppm: truncated file " + path);
    Image img(h, w);
    for (int p = 0; p < img.npixels(); ++p)
        for (int c = 0; c < 3; ++c)
            img.px(p, c) = static_cast<double>(bytes[static_cast<std::size_t>(p) * 3 + c]);
    return img;
}

}  // namespace ctxlab
