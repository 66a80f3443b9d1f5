#include "ctxlab/scene.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "ctxlab/rng.hpp"

namespace ctxlab {

int CategorySet::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label) return i;
    return -1;
}

void CategorySet::validate() const {
    if (labels.empty()) throw std::invalid_argument("CategorySet: no labels");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size())
        throw std::invalid_argument("CategorySet: duplicate labels");
    if (seen.count(background_label))
        throw std::invalid_argument("CategorySet: background label collides with a category");
}

CategorySet CategorySet::default_set() {
    CategorySet cs;
    cs.labels = {"car", "bus", "person", "bicycle", "sofa", "chair", "cat", "tvmonitor"};
    return cs;
}

void CooccurrenceModel::validate() const {
    categories.validate();
    const int L = categories.size();
    if (pair_weights.rows() != L || pair_weights.cols() != L)
        throw std::invalid_argument("CooccurrenceModel: pair_weights must be L x L");
    if (scene_priors.size() != L)
        throw std::invalid_argument("CooccurrenceModel: scene_priors must have length L");
    for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
            if (pair_weights(i, j) < 0.0)
                throw std::invalid_argument("CooccurrenceModel: negative pair weight");
            if (std::abs(pair_weights(i, j) - pair_weights(j, i)) > 1e-12)
                throw std::invalid_argument("CooccurrenceModel: pair_weights not symmetric");
        }
        if (scene_priors(i) < 0.0)
            throw std::invalid_argument("CooccurrenceModel: negative prior");
    }
    if (std::abs(scene_priors.sum() - 1.0) > 1e-9)
        throw std::invalid_argument("CooccurrenceModel: scene_priors must sum to 1");
}

int community_of(int category) {
    return category / 4;
}

CooccurrenceModel CooccurrenceModel::two_community(const CategorySet& cats, double cross) {
    CooccurrenceModel m;
    m.categories = cats;
    const int L = cats.size();
    m.pair_weights = Eigen::MatrixXd::Zero(L, L);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            m.pair_weights(i, j) = community_of(i) == community_of(j) ? 1.0 : cross;
    m.scene_priors = Eigen::VectorXd::Constant(L, 1.0 / L);
    return m;
}

void SceneGenConfig::validate() const {
    model.validate();
    if (image_size < 16) throw std::invalid_argument("SceneGenConfig: image too small");
    if (min_objects < 1 || max_objects < min_objects)
        throw std::invalid_argument("SceneGenConfig: bad object count range");
    if (object_size_lo < min_object_px || object_size_hi < object_size_lo)
        throw std::invalid_argument("SceneGenConfig: bad object size range");
    if (max_overlap_iou < 0.0 || max_overlap_iou > 1.0)
        throw std::invalid_argument("SceneGenConfig: bad overlap cap");
}

std::uint64_t SceneGenConfig::config_hash() const {
    std::uint64_t h = fnv1a64(&image_size, sizeof(image_size));
    h = fnv1a64(&min_objects, sizeof(min_objects), h);
    h = fnv1a64(&max_objects, sizeof(max_objects), h);
    h = fnv1a64(&object_size_lo, sizeof(object_size_lo), h);
    h = fnv1a64(&object_size_hi, sizeof(object_size_hi), h);
    h = fnv1a64(&max_overlap_iou, sizeof(max_overlap_iou), h);
    for (const auto& l : model.categories.labels) h = fnv1a64(l, h);
    h = fnv1a64(model.pair_weights.data(),
                sizeof(double) * static_cast<std::size_t>(model.pair_weights.size()), h);
    h = fnv1a64(model.scene_priors.data(),
                sizeof(double) * static_cast<std::size_t>(model.scene_priors.size()), h);
    return h;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

struct Rgb {
    double r, g, b;
};

Rgb hsv_to_rgb(double h, double s, double v) {
    h = std::fmod(std::fmod(h, 360.0) + 360.0, 360.0);
    const double c = v * s;
    const double hp = h / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else { r = c; b = x; }
    const double m = v - c;
    return {255.0 * (r + m), 255.0 * (g + m), 255.0 * (b + m)};
}

// Category appearance: shape cycles through 4 glyphs, hue separates categories
// within a community while paired categories across communities stay close
// enough that context carries part of the signal.
constexpr double kBaseHues[4] = {25.0, 55.0, 180.0, 280.0};
constexpr double kCommunityHueShift = 18.0;

int shape_of(int category) { return category % 4; }

double hue_of(int category) {
    return kBaseHues[category % 4] + kCommunityHueShift * (category / 4);
}

bool in_glyph(int shape, double u, double v) {
    switch (shape) {
        case 0:  // solid square
            return u >= 0.08 && u <= 0.92 && v >= 0.08 && v <= 0.92;
        case 1:  // horizontal bar
            return u >= 0.04 && u <= 0.96 && v >= 0.32 && v <= 0.68;
        case 2: {  // upward triangle
            if (v < 0.12 || v > 0.92) return false;
            const double halfwidth = 0.44 * (v - 0.12) / 0.80;
            return std::abs(u - 0.5) <= halfwidth;
        }
        default: {  // ring
            const double du = u - 0.5, dv = v - 0.5;
            const double r = std::sqrt(du * du + dv * dv);
            return r >= 0.26 && r <= 0.46;
        }
    }
}

void render_background(Image& img, int community, Rng& rng) {
    // Low-frequency value noise keyed to the scene community: a coarse grid of
    // control values bilinearly upsampled, modulating brightness around a
    // community-specific hue.
    const int G = 8;
    Eigen::MatrixXd ctrl(G + 1, G + 1);
    for (int i = 0; i <= G; ++i)
        for (int j = 0; j <= G; ++j) ctrl(i, j) = rng.normal();
    const double hue = community == 0 ? 215.0 : 40.0;
    const double sat = community == 0 ? 0.22 : 0.25;
    const double base_v = community == 0 ? 0.43 : 0.49;
    const double cell = static_cast<double>(img.height) / G;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const double gy = y / cell, gx = x / cell;
            const int i0 = std::min(G - 1, static_cast<int>(gy));
            const int j0 = std::min(G - 1, static_cast<int>(gx));
            const double fy = gy - i0, fx = gx - j0;
            const double n = ctrl(i0, j0) * (1 - fy) * (1 - fx) + ctrl(i0 + 1, j0) * fy * (1 - fx) +
                             ctrl(i0, j0 + 1) * (1 - fy) * fx + ctrl(i0 + 1, j0 + 1) * fy * fx;
            const double v = std::min(0.75, std::max(0.15, base_v + 0.07 * n));
            const Rgb c = hsv_to_rgb(hue, sat, v);
            img.at(y, x, 0) = c.r;
            img.at(y, x, 1) = c.g;
            img.at(y, x, 2) = c.b;
        }
    }
}

void render_object(Image& img, const GroundTruthObject& obj) {
    Rng rng(obj.appearance_seed);
    const double hue = hue_of(obj.category) + rng.normal(0.0, 7.0);
    const double sat = std::min(1.0, std::max(0.4, 0.78 + rng.normal(0.0, 0.05)));
    const double val = std::min(1.0, std::max(0.5, 0.88 + rng.normal(0.0, 0.05)));
    const Rgb c = hsv_to_rgb(hue, sat, val);
    const int shape = shape_of(obj.category);
    for (int y = obj.bbox.y; y < obj.bbox.y2(); ++y) {
        for (int x = obj.bbox.x; x < obj.bbox.x2(); ++x) {
            const double u = (x - obj.bbox.x + 0.5) / obj.bbox.w;
            const double v = (y - obj.bbox.y + 0.5) / obj.bbox.h;
            if (in_glyph(shape, u, v)) {
                img.at(y, x, 0) = c.r;
                img.at(y, x, 1) = c.g;
                img.at(y, x, 2) = c.b;
            }
        }
    }
}

}  // namespace

SyntheticScene sample_scene(const SceneGenConfig& cfg, std::uint64_t rng_seed) {
    cfg.validate();
    Rng rng(rng_seed);
    const int L = cfg.model.categories.size();

    const int anchor = rng.weighted_index(cfg.model.scene_priors.data(), L);
    const int n_target = rng.uniform_int(cfg.min_objects, cfg.max_objects);

    // Grow the category multiset: each addition is weighted by the product of
    // pairwise affinities with everything already present.
    std::vector<int> cats{anchor};
    std::vector<double> w(static_cast<std::size_t>(L));
    while (static_cast<int>(cats.size()) < n_target) {
        double total = 0.0;
        for (int c = 0; c < L; ++c) {
            double prod = 1.0;
            for (int p : cats) prod *= cfg.model.pair_weights(c, p);
            w[static_cast<std::size_t>(c)] = prod;
            total += prod;
        }
        if (total <= 0.0) break;  // nothing co-occurs with the current set
        cats.push_back(rng.weighted_index(w.data(), L));
    }

    // Greedy placement with bounded rejection.
    SyntheticScene scene;
    scene.scene_id = rng_seed;
    scene.scene_type = anchor;
    if (cfg.image_size < cfg.object_size_lo)
        throw std::runtime_error("sample_scene: canvas too small for any placement");
    for (std::size_t i = 0; i < cats.size(); ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < cfg.placement_attempts && !placed; ++attempt) {
            BBox b;
            b.w = rng.uniform_int(cfg.object_size_lo, std::min(cfg.object_size_hi, cfg.image_size));
            b.h = rng.uniform_int(cfg.object_size_lo, std::min(cfg.object_size_hi, cfg.image_size));
            b.x = rng.uniform_int(0, cfg.image_size - b.w);
            b.y = rng.uniform_int(0, cfg.image_size - b.h);
            bool ok = true;
            for (const auto& o : scene.objects)
                if (iou(b, o.bbox) > cfg.max_overlap_iou) { ok = false; break; }
            if (ok) {
                scene.objects.push_back({cats[i], b, rng.next_u64()});
                placed = true;
            }
        }
        if (!placed) {
            if (i == 0)
                throw std::runtime_error("sample_scene: canvas too small for any placement");
            break;  // keep the objects placed so far
        }
    }

    scene.image = Image(cfg.image_size, cfg.image_size);
    render_background(scene.image, community_of(anchor), rng);
    for (const auto& obj : scene.objects) render_object(scene.image, obj);
    scene.image.quantize();
    return scene;
}

}  // namespace ctxlab
