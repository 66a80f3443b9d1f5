#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "ctxlab/geometry.hpp"
#include "ctxlab/image.hpp"

namespace ctxlab {

/// Ordered label set; the classifier additionally emits a distinguished
/// background class whose id is labels.size().
struct CategorySet {
    std::vector<std::string> labels;
    std::string background_label = "background";

    int size() const { return static_cast<int>(labels.size()); }
    int background_id() const { return size(); }
    int index_of(const std::string& label) const;  // -1 if unknown
    void validate() const;

    static CategorySet default_set();
};

/// Pairwise co-occurrence affinities plus a prior over the category that
/// anchors a scene. Scenes are grown greedily: each added object's category
/// is drawn with probability proportional to the product of its affinity
/// with every category already present.
struct CooccurrenceModel {
    CategorySet categories;
    Eigen::MatrixXd pair_weights;  // L x L, symmetric, nonnegative
    Eigen::VectorXd scene_priors;  // length L, sums to 1

    void validate() const;

    /// Two-community model: first half of labels co-occur with each other,
    /// second half likewise, with `cross` affinity between communities.
    static CooccurrenceModel two_community(const CategorySet& cats, double cross = 0.0);
};

struct GroundTruthObject {
    int category = 0;
    BBox bbox;
    std::uint64_t appearance_seed = 0;
};

struct SyntheticScene {
    Image image;
    std::vector<GroundTruthObject> objects;
    std::uint64_t scene_id = 0;
    int scene_type = 0;  // anchor category that keyed the background
};

struct SceneGenConfig {
    CooccurrenceModel model;
    int image_size = 128;
    int min_objects = 1;
    int max_objects = 6;
    int min_object_px = 8;
    int object_size_lo = 16;
    int object_size_hi = 40;
    double max_overlap_iou = 0.3;
    int placement_attempts = 100;

    void validate() const;
    std::uint64_t config_hash() const;
};

/// Deterministic scene draw: (config, rng_seed) fully determines the output.
SyntheticScene sample_scene(const SceneGenConfig& cfg, std::uint64_t rng_seed);

/// Number of scene communities (shape/background groupings) for L categories.
int community_of(int category);

}  // namespace ctxlab
