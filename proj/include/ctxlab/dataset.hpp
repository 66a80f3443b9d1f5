#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctxlab/scene.hpp"

namespace ctxlab {

enum class Split { Train, Val, Test };

const char* split_name(Split s);

/// A generated dataset with a deterministic 70/10/20 split keyed off the
/// scene_id hash, so disjoint seed ranges give disjoint scene_id sets.
struct DatasetSplit {
    std::vector<SyntheticScene> scenes;
    std::vector<Split> splits;           // parallel to scenes
    SceneGenConfig config;
    std::uint64_t seed = 0;

    std::vector<int> indices(Split s) const;
    const SyntheticScene& scene(int idx) const { return scenes[static_cast<std::size_t>(idx)]; }
    int size() const { return static_cast<int>(scenes.size()); }

    /// Hash over generator config, seed and scene ids; identifies provenance.
    std::uint64_t dataset_hash() const;
};

Split split_of_scene(std::uint64_t scene_id);

DatasetSplit generate_dataset(const SceneGenConfig& cfg, int n_scenes, std::uint64_t seed);

/// Directory layout: <dir>/manifest.json + <dir>/scenes/scene_<id>.ppm.
void save_dataset(const DatasetSplit& ds, const std::string& dir);
DatasetSplit load_dataset(const std::string& dir);

}  // namespace ctxlab
