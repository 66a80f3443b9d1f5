#include "ctxlab/dataset.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ctxlab/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace ctxlab {

const char* split_name(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Val: return "val";
        default: return "test";
    }
}

static Split split_from_name(const std::string& s) {
    if (s == "train") return Split::Train;
    if (s == "val") return Split::Val;
    if (s == "test") return Split::Test;
    throw std::runtime_error("unknown split name: " + s);
}

Split split_of_scene(std::uint64_t scene_id) {
    const std::uint64_t h = splitmix64(scene_id ^ 0x5ce7a1d5u) % 100;
    if (h < 70) return Split::Train;
    if (h < 80) return Split::Val;
    return Split::Test;
}

std::vector<int> DatasetSplit::indices(Split s) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (splits[static_cast<std::size_t>(i)] == s) out.push_back(i);
    return out;
}

std::uint64_t DatasetSplit::dataset_hash() const {
    std::uint64_t h = config.config_hash();
    h = fnv1a64(&seed, sizeof(seed), h);
    for (const auto& s : scenes) h = fnv1a64(&s.scene_id, sizeof(s.scene_id), h);
    return h;
}

DatasetSplit generate_dataset(const SceneGenConfig& cfg, int n_scenes, std::uint64_t seed) {
    if (n_scenes < 1) throw std::invalid_argument("generate_dataset: n_scenes must be >= 1");
    cfg.validate();
    DatasetSplit ds;
    ds.config = cfg;
    ds.seed = seed;
    ds.scenes.reserve(static_cast<std::size_t>(n_scenes));
    ds.splits.reserve(static_cast<std::size_t>(n_scenes));
    for (int i = 0; i < n_scenes; ++i) {
        const std::uint64_t scene_seed = mix64(seed, static_cast<std::uint64_t>(i));
        ds.scenes.push_back(sample_scene(cfg, scene_seed));
        ds.splits.push_back(split_of_scene(scene_seed));
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

static json config_to_json(const SceneGenConfig& cfg) {
    json j;
    j["image_size"] = cfg.image_size;
    j["min_objects"] = cfg.min_objects;
    j["max_objects"] = cfg.max_objects;
    j["min_object_px"] = cfg.min_object_px;
    j["object_size_lo"] = cfg.object_size_lo;
    j["object_size_hi"] = cfg.object_size_hi;
    j["max_overlap_iou"] = cfg.max_overlap_iou;
    j["placement_attempts"] = cfg.placement_attempts;
    j["labels"] = cfg.model.categories.labels;
    j["background_label"] = cfg.model.categories.background_label;
    std::vector<std::vector<double>> w;
    for (int i = 0; i < cfg.model.pair_weights.rows(); ++i) {
        std::vector<double> row;
        for (int k = 0; k < cfg.model.pair_weights.cols(); ++k)
            row.push_back(cfg.model.pair_weights(i, k));
        w.push_back(row);
    }
    j["pair_weights"] = w;
    std::vector<double> p(cfg.model.scene_priors.data(),
                          cfg.model.scene_priors.data() + cfg.model.scene_priors.size());
    j["scene_priors"] = p;
    return j;
}

static SceneGenConfig config_from_json(const json& j) {
    SceneGenConfig cfg;
    cfg.image_size = j.at("image_size").get<int>();
    cfg.min_objects = j.at("min_objects").get<int>();
    cfg.max_objects = j.at("max_objects").get<int>();
    cfg.min_object_px = j.at("min_object_px").get<int>();
    cfg.object_size_lo = j.at("object_size_lo").get<int>();
    cfg.object_size_hi = j.at("object_size_hi").get<int>();
    cfg.max_overlap_iou = j.at("max_overlap_iou").get<double>();
    cfg.placement_attempts = j.at("placement_attempts").get<int>();
    cfg.model.categories.labels = j.at("labels").get<std::vector<std::string>>();
    cfg.model.categories.background_label = j.at("background_label").get<std::string>();
    const auto w = j.at("pair_weights").get<std::vector<std::vector<double>>>();
    const int L = cfg.model.categories.size();
    cfg.model.pair_weights.resize(L, L);
    for (int i = 0; i < L; ++i)
        for (int k = 0; k < L; ++k) cfg.model.pair_weights(i, k) = w[i][k];
    const auto p = j.at("scene_priors").get<std::vector<double>>();
    cfg.model.scene_priors = Eigen::Map<const Eigen::VectorXd>(p.data(), L);
    return cfg;
}

void save_dataset(const DatasetSplit& ds, const std::string& dir) {
    fs::create_directories(fs::path(dir) / "scenes");
    json manifest;
    manifest["format"] = "ctxlab-dataset-v1";
    manifest["generator"] = config_to_json(ds.config);
    manifest["seed"] = ds.seed;
    manifest["config_hash"] = ds.config.config_hash();
    manifest["dataset_hash"] = ds.dataset_hash();
    json scenes = json::array();
    for (std::size_t i = 0; i < ds.scenes.size(); ++i) {
        const auto& s = ds.scenes[i];
        const std::string file = "scenes/scene_" + std::to_string(s.scene_id) + ".ppm";
        save_ppm(s.image, (fs::path(dir) / file).string());
        json objs = json::array();
        for (const auto& o : s.objects) {
            objs.push_back({{"category", ds.config.model.categories.labels[static_cast<std::size_t>(o.category)]},
                            {"bbox", {o.bbox.x, o.bbox.y, o.bbox.w, o.bbox.h}},
                            {"appearance_seed", o.appearance_seed}});
        }
        scenes.push_back({{"scene_id", s.scene_id},
                          {"file", file},
                          {"split", split_name(ds.splits[i])},
                          {"scene_type", s.scene_type},
                          {"objects", objs}});
    }
    manifest["scenes"] = scenes;
    std::ofstream out(fs::path(dir) / "manifest.json");
    if (!out) throw std::runtime_error("save_dataset: cannot write manifest in " + dir);
    out << manifest.dump(2) << "\n";
}

DatasetSplit load_dataset(const std::string& dir) {
    std::ifstream in(fs::path(dir) / "manifest.json");
    if (!in) throw std::runtime_error("load_dataset: no manifest in " + dir);
    json manifest;
    in >> manifest;
    if (manifest.value("format", "") != "ctxlab-dataset-v1")
        throw std::runtime_error("load_dataset: unrecognized manifest format");
    DatasetSplit ds;
    ds.config = config_from_json(manifest.at("generator"));
    ds.seed = manifest.at("seed").get<std::uint64_t>();
    for (const auto& js : manifest.at("scenes")) {
        SyntheticScene s;
        s.scene_id = js.at("scene_id").get<std::uint64_t>();
        s.scene_type = js.at("scene_type").get<int>();
        s.image = load_ppm((fs::path(dir) / js.at("file").get<std::string>()).string());
        for (const auto& jo : js.at("objects")) {
            GroundTruthObject o;
            o.category = ds.config.model.categories.index_of(jo.at("category").get<std::string>());
            if (o.category < 0) throw std::runtime_error("load_dataset: unknown category in manifest");
            const auto bb = jo.at("bbox").get<std::vector<int>>();
            o.bbox = {bb[0], bb[1], bb[2], bb[3]};
            o.appearance_seed = jo.at("appearance_seed").get<std::uint64_t>();
            s.objects.push_back(o);
        }
        ds.scenes.push_back(std::move(s));
        ds.splits.push_back(split_from_name(js.at("split").get<std::string>()));
    }
    if (ds.dataset_hash() != manifest.at("dataset_hash").get<std::uint64_t>())
        throw std::runtime_error("load_dataset: dataset hash mismatch");
    return ds;
}

}  // namespace ctxlab
