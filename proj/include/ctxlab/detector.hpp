#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ctxlab/dataset.hpp"
#include "ctxlab/geometry.hpp"
#include "ctxlab/image.hpp"
#include "ctxlab/nn.hpp"

namespace ctxlab {

struct DetectorConfig {
    int image_size = 128;
    int num_categories = 8;
    int profile_dim = 64;  // context profile width d
    int c1 = 16, c2 = 24, c3 = 32;
    int roi_grid = 4;      // ROI-align bins per side
    int k_background = 2;  // background proposals alongside ground truth
    int grid_topn = 6;     // proposals returned in grid/objectness mode

    int num_classes() const { return num_categories + 1; }  // + background
    int background_id() const { return num_categories; }
    int feature_stride() const { return 8; }
    int feature_size() const { return image_size / 8; }
    /// Pixels around a stride-8 feature cell that influence it (3 conv layers).
    int receptive_margin() const { return 7; }

    void validate() const;
    std::uint64_t config_hash() const;
};

/// All trainable arrays of the detector: conv backbone, ROI head, context
/// fusion (attention + gated update) and the classifier that consumes the
/// fused profile.
struct DetectorParams {
    DetectorConfig cfg;
    nn::Linear conv1, conv2, conv3;
    nn::Linear roi_fc;
    nn::Linear wq, wk, wv;
    nn::Linear gz, gr, gh;
    nn::Linear cls;

    static DetectorParams init(const DetectorConfig& cfg, std::uint64_t seed);
    std::vector<nn::Tensor*> tensors();
    std::vector<const nn::Tensor*> tensors() const;
    void zero_grads();
    std::uint64_t params_hash() const;
};

struct RegionProposal {
    BBox bbox;
    Eigen::VectorXd prob;     // length num_classes, sums to 1
    Eigen::VectorXd profile;  // length profile_dim

    int predicted() const {
        Eigen::Index k = 0;
        prob.maxCoeff(&k);
        return static_cast<int>(k);
    }
};

struct DetectionResult {
    std::vector<RegionProposal> regions;
    int size() const { return static_cast<int>(regions.size()); }
};

/// Every intermediate needed to run the exact backward pass.
struct DetectCache {
    Eigen::MatrixXd x0;                    // normalized pixels (H*W, 3)
    Eigen::MatrixXd cols1, a1;             // conv stages (post-tanh activations)
    Eigen::MatrixXd cols2, a2;
    Eigen::MatrixXd cols3, a3;
    std::vector<BBox> proposals;
    // ROI-align taps: per proposal, per sample point, 4 (cell, weight) pairs.
    std::vector<std::vector<std::array<std::pair<int, double>, 4>>> roi_taps;
    Eigen::MatrixXd pooled;                // (N, roi_grid^2 * c3)
    Eigen::MatrixXd h;                     // ROI features (N, d)
    Eigen::MatrixXd q, k, v, attn, msg;    // context attention
    Eigen::MatrixXd gx, z, r, gx2, gcand;  // gated update intermediates
    Eigen::MatrixXd profiles;              // (N, d)
    Eigen::MatrixXd logits, probs;         // (N, num_classes)
};

/// Ground-truth anchored proposals: the ground-truth boxes in order, then
/// k background boxes drawn deterministically from the image content hash
/// at IoU < 0.1 with every object.
std::vector<BBox> propose_regions(const Image& image, const std::vector<GroundTruthObject>& gt,
                                  const DetectorConfig& cfg);
/// Proposal-free mode: fixed coarse grid scored by gradient-energy
/// objectness, top-N by score.
std::vector<BBox> propose_regions(const Image& image, const DetectorConfig& cfg);

/// Pure function of (image, params, proposals); regions keep proposal order.
DetectionResult detect(const Image& image, const DetectorParams& params,
                       const std::vector<BBox>& proposals);
DetectionResult detect(const Image& image, const DetectorParams& params,
                       const std::vector<BBox>& proposals, DetectCache& cache);

struct BackwardRequest {
    const Eigen::MatrixXd* dlogits = nullptr;    // (N, num_classes) or null
    const Eigen::MatrixXd* dprofiles = nullptr;  // (N, d) or null
    bool want_image_grad = true;
    bool want_param_grads = false;
};

/// Exact reverse pass; returns d(loss)/d(image pixels) in intensity units
/// (H*W, 3) when requested, and accumulates parameter grads when requested.
Eigen::MatrixXd detect_backward(const DetectorParams& params, const DetectCache& cache,
                                DetectorParams* grads_out, const BackwardRequest& req);

/// Mean cross-entropy between predicted probabilities and target labels.
double loss_cls(const DetectionResult& result, const std::vector<int>& targets);
/// d(mean CE)/d(logits), the fused softmax + cross-entropy gradient.
Eigen::MatrixXd loss_cls_dlogits(const DetectCache& cache, const std::vector<int>& targets);

/// Scalar objective specification for image-gradient queries. The objective is
///   ce_weight * loss_cls(probs, ce_targets)
/// + profile_weight * sum_i smooth_l1_mean(profile_i, profile_targets row i).
struct GradSpec {
    std::optional<std::vector<int>> ce_targets;
    double ce_weight = 1.0;
    std::optional<Eigen::MatrixXd> profile_targets;
    double profile_weight = 0.0;
};

struct GradResult {
    Eigen::MatrixXd dimage;  // (H*W, 3)
    double loss = 0.0;
    double ce_part = 0.0;
    double profile_part = 0.0;
};

GradResult grad_image(const Image& image, const DetectorParams& params,
                      const std::vector<BBox>& proposals, const GradSpec& spec);

struct TrainHyper {
    int max_epochs = 40;
    double lr = 2e-3;
    std::uint64_t seed = 11;
    double early_stop_acc = 0.995;
    double val_gate = 0.9;
};

struct EpochStats {
    int epoch = 0;
    double train_loss = 0.0;
    double val_acc = 0.0;
};

struct TrainLog {
    std::vector<EpochStats> epochs;
    double final_val_acc = 0.0;
};

/// Proposal labels for a scene: ground-truth categories then background for
/// the k appended background boxes.
std::vector<int> proposal_labels(const SyntheticScene& scene, const DetectorConfig& cfg,
                                 std::size_t n_proposals);

/// Cross-entropy training over ground-truth anchored proposals with early
/// stopping on validation accuracy. Throws GateError if the gate is missed
/// after max_epochs (skipped when max_epochs == 0).
DetectorParams train_detector(const DatasetSplit& dataset, const DetectorConfig& cfg,
                              const TrainHyper& hyper, TrainLog* log = nullptr);

/// Classification accuracy over ground-truth anchored proposals of a split.
double eval_accuracy(const DatasetSplit& dataset, Split split, const DetectorParams& params);

}  // namespace ctxlab
